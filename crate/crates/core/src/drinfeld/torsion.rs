//! Torsion of Drinfeld modules over L_v and over L.
//!
//! Every torsion point lies in the filled Julia set at every place, hence in
//! D(0, B_T(v)). This gives a denominator D* and a degree bound, so the
//! torsion lives in the finite F_q-space V = {y / D* : deg y <= Bdeg}.
//! Two independent routes then find it: local roots at one place matched
//! against V (the main route), and the largest phi_T-stable subspace of V.

use super::module::DrinfeldModule;
use crate::error::{Error, Result};
use crate::funcfield::{valuation, Elem, Fq, Place, Poly, RatFunc};
use crate::linalg::{invariant_factors, span_basis, Mat};
use crate::localfield::{additive_roots, local_roots, LaurentSeries, LocalField, RootReport, SeriesPoly};

/// Bound x * D* in F_q[t] with deg <= bdeg for every torsion point x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorBound {
    pub d_star: Poly,
    pub bdeg: i64,
}

impl DenominatorBound {
    pub fn dim(&self) -> usize {
        (self.bdeg + 1).max(0) as usize
    }
    pub fn basis(&self) -> Vec<RatFunc> {
        let f = self.d_star.field();
        (0..self.dim()).map(|j| RatFunc::new(Poly::monomial(f, 1, j), self.d_star.clone()).expect("D* != 0")).collect()
    }
    /// Coordinates of x in the basis t^j / D*, or None if x is not in V.
    pub fn coords(&self, x: &RatFunc) -> Option<Vec<Elem>> {
        if x.is_zero() {
            return Some(vec![0; self.dim()]);
        }
        if !x.den().divides(&self.d_star) {
            return None;
        }
        let y = x.num() * &self.d_star.div_exact(x.den());
        if y.deg() > self.bdeg {
            return None;
        }
        let mut c = y.coeffs().to_vec();
        c.resize(self.dim(), 0);
        Some(c)
    }
    pub fn from_coords(&self, c: &[Elem]) -> RatFunc {
        RatFunc::new(Poly::from_coeffs(self.d_star.field(), c.to_vec()), self.d_star.clone()).expect("D* != 0")
    }
}

/// Places where a torsion point may have a pole: poles of the a_i, zeros
/// of a_r, and t = 0.
pub fn pole_candidates(phi: &DrinfeldModule) -> Vec<Place> {
    let f = phi.field();
    let mut ps = vec![Poly::t(f)];
    for a in phi.coeffs() {
        ps.push(a.den().clone());
    }
    ps.push(phi.leading().num().clone());
    let mut out: Vec<Place> = Vec::new();
    for p in ps {
        if p.deg() > 0 {
            out.extend(p.factor().into_iter().map(|(g, _)| Place::Finite(g)));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn denominator_bound(phi: &DrinfeldModule) -> DenominatorBound {
    let f = phi.field();
    let mut d_star = Poly::one(f);
    for v in pole_candidates(phi) {
        let b = phi.julia_log_bound(&v);
        let e = (b / crate::funcfield::LogValue::from_integer(v.deg())).floor().to_integer();
        if e > 0 {
            d_star = &d_star * &v.poly().expect("finite").pow(e as u64);
        }
    }
    let binf = phi.julia_log_bound(&Place::Infinite).floor().to_integer();
    DenominatorBound { bdeg: binf + d_star.deg(), d_star }
}

/// phi[a](L_v) and the valuation profile of phi[a](C_v).
pub fn torsion_local(phi: &DrinfeldModule, a: &Poly, v: &Place, prec: i64) -> Result<RootReport> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let k = LocalField::new(phi.field(), v)?;
    if a.deg() == 0 {
        // phi_c(x) = c x
        return Ok(RootReport { valuation_multiset: Default::default(), zero_multiplicity: 1, rational_roots: Vec::new(), unresolved: Vec::new() });
    }
    with_precision_retries(prec, |w| {
        let c = phi.phi_image_local(a, &k, w);
        local_roots(&SeriesPoly::additive(&c)?, prec, false)
    })
}

// Working precision for phi_T's coefficients: start at 2 * prec + 8 and
// double on PrecisionExhausted, at most 10 times.
fn with_precision_retries<T>(prec: i64, mut run: impl FnMut(i64) -> Result<T>) -> Result<T> {
    let mut w = 2 * prec.max(1) + 8;
    let mut last = None;
    for _ in 0..10 {
        match run(w) {
            Err(Error::PrecisionExhausted(m)) => {
                last = Some(m);
                w *= 2;
            }
            other => return other,
        }
    }
    Err(Error::PrecisionExhausted(last.unwrap_or_default()))
}

/// Basis of phi[a](L_v) modulo pi^P (P >= prec).
pub fn local_torsion_basis(phi: &DrinfeldModule, a: &Poly, k: &LocalField, prec: i64) -> Result<Vec<LaurentSeries>> {
    if a.deg() <= 0 {
        return Ok(Vec::new());
    }
    with_precision_retries(prec, |w| {
        let c = phi.phi_image_local(a, k, w);
        Ok(additive_roots(&c, None, prec)?.expect("homogeneous").basis)
    })
}

#[derive(Clone, Debug)]
pub struct TorsionConfig {
    /// Place for the local expansion; chosen automatically when None.
    pub place: Option<Place>,
    /// Doublings of the matching precision before giving up.
    pub max_rounds: u32,
}

impl Default for TorsionConfig {
    fn default() -> Self {
        TorsionConfig { place: None, max_rounds: 8 }
    }
}

/// phi[a](L) as an F_q-space with its A-module structure.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    pub annihilator: Poly,
    pub basis: Vec<RatFunc>,
    /// Invariant factors of phi[a](L) as a module over A = F_q[T].
    pub invariant_factors: Vec<Poly>,
    pub place_used: Option<Place>,
    pub precision: i64,
}

impl TorsionModule {
    pub fn size(&self) -> u64 {
        let q = self.annihilator.field().q() as u64;
        q.pow(self.basis.len() as u32)
    }
    /// All points (q^dim of them), starting with 0.
    pub fn points(&self) -> Vec<RatFunc> {
        let f = self.annihilator.field();
        let mut out = vec![RatFunc::zero(f)];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * f.q() as usize);
            for x in &out {
                for c in f.elements() {
                    next.push(x + &b.scale(c));
                }
            }
            out = next;
        }
        out
    }
}

fn choose_place(phi: &DrinfeldModule, a: &Poly, bound: &DenominatorBound) -> Place {
    let f = phi.field();
    let mut fallback = None;
    for d in 1..=4 {
        for p in Poly::monics_of_degree(f, d) {
            if !p.is_irreducible() {
                continue;
            }
            let v = Place::Finite(p.clone());
            let integral = phi.coeffs().iter().all(|c| valuation(c, &v).is_none_or(|x| x >= 0));
            let unit_lead = valuation(phi.leading(), &v) == Some(0);
            let good = integral && unit_lead && bound.d_star.ord(&p) == 0 && !a.rem(&p).is_zero();
            if good {
                return v;
            }
            fallback.get_or_insert(v);
        }
    }
    fallback.expect("places of degree <= 4 exist")
}

/// phi[a](L) by local expansion at one place, matching against V, and exact
/// verification of every basis element.
pub fn torsion_global(phi: &DrinfeldModule, a: &Poly, cfg: &TorsionConfig) -> Result<TorsionModule> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let f = phi.field();
    let bound = denominator_bound(phi);
    if a.deg() == 0 || bound.bdeg < 0 {
        return Ok(TorsionModule { annihilator: a.monic(), basis: Vec::new(), invariant_factors: Vec::new(), place_used: None, precision: 0 });
    }
    let v0 = cfg.place.clone().unwrap_or_else(|| choose_place(phi, a, &bound));
    let k = LocalField::new(f, &v0)?;
    let d = v0.deg();
    let vb = bound.basis();
    let mut prec = 2 * (bound.bdeg + 1) / d + 2;
    for _ in 0..=cfg.max_rounds {
        let local = local_torsion_basis(phi, a, &k, prec)?;
        let cands = match_local(&k, &vb, &local, prec);
        let xs: Vec<RatFunc> = cands.iter().map(|c| bound.from_coords(c)).collect();
        if xs.iter().all(|x| phi.eval(a, x).is_zero()) {
            let inv = module_structure(phi, &bound, &cands)?;
            return Ok(TorsionModule { annihilator: a.monic(), basis: xs, invariant_factors: inv, place_used: Some(v0), precision: prec });
        }
        prec *= 2;
    }
    Err(Error::PrecisionExhausted(format!("local matching did not separate candidates at {v0}")))
}

// Coordinates (in V) of the x in V whose image in L_v lies in the span of
// the local roots modulo pi^prec.
fn match_local(k: &LocalField, vb: &[RatFunc], local: &[LaurentSeries], prec: i64) -> Vec<Vec<Elem>> {
    let res = k.residue();
    let dg = res.degree();
    let emb: Vec<LaurentSeries> = vb.iter().map(|b| k.embed(b, prec)).collect();
    let lo = emb.iter().chain(local).map(|s| s.val_or_prec()).min().unwrap_or(prec).min(prec);
    let rows = ((prec - lo) as usize) * dg;
    let cols: Vec<Vec<Elem>> = emb
        .iter()
        .cloned()
        .chain(local.iter().map(|z| z.neg()))
        .map(|s| {
            let mut col = Vec::with_capacity(rows);
            for n in lo..prec {
                col.extend(res.digits(s.coeff(n)));
            }
            col
        })
        .collect();
    let m = Mat::from_cols(k.fq(), rows, &cols);
    let lambdas: Vec<Vec<Elem>> = m.kernel().into_iter().map(|v| v[..vb.len()].to_vec()).collect();
    span_basis(k.fq(), vb.len(), &lambdas)
}

/// Matrix of phi_T on a phi_T-stable subspace of V given by coordinate vectors.
fn t_matrix(phi: &DrinfeldModule, bound: &DenominatorBound, basis: &[Vec<Elem>]) -> Result<Mat> {
    let f = phi.field();
    let bm = Mat::from_cols(f, bound.dim(), basis);
    let mut cols = Vec::new();
    for b in basis {
        let img = phi.eval_t(&bound.from_coords(b));
        let c = bound.coords(&img).ok_or_else(|| Error::InvariantViolation { row: 0, msg: "phi_T left the torsion space".into() })?;
        cols.push(bm.solve(&c).ok_or_else(|| Error::InvariantViolation { row: 0, msg: "phi_T left the torsion space".into() })?);
    }
    Ok(Mat::from_cols(f, basis.len(), &cols))
}

fn module_structure(phi: &DrinfeldModule, bound: &DenominatorBound, basis: &[Vec<Elem>]) -> Result<Vec<Poly>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    Ok(invariant_factors(&t_matrix(phi, bound, basis)?))
}

/// The full torsion module, computed as the largest phi_T-stable subspace of V.
#[derive(Clone, Debug)]
pub struct FullTorsion {
    pub bound: DenominatorBound,
    /// Coordinates in V.
    pub basis: Vec<Vec<Elem>>,
    /// phi_T in that basis.
    pub t_action: Mat,
    pub invariant_factors: Vec<Poly>,
}

impl FullTorsion {
    pub fn points_basis(&self) -> Vec<RatFunc> {
        self.basis.iter().map(|c| self.bound.from_coords(c)).collect()
    }
    pub fn size(&self) -> u64 {
        (self.bound.d_star.field().q() as u64).pow(self.basis.len() as u32)
    }
    /// phi[a](L) as the kernel of a(phi_T) on the torsion.
    pub fn kernel_of(&self, a: &Poly) -> Vec<RatFunc> {
        let f = a.field();
        let n = self.basis.len();
        if n == 0 {
            return Vec::new();
        }
        let mut am = Mat::zeros(f, n, n);
        let mut pw = Mat::identity(f, n);
        for &c in a.coeffs() {
            for i in 0..n {
                for j in 0..n {
                    am.set(i, j, f.add(am.get(i, j), f.mul(c, pw.get(i, j))));
                }
            }
            pw = self.t_action.mul(&pw);
        }
        am.kernel()
            .into_iter()
            .map(|u| {
                let mut c = vec![0; self.bound.dim()];
                for (ui, b) in u.iter().zip(&self.basis) {
                    for (cj, bj) in c.iter_mut().zip(b) {
                        *cj = f.add(*cj, f.mul(*ui, *bj));
                    }
                }
                self.bound.from_coords(&c)
            })
            .collect()
    }
}

pub fn full_torsion(phi: &DrinfeldModule) -> Result<FullTorsion> {
    let f = phi.field();
    let bound = denominator_bound(phi);
    let n = bound.dim();
    if n == 0 {
        return Ok(FullTorsion { bound, basis: Vec::new(), t_action: Mat::zeros(f, 0, 0), invariant_factors: Vec::new() });
    }
    // phi_T(t^j / D*) = N_j / H over a common denominator H
    let imgs: Vec<RatFunc> = bound.basis().iter().map(|b| phi.eval_t(b)).collect();
    let mut h = Poly::one(f);
    for x in &imgs {
        h = &h * &x.den().div_exact(&h.gcd(x.den()));
    }
    let mut cond_cols = Vec::new();
    let mut coord_cols = Vec::new();
    let hd = h.deg() as usize;
    for x in &imgs {
        let g = &(x.num() * &h.div_exact(x.den())) * &bound.d_star;
        let (qt, r) = g.divrem(&h);
        // phi_T(x) * D* = g / h must be a polynomial of degree <= bdeg
        let mut cond: Vec<Elem> = (0..hd).map(|i| r.coeff(i)).collect();
        let top = (qt.deg() + 1).max(0) as usize;
        for i in n..top.max(n) {
            cond.push(qt.coeff(i));
        }
        cond_cols.push(cond);
        coord_cols.push((0..n).map(|i| qt.coeff(i)).collect::<Vec<Elem>>());
    }
    let rows = cond_cols.iter().map(|c| c.len()).max().unwrap_or(0);
    for c in cond_cols.iter_mut() {
        c.resize(rows, 0);
    }
    let cond = Mat::from_cols(f, rows, &cond_cols);
    let img = Mat::from_cols(f, n, &coord_cols);

    let mut basis: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect();
    loop {
        let bm = Mat::from_cols(f, n, &basis);
        // rows annihilating the current subspace
        let ann = if basis.is_empty() { Vec::new() } else { Mat::from_rows(f, n, &basis).kernel() };
        let ann_m = if ann.is_empty() { Mat::zeros(f, 0, n) } else { Mat::from_rows(f, n, &ann) };
        let sys = cond.mul(&bm).stack(&ann_m.mul(&img).mul(&bm));
        let ker = sys.kernel();
        if ker.len() == basis.len() {
            break;
        }
        basis = span_basis(f, n, &ker.iter().map(|u| bm.mul_vec(u)).collect::<Vec<_>>());
        if basis.is_empty() {
            break;
        }
    }
    let t_action = if basis.is_empty() { Mat::zeros(f, 0, 0) } else { t_matrix(phi, &bound, &basis)? };
    let invariant_factors = if basis.is_empty() { Vec::new() } else { invariant_factors(&t_action) };
    Ok(FullTorsion { bound, basis, t_action, invariant_factors })
}

/// Every F_q-combination of a basis.
pub fn span_points(f: Fq, basis: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(f)];
    for b in basis {
        out = out.iter().flat_map(|x| f.elements().map(move |c| x + &b.scale(c))).collect();
    }
    out
}
