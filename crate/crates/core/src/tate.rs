//! Tate uniformization over a completion L_v: lattices in a good-reduction
//! module psi, successive-minima reduction, the lattice exponential, the
//! module phi with e o psi_T = phi_T o e, and the division-point classes that
//! describe the component module of phi.

use crate::drinfeld::{series_compose, DrinfeldModule};
use crate::error::{Error, Result};
use crate::funcfield::{valuation, Elem, LogValue, Place, Poly, RatFunc};
use crate::linalg::Mat;
use crate::localdyn::LocalModule;
use crate::localfield::{LaurentSeries, LocalField, EXACT};

/// sum_i c_i x^{q^i}
fn additive_eval(c: &[LaurentSeries], x: &LaurentSeries) -> LaurentSeries {
    let mut acc: Option<LaurentSeries> = None;
    for (i, ci) in c.iter().enumerate() {
        let term = ci.mul(&x.frob_pow(i as u32));
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    acc.expect("nonempty")
}

fn inv_rel(x: &LaurentSeries, rel: i64) -> Result<LaurentSeries> {
    let v = x.valuation().ok_or_else(|| Error::PrecisionExhausted("inverting a series that is zero to known precision".into()))?;
    let y = if x.prec() > v + rel { x.truncate(v + rel) } else { x.clone() };
    y.inv()
}

fn log_size(x: &LaurentSeries, d: i64) -> Result<LogValue> {
    let v = x.valuation().ok_or_else(|| Error::PrecisionExhausted("lattice element is zero to known precision".into()))?;
    Ok(LogValue::from_integer(-v * d))
}

/// A lattice A w_1 + .. + A w_s inside psi(L_v).
#[derive(Clone, Debug)]
pub struct Lattice {
    pub psi: DrinfeldModule,
    pub place: Place,
    pub generators: Vec<LaurentSeries>,
    /// Largest log|w| among enumerated lattice elements.
    pub truncation_bound: LogValue,
    k: LocalField,
    psi_t: Vec<LaurentSeries>,
    prec: i64,
}

impl Lattice {
    /// psi must have good reduction at the finite place v; generators must
    /// satisfy |w| > 1. Coefficients of psi are expanded to precision `prec`
    /// (exactly when they are polynomials and deg v = 1).
    pub fn new(psi: &DrinfeldModule, place: &Place, generators: Vec<LaurentSeries>, prec: i64) -> Result<Lattice> {
        if place.is_infinite() {
            return Err(Error::Invalid("lattices are built at finite places".into()));
        }
        let r1 = psi.rank();
        for i in 0..=r1 {
            let v = valuation(&psi.coeff(i), place);
            let bad = match v {
                None => i == r1,
                Some(v) => v < 0 || (i == r1 && v != 0),
            };
            if bad {
                return Err(Error::InvalidModule(format!("psi does not have good reduction at {place}")));
            }
        }
        let k = LocalField::new(psi.field(), place)?;
        let d = place.deg();
        let mut bound = LogValue::from_integer(0);
        for w in &generators {
            match w.valuation() {
                Some(v) if v < 0 => bound = bound.max(LogValue::from_integer(-v * d)),
                _ => return Err(Error::Invalid("lattice generators need |w| > 1".into())),
            }
        }
        let psi_t = (0..=r1).map(|i| embed_coeff(&k, &psi.coeff(i), prec)).collect();
        Ok(Lattice { psi: psi.clone(), place: place.clone(), generators, truncation_bound: bound, k, psi_t, prec })
    }

    pub fn field(&self) -> &LocalField {
        &self.k
    }
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    /// Local coefficients of psi_T, b_0 = t.
    pub fn psi_coeffs(&self) -> &[LaurentSeries] {
        &self.psi_t
    }

    /// Coefficients of psi_a.
    pub fn psi_image(&self, a: &Poly) -> Vec<LaurentSeries> {
        let k = &self.k;
        if a.is_zero() {
            return vec![LaurentSeries::zero(k, EXACT)];
        }
        let cs = a.coeffs();
        let mut acc = vec![LaurentSeries::constant(k, a.lc() as u64, EXACT)];
        for &c in cs[..cs.len() - 1].iter().rev() {
            acc = series_compose(&self.psi_t, &acc);
            if c != 0 {
                acc[0] = acc[0].add(&LaurentSeries::constant(k, c as u64, EXACT));
            }
        }
        acc
    }
    pub fn psi_eval(&self, a: &Poly, x: &LaurentSeries) -> LaurentSeries {
        additive_eval(&self.psi_image(a), x)
    }

    /// sum_i psi_{a_i}(w_i)
    pub fn element(&self, a: &[Poly]) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(&self.k, EXACT);
        for (ai, w) in a.iter().zip(&self.generators) {
            if !ai.is_zero() {
                acc = acc.add(&self.psi_eval(ai, w));
            }
        }
        acc
    }

    /// All coefficient vectors with entries of degree <= max_deg, with their
    /// lattice elements (the zero vector first).
    pub fn enumerate(&self, max_deg: usize) -> Vec<(Vec<Poly>, LaurentSeries)> {
        let f = self.psi.field();
        let polys = Poly::all_up_to_degree(f, max_deg);
        let images: Vec<Vec<LaurentSeries>> = self.generators.iter().map(|w| polys.iter().map(|a| self.psi_eval(a, w)).collect()).collect();
        let s = self.rank();
        let n = polys.len();
        let total = n.pow(s as u32);
        (0..total)
            .map(|mut idx| {
                let mut coeffs = Vec::with_capacity(s);
                let mut x = LaurentSeries::zero(&self.k, EXACT);
                for img in &images {
                    let j = idx % n;
                    idx /= n;
                    coeffs.push(polys[j].clone());
                    x = x.add(&img[j]);
                }
                (coeffs, x)
            })
            .collect()
    }

    /// Checks log|sum psi_{a_i}(w_i)| = max_i |a_i|^{r_1} log|w_i| for all
    /// a_i of degree <= max_deg.
    pub fn rigid_holds(&self, max_deg: usize) -> Result<bool> {
        let d = self.place.deg();
        let q = self.psi.q() as i64;
        let r1 = self.psi.rank() as u32;
        let sizes: Vec<LogValue> = self.generators.iter().map(|w| log_size(w, d)).collect::<Result<_>>()?;
        for (a, x) in self.enumerate(max_deg).into_iter().skip(1) {
            let expect = a
                .iter()
                .zip(&sizes)
                .filter(|(ai, _)| !ai.is_zero())
                .map(|(ai, l)| *l * q.pow(r1 * ai.deg() as u32))
                .max()
                .expect("nonzero vector");
            if x.is_zero() || log_size(&x, d)? != expect {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// F_q-basis psi_{T^k}(w_i) of the lattice elements with log-size at most
    /// `bound`, sorted by size. Valid for a reduced basis.
    fn fq_basis_up_to(&self, bound: LogValue) -> Result<Vec<LaurentSeries>> {
        let d = self.place.deg();
        let mut out: Vec<(LogValue, usize, LaurentSeries)> = Vec::new();
        for (i, w) in self.generators.iter().enumerate() {
            let mut x = w.clone();
            loop {
                let l = log_size(&x, d)?;
                if l > bound {
                    break;
                }
                out.push((l, i, x.clone()));
                x = additive_eval(&self.psi_t, &x);
            }
        }
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Ok(out.into_iter().map(|t| t.2).collect())
    }
}

fn embed_coeff(k: &LocalField, x: &RatFunc, prec: i64) -> LaurentSeries {
    if x.is_poly() && k.place().deg() == 1 {
        k.embed(x, EXACT)
    } else {
        k.embed(x, prec)
    }
}

fn in_span(u: &[Poly], u1: &[Poly]) -> bool {
    let Some(j) = u1.iter().position(|p| !p.is_zero()) else {
        return u.iter().all(|p| p.is_zero());
    };
    if !u1[j].divides(&u[j]) {
        return false;
    }
    let c = u[j].div_exact(&u1[j]);
    u.iter().zip(u1).all(|(x, y)| *x == &c * y)
}

/// A basis of successive minima, found greedily among the combinations of the
/// given generators with coefficient degree <= 2. Ranks 1 and 2 only.
pub fn lattice_reduce(lat: &Lattice) -> Result<Lattice> {
    lattice_reduce_with(lat, 2)
}

/// lattice_reduce with an explicit coefficient degree budget.
pub fn lattice_reduce_with(lat: &Lattice, budget: usize) -> Result<Lattice> {
    let budget_err = || Error::BudgetExceeded { budget: budget as u32 };
    let s = lat.rank();
    if s == 0 {
        return Ok(lat.clone());
    }
    if s > 2 {
        return Err(Error::Invalid("lattice reduction is implemented for rank <= 2".into()));
    }
    let d = lat.place.deg();
    let all = lat.enumerate(budget);
    let mut sized = Vec::with_capacity(all.len());
    for (u, x) in all.into_iter().skip(1) {
        let l = log_size(&x, d)?;
        sized.push((l, u, x));
    }
    let pick = |exclude: &dyn Fn(&[Poly]) -> bool| -> Option<(Vec<Poly>, LaurentSeries, LogValue)> {
        sized.iter().filter(|(_, u, _)| !exclude(u)).min_by_key(|(l, _, _)| *l).map(|(l, u, x)| (u.clone(), x.clone(), *l))
    };
    let (u1, w1, _) = pick(&|_| false).expect("nonzero elements exist");
    let mut basis = vec![(u1.clone(), w1)];
    if s == 2 {
        let (u2, w2, _) = pick(&|u| in_span(u, &u1)).ok_or_else(budget_err)?;
        basis.push((u2, w2));
    }
    let det = if s == 1 {
        basis[0].0[0].clone()
    } else {
        let (a, b) = (&basis[0].0, &basis[1].0);
        &(&a[0] * &b[1]) - &(&a[1] * &b[0])
    };
    if det.is_zero() || det.deg() != 0 {
        return Err(budget_err());
    }
    let bound = sized.iter().map(|t| t.0).max().unwrap_or(lat.truncation_bound);
    let out = Lattice {
        generators: basis.into_iter().map(|b| b.1).collect(),
        truncation_bound: bound,
        ..lat.clone()
    };
    if !out.rigid_holds(budget)? {
        return Err(budget_err());
    }
    Ok(out)
}

/// e(x) = sum_{i<=n} e_i x^{q^i}, e_0 = 1.
#[derive(Clone, Debug)]
pub struct AdditivePowerSeries {
    pub coeffs: Vec<LaurentSeries>,
}

impl AdditivePowerSeries {
    pub fn eval(&self, x: &LaurentSeries) -> LaurentSeries {
        additive_eval(&self.coeffs, x)
    }
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// The lattice exponential e(z) = z prod_{w != 0} (1 - z/w), truncated at
/// z^{q^n}, with coefficients known modulo pi^prec.
///
/// Built one F_q-basis vector mu at a time: e_{V + F_q mu} = e_V - kappa e_V^q
/// with kappa = e_V(mu)^{1-q}. Later basis vectors are larger, so once
/// v(kappa) >= prec the remaining factors do not change any coefficient
/// modulo pi^prec. Requires a reduced lattice.
pub fn exp_lattice(lat: &Lattice, n: usize, prec: i64) -> Result<AdditivePowerSeries> {
    let k = &lat.k;
    let q = lat.psi.q() as i64;
    let mut e = vec![LaurentSeries::one(k, EXACT)];
    let mut kappas: Vec<LaurentSeries> = Vec::new();
    // lattice elements larger than this contribute kappa with v >= prec
    let d = lat.place.deg();
    let bound = LogValue::from_integer(d * (prec / (q - 1) + 1));
    let rel = prec + 8;
    for mu in lat.fq_basis_up_to(bound)? {
        let mut ev = mu.clone();
        for kap in &kappas {
            ev = ev.sub(&kap.mul(&ev.frob_pow(1)));
        }
        let kap = inv_rel(&ev.pow(q as u64 - 1), rel)?;
        match kap.valuation() {
            Some(v) if v < prec => {}
            _ => break,
        }
        let mut next = Vec::with_capacity(e.len() + 1);
        next.push(e[0].clone());
        for i in 1..=e.len() {
            let prev = kap.mul(&e[i - 1].frob_pow(1));
            next.push(if i < e.len() { e[i].sub(&prev) } else { prev.neg() });
        }
        e = next;
        kappas.push(kap);
    }
    let mut coeffs: Vec<LaurentSeries> = e.into_iter().map(|c| c.truncate(prec)).collect();
    coeffs.resize(n + 1, LaurentSeries::zero(k, prec));
    coeffs.truncate(n + 1);
    if let Some((i, c)) = coeffs.iter().enumerate().find(|(_, c)| c.prec() < prec) {
        return Err(Error::PrecisionExhausted(format!("e_{i} known only to pi^{}", c.prec())));
    }
    Ok(AdditivePowerSeries { coeffs })
}

/// phi with e o psi_T = phi_T o e, and the residual of that identity on the
/// q-power coefficients r+1..n.
#[derive(Clone, Debug)]
pub struct Uniformized {
    pub module: LocalModule,
    pub exp: AdditivePowerSeries,
    pub residuals: Vec<LaurentSeries>,
}

impl Uniformized {
    pub fn residual_vanishes(&self) -> bool {
        self.residuals.iter().all(|r| r.is_zero())
    }
}

/// Solves the triangular system from the tau^m coefficients of
/// e o psi_T = phi_T o e:
/// a_m = sum_{i+j=m} e_i b_j^{q^i} - sum_{k<m} a_k e_{m-k}^{q^k}.
pub fn uniformize(lat: &Lattice, n: usize, prec: i64) -> Result<Uniformized> {
    let r1 = lat.psi.rank();
    let r = r1 + lat.rank();
    if n < r {
        return Err(Error::Invalid(format!("truncation {n} is below the rank {r}")));
    }
    let exp = if lat.rank() == 0 {
        AdditivePowerSeries { coeffs: (0..=n).map(|i| if i == 0 { LaurentSeries::one(&lat.k, EXACT) } else { LaurentSeries::zero(&lat.k, EXACT) }).collect() }
    } else {
        exp_lattice(lat, n, prec)?
    };
    let e = &exp.coeffs;
    let b = &lat.psi_t;
    let lhs = |m: usize| -> LaurentSeries {
        let mut acc = LaurentSeries::zero(&lat.k, EXACT);
        for j in 0..=r1.min(m) {
            acc = acc.add(&e[m - j].mul(&b[j].frob_pow((m - j) as u32)));
        }
        acc
    };
    let mut a = vec![b[0].clone()];
    for m in 1..=r {
        let mut am = lhs(m);
        for (kk, ak) in a.iter().enumerate() {
            am = am.sub(&ak.mul(&e[m - kk].frob_pow(kk as u32)));
        }
        a.push(am.truncate(prec));
    }
    let mut residuals = Vec::new();
    for m in r + 1..=n {
        let mut res = lhs(m);
        for (kk, ak) in a.iter().enumerate() {
            res = res.sub(&ak.mul(&e[m - kk].frob_pow(kk as u32)));
        }
        residuals.push(res);
    }
    let module = LocalModule::new(&lat.k, a)?;
    Ok(Uniformized { module, exp, residuals })
}

/// A class of (a^{-1} Lambda) / Lambda, tagged by c with w_c = sum psi_{c_i}(w_i).
#[derive(Clone, Debug)]
pub struct DivisionClass {
    pub class: Vec<Poly>,
    pub omega: LaurentSeries,
    /// z in L_v with psi_a(z) = w_c mod O_v, when one exists.
    pub representative: Option<LaurentSeries>,
}

impl DivisionClass {
    pub fn is_rational(&self) -> bool {
        self.representative.is_some()
    }
}

/// The q^{s deg a} classes y with psi_a(y) in Lambda, modulo Lambda and the
/// integral elements. The class of c contains an L_v-rational point exactly
/// when w_c mod O_v lies in the image of psi_a on L_v / O_v; those classes
/// map under e onto the a-torsion of F_phi(L_v) / phi^0(L_v).
pub fn division_points(lat: &Lattice, a: &Poly) -> Result<Vec<DivisionClass>> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let f = lat.psi.field();
    let k = &lat.k;
    let res = k.residue();
    let dres = res.degree();
    let qq = (lat.psi.q() as i64).pow(lat.psi.rank() as u32 * a.deg() as u32);
    let pa = lat.psi_image(a);
    let deg = a.deg() as usize;
    let polys = if deg == 0 { vec![Poly::zero(f)] } else { Poly::all_up_to_degree(f, deg - 1) };
    let s = lat.rank();
    let total = polys.len().pow(s as u32);
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let class: Vec<Poly> = (0..s)
            .map(|_| {
                let j = idx % polys.len();
                idx /= polys.len();
                polys[j].clone()
            })
            .collect();
        let omega = lat.element(&class);
        if omega.prec() < 0 {
            return Err(Error::PrecisionExhausted("lattice element not known modulo O_v".into()));
        }
        let vw = if omega.is_zero() { 0 } else { omega.valuation().expect("nonzero") };
        if vw >= 0 {
            out.push(DivisionClass { class, omega, representative: Some(LaurentSeries::zero(k, EXACT)) });
            continue;
        }
        let kz = vw.div_euclid(qq);
        let vmin = vw.min(qq * kz);
        let rows = dres * (-vmin) as usize;
        let mut cols: Vec<Vec<Elem>> = Vec::new();
        for kk in kz..0 {
            for i in 0..dres {
                let x = LaurentSeries::monomial(k, res.theta_power(i), kk, EXACT);
                let y = additive_eval(&pa, &x);
                if y.prec() < 0 {
                    return Err(Error::PrecisionExhausted("psi_a not known modulo O_v".into()));
                }
                cols.push(coords(&y, vmin, dres));
            }
        }
        let target = coords(&omega, vmin, dres);
        let sol = Mat::from_cols(f, rows, &cols).solve(&target);
        let representative = sol.map(|z| {
            let mut acc = LaurentSeries::zero(k, EXACT);
            for (j, kk) in (kz..0).enumerate() {
                let digits = &z[j * dres..(j + 1) * dres];
                let c = res.from_digits(digits);
                if c != 0 {
                    acc = acc.add(&LaurentSeries::monomial(k, c, kk, EXACT));
                }
            }
            acc
        });
        out.push(DivisionClass { class, omega, representative });
    }
    Ok(out)
}

fn coords(x: &LaurentSeries, lo: i64, d: usize) -> Vec<Elem> {
    let res = x.residue();
    let mut out = Vec::with_capacity(d * (-lo) as usize);
    for kk in lo..0 {
        out.extend(res.digits(x.coeff(kk)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Fq;
    use crate::localdyn::component_module_local;

    fn setup(q: u32, place: Vec<u8>) -> (DrinfeldModule, Place, LocalField) {
        let f = Fq::new(q).unwrap();
        let v = Place::finite(Poly::from_coeffs(f, place)).unwrap();
        let k = LocalField::new(f, &v).unwrap();
        (DrinfeldModule::carlitz(f), v, k)
    }

    #[test]
    fn trivial_lattice_gives_psi() {
        let (psi, v, _) = setup(3, vec![2, 1]);
        let lat = Lattice::new(&psi, &v, vec![], 40).unwrap();
        let u = uniformize(&lat, 2, 30).unwrap();
        assert_eq!(u.module.rank(), 1);
        assert!(u.residual_vanishes());
        assert_eq!(u.exp.coeffs[1].is_zero(), true);
    }

    #[test]
    fn rank_one_tate_module() {
        let (psi, v, k) = setup(3, vec![2, 1]);
        let w = LaurentSeries::from_coeffs(&k, -1, vec![1, 2, 1], EXACT);
        let lat = Lattice::new(&psi, &v, vec![w.clone()], 200).unwrap();
        let red = lattice_reduce(&lat).unwrap();
        assert_eq!(red.generators[0].valuation(), Some(-1));
        let u = uniformize(&red, 4, 120).unwrap();
        assert!(u.residual_vanishes());
        let rep = u.module.report();
        assert!(rep.j_v > LogValue::from_integer(0));
        assert_eq!(rep.stable_rank, 1);
        // kernel property of the truncated product
        let ew = u.exp.eval(&red.generators[0]);
        assert!(ew.is_zero() && ew.prec() > 0, "{ew}");
    }

    #[test]
    fn exponential_matches_direct_product() {
        // rank one, only w, psi_T(w) below the size cutoff: compare with
        // z prod (1 - z/x) over the nonzero F_q-combinations
        let (psi, v, k) = setup(2, vec![1, 1]);
        let w = LaurentSeries::from_coeffs(&k, -2, vec![1, 1], EXACT);
        let lat = Lattice::new(&psi, &v, vec![w.clone()], 200).unwrap();
        let e = exp_lattice(&lat, 3, 12).unwrap();
        let w2 = lat.psi_eval(&Poly::t(psi.field()), &w);
        let elems = [w.clone(), w2.clone(), w.add(&w2)];
        // direct: z (1 - z/w)(1 - z/w2)(1 - z/(w+w2)) as an additive polynomial
        let mut poly = vec![LaurentSeries::one(&k, EXACT)];
        for x in &elems {
            let inv = inv_rel(x, 40).unwrap();
            let mut next = vec![LaurentSeries::zero(&k, EXACT); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] = next[i].add(c);
                next[i + 1] = next[i + 1].sub(&c.mul(&inv));
            }
            poly = next;
        }
        // coefficient of z^2 = e_1, z^4 = e_2 (q = 2), plus the next basis vector
        // has v(kappa) >= 12 so the truncation agrees mod pi^12
        assert_eq!(poly[1].truncate(12), e.coeffs[1].truncate(12));
        assert_eq!(poly[3].truncate(12), e.coeffs[2].truncate(12));
    }

    #[test]
    fn division_classes_match_component_module() {
        // w = psi_T(z0) + pi^{-e}: the rational division classes count the
        // a-torsion of the component module of the uniformized phi
        for (q, vz) in [(3u32, -1i64), (3, -2), (2, -1), (2, -2), (2, -3)] {
            let f = Fq::new(q).unwrap();
            let v = Place::finite(Poly::from_coeffs(f, vec![q as u8 - 1, 1])).unwrap();
            let k = LocalField::new(f, &v).unwrap();
            let psi = DrinfeldModule::carlitz(f);
            let tp = Poly::t(f);
            for e in [0i64, 1] {
                let z0 = LaurentSeries::from_coeffs(&k, vz, vec![1, 1], EXACT);
                let lat0 = Lattice::new(&psi, &v, vec![z0.clone()], 400).unwrap();
                let w = lat0.psi_eval(&tp, &z0).add(&LaurentSeries::monomial(&k, 1, -e, EXACT));
                let lat = lattice_reduce(&Lattice::new(&psi, &v, vec![w], 400).unwrap()).unwrap();
                assert_eq!(division_points(&lat, &tp).unwrap().len(), q as usize);
                let u = uniformize(&lat, 3, 120).unwrap();
                let cm = component_module_local(&u.module).unwrap();
                for a in Poly::all_up_to_degree(f, 2).into_iter().filter(|a| !a.is_zero()) {
                    let n = division_points(&lat, &a).unwrap().iter().filter(|c| c.is_rational()).count();
                    assert_eq!((q as usize).pow(cm.torsion_exponent(&a)), n, "q={q} vz={vz} e={e} a={a}");
                }
                assert_eq!(division_points(&lat, &Poly::one(f)).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn reduction_recovers_minima() {
        let (psi, v, k) = setup(3, vec![2, 1]);
        let tp = Poly::t(psi.field());
        let w1 = LaurentSeries::from_coeffs(&k, -1, vec![1, 1], EXACT);
        let w2 = LaurentSeries::from_coeffs(&k, -2, vec![2, 0, 1], EXACT);
        let lat0 = Lattice::new(&psi, &v, vec![w1.clone(), w2.clone()], 400).unwrap();
        // generators psi_T(w1) + w2 and w1: the minima are |w1| and |w2|
        let g = lat0.psi_eval(&tp, &w1).add(&w2);
        let lat = Lattice::new(&psi, &v, vec![g, w1.clone()], 400).unwrap();
        assert!(!lat.rigid_holds(1).unwrap());
        let red = lattice_reduce(&lat).unwrap();
        let vals: Vec<i64> = red.generators.iter().map(|x| x.valuation().unwrap()).collect();
        assert_eq!(vals, vec![-1, -2]);
        assert!(red.rigid_holds(2).unwrap());
    }
}
