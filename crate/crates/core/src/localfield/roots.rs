//! Root finding in L_v.
//!
//! q-additive and affine q-additive polynomials are solved completely as an
//! F_q-linear system on pi^w O / pi^P. Other polynomials go through the
//! segment / residual / Hensel route.

use std::collections::BTreeMap;

use super::newton::{newton_polygon, NewtonPolygon};
use super::residue::RElem;
use super::series::{LaurentSeries, LocalField, EXACT};
use crate::error::{Error, Result};
use crate::funcfield::{Elem, LogValue};
use crate::linalg::Mat;

/// A sparse polynomial sum c_e x^e with series coefficients.
#[derive(Clone, Debug)]
pub struct SeriesPoly {
    terms: Vec<(u64, LaurentSeries)>,
}

impl SeriesPoly {
    /// Terms with equal exponents are added.
    pub fn new(mut terms: Vec<(u64, LaurentSeries)>) -> Result<SeriesPoly> {
        if terms.is_empty() {
            return Err(Error::DegeneratePolynomial);
        }
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(u64, LaurentSeries)> = Vec::new();
        for (e, c) in terms {
            match merged.last_mut() {
                Some((e0, c0)) if *e0 == e => *c0 = c0.add(&c),
                _ => merged.push((e, c)),
            }
        }
        Ok(SeriesPoly { terms: merged })
    }
    /// sum_i c_i x^{q^i}.
    pub fn additive(coeffs: &[LaurentSeries]) -> Result<SeriesPoly> {
        let q = coeffs.first().ok_or(Error::DegeneratePolynomial)?.field().q();
        SeriesPoly::new(coeffs.iter().enumerate().map(|(i, c)| (q.pow(i as u32), c.clone())).collect())
    }
    pub fn terms(&self) -> &[(u64, LaurentSeries)] {
        &self.terms
    }
    pub fn field(&self) -> &LocalField {
        self.terms[0].1.field()
    }

    pub fn eval(&self, x: &LaurentSeries) -> LaurentSeries {
        let k = self.field();
        let mut acc: Option<LaurentSeries> = None;
        for (e, c) in &self.terms {
            let term = if *e == 0 { c.clone() } else { c.mul(&power(x, *e, k.q())) };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.expect("nonempty")
    }

    pub fn derivative(&self) -> SeriesPoly {
        let k = self.field().clone();
        let f = k.fq();
        let terms: Vec<(u64, LaurentSeries)> = self
            .terms
            .iter()
            .filter(|(e, _)| *e > 0 && (*e % f.p() as u64) != 0)
            .map(|(e, c)| (e - 1, c.scale(f.from_int((*e % f.p() as u64) as i64) as RElem)))
            .collect();
        if terms.is_empty() {
            let prec = self.terms.iter().map(|t| t.1.prec()).min().unwrap_or(0);
            return SeriesPoly { terms: vec![(0, LaurentSeries::zero(&k, prec))] };
        }
        SeriesPoly { terms }
    }

    /// Points (e, v(c_e)) over coefficients that are nonzero to known precision.
    pub fn points(&self) -> Vec<(u64, LogValue)> {
        self.terms.iter().filter_map(|(e, c)| c.valuation().map(|v| (*e, LogValue::from_integer(v)))).collect()
    }

    fn q_power_index(&self) -> Option<Vec<Option<usize>>> {
        let q = self.field().q();
        self.terms
            .iter()
            .map(|(e, _)| {
                if *e == 0 {
                    return Some(None);
                }
                let mut m = *e;
                let mut i = 0;
                while m % q == 0 {
                    m /= q;
                    i += 1;
                }
                (m == 1).then_some(Some(i))
            })
            .collect()
    }
}

/// x^e using base-q digits, so that Frobenius keeps full precision.
fn power(x: &LaurentSeries, e: u64, q: u64) -> LaurentSeries {
    let mut acc: Option<LaurentSeries> = None;
    let mut m = e;
    let mut j = 0u32;
    while m > 0 {
        let d = m % q;
        if d > 0 {
            let t = x.pow(d).frob_pow(j);
            acc = Some(match acc {
                None => t,
                Some(a) => a.mul(&t),
            });
        }
        m /= q;
        j += 1;
    }
    acc.expect("e > 0")
}

#[derive(Clone, Debug)]
pub struct RootReport {
    /// slope -> number of roots in C_v of valuation -slope.
    pub valuation_multiset: BTreeMap<LogValue, u64>,
    pub zero_multiplicity: u64,
    /// Nonzero roots lying in L_v.
    pub rational_roots: Vec<(LaurentSeries, bool)>,
    /// (slope, count) of roots not accounted for by rational_roots: fractional
    /// slopes, repeated or non-split residual roots.
    pub unresolved: Vec<(LogValue, u64)>,
}

/// Certification margin for resubstitution.
pub const CERT_MARGIN: i64 = 2;

/// Roots of f in L_v to absolute precision prec.
pub fn local_roots(f: &SeriesPoly, prec: i64, require_complete: bool) -> Result<RootReport> {
    let pts = f.points();
    if pts.len() < 2 {
        return Err(Error::DegeneratePolynomial);
    }
    let np = newton_polygon(&pts)?;
    let mut vm = BTreeMap::new();
    for s in &np.segments {
        *vm.entry(s.slope).or_insert(0) += s.length;
    }
    let zero_multiplicity = np.left();
    let total: u64 = np.right() - np.left();

    let additive = f.q_power_index();
    let report = match additive {
        Some(idx) if idx.iter().any(|i| *i == Some(0)) => {
            let r = idx.iter().flatten().max().copied().unwrap_or(0);
            let mut coeffs: Vec<LaurentSeries> = (0..=r).map(|_| LaurentSeries::zero(f.field(), EXACT)).collect();
            let mut constant = None;
            for ((_, c), i) in f.terms.iter().zip(&idx) {
                match i {
                    Some(i) => coeffs[*i] = c.clone(),
                    None => constant = Some(c.clone()),
                }
            }
            let sol = additive_roots(&coeffs, constant.as_ref(), prec)?;
            let mut roots = Vec::new();
            if let Some(sol) = sol {
                for z in span_elements(&sol) {
                    if z.is_zero() {
                        continue;
                    }
                    let fz = f.eval(&z);
                    let ok = fz.val_or_prec() >= prec - CERT_MARGIN;
                    roots.push((z, ok));
                }
            }
            let found = roots.len() as u64;
            let mut unresolved = Vec::new();
            if found < total {
                unresolved = vm.iter().map(|(s, c)| (*s, *c)).collect();
            }
            RootReport { valuation_multiset: vm, zero_multiplicity, rational_roots: roots, unresolved }
        }
        _ => general_roots(f, &np, vm, zero_multiplicity, prec)?,
    };
    if require_complete && !report.unresolved.is_empty() {
        return Err(Error::NeedsExtension(format!("{} roots lie outside L_v or were not separated", report.unresolved.iter().map(|u| u.1).sum::<u64>())));
    }
    Ok(report)
}

/// Affine solution set of an additive (or affine additive) equation.
#[derive(Clone, Debug)]
pub struct AdditiveSolution {
    pub particular: LaurentSeries,
    pub basis: Vec<LaurentSeries>,
}

fn span_elements(sol: &AdditiveSolution) -> Vec<LaurentSeries> {
    let k = sol.particular.field();
    let f = k.fq();
    let mut out = vec![sol.particular.clone()];
    for b in &sol.basis {
        let mut next = Vec::with_capacity(out.len() * f.q() as usize);
        for z in &out {
            for c in f.elements() {
                next.push(z.add(&b.scale(c as RElem)));
            }
        }
        out = next;
    }
    out
}

/// Solutions in L_v of sum_i c_i x^{q^i} + c = 0, each modulo pi^P with
/// P = max(prec, floor(w_max) + 1), where w_max is the largest valuation of
/// a nonzero root of the additive part. Returns None if there is no solution
/// in L_v. The basis spans all roots of the additive part in L_v.
///
/// Completeness: for z with v(f(z)) >= v(c_0) + P the nearest root rho of f
/// satisfies v(z - rho) >= P, and since P exceeds the valuation of every
/// difference of roots, rho is fixed by Galois (Krasner) and so lies in L_v.
pub fn additive_roots(coeffs: &[LaurentSeries], constant: Option<&LaurentSeries>, prec: i64) -> Result<Option<AdditiveSolution>> {
    let k = coeffs[0].field().clone();
    let res = k.residue().clone();
    let f = k.fq();
    let q = k.q();
    let d = res.degree();
    let v0 = coeffs[0].valuation().ok_or(Error::DegeneratePolynomial)?;

    let hom_pts: Vec<(u64, LogValue)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (q.pow(i as u32), LogValue::from_integer(v))))
        .collect();
    let top_nonzero = hom_pts.last().map(|p| p.0).unwrap_or(1);
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() && q.pow(i as u32) > top_nonzero && !c.is_exact() {
            return Err(Error::PrecisionExhausted(format!("coefficient of x^(q^{i}) is zero only to precision {}", c.prec())));
        }
    }
    let hom = (hom_pts.len() >= 2).then(|| newton_polygon(&hom_pts)).transpose()?;
    if let Some(np) = &hom {
        check_hidden(coeffs, q, np)?;
    }
    let const_pt = constant.and_then(|c| c.valuation());

    // valuation bounds for roots
    let floor = |x: LogValue| x.floor().to_integer();
    let w_max = hom.as_ref().map(|np| -np.min_slope());
    let mut full_pts = hom_pts.clone();
    if let Some(vc) = const_pt {
        full_pts.push((0, LogValue::from_integer(vc)));
    }
    let w_min = if full_pts.len() >= 2 { Some(-newton_polygon(&full_pts)?.max_slope()) } else { None };
    let big_p = match w_max {
        Some(w) => prec.max(floor(w) + 1),
        None => prec,
    };
    let Some(w_min) = w_min else {
        // c_0 x = 0 or c_0 x + c with c = 0 to precision
        return Ok(Some(AdditiveSolution { particular: LaurentSeries::zero(&k, big_p), basis: Vec::new() }));
    };
    let wlo = floor(w_min).min(big_p);
    let target = v0 + big_p;

    for (i, c) in coeffs.iter().enumerate() {
        let qi = q.pow(i as u32) as i64;
        if !c.is_zero() && c.prec() + wlo * qi < target {
            return Err(Error::PrecisionExhausted(format!("coefficient of x^(q^{i}) known to pi^{} but pi^{} needed", c.prec(), target - wlo * qi)));
        }
    }
    if let Some(c) = constant {
        if c.prec() < target {
            return Err(Error::PrecisionExhausted(format!("constant known to pi^{} but pi^{target} needed", c.prec())));
        }
    }

    let mut lo = target;
    for (i, c) in coeffs.iter().enumerate() {
        if let Some(v) = c.valuation() {
            lo = lo.min(v + wlo * q.pow(i as u32) as i64);
        }
    }
    if let Some(vc) = const_pt {
        lo = lo.min(vc);
    }
    let nrows = ((target - lo) as usize) * d;
    let ncols = ((big_p - wlo) as usize) * d;
    let mut m = Mat::zeros(f, nrows, ncols);
    for kk in wlo..big_p {
        for mi in 0..d {
            let col = ((kk - wlo) as usize) * d + mi;
            let e = res.theta_power(mi);
            let mut image = vec![0 as RElem; (target - lo) as usize];
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let qi = q.pow(i as u32);
                let ei = res.frob(e, i as u32);
                let sh = kk * qi as i64;
                for n in lo..target {
                    let a = c.coeff(n - sh);
                    if a != 0 {
                        let idx = (n - lo) as usize;
                        image[idx] = res.add(image[idx], res.mul(ei, a));
                    }
                }
            }
            for (n, &a) in image.iter().enumerate() {
                for (j, dg) in res.digits(a).into_iter().enumerate() {
                    m.set(n * d + j, col, dg);
                }
            }
        }
    }
    let to_series = |v: &[Elem]| {
        let cs: Vec<RElem> = v.chunks(d).map(|ch| res.from_digits(ch)).collect();
        LaurentSeries::from_coeffs(&k, wlo, cs, big_p)
    };
    let basis: Vec<LaurentSeries> = m.kernel().iter().map(|v| to_series(v)).collect();
    let particular = match constant {
        None => LaurentSeries::zero(&k, big_p),
        Some(c) => {
            let mut rhs = vec![0 as Elem; nrows];
            for n in lo..target {
                let a = res.neg(c.coeff(n));
                for (j, dg) in res.digits(a).into_iter().enumerate() {
                    rhs[((n - lo) as usize) * d + j] = dg;
                }
            }
            match m.solve(&rhs) {
                Some(x) => to_series(&x),
                None => return Ok(None),
            }
        }
    };
    Ok(Some(AdditiveSolution { particular, basis }))
}

// A coefficient that is zero only to finite precision must not be able to
// drop below the hull.
fn check_hidden(coeffs: &[LaurentSeries], q: u64, np: &NewtonPolygon) -> Result<()> {
    for (i, c) in coeffs.iter().enumerate() {
        let x = q.pow(i as u32);
        if c.is_zero() && !c.is_exact() && x > np.left() {
            if let Some(h) = np.value_at(x) {
                if LogValue::from_integer(c.prec()) < h {
                    return Err(Error::PrecisionExhausted(format!("coefficient of x^(q^{i}) is undetermined below the Newton polygon")));
                }
            }
        }
    }
    Ok(())
}

fn general_roots(f: &SeriesPoly, np: &NewtonPolygon, vm: BTreeMap<LogValue, u64>, zero_multiplicity: u64, prec: i64) -> Result<RootReport> {
    let k = f.field().clone();
    let res = k.residue().clone();
    let fq = k.fq();
    let mut roots = Vec::new();
    let mut unresolved = Vec::new();
    for s in &np.segments {
        if !s.slope.is_integer() {
            unresolved.push((s.slope, s.length));
            continue;
        }
        let w = -s.slope.to_integer();
        // residual polynomial: terms on the segment
        let y0 = np.value_at(s.start).expect("on hull");
        let on: Vec<(u64, RElem)> = f
            .terms
            .iter()
            .filter(|(e, c)| {
                *e >= s.start && *e <= s.start + s.length && c.valuation().is_some_and(|v| LogValue::from_integer(v) == y0 + s.slope * LogValue::from_integer((*e - s.start) as i64))
            })
            .map(|(e, c)| (*e - s.start, c.lead()))
            .collect();
        let eval = |u: RElem, terms: &[(u64, RElem)]| terms.iter().fold(0, |acc, &(e, a)| res.add(acc, res.mul(a, res.pow(u, e))));
        let dres: Vec<(u64, RElem)> = on
            .iter()
            .filter(|(e, _)| *e > 0 && e % fq.p() as u64 != 0)
            .map(|&(e, a)| (e - 1, res.mul(fq.from_int((e % fq.p() as u64) as i64) as RElem, a)))
            .collect();
        let mut found = 0u64;
        // g(u) = f(pi^w u) / pi^common, integral with residual reduction
        let common = (y0 + LogValue::from_integer(w * s.start as i64)).to_integer();
        let g_terms: Vec<(u64, LaurentSeries)> = f.terms.iter().map(|(e, c)| (*e, c.shift(w * *e as i64 - common))).collect();
        let g = SeriesPoly::new(g_terms)?;
        for u in res.elements().skip(1) {
            if eval(u, &on) != 0 {
                continue;
            }
            if eval(u, &dres) == 0 {
                continue;
            }
            let u0 = LaurentSeries::constant(&k, u, prec - w + 1);
            let lifted = hensel_lift(&g, &u0, prec - w)?;
            let x = lifted.shift(w);
            let fx = f.eval(&x);
            let ok = fx.val_or_prec() >= prec - CERT_MARGIN || fx.is_zero();
            roots.push((x, ok));
            found += 1;
        }
        if found < s.length {
            unresolved.push((s.slope, s.length - found));
        }
    }
    Ok(RootReport { valuation_multiset: vm, zero_multiplicity, rational_roots: roots, unresolved })
}

/// Newton iteration from an approximate simple root a to absolute precision
/// target_prec.
pub fn hensel_lift(f: &SeriesPoly, a: &LaurentSeries, target_prec: i64) -> Result<LaurentSeries> {
    let df = f.derivative();
    let work = target_prec.max(a.prec()) + 2;
    let mut x = a.extend_exact(work.max(a.val_or_prec() + 1));
    let fx = f.eval(&x);
    let dx = df.eval(&x);
    let vd = dx.valuation().ok_or(Error::HenselHypothesisFailed)?;
    if fx.val_or_prec() <= 2 * vd {
        return Err(Error::HenselHypothesisFailed);
    }
    let mut last_err = i64::MIN;
    loop {
        let fx = f.eval(&x);
        let dx = df.eval(&x);
        let vd = dx.valuation().ok_or(Error::HenselHypothesisFailed)?;
        // x is within pi^{v(f(x)) - v(f'(x))} of the root
        let err = fx.val_or_prec() - vd;
        if err >= target_prec {
            return Ok(x.truncate(target_prec));
        }
        if fx.is_zero() || err <= last_err {
            return Err(Error::PrecisionExhausted(format!("Hensel lift stalled at pi^{err}")));
        }
        last_err = err;
        let step = fx.div(&dx)?;
        x = x.sub(&step).extend_exact(work);
    }
}

impl super::residue::ResidueField {
    /// The basis element u^i as an index.
    pub fn theta_power(&self, i: usize) -> RElem {
        (self.fq().q() as u64).pow(i as u32)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{Fq, Place, Poly, RatFunc};

    fn field(q: u32, p: Vec<u8>) -> LocalField {
        let f = Fq::new(q).unwrap();
        LocalField::new(f, &Place::finite(Poly::from_coeffs(f, p)).unwrap()).unwrap()
    }
    fn emb(k: &LocalField, x: &RatFunc, prec: i64) -> LaurentSeries {
        k.embed(x, prec)
    }

    #[test]
    fn phi_t_has_no_nonzero_roots_at_t() {
        let k = field(3, vec![0, 1]);
        let f = k.fq();
        let t = RatFunc::t(f);
        let c = vec![emb(&k, &t, 40), LaurentSeries::one(&k, 40), emb(&k, &t, 40)];
        let rep = local_roots(&SeriesPoly::additive(&c).unwrap(), 10, false).unwrap();
        assert!(rep.rational_roots.is_empty());
        assert_eq!(rep.zero_multiplicity, 1);
        let vm: Vec<(LogValue, u64)> = rep.valuation_multiset.into_iter().collect();
        assert_eq!(vm, vec![(LogValue::new(-1, 2), 2), (LogValue::new(1, 6), 6)]);
        assert!(matches!(local_roots(&SeriesPoly::additive(&c).unwrap(), 10, true), Err(Error::NeedsExtension(_))));
    }

    #[test]
    fn residual_count_matches_exhaustive() {
        // t x + x^3 at (t - 1) over F_3: residual u^3 + u
        let k = field(3, vec![2, 1]);
        let f = k.fq();
        let c = vec![emb(&k, &RatFunc::t(f), 30), LaurentSeries::one(&k, 30)];
        let rep = local_roots(&SeriesPoly::additive(&c).unwrap(), 8, false).unwrap();
        let oracle = f.nonzero().filter(|&u| f.add(f.pow(u, 3), u) == 0).count();
        assert_eq!(rep.rational_roots.len(), oracle);
        // t x + x^3 at (t + 1): residual u^3 - u splits
        let k = field(3, vec![1, 1]);
        let c = vec![emb(&k, &RatFunc::t(f), 30), LaurentSeries::one(&k, 30)];
        let rep = local_roots(&SeriesPoly::additive(&c).unwrap(), 8, true).unwrap();
        let oracle = f.nonzero().filter(|&u| f.sub(f.pow(u, 3), u) == 0).count();
        assert_eq!(rep.rational_roots.len(), oracle);
        for (r, cert) in &rep.rational_roots {
            assert!(cert);
            let fr = SeriesPoly::additive(&c).unwrap().eval(r);
            assert!(fr.val_or_prec() >= 8);
        }
    }

    #[test]
    fn artin_schreier_splits() {
        for (q, p) in [(3u32, vec![0u8, 1]), (4, vec![1, 1]), (3, vec![1, 0, 1])] {
            let k = field(q, p);
            let d = k.residue().degree() as u32;
            // x^{q^d} - x: every residue element is a root
            let mut c = vec![LaurentSeries::one(&k, 20).neg()];
            for _ in 1..d {
                c.push(LaurentSeries::zero(&k, EXACT));
            }
            c.push(LaurentSeries::one(&k, 20));
            let rep = local_roots(&SeriesPoly::additive(&c).unwrap(), 6, true).unwrap();
            assert_eq!(rep.rational_roots.len() as u64 + rep.zero_multiplicity, (q as u64).pow(d));
        }
    }

    #[test]
    fn affine_additive() {
        // t y + y^3 - w with v(w) = -1 at (t): single slope 1/3, no rational root
        let k = field(3, vec![0, 1]);
        let f = k.fq();
        let w = emb(&k, &RatFunc::t(f).inv().unwrap(), 30);
        let f1 = SeriesPoly::new(vec![(0, w.neg()), (1, emb(&k, &RatFunc::t(f), 30)), (3, LaurentSeries::one(&k, 30))]).unwrap();
        let rep = local_roots(&f1, 6, false).unwrap();
        assert_eq!(rep.valuation_multiset.into_iter().collect::<Vec<_>>(), vec![(LogValue::new(1, 3), 3)]);
        assert!(rep.rational_roots.is_empty());
        // y^3 - y - (z^3 - z) with z = 1/t has the three roots z + F_3
        let z = RatFunc::t(f).inv().unwrap();
        let cst = emb(&k, &(&z.frob_pow(1) - &z), 30);
        let f2 = SeriesPoly::new(vec![(0, cst.neg()), (1, LaurentSeries::one(&k, 30).neg()), (3, LaurentSeries::one(&k, 30))]).unwrap();
        let rep = local_roots(&f2, 6, true).unwrap();
        assert_eq!(rep.rational_roots.len(), 3);
        assert!(rep.rational_roots.iter().all(|(r, ok)| *ok && r.valuation() == Some(-1)));
    }

    #[test]
    fn hensel_examples() {
        let k = field(5, vec![0, 1]);
        let f = k.fq();
        let x2 = SeriesPoly::new(vec![(0, emb(&k, &(&RatFunc::t(f) + &RatFunc::one(f)), 20).neg()), (2, LaurentSeries::one(&k, 20))]).unwrap();
        let r = hensel_lift(&x2, &LaurentSeries::one(&k, 1), 10).unwrap();
        assert_eq!(r.coeff(1), 3);
        let sq = r.mul(&r);
        assert_eq!(sq.truncate(10), emb(&k, &(&RatFunc::t(f) + &RatFunc::one(f)), 10));

        let c = emb(&k, &RatFunc::t(f), 20);
        let lin = SeriesPoly::new(vec![(0, c.neg()), (1, LaurentSeries::one(&k, 20))]).unwrap();
        assert_eq!(hensel_lift(&lin, &c, 10).unwrap(), c.truncate(10));

        // x^5 - t: derivative vanishes identically
        let bad = SeriesPoly::new(vec![(0, c.neg()), (5, LaurentSeries::one(&k, 20))]).unwrap();
        assert_eq!(hensel_lift(&bad, &LaurentSeries::zero(&k, 1), 5), Err(Error::HenselHypothesisFailed));
    }

    #[test]
    fn general_route_finds_simple_roots() {
        // (x - 1)(x - t)(x - 1/t) over F_5 at (t)
        let k = field(5, vec![0, 1]);
        let f = k.fq();
        let t = RatFunc::t(f);
        let ti = t.inv().unwrap();
        let one = RatFunc::one(f);
        let e1 = &(&one + &t) + &ti;
        let e2 = &(&t + &ti) + &one;
        let e3 = one.clone();
        let p = SeriesPoly::new(vec![
            (0, emb(&k, &e3, 30).neg()),
            (1, emb(&k, &e2, 30)),
            (2, emb(&k, &e1, 30).neg()),
            (3, LaurentSeries::one(&k, 30)),
        ])
        .unwrap();
        let rep = local_roots(&p, 8, true).unwrap();
        let mut vals: Vec<Option<i64>> = rep.rational_roots.iter().map(|r| r.0.valuation()).collect();
        vals.sort();
        assert_eq!(vals, vec![Some(-1), Some(0), Some(1)]);
        assert!(rep.rational_roots.iter().all(|r| r.1));
    }

    // brute force over pi^lo O / pi^hi for small additive polynomials
    #[test]
    fn additive_kernel_matches_brute_force() {
        let k = field(2, vec![0, 1]);
        let f = k.fq();
        let t = RatFunc::t(f);
        let cases = [
            vec![t.clone(), RatFunc::one(f)],
            vec![t.clone(), t.pow(-1).unwrap(), RatFunc::one(f)],
            vec![t.pow(2).unwrap(), RatFunc::zero(f), RatFunc::one(f)],
            vec![t.pow(3).unwrap(), &t + &RatFunc::one(f), t.clone()],
        ];
        for cs in cases {
            let c: Vec<LaurentSeries> = cs.iter().map(|x| emb(&k, x, 60)).collect();
            let fp = SeriesPoly::additive(&c).unwrap();
            let sol = additive_roots(&c, None, 4).unwrap().unwrap();
            let (lo, hi) = (-3i64, 4i64);
            let v0 = c[0].valuation().unwrap();
            let mut count = 0;
            for mask in 0u32..(1 << (hi - lo)) {
                let z: Vec<RElem> = (0..(hi - lo)).map(|i| ((mask >> i) & 1) as RElem).collect();
                let zs = LaurentSeries::from_coeffs(&k, lo, z, hi);
                if fp.eval(&zs).val_or_prec() >= v0 + hi {
                    count += 1;
                }
            }
            assert_eq!(count, 1 << sol.basis.len(), "{cs:?}");
        }
    }
}
