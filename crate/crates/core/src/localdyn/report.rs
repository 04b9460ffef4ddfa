use std::fmt;

use num_bigint::BigUint;

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::funcfield::{log_abs, log_plus, valuation, LogValue, Place, Poly};
use crate::localfield::{newton_polygon, LaurentSeries, LocalField, EXACT};

fn lv(n: i64) -> LogValue {
    LogValue::from_integer(n)
}

/// Per-place invariants of a Drinfeld module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReport {
    pub place: Place,
    pub q: u64,
    pub rank: usize,
    pub c_v: LogValue,
    pub j_v: LogValue,
    pub stable_rank: usize,
    pub s: usize,
    pub phi0_log_radius: LogValue,
    pub b_t_log: LogValue,
    /// j_v / deg(v)
    pub vj: LogValue,
}

impl fmt::Display for LocalReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "place\t{}", self.place)?;
        writeln!(out, "c_v\t{}", self.c_v)?;
        writeln!(out, "j_v\t{}", self.j_v)?;
        writeln!(out, "stable_rank\t{}", self.stable_rank)?;
        writeln!(out, "s\t{}", self.s)?;
        writeln!(out, "phi0_log_radius\t{}", self.phi0_log_radius)?;
        writeln!(out, "B_T_log\t{}", self.b_t_log)?;
        write!(out, "vj\t{}", self.vj)
    }
}

/// Report from the valuations v(a_0), .., v(a_r) (None for a zero coefficient).
pub(crate) fn report_from_valuations(place: &Place, q: u64, vals: &[Option<i64>]) -> LocalReport {
    let r = vals.len() - 1;
    let d = place.deg();
    let qi = |i: usize| lv(q.pow(i as u32) as i64 - 1);
    let vr = lv(vals[r].expect("a_r != 0"));
    let c_v = vr * d / qi(r);
    let mut m: Option<LogValue> = None;
    let mut r1 = r;
    for (i, vi) in vals.iter().enumerate().skip(1) {
        let Some(vi) = vi else { continue };
        let x = lv(*vi) / qi(i);
        if m.map_or(true, |m| x <= m) {
            m = Some(x);
            r1 = i;
        }
    }
    let m = m.expect("a_r present");
    let j_v = (vr / qi(r) - m) * d;
    let pts: Vec<(u64, LogValue)> = vals.iter().enumerate().filter_map(|(i, v)| v.map(|v| (q.pow(i as u32), lv(v)))).collect();
    let np = newton_polygon(&pts).expect("t and a_r give two points");
    let t_inv = lv(vals[0].expect("a_0 = t != 0") * d);
    let b_t_log = np.max_slope() * d + log_plus(t_inv) / qi(r);
    LocalReport {
        place: place.clone(),
        q,
        rank: r,
        c_v,
        j_v,
        stable_rank: r1,
        s: r - r1,
        phi0_log_radius: c_v - j_v,
        b_t_log,
        vj: j_v / d,
    }
}

/// c_v(phi) = (1/(q^r-1)) log|a_r^{-1}|_v.
pub fn c_of_phi(phi: &DrinfeldModule, v: &Place) -> LogValue {
    let r = phi.rank() as u32;
    -log_abs(phi.leading(), v).expect("a_r != 0") / lv(phi.q().pow(r) as i64 - 1)
}

pub fn local_report(phi: &DrinfeldModule, v: &Place) -> LocalReport {
    let vals: Vec<Option<i64>> = (0..=phi.rank()).map(|i| valuation(&phi.coeff(i), v)).collect();
    report_from_valuations(v, phi.q(), &vals)
}

/// j of the restriction of phi to F_q[a]: max_j log|c_j|/(q^j-1) + c_v over the
/// coefficients c_j (j >= 1) of phi_a.
pub fn j_of_subring_generator(phi: &DrinfeldModule, a: &Poly, v: &Place) -> Result<LogValue> {
    if a.deg() < 1 {
        return Err(Error::ConstantArgument);
    }
    let img = phi.phi_image(a);
    let q = phi.q();
    let mut best: Option<LogValue> = None;
    for (j, c) in img.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let x = log_abs(c, v)? / lv(q.pow(j as u32) as i64 - 1);
        best = Some(best.map_or(x, |b| b.max(x)));
    }
    Ok(best.expect("phi_a has positive tau-degree") + c_of_phi(phi, v))
}

/// 2 q^{(vj s + 2s + 1)(vj + 2) s} with vj = ceil(j_v / deg v); 1 when s = 0.
pub fn component_size_bound(report: &LocalReport) -> BigUint {
    let s = report.s as u64;
    if s == 0 {
        return BigUint::from(1u32);
    }
    let vj = report.vj.ceil().to_integer().max(0) as u64;
    let e = (vj * s + 2 * s + 1) * (vj + 2) * s;
    BigUint::from(2u32) * BigUint::from(report.q).pow(e as u32)
}

/// Smallest D with q^D >= n.
pub fn log_q_ceil(q: u64, n: &BigUint) -> u32 {
    let mut d = 0;
    let mut p = BigUint::from(1u32);
    while &p < n {
        p *= q;
        d += 1;
    }
    d
}

/// A Drinfeld module over the completion L_v: phi_T = sum_{i=0}^r a_i tau^i
/// with a_0 the image of t and a_i given as truncated series.
#[derive(Clone, Debug)]
pub struct LocalModule {
    k: LocalField,
    c: Vec<LaurentSeries>,
    vals: Vec<Option<i64>>,
}

impl LocalModule {
    /// Coefficients a_0, .., a_r. A coefficient that is zero to finite
    /// precision has unknown valuation and is rejected.
    pub fn new(k: &LocalField, c: Vec<LaurentSeries>) -> Result<LocalModule> {
        if c.len() < 2 {
            return Err(Error::InvalidModule("need a_0 and at least a_1".into()));
        }
        let mut vals = Vec::with_capacity(c.len());
        for (i, x) in c.iter().enumerate() {
            match x.valuation() {
                Some(v) => vals.push(Some(v)),
                None if x.is_exact() && i != 0 && i + 1 != c.len() => vals.push(None),
                None => return Err(Error::PrecisionExhausted(format!("coefficient a_{i} is zero to precision {}", x.prec()))),
            }
        }
        Ok(LocalModule { k: k.clone(), c, vals })
    }

    /// The expansion of a global module, with enough precision for the
    /// component computations (and at least `prec`).
    pub fn from_drinfeld(phi: &DrinfeldModule, v: &Place, prec: i64) -> Result<LocalModule> {
        let k = LocalField::new(phi.field(), v)?;
        let vals: Vec<Option<i64>> = (0..=phi.rank()).map(|i| valuation(&phi.coeff(i), v)).collect();
        let rep = report_from_valuations(v, phi.q(), &vals);
        let need = required_prec(&rep, &vals).max(prec);
        let c = (0..=phi.rank())
            .map(|i| {
                let a = phi.coeff(i);
                if a.is_zero() {
                    LaurentSeries::zero(&k, EXACT)
                } else {
                    let p = need.max(vals[i].unwrap_or(0) + 1);
                    k.embed(&a, p)
                }
            })
            .collect();
        LocalModule::new(&k, c)
    }

    pub fn field(&self) -> &LocalField {
        &self.k
    }
    pub fn place(&self) -> &Place {
        self.k.place()
    }
    pub fn q(&self) -> u64 {
        self.k.q()
    }
    pub fn rank(&self) -> usize {
        self.c.len() - 1
    }
    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.c
    }
    pub fn valuations(&self) -> &[Option<i64>] {
        &self.vals
    }
    pub fn report(&self) -> LocalReport {
        report_from_valuations(self.k.place(), self.q(), &self.vals)
    }
    /// phi_T(x) as a series.
    pub fn eval(&self, x: &LaurentSeries) -> LaurentSeries {
        let mut acc: Option<LaurentSeries> = None;
        for (i, a) in self.c.iter().enumerate() {
            if self.vals[i].is_none() {
                continue;
            }
            let term = a.mul(&x.frob_pow(i as u32));
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term),
            });
        }
        acc.expect("a_0 present")
    }
}

/// Valuation range [kmin, k0) of the component space: kmin = ceil(-B/d),
/// k0 = ceil(-rho/d).
pub(crate) fn component_window(rep: &LocalReport) -> (i64, i64) {
    let d = lv(rep.place.deg());
    let kmin = (-rep.b_t_log / d).ceil().to_integer();
    let k0 = (-rep.phi0_log_radius / d).ceil().to_integer();
    (kmin, k0.max(kmin))
}

/// Coefficient precision needed to know phi_T on pi^kmin O modulo pi^k0.
pub(crate) fn required_prec(rep: &LocalReport, vals: &[Option<i64>]) -> i64 {
    let (kmin, k0) = component_window(rep);
    let q = rep.q as i64;
    let mut need = k0 + 1;
    for (i, v) in vals.iter().enumerate() {
        if v.is_some() {
            need = need.max(k0 - q.pow(i as u32) * kmin.min(0) + 1);
        }
    }
    need
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{Fq, RatFunc};

    fn ex() -> DrinfeldModule {
        let f = Fq::new(3).unwrap();
        let t = RatFunc::t(f);
        DrinfeldModule::new(f, vec![RatFunc::one(f), t]).unwrap()
    }

    #[test]
    fn report_example_at_t() {
        let phi = ex();
        let f = phi.field();
        let v = Place::finite(Poly::t(f)).unwrap();
        let rep = local_report(&phi, &v);
        assert_eq!(rep.c_v, LogValue::new(1, 8));
        assert_eq!(rep.j_v, LogValue::new(1, 8));
        assert_eq!((rep.stable_rank, rep.s), (1, 1));
        assert_eq!(rep.phi0_log_radius, lv(0));
        assert_eq!(c_of_phi(&phi, &v), LogValue::new(1, 8));
        // direct definition: max_i log|a_i|/(q^i-1) + c_v
        let direct = [lv(0) / 2, lv(-1) / 8].into_iter().max().unwrap() + rep.c_v;
        assert_eq!(direct, rep.j_v);
        let inf = local_report(&phi, &Place::Infinite);
        assert_eq!(inf.j_v, lv(0));
        assert_eq!(inf.stable_rank, 2);
        assert!(inf.phi0_log_radius <= inf.c_v && inf.c_v <= inf.b_t_log);
    }

    #[test]
    fn carlitz_subring_values() {
        for q in [2, 3, 4, 5] {
            let f = Fq::new(q).unwrap();
            let phi = DrinfeldModule::carlitz(f);
            let t = Poly::t(f);
            assert_eq!(local_report(&phi, &Place::Infinite).j_v, lv(0));
            assert_eq!(j_of_subring_generator(&phi, &t, &Place::Infinite).unwrap(), lv(0));
            let j2 = j_of_subring_generator(&phi, &t.pow(2), &Place::Infinite).unwrap();
            assert_eq!(j2, LogValue::new(q as i64, q as i64 - 1));
        }
        let f = Fq::new(3).unwrap();
        let phi = DrinfeldModule::carlitz(f);
        let t = Poly::t(f);
        let js: Vec<LogValue> = (1..=4).map(|n| j_of_subring_generator(&phi, &t.pow(n), &Place::Infinite).unwrap()).collect();
        assert!(js.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(j_of_subring_generator(&phi, &Poly::one(f), &Place::Infinite), Err(Error::ConstantArgument));
    }

    #[test]
    fn subring_generator_matches_at_finite_places() {
        let phi = ex();
        let f = phi.field();
        let t = Poly::t(f);
        for v in crate::funcfield::enumerate_places(f, 2).into_iter().skip(1) {
            let j = local_report(&phi, &v).j_v;
            assert_eq!(j_of_subring_generator(&phi, &t, &v).unwrap(), j);
            assert_eq!(j_of_subring_generator(&phi, &t.pow(2), &v).unwrap(), j);
        }
    }

    #[test]
    fn size_bound_values() {
        let phi = ex();
        let v = Place::finite(Poly::t(phi.field())).unwrap();
        let mut rep = local_report(&phi, &v);
        assert_eq!(rep.vj, LogValue::new(1, 8));
        // vj rounds up to 1
        assert_eq!(component_size_bound(&rep), BigUint::from(2u32) * BigUint::from(3u32).pow(12));
        rep.j_v = lv(0);
        rep.vj = lv(0);
        assert_eq!(component_size_bound(&rep), BigUint::from(2u32) * BigUint::from(3u32).pow(6));
        rep.s = 0;
        assert_eq!(component_size_bound(&rep), BigUint::from(1u32));
        assert_eq!(log_q_ceil(3, &BigUint::from(10u32)), 3);
        assert_eq!(log_q_ceil(3, &BigUint::from(9u32)), 2);
    }

    #[test]
    fn local_module_matches_global_report() {
        let phi = ex();
        let f = phi.field();
        for v in crate::funcfield::enumerate_places(f, 2) {
            let m = LocalModule::from_drinfeld(&phi, &v, 4).unwrap();
            assert_eq!(m.report(), local_report(&phi, &v));
        }
    }
}
