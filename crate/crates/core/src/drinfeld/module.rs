use std::fmt;

use super::twisted::{series_compose, TwistedPoly};
use crate::error::{Error, Result};
use crate::funcfield::{log_plus, parse_ratfunc, valuation, Fq, LogValue, Place, Poly, RatFunc, WeightedPoint};
use crate::localfield::{newton_polygon, LaurentSeries, LocalField, EXACT};

/// phi_T(x) = t x + a_1 x^q + ... + a_r x^{q^r} over L = F_q(t).
#[derive(Clone, PartialEq, Eq)]
pub struct DrinfeldModule {
    f: Fq,
    a: Vec<RatFunc>,
}

impl DrinfeldModule {
    /// Coefficients a_1..a_r; a_r must be nonzero.
    pub fn new(f: Fq, a: Vec<RatFunc>) -> Result<DrinfeldModule> {
        match a.last() {
            None => Err(Error::Invalid("rank must be at least 1".into())),
            Some(x) if x.is_zero() => Err(Error::Invalid("leading coefficient a_r must be nonzero".into())),
            _ => Ok(DrinfeldModule { f, a }),
        }
    }
    pub fn carlitz(f: Fq) -> DrinfeldModule {
        DrinfeldModule { f, a: vec![RatFunc::one(f)] }
    }
    pub fn field(&self) -> Fq {
        self.f
    }
    pub fn q(&self) -> u64 {
        self.f.q() as u64
    }
    pub fn rank(&self) -> usize {
        self.a.len()
    }
    /// a_1..a_r.
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.a
    }
    /// a_i for 0 <= i <= r, with a_0 = t.
    pub fn coeff(&self, i: usize) -> RatFunc {
        if i == 0 {
            RatFunc::t(self.f)
        } else {
            self.a[i - 1].clone()
        }
    }
    pub fn leading(&self) -> &RatFunc {
        self.a.last().expect("rank >= 1")
    }

    pub fn phi_t(&self) -> TwistedPoly {
        TwistedPoly::new(self.f, (0..=self.rank()).map(|i| self.coeff(i)).collect())
    }

    /// phi_a = sum a_k phi_T^k by Horner's rule.
    pub fn phi_image(&self, a: &Poly) -> TwistedPoly {
        let phi = self.phi_t();
        let mut acc = TwistedPoly::zero(self.f);
        for &c in a.coeffs().iter().rev() {
            acc = phi.mul(&acc).add(&TwistedPoly::scalar(self.f, c));
        }
        acc
    }

    pub fn eval_t(&self, x: &RatFunc) -> RatFunc {
        self.phi_t().eval(x)
    }
    /// phi_a(x) without forming phi_a.
    pub fn eval(&self, a: &Poly, x: &RatFunc) -> RatFunc {
        let phi = self.phi_t();
        let mut acc = RatFunc::zero(self.f);
        let mut xk = x.clone();
        for (k, &c) in a.coeffs().iter().enumerate() {
            if k > 0 {
                xk = phi.eval(&xk);
            }
            if c != 0 {
                acc = &acc + &xk.scale(c);
            }
        }
        acc
    }

    /// [a_1 : ... : a_r] with weights q^i - 1.
    pub fn j_invariant(&self) -> WeightedPoint {
        let q = self.q();
        let w = (1..=self.rank()).map(|i| q.pow(i as u32) - 1).collect();
        WeightedPoint::new(self.a.clone(), w).expect("a_r != 0")
    }

    /// psi_T(x) = alpha^{-1} phi_T(alpha x): b_i = alpha^{q^i - 1} a_i.
    pub fn twist(&self, alpha: &RatFunc) -> Result<DrinfeldModule> {
        if alpha.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let q = self.q() as i64;
        let b = self.a.iter().enumerate().map(|(i, a)| Ok(a * &alpha.pow(q.pow(i as u32 + 1) - 1)?)).collect::<Result<Vec<_>>>()?;
        DrinfeldModule::new(self.f, b)
    }

    /// Coefficients t, a_1, .., a_r embedded in L_v.
    pub fn local_coeffs(&self, k: &LocalField, prec: i64) -> Vec<LaurentSeries> {
        (0..=self.rank()).map(|i| k.embed(&self.coeff(i), prec)).collect()
    }
    /// Coefficients of phi_a in L_v, from phi_T embedded to precision prec.
    pub fn phi_image_local(&self, a: &Poly, k: &LocalField, prec: i64) -> Vec<LaurentSeries> {
        let exact = EXACT;
        if a.is_zero() {
            return vec![LaurentSeries::zero(k, exact)];
        }
        let phi = self.local_coeffs(k, prec);
        let cs = a.coeffs();
        let mut acc = vec![LaurentSeries::constant(k, a.lc() as u64, exact)];
        for &c in cs[..cs.len() - 1].iter().rev() {
            acc = series_compose(&phi, &acc);
            if c != 0 {
                acc[0] = acc[0].add(&LaurentSeries::constant(k, c as u64, exact));
            }
        }
        acc
    }

    /// Newton polygon points (q^i, v(a_i)) of phi_T at v, including (1, v(t)).
    pub fn newton_points(&self, v: &Place) -> Vec<(u64, LogValue)> {
        let q = self.q();
        (0..=self.rank())
            .filter_map(|i| valuation(&self.coeff(i), v).map(|val| (q.pow(i as u32), LogValue::from_integer(val))))
            .collect()
    }

    /// log B_T: the largest log|xi| over xi in phi[T], plus
    /// log+|t^{-1}|_v / (q^r - 1). The filled Julia set lies in D(0, B_T).
    pub fn julia_log_bound(&self, v: &Place) -> LogValue {
        let np = newton_polygon(&self.newton_points(v)).expect("phi_T has at least two terms");
        let d = LogValue::from_integer(v.deg());
        let qr = LogValue::from_integer(self.q().pow(self.rank() as u32) as i64 - 1);
        let tinv = LogValue::from_integer(valuation(&RatFunc::t(self.f), v).expect("t != 0") * v.deg());
        np.max_slope() * d + log_plus(tinv) / qr
    }

    /// The module with lower coefficients a_1..a_{r-1} and a_r chosen so that
    /// phi_T(x0) = 0.
    pub fn with_torsion_point(f: Fq, lower: Vec<RatFunc>, x0: &RatFunc) -> Result<DrinfeldModule> {
        if x0.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let r = lower.len() + 1;
        let mut s = &RatFunc::t(f) * x0;
        for (i, a) in lower.iter().enumerate() {
            s = &s + &(a * &x0.frob_pow(i as u32 + 1));
        }
        let ar = (-&s).div(&x0.frob_pow(r as u32))?;
        let mut a = lower;
        a.push(ar);
        DrinfeldModule::new(f, a)
    }

    /// Parses the module file format (`q = ..`, `rank = ..`, `coeffs = [..]`).
    pub fn parse(text: &str) -> Result<DrinfeldModule> {
        let kv = parse_kv(text)?;
        let get = |k: &str| kv.iter().find(|(a, _)| a == k).map(|(_, b)| b.as_str());
        let q: u32 = get("q").ok_or_else(|| Error::Parse("missing 'q'".into()))?.parse().map_err(|_| Error::Parse("q must be an integer".into()))?;
        let f = Fq::new(q).map_err(|_| Error::Parse(format!("q = {q} is not a prime power")))?;
        let coeffs = parse_list(get("coeffs").ok_or_else(|| Error::Parse("missing 'coeffs'".into()))?)?;
        let a = coeffs.iter().map(|s| parse_ratfunc(f, s)).collect::<Result<Vec<_>>>()?;
        if let Some(r) = get("rank") {
            let r: usize = r.parse().map_err(|_| Error::Parse("rank must be an integer".into()))?;
            if r != a.len() {
                return Err(Error::Parse(format!("rank = {r} but {} coefficients given", a.len())));
            }
        }
        if let Some(a0) = get("a0") {
            if parse_ratfunc(f, a0)? != RatFunc::t(f) {
                return Err(Error::Parse("a0 must be t (generic characteristic)".into()));
            }
        }
        DrinfeldModule::new(f, a).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The module file format.
    pub fn to_file(&self) -> String {
        let cs: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
        format!("q = {}\nrank = {}\ncoeffs = [{}]\n", self.q(), self.rank(), cs.join(", "))
    }
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("expected 'key = value', got \"{line}\"")))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// `[e1, e2, ...]`
pub fn parse_list(s: &str) -> Result<Vec<String>> {
    let s = s.trim();
    let inner = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| Error::Parse(format!("expected a bracketed list, got \"{s}\"")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(|x| x.trim().to_string()).collect())
}

impl fmt::Display for DrinfeldModule {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "phi_T = {}", self.phi_t())
    }
}
impl fmt::Debug for DrinfeldModule {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carlitz_t_squared() {
        let f = Fq::new(3).unwrap();
        let c = DrinfeldModule::carlitz(f);
        let t = RatFunc::t(f);
        let t2 = c.phi_image(&Poly::from_coeffs(f, vec![0, 0, 1]));
        assert_eq!(t2.coeffs(), &[t.pow(2).unwrap(), &t.frob_pow(1) + &t, RatFunc::one(f)]);
        assert_eq!(c.phi_image(&Poly::constant(f, 2)), TwistedPoly::scalar(f, 2));
        assert_eq!(c.phi_image(&Poly::t(f)), c.phi_t());
    }

    #[test]
    fn twists_and_j() {
        let f = Fq::new(3).unwrap();
        let t = RatFunc::t(f);
        let phi = DrinfeldModule::new(f, vec![t.clone()]).unwrap();
        let psi = phi.twist(&t).unwrap();
        assert_eq!(psi.coeffs()[0], t.pow(3).unwrap());
        assert_eq!(phi.twist(&RatFunc::one(f)).unwrap(), phi);
        assert_eq!(psi.twist(&t.inv().unwrap()).unwrap(), phi);
        assert_eq!(phi.twist(&RatFunc::zero(f)), Err(Error::ZeroTwist));
        let rho = DrinfeldModule::new(f, vec![RatFunc::one(f), t.clone()]).unwrap();
        let j = rho.j_invariant();
        assert_eq!(j.weights(), &[2, 8]);
        assert!(j.equivalent(&rho.twist(&(&t + &RatFunc::one(f))).unwrap().j_invariant()));
    }

    #[test]
    fn module_file_roundtrip() {
        let text = "# example\nq = 3\nrank = 2\ncoeffs = [1, t]\n";
        let m = DrinfeldModule::parse(text).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(DrinfeldModule::parse(&m.to_file()).unwrap(), m);
        assert!(DrinfeldModule::parse("q = 6\nrank = 1\ncoeffs = [1]").is_err());
        assert!(DrinfeldModule::parse("q = 3\nrank = 2\ncoeffs = [1, 0]").is_err());
        assert!(DrinfeldModule::parse("q = 3\nrank = 1\ncoeffs = [t^]").is_err());
        assert!(DrinfeldModule::parse("q = 3\nrank = 1\na0 = 0\ncoeffs = [1]").is_err());
    }

    #[test]
    fn local_image_matches_global() {
        let f = Fq::new(3).unwrap();
        let t = RatFunc::t(f);
        let phi = DrinfeldModule::new(f, vec![&t + &RatFunc::one(f), t.inv().unwrap()]).unwrap();
        let a = Poly::from_coeffs(f, vec![1, 2, 1]);
        let k = LocalField::new(f, &Place::finite(Poly::t(f)).unwrap()).unwrap();
        let loc = phi.phi_image_local(&a, &k, 30);
        let glob = phi.phi_image(&a);
        for (i, s) in loc.iter().enumerate() {
            let e = k.embed(&glob.coeff(i), s.prec());
            assert_eq!(*s, e, "coefficient {i}");
        }
    }

    #[test]
    fn julia_bound_carlitz() {
        let f = Fq::new(3).unwrap();
        let c = DrinfeldModule::carlitz(f);
        // roots of t x + x^3 have |xi|_inf = q^{1/2}
        assert_eq!(c.julia_log_bound(&Place::Infinite), LogValue::new(1, 2));
        let pt = Place::finite(Poly::t(f)).unwrap();
        assert_eq!(c.julia_log_bound(&pt), LogValue::new(-1, 2) + LogValue::new(1, 2));
    }
}
