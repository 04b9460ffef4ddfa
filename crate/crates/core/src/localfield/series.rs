//! Completions L_v as truncated Laurent series in a uniformizer.
//!
//! pi = p(t) at a finite place p, pi = 1/t at infinity. A series is known
//! modulo pi^prec.

use std::fmt;
use std::sync::Arc;

use super::residue::{RElem, ResidueField};
use crate::error::{Error, Result};
use crate::funcfield::{valuation, Fq, Place, Poly, RatFunc};

struct LfData {
    place: Place,
    k: ResidueField,
}

/// The completion of F_q(t) at a place.
#[derive(Clone)]
pub struct LocalField(Arc<LfData>);

impl PartialEq for LocalField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.place == o.0.place
    }
}
impl Eq for LocalField {}

impl fmt::Debug for LocalField {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "L_{}", self.0.place)
    }
}

impl LocalField {
    pub fn new(f: Fq, place: &Place) -> Result<LocalField> {
        let k = match place {
            Place::Infinite => ResidueField::base(f),
            Place::Finite(p) => ResidueField::new(p)?,
        };
        Ok(LocalField(Arc::new(LfData { place: place.clone(), k })))
    }
    pub fn place(&self) -> &Place {
        &self.0.place
    }
    pub fn residue(&self) -> &ResidueField {
        &self.0.k
    }
    pub fn fq(&self) -> Fq {
        self.0.k.fq()
    }
    pub fn q(&self) -> u64 {
        self.fq().q() as u64
    }

    /// Expansion of t, known modulo pi^prec.
    pub fn t_series(&self, prec: i64) -> LaurentSeries {
        let k = &self.0.k;
        match &self.0.place {
            Place::Infinite => LaurentSeries::monomial(self, 1, -1, prec),
            Place::Finite(p) if p.deg() == 1 => {
                let c = k.theta();
                LaurentSeries::constant(self, c, prec).add(&LaurentSeries::monomial(self, 1, 1, prec))
            }
            Place::Finite(p) => {
                // Newton iteration for p(theta + s) = pi with s in pi O
                let theta = LaurentSeries::constant(self, k.theta(), prec);
                let pi = LaurentSeries::monomial(self, 1, 1, prec);
                let dp = p.derivative();
                let mut x = theta;
                let mut good = 1;
                loop {
                    let r = self.eval_poly(p, &x).sub(&pi);
                    let d = self.eval_poly(&dp, &x);
                    x = x.sub(&r.div(&d).expect("separable place"));
                    if good >= prec {
                        return x.truncate(prec);
                    }
                    good *= 2;
                }
            }
        }
    }

    /// g(x) by Horner's rule.
    pub fn eval_poly(&self, g: &Poly, x: &LaurentSeries) -> LaurentSeries {
        let prec = x.prec.max(0);
        let mut acc = LaurentSeries::zero(self, prec);
        for &c in g.coeffs().iter().rev() {
            acc = acc.mul(x).add(&LaurentSeries::constant(self, c as RElem, prec));
        }
        acc
    }

    /// Expansion of x at this place modulo pi^prec.
    pub fn embed(&self, x: &RatFunc, prec: i64) -> LaurentSeries {
        let Some(n) = valuation(x, &self.0.place) else {
            return LaurentSeries::zero(self, prec);
        };
        match &self.0.place {
            Place::Infinite => {
                let num = self.poly_at_infinity(x.num(), prec + 2 * x.den().deg() + n.abs() + 1);
                let den = self.poly_at_infinity(x.den(), prec + 2 * x.den().deg() + n.abs() + 1);
                num.div(&den).expect("nonzero").truncate(prec)
            }
            Place::Finite(p) => {
                let vd = x.den().ord(p) as i64;
                let work = prec + 2 * vd + n.abs() + 1;
                let t = self.t_series(work.max(1));
                let num = self.eval_poly(x.num(), &t);
                let den = self.eval_poly(x.den(), &t);
                num.div(&den).expect("nonzero").truncate(prec)
            }
        }
    }

    fn poly_at_infinity(&self, g: &Poly, prec: i64) -> LaurentSeries {
        // g(1/pi) = pi^{-n} sum g_i pi^{n-i}
        let n = g.deg();
        let c: Vec<RElem> = g.coeffs().iter().rev().map(|&a| a as RElem).collect();
        LaurentSeries::from_coeffs(self, -n, c, prec)
    }
}

/// Precision used for exactly known series (finite sums of monomials).
pub const EXACT: i64 = 1 << 48;

fn cap(p: i64) -> i64 {
    p.min(EXACT)
}

/// A truncated Laurent series sum_{i >= offset} c_i pi^i + O(pi^prec).
/// Coefficients past the stored vector are zero.
#[derive(Clone)]
pub struct LaurentSeries {
    k: LocalField,
    offset: i64,
    c: Vec<RElem>,
    prec: i64,
}

impl PartialEq for LaurentSeries {
    fn eq(&self, o: &Self) -> bool {
        self.prec == o.prec && self.offset == o.offset && self.c == o.c
    }
}
impl Eq for LaurentSeries {}

impl LaurentSeries {
    pub fn zero(k: &LocalField, prec: i64) -> LaurentSeries {
        LaurentSeries { k: k.clone(), offset: prec, c: Vec::new(), prec }
    }
    pub fn constant(k: &LocalField, a: RElem, prec: i64) -> LaurentSeries {
        LaurentSeries::monomial(k, a, 0, prec)
    }
    pub fn one(k: &LocalField, prec: i64) -> LaurentSeries {
        LaurentSeries::constant(k, 1, prec)
    }
    /// a pi^n + O(pi^prec).
    pub fn monomial(k: &LocalField, a: RElem, n: i64, prec: i64) -> LaurentSeries {
        LaurentSeries::from_coeffs(k, n, vec![a], prec)
    }
    /// sum c_i pi^{offset+i} + O(pi^prec); terms at or beyond prec are dropped.
    pub fn from_coeffs(k: &LocalField, offset: i64, c: Vec<RElem>, prec: i64) -> LaurentSeries {
        let mut s = LaurentSeries { k: k.clone(), offset, c, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        self.prec = cap(self.prec);
        if self.offset >= self.prec {
            self.c.clear();
        } else {
            self.c.truncate((self.prec - self.offset) as usize);
        }
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().position(|&x| x != 0);
        match lead {
            None => {
                self.c.clear();
                self.offset = self.prec;
            }
            Some(i) => {
                self.c.drain(..i);
                self.offset += i as i64;
            }
        }
    }

    pub fn field(&self) -> &LocalField {
        &self.k
    }
    pub fn residue(&self) -> &ResidueField {
        self.k.residue()
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    /// Valuation, or None when the series is zero modulo pi^prec.
    pub fn valuation(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.offset)
    }
    /// Valuation, or prec for a series that is zero to known precision.
    pub fn val_or_prec(&self) -> i64 {
        self.offset
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Coefficient of pi^n (zero outside the known range).
    pub fn coeff(&self, n: i64) -> RElem {
        if n < self.offset || n >= self.prec {
            return 0;
        }
        self.c.get((n - self.offset) as usize).copied().unwrap_or(0)
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }
    /// One past the last stored coefficient.
    fn end(&self) -> i64 {
        self.offset + self.c.len() as i64
    }
    /// Leading coefficient; zero for the zero series.
    pub fn lead(&self) -> RElem {
        self.c.first().copied().unwrap_or(0)
    }
    /// Relative precision prec - valuation.
    pub fn rel_prec(&self) -> i64 {
        self.prec - self.offset
    }

    /// Drops knowledge beyond pi^prec.
    pub fn truncate(&self, prec: i64) -> LaurentSeries {
        if prec >= self.prec {
            return self.clone();
        }
        LaurentSeries::from_coeffs(&self.k, self.offset, self.c.clone(), prec)
    }
    /// Claims extra precision by padding with zeros; used for exact data.
    pub fn extend_exact(&self, prec: i64) -> LaurentSeries {
        if prec <= self.prec {
            return self.truncate(prec);
        }
        LaurentSeries::from_coeffs(&self.k, self.offset.min(self.prec), self.c.clone(), prec)
    }

    pub fn add(&self, o: &LaurentSeries) -> LaurentSeries {
        let r = &self.k.0.k;
        let prec = self.prec.min(o.prec);
        if self.c.is_empty() {
            return o.truncate(prec);
        }
        if o.c.is_empty() {
            return self.truncate(prec);
        }
        let lo = self.offset.min(o.offset).min(prec);
        let hi = self.end().max(o.end()).min(prec);
        let c = (lo..hi).map(|n| r.add(self.coeff(n), o.coeff(n))).collect();
        LaurentSeries::from_coeffs(&self.k, lo, c, prec)
    }
    pub fn neg(&self) -> LaurentSeries {
        let r = &self.k.0.k;
        LaurentSeries { k: self.k.clone(), offset: self.offset, c: self.c.iter().map(|&x| r.neg(x)).collect(), prec: self.prec }
    }
    pub fn sub(&self, o: &LaurentSeries) -> LaurentSeries {
        self.add(&o.neg())
    }
    /// Multiplication by a residue-field constant.
    pub fn scale(&self, a: RElem) -> LaurentSeries {
        let r = &self.k.0.k;
        let c = self.c.iter().map(|&x| r.mul(a, x)).collect();
        LaurentSeries::from_coeffs(&self.k, self.offset, c, self.prec)
    }
    /// Multiplication by pi^n.
    pub fn shift(&self, n: i64) -> LaurentSeries {
        let prec = if self.is_exact() { EXACT } else { cap(self.prec + n) };
        LaurentSeries { k: self.k.clone(), offset: self.offset + n, c: self.c.clone(), prec }
    }

    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        let r = &self.k.0.k;
        let (va, vb) = (self.offset, o.offset);
        let prec = cap((va + o.prec).min(vb + self.prec));
        if self.is_zero() || o.is_zero() {
            return LaurentSeries::zero(&self.k, prec);
        }
        let lo = va + vb;
        let len = ((prec - lo).max(0) as usize).min(self.c.len() + o.c.len() - 1);
        let mut c = vec![0; len];
        for (i, &x) in self.c.iter().enumerate().take(len) {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate().take(len - i) {
                if y != 0 {
                    c[i + j] = r.add(c[i + j], r.mul(x, y));
                }
            }
        }
        LaurentSeries::from_coeffs(&self.k, lo, c, prec)
    }

    pub fn inv(&self) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let r = &self.k.0.k;
        let v = self.offset;
        if self.is_exact() {
            if self.c.len() == 1 {
                return Ok(LaurentSeries::monomial(&self.k, r.inv(self.c[0]), -v, EXACT));
            }
            return Err(Error::PrecisionExhausted("inverse of an exact series needs a working precision".into()));
        }
        let len = (self.prec - v) as usize;
        let l0 = r.inv(self.c[0]);
        let mut b = vec![0; len];
        b[0] = l0;
        for n in 1..len {
            let mut s = 0;
            for i in 1..=n.min(self.c.len() - 1) {
                if self.c[i] != 0 && b[n - i] != 0 {
                    s = r.add(s, r.mul(self.c[i], b[n - i]));
                }
            }
            b[n] = r.neg(r.mul(l0, s));
        }
        Ok(LaurentSeries::from_coeffs(&self.k, -v, b, self.prec - 2 * v))
    }
    pub fn div(&self, o: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&o.inv()?))
    }
    pub fn pow(&self, n: u64) -> LaurentSeries {
        if n == 0 {
            return LaurentSeries::one(&self.k, self.prec.max(1));
        }
        let mut acc: Option<LaurentSeries> = None;
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("n > 0")
    }
    /// self^(q^k): coefficients raised to q^k, exponents and precision scaled.
    pub fn frob_pow(&self, k: u32) -> LaurentSeries {
        let r = &self.k.0.k;
        let m = (self.k.q() as i64).pow(k);
        let prec = if self.is_exact() { EXACT } else { cap(self.prec.saturating_mul(m)) };
        if self.c.is_empty() {
            return LaurentSeries::zero(&self.k, prec);
        }
        let mut c = vec![0; (self.c.len() - 1) * m as usize + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * m as usize] = r.frob(x, k);
        }
        LaurentSeries::from_coeffs(&self.k, self.offset * m, c, prec)
    }
    /// Frobenius applied to the coefficients only (sum c_i^{q^k} pi^i).
    pub fn frob_coeffs(&self, k: u32) -> LaurentSeries {
        let r = &self.k.0.k;
        LaurentSeries { k: self.k.clone(), offset: self.offset, c: self.c.iter().map(|&x| r.frob(x, k)).collect(), prec: self.prec }
    }

    /// Stored coefficients from the offset on; later ones are zero.
    pub fn coeffs(&self) -> &[RElem] {
        &self.c
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.residue();
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let n = self.offset + i as i64;
            let mono = match n {
                0 => String::new(),
                1 => "pi".to_string(),
                _ => format!("pi^{n}"),
            };
            let coef = r.fmt_elem(a);
            terms.push(match (coef.as_str(), mono.is_empty()) {
                (_, true) => coef,
                ("1", false) => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        if !self.is_exact() {
            terms.push(format!("O(pi^{})", self.prec));
        } else if terms.is_empty() {
            terms.push("0".into());
        }
        write!(out, "{}", terms.join(" + "))
    }
}
impl fmt::Debug for LaurentSeries {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_examples() {
        let f = Fq::new(3).unwrap();
        let pt = Place::finite(Poly::t(f)).unwrap();
        let k = LocalField::new(f, &pt).unwrap();
        let x = RatFunc::new(Poly::one(f), Poly::from_coeffs(f, vec![1, 2])).unwrap();
        let s = k.embed(&x, 3);
        assert_eq!(s.to_string(), "1 + pi + pi^2 + O(pi^3)");

        let inf = LocalField::new(f, &Place::Infinite).unwrap();
        let s = inf.embed(&RatFunc::t(f), 2);
        assert_eq!((s.valuation(), s.prec(), s.lead()), (Some(-1), 2, 1));
        assert_eq!(s.to_string(), "pi^-1 + O(pi^2)");

        let tp1 = Poly::from_coeffs(f, vec![1, 1]);
        let k1 = LocalField::new(f, &Place::finite(tp1.clone()).unwrap()).unwrap();
        let s = k1.embed(&RatFunc::from_poly(&tp1 * &tp1), 5);
        assert_eq!(s.to_string(), "pi^2 + O(pi^5)");
    }

    #[test]
    fn degree_two_place_uniformizer() {
        let f = Fq::new(3).unwrap();
        let p = Poly::from_coeffs(f, vec![1, 0, 1]);
        let k = LocalField::new(f, &Place::finite(p.clone()).unwrap()).unwrap();
        // p(t) embeds as pi exactly
        let s = k.embed(&RatFunc::from_poly(p.clone()), 8);
        assert_eq!(s, LaurentSeries::monomial(&k, 1, 1, 8));
        let x = RatFunc::new(Poly::from_coeffs(f, vec![2, 1]), &p * &p).unwrap();
        let s = k.embed(&x, 6);
        assert_eq!(s.valuation(), Some(-2));
        // x * p^2 == t + 2
        let back = s.mul(&k.embed(&RatFunc::from_poly(&p * &p), 10));
        assert_eq!(back.truncate(4), k.embed(&RatFunc::from_poly(Poly::from_coeffs(f, vec![2, 1])), 4));
    }

    #[test]
    fn precision_contracts() {
        let f = Fq::new(5).unwrap();
        let k = LocalField::new(f, &Place::finite(Poly::t(f)).unwrap()).unwrap();
        let a = LaurentSeries::from_coeffs(&k, 1, vec![1, 2, 3], 4);
        let b = LaurentSeries::from_coeffs(&k, -1, vec![2, 0, 1], 6);
        assert_eq!(a.add(&b).prec(), 4);
        assert_eq!(a.mul(&b).prec(), (1 + 6).min(-1 + 4));
        let ai = a.inv().unwrap();
        assert_eq!(ai.prec(), 4 - 2);
        assert_eq!(a.mul(&ai).truncate(1), LaurentSeries::one(&k, 1));
        assert_eq!(a.frob_pow(1).prec(), 20);
        assert_eq!(a.frob_pow(1).truncate(8), a.pow(5));
    }
}
