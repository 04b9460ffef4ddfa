use std::fmt;

use crate::funcfield::{Elem, Fq, RatFunc};
use crate::localfield::LaurentSeries;

/// sum c_i tau^i, acting as x -> sum c_i x^{q^i}; multiplication is composition.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedPoly {
    f: Fq,
    c: Vec<RatFunc>,
}

impl TwistedPoly {
    pub fn new(f: Fq, mut c: Vec<RatFunc>) -> TwistedPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        TwistedPoly { f, c }
    }
    pub fn zero(f: Fq) -> TwistedPoly {
        TwistedPoly { f, c: Vec::new() }
    }
    /// The scalar map x -> a x for a in F_q.
    pub fn scalar(f: Fq, a: Elem) -> TwistedPoly {
        TwistedPoly::new(f, vec![RatFunc::constant(f, a)])
    }
    pub fn field(&self) -> Fq {
        self.f
    }
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> RatFunc {
        self.c.get(i).cloned().unwrap_or_else(|| RatFunc::zero(self.f))
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Degree in tau; -1 for zero.
    pub fn tau_degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    /// Degree as a polynomial in x.
    pub fn x_degree(&self) -> u64 {
        if self.c.is_empty() {
            return 0;
        }
        (self.f.q() as u64).pow(self.c.len() as u32 - 1)
    }

    pub fn add(&self, o: &TwistedPoly) -> TwistedPoly {
        let n = self.c.len().max(o.c.len());
        TwistedPoly::new(self.f, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
    /// (self * o)(x) = self(o(x)); (f g)_k = sum_{i+j=k} f_i g_j^{q^i}.
    pub fn mul(&self, o: &TwistedPoly) -> TwistedPoly {
        if self.is_zero() || o.is_zero() {
            return TwistedPoly::zero(self.f);
        }
        let mut c = vec![RatFunc::zero(self.f); self.c.len() + o.c.len() - 1];
        for (i, fi) in self.c.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in o.c.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                c[i + j] = &c[i + j] + &(fi * &gj.frob_pow(i as u32));
            }
        }
        TwistedPoly::new(self.f, c)
    }
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.f);
        let mut xp = x.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                xp = xp.frob_pow(1);
            }
            if !c.is_zero() {
                acc = &acc + &(c * &xp);
            }
        }
        acc
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(out, "0");
        }
        let q = self.f.q() as u64;
        let mut terms = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = if i == 0 { "x".to_string() } else { format!("x^{}", q.pow(i as u32)) };
            let cs = c.to_string();
            terms.push(if cs == "1" {
                x
            } else if cs.contains(' ') {
                format!("({cs})*{x}")
            } else {
                format!("{cs}*{x}")
            });
        }
        write!(out, "{}", terms.join(" + "))
    }
}
impl fmt::Debug for TwistedPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

/// Composition of additive polynomials with series coefficients.
pub fn series_compose(f: &[LaurentSeries], g: &[LaurentSeries]) -> Vec<LaurentSeries> {
    let mut c: Vec<Option<LaurentSeries>> = vec![None; f.len() + g.len() - 1];
    for (i, fi) in f.iter().enumerate() {
        for (j, gj) in g.iter().enumerate() {
            let term = fi.mul(&gj.frob_pow(i as u32));
            c[i + j] = Some(match c[i + j].take() {
                None => term,
                Some(s) => s.add(&term),
            });
        }
    }
    c.into_iter().map(|x| x.expect("filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_rule() {
        let f = Fq::new(3).unwrap();
        let t = RatFunc::t(f);
        let one = RatFunc::one(f);
        let phi = TwistedPoly::new(f, vec![t.clone(), one.clone()]);
        let sq = phi.mul(&phi);
        let expect = TwistedPoly::new(f, vec![t.pow(2).unwrap(), &t.frob_pow(1) + &t, one]);
        assert_eq!(sq, expect);
        let x = &t + &RatFunc::one(f);
        assert_eq!(sq.eval(&x), phi.eval(&phi.eval(&x)));
        assert_eq!(sq.x_degree(), 9);
        assert_eq!(phi.to_string(), "t*x + x^3");
    }
}
