use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fq::{Elem, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

/// An element of L = F_q(t) in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        let f = num.field();
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(f) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        if !d.is_monic() {
            let inv = f.inv(d.lc());
            n = n.scale(inv);
            d = d.scale(inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let f = p.field();
        RatFunc { num: p, den: Poly::one(f) }
    }
    pub fn zero(f: Fq) -> RatFunc {
        RatFunc::from_poly(Poly::zero(f))
    }
    pub fn one(f: Fq) -> RatFunc {
        RatFunc::from_poly(Poly::one(f))
    }
    pub fn constant(f: Fq, a: Elem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(f, a))
    }
    pub fn t(f: Fq) -> RatFunc {
        RatFunc::from_poly(Poly::t(f))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn field(&self) -> Fq {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    /// Height in units of log q: max(deg num, deg den).
    pub fn naive_degree(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.num.deg().max(self.den.deg())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }
    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self * &o.inv()?)
    }
    pub fn scale(&self, a: Elem) -> RatFunc {
        if a == 0 {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(a), den: self.den.clone() }
    }
    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, n: i64) -> Result<RatFunc> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        Ok(RatFunc { num: self.num.pow(n as u64), den: self.den.pow(n as u64) })
    }
    /// self^(q^k).
    pub fn frob_pow(&self, k: u32) -> RatFunc {
        RatFunc { num: self.num.frob_pow(k), den: self.den.frob_pow(k) }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let a = o.den.div_exact(&g);
        let b = self.den.div_exact(&g);
        RatFunc::reduce(&(&self.num * &a) + &(&o.num * &b), &self.den * &a)
    }
}
impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}
impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}
impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        // cross-cancel first to keep intermediate degrees down
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = o.den.div_exact(&g1);
        let n2 = o.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = num.field().inv(den.lc());
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }
}
macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(out, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.contains(' ') || s.contains('*') || s.contains('^') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(out, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
impl fmt::Debug for RatFunc {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}
