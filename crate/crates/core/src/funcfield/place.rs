use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use super::fq::Fq;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Logarithms of absolute values, in units of log q.
pub type LogValue = Ratio<i64>;

/// A place of F_q(t): the infinite place or a monic irreducible polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Infinite,
    Finite(Poly),
}

impl Place {
    pub fn finite(p: Poly) -> Result<Place> {
        if !p.is_monic() || !p.is_irreducible() {
            return Err(Error::Invalid(format!("{p} is not a monic irreducible polynomial")));
        }
        Ok(Place::Finite(p))
    }
    pub fn deg(&self) -> i64 {
        match self {
            Place::Infinite => 1,
            Place::Finite(p) => p.deg(),
        }
    }
    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }
    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Infinite => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Place {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
            (Place::Infinite, _) => Ordering::Less,
            (_, Place::Infinite) => Ordering::Greater,
            (Place::Finite(a), Place::Finite(b)) => a.place_cmp(b),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(out, "inf"),
            Place::Finite(p) => write!(out, "{p}"),
        }
    }
}
impl fmt::Debug for Place {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

/// ord_v(x); None encodes +infinity (x = 0).
pub fn valuation(x: &RatFunc, v: &Place) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(match v {
        Place::Infinite => x.den().deg() - x.num().deg(),
        Place::Finite(p) => x.num().ord(p) as i64 - x.den().ord(p) as i64,
    })
}

/// log|x|_v = -v(x) deg(v).
pub fn log_abs(x: &RatFunc, v: &Place) -> Result<LogValue> {
    let val = valuation(x, v).ok_or(Error::ZeroArgument)?;
    Ok(LogValue::from_integer(-val * v.deg()))
}

/// Places where x has a zero or pole, together with infinity, sorted.
pub fn support(x: &RatFunc) -> Vec<Place> {
    let mut out = vec![Place::Infinite];
    if x.is_zero() {
        return out;
    }
    for p in [x.num(), x.den()] {
        if p.deg() > 0 {
            out.extend(p.factor().into_iter().map(|(g, _)| Place::Finite(g)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Union of supports.
pub fn support_of<'a>(xs: impl IntoIterator<Item = &'a RatFunc>) -> Vec<Place> {
    let mut out = vec![Place::Infinite];
    for x in xs {
        out.extend(support(x));
    }
    out.sort();
    out.dedup();
    out
}

/// Infinity followed by every monic irreducible of degree <= max_deg, in place order.
pub fn enumerate_places(f: Fq, max_deg: usize) -> Vec<Place> {
    let mut out = vec![Place::Infinite];
    for d in 1..=max_deg {
        out.extend(Poly::monics_of_degree(f, d).into_iter().filter(|p| p.is_irreducible()).map(Place::Finite));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let f = Fq::new(3).unwrap();
        let t = RatFunc::t(f);
        let pt = Place::finite(Poly::t(f)).unwrap();
        assert_eq!(valuation(&t, &pt), Some(1));
        assert_eq!(valuation(&t, &Place::Infinite), Some(-1));
        let p2 = Poly::from_coeffs(f, vec![1, 0, 1]);
        let x = RatFunc::new(p2.clone(), Poly::t(f)).unwrap();
        assert_eq!(valuation(&x, &Place::finite(p2).unwrap()), Some(1));
        assert_eq!(valuation(&RatFunc::zero(f), &pt), None);
    }

    #[test]
    fn log_abs_examples() {
        let f = Fq::new(5).unwrap();
        let t = RatFunc::t(f);
        assert_eq!(log_abs(&t, &Place::Infinite).unwrap(), LogValue::from_integer(1));
        let pt = Place::finite(Poly::t(f)).unwrap();
        assert_eq!(log_abs(&t.pow(2).unwrap(), &pt).unwrap(), LogValue::from_integer(-2));
        let tp1 = Poly::linear(f, f.neg(1));
        let x = RatFunc::from_poly(tp1.clone()).inv().unwrap();
        assert_eq!(log_abs(&x, &Place::finite(tp1).unwrap()).unwrap(), LogValue::from_integer(1));
        assert_eq!(log_abs(&RatFunc::zero(f), &pt), Err(Error::ZeroArgument));
    }

    #[test]
    fn place_enumeration() {
        let f = Fq::new(2).unwrap();
        let names: Vec<String> = enumerate_places(f, 1).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["inf", "t", "t + 1"]);
        let two = enumerate_places(f, 2);
        assert_eq!(two.len(), 4);
        assert_eq!(two[3].to_string(), "t^2 + t + 1");
        let f3 = Fq::new(3).unwrap();
        assert_eq!(enumerate_places(f3, 2).iter().filter(|p| p.deg() == 2 && !p.is_infinite()).count(), 3);
    }

    #[test]
    fn rejects_reducible_place() {
        let f = Fq::new(2).unwrap();
        assert!(Place::finite(Poly::from_coeffs(f, vec![1, 0, 1])).is_err());
        assert!(Place::finite(Poly::from_coeffs(f, vec![0, 0, 1])).is_err());
    }
}
