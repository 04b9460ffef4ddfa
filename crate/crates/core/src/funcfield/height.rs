use super::place::{log_abs, support, support_of, LogValue, Place};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Sum of log|x|_v over the support of x and infinity; zero for every x != 0.
pub fn product_formula_check(x: &RatFunc) -> Result<LogValue> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut s = LogValue::from_integer(0);
    for v in support(x) {
        s += log_abs(x, &v)?;
    }
    Ok(s)
}

/// h(x) = sum over places of log+|x|_v.
pub fn height(x: &RatFunc) -> LogValue {
    if x.is_zero() {
        return LogValue::from_integer(0);
    }
    let mut s = LogValue::from_integer(0);
    for v in support(x) {
        let l = log_abs(x, &v).expect("nonzero");
        if l > LogValue::from_integer(0) {
            s += l;
        }
    }
    s
}

/// A point of weighted projective space over L.
#[derive(Clone, Debug)]
pub struct WeightedPoint {
    coords: Vec<RatFunc>,
    weights: Vec<u64>,
}

impl WeightedPoint {
    pub fn new(coords: Vec<RatFunc>, weights: Vec<u64>) -> Result<WeightedPoint> {
        if coords.is_empty() || coords.len() != weights.len() {
            return Err(Error::Invalid("coordinates and weights must be nonempty and of equal length".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Invalid("weights must be positive".into()));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("all coordinates are zero".into()));
        }
        Ok(WeightedPoint { coords, weights })
    }
    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// x_i -> alpha^{w_i} x_i
    pub fn scaled(&self, alpha: &RatFunc) -> Result<WeightedPoint> {
        let coords = self
            .coords
            .iter()
            .zip(&self.weights)
            .map(|(c, &w)| Ok(c * &alpha.pow(w as i64)?))
            .collect::<Result<Vec<_>>>()?;
        WeightedPoint::new(coords, self.weights.clone())
    }

    /// Equality in weighted projective space.
    ///
    /// With r_i = y_i / x_i on the common support, g = gcd(w_i) and a Bezout
    /// relation sum c_i w_i = g, the points agree iff beta = prod r_i^{c_i}
    /// satisfies beta^{w_i/g} = r_i for every i (alpha is then any g-th root
    /// of beta, possibly outside L).
    pub fn equivalent(&self, other: &WeightedPoint) -> bool {
        if self.weights != other.weights {
            return false;
        }
        let mut ratios = Vec::new();
        let mut ws = Vec::new();
        for ((x, y), &w) in self.coords.iter().zip(&other.coords).zip(&self.weights) {
            match (x.is_zero(), y.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    ratios.push(y.div(x).expect("nonzero"));
                    ws.push(w as i64);
                }
                _ => return false,
            }
        }
        let (g, cs) = bezout(&ws);
        let mut beta = RatFunc::one(ratios[0].field());
        for (r, &c) in ratios.iter().zip(&cs) {
            beta = &beta * &r.pow(c).expect("nonzero");
        }
        ratios.iter().zip(&ws).all(|(r, &w)| beta.pow(w / g).expect("nonzero") == *r)
    }
}

/// (g, c) with sum c_i a_i = g = gcd(a).
fn bezout(a: &[i64]) -> (i64, Vec<i64>) {
    let mut g = a[0];
    let mut c = vec![0i64; a.len()];
    c[0] = 1;
    for i in 1..a.len() {
        // extended Euclid on (g, a_i)
        let (mut r0, mut r1) = (g, a[i]);
        let (mut s0, mut s1) = (1i64, 0i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (s0, s1) = (s1, s0 - qt * s1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        for cj in c.iter_mut().take(i) {
            *cj *= s0;
        }
        c[i] = t0;
        g = r0;
    }
    (g, c)
}

/// h(P) = sum_v max_i log|x_i|_v / w_i over nonzero coordinates.
pub fn weighted_height(p: &WeightedPoint) -> LogValue {
    let nz: Vec<(&RatFunc, u64)> = p.coords.iter().zip(&p.weights).filter(|(c, _)| !c.is_zero()).map(|(c, &w)| (c, w)).collect();
    let mut total = LogValue::from_integer(0);
    for v in support_of(nz.iter().map(|(c, _)| *c)) {
        total += local_weighted_max(&nz, &v);
    }
    total
}

fn local_weighted_max(nz: &[(&RatFunc, u64)], v: &Place) -> LogValue {
    nz.iter()
        .map(|(c, w)| log_abs(c, v).expect("nonzero") / LogValue::from_integer(*w as i64))
        .max()
        .expect("some coordinate is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{Fq, Poly};

    #[test]
    fn heights() {
        let f = Fq::new(3).unwrap();
        let t = RatFunc::t(f);
        assert_eq!(height(&t), LogValue::from_integer(1));
        assert_eq!(height(&t.inv().unwrap()), LogValue::from_integer(1));
        assert_eq!(height(&RatFunc::constant(f, 2)), LogValue::from_integer(0));
        assert_eq!(product_formula_check(&t).unwrap(), LogValue::from_integer(0));
    }

    #[test]
    fn product_formula_f5_example() {
        let f = Fq::new(5).unwrap();
        let x = RatFunc::new(Poly::from_coeffs(f, vec![1, 0, 1]), Poly::linear(f, 1)).unwrap();
        assert_eq!(product_formula_check(&x).unwrap(), LogValue::from_integer(0));
    }

    #[test]
    fn weighted_examples() {
        let f = Fq::new(3).unwrap();
        let p = WeightedPoint::new(vec![RatFunc::one(f), RatFunc::t(f)], vec![2, 8]).unwrap();
        assert_eq!(weighted_height(&p), LogValue::new(1, 8));
        let c = WeightedPoint::new(vec![RatFunc::constant(f, 2), RatFunc::one(f)], vec![3, 5]).unwrap();
        assert_eq!(weighted_height(&c), LogValue::from_integer(0));
        let x = RatFunc::new(Poly::from_coeffs(f, vec![1, 1, 1]), Poly::t(f)).unwrap();
        // a single nonzero coordinate is the point [1 : 0], so the product formula gives 0
        let single = WeightedPoint::new(vec![x, RatFunc::zero(f)], vec![4, 7]).unwrap();
        assert_eq!(weighted_height(&single), LogValue::from_integer(0));
    }

    #[test]
    fn roots_of_unity_are_not_enough() {
        // (1, 1) and (1, -1) with weights (2, 8): the cross-power ratios agree,
        // but alpha^2 = 1 forces alpha^8 = 1, so the points differ.
        let f = Fq::new(5).unwrap();
        let one = RatFunc::one(f);
        let a = WeightedPoint::new(vec![one.clone(), one.clone()], vec![2, 8]).unwrap();
        let b = WeightedPoint::new(vec![one.clone(), -&one], vec![2, 8]).unwrap();
        assert!(!a.equivalent(&b));
        let t = RatFunc::t(f);
        assert!(a.equivalent(&a.scaled(&t).unwrap()));
    }

    #[test]
    fn bezout_relation() {
        let (g, c) = bezout(&[4, 24, 124]);
        assert_eq!(g, 4);
        assert_eq!(c[0] * 4 + c[1] * 24 + c[2] * 124, 4);
        let (g, c) = bezout(&[6, 10, 15]);
        assert_eq!(g, 1);
        assert_eq!(c[0] * 6 + c[1] * 10 + c[2] * 15, 1);
    }
}
