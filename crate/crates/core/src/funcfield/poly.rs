//! Dense univariate polynomials over F_q; used both for A = F_q[T] and for
//! numerators and denominators in L = F_q(t).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fq::{Elem, Fq};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    f: Fq,
    c: Vec<Elem>,
}

impl Poly {
    pub fn from_coeffs(f: Fq, mut c: Vec<Elem>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { f, c }
    }
    pub fn zero(f: Fq) -> Poly {
        Poly { f, c: Vec::new() }
    }
    pub fn one(f: Fq) -> Poly {
        Poly::constant(f, 1)
    }
    pub fn constant(f: Fq, a: Elem) -> Poly {
        Poly::from_coeffs(f, vec![a])
    }
    /// The variable t.
    pub fn t(f: Fq) -> Poly {
        Poly::monomial(f, 1, 1)
    }
    pub fn monomial(f: Fq, a: Elem, k: usize) -> Poly {
        let mut c = vec![0; k + 1];
        c[k] = a;
        Poly::from_coeffs(f, c)
    }
    /// t - a
    pub fn linear(f: Fq, a: Elem) -> Poly {
        Poly::from_coeffs(f, vec![f.neg(a), 1])
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.f
    }
    #[inline]
    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }
    pub fn coeff(&self, k: usize) -> Elem {
        self.c.get(k).copied().unwrap_or(0)
    }
    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Degree, with -1 standing for the zero polynomial.
    #[inline]
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lc(&self) -> Elem {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn scale(&self, a: Elem) -> Poly {
        if a == 0 {
            return Poly::zero(self.f);
        }
        let f = self.f;
        Poly { f, c: self.c.iter().map(|&x| f.mul(x, a)).collect() }
    }
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.f.inv(self.lc()))
    }
    /// Multiplication by t^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { f: self.f, c }
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = self.f;
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.f;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| f.mul(a, f.from_int(k as i64)))
            .collect();
        Poly::from_coeffs(f, c)
    }

    /// self^(q^k), computed by spreading exponents (constants are Frobenius-fixed).
    pub fn frob_pow(&self, k: u32) -> Poly {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        let step = (self.f.q() as usize).pow(k);
        let mut c = vec![0; (self.c.len() - 1) * step + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * step] = a;
        }
        Poly { f: self.f, c }
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.f);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.f;
        if self.deg() < d.deg() {
            return (Poly::zero(f), self.clone());
        }
        let dd = d.c.len() - 1;
        let inv = f.inv(d.lc());
        let mut r = self.c.clone();
        let mut qt = vec![0; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let a = r[k];
            if a == 0 {
                continue;
            }
            let m = f.mul(a, inv);
            qt[k - dd] = m;
            for j in 0..=dd {
                let idx = k - dd + j;
                r[idx] = f.sub(r[idx], f.mul(m, d.c[j]));
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(f, qt), Poly::from_coeffs(f, r))
    }
    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }
    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, u) with s*self + u*other = g monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.f;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            let s = &s0 - &(&qt * &s1);
            let t = &t0 - &(&qt * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lc());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }
    pub fn powmod(&self, mut n: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.f).rem(m);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            n >>= 1;
            if n > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// Multiplicity of the irreducible p in self (self nonzero).
    pub fn ord(&self, p: &Poly) -> u32 {
        let mut x = self.clone();
        let mut k = 0;
        loop {
            let (qt, r) = x.divrem(p);
            if !r.is_zero() {
                return k;
            }
            x = qt;
            k += 1;
        }
    }

    /// Rabin's test: deg n, t^(q^n) = t mod f and gcd(t^(q^(n/l)) - t, f) = 1 for primes l | n.
    pub fn is_irreducible(&self) -> bool {
        let n = self.deg();
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.f.q() as u64;
        let t = Poly::t(self.f);
        let n = n as u64;
        let frob = |k: u64| -> Poly {
            let mut x = t.clone();
            for _ in 0..k {
                x = x.powmod(q, &f);
            }
            x
        };
        for l in prime_divisors(n) {
            let x = frob(n / l);
            if !(&x - &t).gcd(&f).is_one() {
                return false;
            }
        }
        (&frob(n) - &t).rem(&f).is_zero()
    }

    /// Factorization into monic irreducibles with multiplicities, sorted by place order.
    pub fn factor(&self) -> Vec<(Poly, u32)> {
        assert!(!self.is_zero(), "factor of zero");
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for (sq, m) in squarefree(&self.monic()) {
            for (d, g) in distinct_degree(&sq) {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (d as u64));
                for p in equal_degree(&g, d, &mut rng) {
                    out.push((p, m));
                }
            }
        }
        out.sort_by(|a, b| a.0.place_cmp(&b.0));
        // merge equal factors arising from separate squarefree layers
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some((lp, lm)) if *lp == p => *lm += m,
                _ => merged.push((p, m)),
            }
        }
        merged
    }

    /// Total order used for places: degree first, then coefficients from the
    /// top down compared as a base-q number.
    pub fn place_cmp(&self, other: &Poly) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }

    /// All monic polynomials of exact degree d, in place order.
    pub fn monics_of_degree(f: Fq, d: usize) -> Vec<Poly> {
        if d == 0 {
            return vec![Poly::one(f)];
        }
        let lead = Poly::monomial(f, 1, d);
        let mut v: Vec<Poly> = Poly::all_up_to_degree(f, d - 1).iter().map(|p| p + &lead).collect();
        v.sort_by(|a, b| a.place_cmp(b));
        v
    }

    /// All polynomials (including zero) of degree <= d.
    pub fn all_up_to_degree(f: Fq, d: usize) -> Vec<Poly> {
        let q = f.q() as usize;
        let count = q.pow(d as u32 + 1);
        (0..count)
            .map(|idx| {
                let mut c = vec![0; d + 1];
                let mut x = idx;
                for a in c.iter_mut() {
                    *a = (x % q) as Elem;
                    x /= q;
                }
                Poly::from_coeffs(f, c)
            })
            .collect()
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            v.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        v.push(n);
    }
    v
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(a: &Poly) -> Poly {
    let f = a.f;
    let p = f.p() as usize;
    let e = f.e();
    // x^(1/p) = x^(p^(e-1)) in F_q
    let root = |x: Elem| f.pow(x, (p as u64).pow(e - 1));
    let c = a.c.iter().step_by(p).map(|&x| root(x)).collect();
    Poly::from_coeffs(f, c)
}

/// Squarefree decomposition of a monic polynomial: pairs (g, m) with g squarefree.
fn squarefree(a: &Poly) -> Vec<(Poly, u32)> {
    let f = a.f;
    let p = f.p();
    let mut out = Vec::new();
    if a.deg() < 1 {
        return out;
    }
    let d = a.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&pth_root(a)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = a.gcd(&d);
    let mut w = a.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(a: &Poly) -> Vec<(usize, Poly)> {
    let f = a.f;
    let q = f.q() as u64;
    let t = Poly::t(f);
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = t.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d as i64 + 1) {
        d += 1;
        h = h.powmod(q, &rest);
        let g = (&h - &t).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg() as usize, rest));
    }
    out
}

fn equal_degree(a: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if a.deg() as usize == d {
        return vec![a.clone()];
    }
    let f = a.f;
    let q = f.q() as u64;
    let n = a.deg() as usize;
    loop {
        let r = Poly::from_coeffs(f, (0..n).map(|_| rng.gen_range(0..q) as Elem).collect());
        if r.is_constant() {
            continue;
        }
        let s = if f.p() == 2 {
            // trace to F_2: sum of r^(2^i) for i < e*d
            let mut acc = Poly::zero(f);
            let mut x = r.rem(a);
            for _ in 0..(f.e() as usize * d) {
                acc = &acc + &x;
                x = x.mulmod(&x, a);
            }
            acc
        } else {
            // r^((q^d - 1)/2) = (r^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut norm = Poly::one(f);
            let mut x = r.rem(a);
            for _ in 0..d {
                norm = norm.mulmod(&x, a);
                x = x.powmod(q, a);
            }
            &norm.powmod((q - 1) / 2, a) - &Poly::one(f)
        };
        let g = s.gcd(a);
        if g.deg() > 0 && g.deg() < a.deg() {
            let h = a.div_exact(&g);
            let mut v = equal_degree(&g, d, rng);
            v.extend(equal_degree(&h, d, rng));
            return v;
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let f = self.f;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| f.add(self.coeff(k), o.coeff(k))).collect();
        Poly::from_coeffs(f, c)
    }
}
impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let f = self.f;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| f.sub(self.coeff(k), o.coeff(k))).collect();
        Poly::from_coeffs(f, c)
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.f;
        Poly { f, c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }
}
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let f = self.f;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(f);
        }
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] = f.add(c[i + j], f.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(f, c)
    }
}
macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = self.f;
        let mut first = true;
        for k in (0..self.c.len()).rev() {
            let a = self.c[k];
            if a == 0 {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let coef = if f.is_compound(a) { format!("({})", f.fmt_elem(a)) } else { f.fmt_elem(a) };
            let mon = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            match (k, a) {
                (0, _) => write!(out, "{coef}")?,
                (_, 1) => write!(out, "{mon}")?,
                _ => write!(out, "{coef}*{mon}")?,
            }
        }
        Ok(())
    }
}
impl fmt::Debug for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: Fq, c: &[u8]) -> Poly {
        Poly::from_coeffs(f, c.to_vec())
    }

    #[test]
    fn divrem_roundtrip() {
        let f = Fq::new(5).unwrap();
        for a in Poly::all_up_to_degree(f, 3).iter().step_by(7) {
            for b in Poly::all_up_to_degree(f, 2).iter().skip(1).step_by(5) {
                let (qt, r) = a.divrem(b);
                assert_eq!(&(&qt * b) + &r, *a);
                assert!(r.deg() < b.deg());
            }
        }
    }

    #[test]
    fn xgcd_identity() {
        let f = Fq::new(3).unwrap();
        let a = p(f, &[1, 0, 1, 2]);
        let b = p(f, &[2, 1, 1]);
        let (g, s, u) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&u * &b), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn irreducible_counts_match_necklaces() {
        for q in [2u32, 3, 4, 5] {
            let f = Fq::new(q).unwrap();
            for d in 1..=3usize {
                let count = Poly::monics_of_degree(f, d).iter().filter(|m| m.is_irreducible()).count();
                assert_eq!(count as u64, necklace(q as u64, d as u64), "q={q} d={d}");
            }
        }
    }

    fn necklace(q: u64, n: u64) -> u64 {
        let mu = |m: u64| -> i64 {
            let mut m = m;
            let mut k = 0;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    m /= p;
                    if m % p == 0 {
                        return 0;
                    }
                    k += 1;
                }
                p += 1;
            }
            if m > 1 {
                k += 1;
            }
            if k % 2 == 0 {
                1
            } else {
                -1
            }
        };
        let s: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mu(n / d) * (q.pow(d as u32) as i64)).sum();
        (s / n as i64) as u64
    }

    #[test]
    fn factor_reconstructs() {
        for q in [2u32, 3, 4, 5, 9] {
            let f = Fq::new(q).unwrap();
            let polys = Poly::all_up_to_degree(f, 4);
            for a in polys.iter().filter(|a| !a.is_zero()).step_by(3) {
                let fac = a.factor();
                let mut prod = Poly::constant(f, a.lc());
                for (g, m) in &fac {
                    assert!(g.is_irreducible() && g.is_monic());
                    prod = &prod * &g.pow(*m as u64);
                }
                assert_eq!(prod, *a, "q={q}");
            }
        }
    }

    #[test]
    fn factor_inseparable_power() {
        let f = Fq::new(2).unwrap();
        let a = p(f, &[1, 1, 1]).pow(4);
        assert_eq!(a.factor(), vec![(p(f, &[1, 1, 1]), 4)]);
    }

    #[test]
    fn frobenius_spreads() {
        let f = Fq::new(3).unwrap();
        let a = p(f, &[1, 2, 0, 1]);
        assert_eq!(a.frob_pow(1), a.pow(3));
        assert_eq!(a.frob_pow(2), a.pow(9));
    }

    #[test]
    fn display() {
        let f = Fq::new(5).unwrap();
        assert_eq!(p(f, &[1, 0, 3]).to_string(), "3*t^2 + 1");
        assert_eq!(p(f, &[0, 1]).to_string(), "t");
    }
}
