//! The finite field F_q, q = p^e <= 256, as lookup tables.
//!
//! Elements are bytes encoding coordinates in the basis 1, z, ..., z^{e-1}
//! over F_p (little-endian base-p digits), where z is a root of the first
//! monic irreducible polynomial of degree e over F_p in lexicographic order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

pub type Elem = u8;

pub struct FqData {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    sub: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

#[derive(Clone, Copy)]
pub struct Fq(&'static FqData);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}
impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.q.hash(h)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn registry() -> &'static Mutex<HashMap<u32, &'static FqData>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static FqData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns (p, e) with q = p^e, or None if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

// polynomials over F_p as digit vectors, used only while building tables
fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let e = m.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for j in 0..=e {
                prod[k - e + j] = (prod[k - e + j] + (p - c) * m[j]) % p;
            }
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

fn fp_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut x = idx;
            for c in g.iter_mut().take(d) {
                *c = x % p;
                x /= p;
            }
            g[d] = 1;
            if fp_divides(&g, m, p) {
                return false;
            }
        }
    }
    true
}

fn fp_divides(g: &[u32], f: &[u32], p: u32) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c != 0 {
            for j in 0..=dg {
                r[k - dg + j] = (r[k - dg + j] + (p - c) * g[j]) % p;
            }
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

fn build(q: u32, p: u32, e: u32) -> FqData {
    let e_us = e as usize;
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        let mut found = None;
        for idx in 0..p.pow(e) {
            let mut m = vec![0u32; e_us + 1];
            let mut x = idx;
            for c in m.iter_mut().take(e_us) {
                *c = x % p;
                x /= p;
            }
            m[e_us] = 1;
            if m[0] != 0 && fp_irreducible(&m, p) {
                found = Some(m);
                break;
            }
        }
        found.expect("irreducible polynomial exists")
    };
    let digits = |a: u32| -> Vec<u32> {
        let mut v = vec![0u32; e_us];
        let mut x = a;
        for c in v.iter_mut() {
            *c = x % p;
            x /= p;
        }
        v
    };
    let undigits = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let n = q as usize;
    let mut add = vec![0u8; n * n];
    let mut sub = vec![0u8; n * n];
    let mut mul = vec![0u8; n * n];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            let d: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + p - y) % p).collect();
            let m = if e == 1 {
                vec![(a * b) % p]
            } else {
                fp_mulmod(&da, &db, &modulus, p)
            };
            let k = a as usize * n + b as usize;
            add[k] = undigits(&s) as u8;
            sub[k] = undigits(&d) as u8;
            mul[k] = undigits(&m) as u8;
        }
    }
    let mut inv = vec![0u8; n];
    for a in 1..n {
        for b in 1..n {
            if mul[a * n + b] == 1 {
                inv[a] = b as u8;
                break;
            }
        }
    }
    FqData { q, p, e, modulus, add, sub, mul, inv }
}

impl Fq {
    pub fn new(q: u32) -> Result<Fq> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::Invalid(format!("q = {q} is not a prime power")))?;
        if q > 256 {
            return Err(Error::Invalid(format!("q = {q} exceeds the supported maximum 256")));
        }
        let mut reg = registry().lock().unwrap();
        if let Some(d) = reg.get(&q) {
            return Ok(Fq(d));
        }
        let data: &'static FqData = Box::leak(Box::new(build(q, p, e)));
        reg.insert(q, data);
        Ok(Fq(data))
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.0.q
    }
    #[inline]
    pub fn p(self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn e(self) -> u32 {
        self.0.e
    }
    /// Coefficients of the defining polynomial of z over F_p, constant first.
    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }
    #[inline]
    pub fn add(self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(self, a: Elem, b: Elem) -> Elem {
        self.0.sub[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(self, a: Elem) -> Elem {
        self.sub(0, a)
    }
    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(self, a: Elem) -> Elem {
        debug_assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }
    pub fn div(self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }
    pub fn pow(self, a: Elem, mut n: u64) -> Elem {
        let (mut base, mut acc) = (a, 1u8);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
    /// Reduction of an integer into the prime field.
    pub fn from_int(self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }
    /// The generator z (equal to 1 when q is prime).
    pub fn gen(self) -> Elem {
        if self.0.e == 1 {
            1
        } else {
            self.0.p as Elem
        }
    }
    pub fn elements(self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|a| a as Elem)
    }
    pub fn nonzero(self) -> impl Iterator<Item = Elem> {
        (1..self.0.q).map(|a| a as Elem)
    }

    pub fn fmt_elem(self, a: Elem) -> String {
        let p = self.0.p;
        if self.0.e == 1 {
            return a.to_string();
        }
        let mut terms = Vec::new();
        let mut x = a as u32;
        let mut k = 0;
        while x > 0 {
            let c = x % p;
            x /= p;
            if c != 0 {
                let mon = match k {
                    0 => String::new(),
                    1 => "z".to_string(),
                    _ => format!("z^{k}"),
                };
                terms.push(match (c, k) {
                    (_, 0) => c.to_string(),
                    (1, _) => mon,
                    _ => format!("{c}*{mon}"),
                });
            }
            k += 1;
        }
        if terms.is_empty() {
            return "0".into();
        }
        terms.reverse();
        terms.join("+")
    }

    /// True when the element needs parentheses as a coefficient.
    pub fn is_compound(self, a: Elem) -> bool {
        self.fmt_elem(a).contains('+')
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(7), Some((7, 1)));
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Fq::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.pow(a, q as u64), a, "Frobenius is the identity");
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(Fq::new(12).is_err());
        assert!(Fq::new(512).is_err());
    }

    #[test]
    fn generator_of_f4() {
        let f = Fq::new(4).unwrap();
        let z = f.gen();
        // z^2 = z + 1
        assert_eq!(f.mul(z, z), f.add(z, 1));
        assert_eq!(f.fmt_elem(f.add(z, 1)), "z+1");
    }
}
