//! Residue fields F_q[u]/(p(u)).
//!
//! Elements are u64 indices whose base-q digits are the coordinates in the
//! basis 1, u, ..., u^{d-1}. Fields with at most 2^16 elements keep
//! discrete log tables; larger ones multiply polynomials directly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::funcfield::{Elem, Fq, Poly};

pub type RElem = u64;

const TABLE_LIMIT: u64 = 1 << 16;

struct RfData {
    f: Fq,
    d: usize,
    modulus: Poly,
    size: u64,
    exp: Vec<RElem>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct ResidueField(Arc<RfData>);

impl PartialEq for ResidueField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.f == o.0.f && self.0.modulus == o.0.modulus)
    }
}
impl Eq for ResidueField {}

impl fmt::Debug for ResidueField {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "F_{}[u]/({})", self.0.f.q(), self.0.modulus)
    }
}

type Key = (u32, Vec<Elem>);

fn registry() -> &'static Mutex<HashMap<Key, ResidueField>> {
    static REG: OnceLock<Mutex<HashMap<Key, ResidueField>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl ResidueField {
    /// F_q[u]/(p) for a monic irreducible p.
    pub fn new(modulus: &Poly) -> Result<ResidueField> {
        let f = modulus.field();
        let d = modulus.deg();
        if d < 1 || !modulus.is_monic() {
            return Err(Error::Invalid(format!("bad residue modulus {modulus}")));
        }
        let size = (f.q() as u64).checked_pow(d as u32).filter(|&s| s < (1u64 << 62));
        let Some(size) = size else {
            return Err(Error::Invalid(format!("residue field of degree {d} over F_{} is too large", f.q())));
        };
        let key = (f.q(), modulus.coeffs().to_vec());
        if let Some(k) = registry().lock().unwrap().get(&key) {
            return Ok(k.clone());
        }
        let mut data = RfData { f, d: d as usize, modulus: modulus.clone(), size, exp: Vec::new(), log: Vec::new() };
        if d > 1 && size <= TABLE_LIMIT {
            build_tables(&mut data);
        }
        let k = ResidueField(Arc::new(data));
        registry().lock().unwrap().insert(key, k.clone());
        Ok(k)
    }

    /// The prime field itself, as residue field at a degree-one place or infinity.
    pub fn base(f: Fq) -> ResidueField {
        ResidueField::new(&Poly::t(f)).expect("degree one")
    }

    pub fn fq(&self) -> Fq {
        self.0.f
    }
    pub fn degree(&self) -> usize {
        self.0.d
    }
    pub fn size(&self) -> u64 {
        self.0.size
    }
    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    /// Coordinates over F_q.
    pub fn digits(&self, a: RElem) -> Vec<Elem> {
        let q = self.0.f.q() as u64;
        let mut a = a;
        (0..self.0.d)
            .map(|_| {
                let r = (a % q) as Elem;
                a /= q;
                r
            })
            .collect()
    }
    pub fn from_digits(&self, ds: &[Elem]) -> RElem {
        let q = self.0.f.q() as u64;
        ds.iter().rev().fold(0, |acc, &x| acc * q + x as u64)
    }
    pub fn from_fq(&self, a: Elem) -> RElem {
        a as RElem
    }
    /// Reduction of a polynomial in t, with t mapped to the class of u.
    pub fn reduce(&self, p: &Poly) -> RElem {
        if self.0.d == 1 {
            // modulus is u - c, so t -> c
            let c = self.0.f.neg(self.0.modulus.coeff(0));
            return p.eval(c) as RElem;
        }
        let r = p.rem(&self.0.modulus);
        let mut ds = r.coeffs().to_vec();
        ds.resize(self.0.d, 0);
        self.from_digits(&ds)
    }
    /// The class of u (the image of t).
    pub fn theta(&self) -> RElem {
        self.reduce(&Poly::t(self.0.f))
    }

    fn to_poly(&self, a: RElem) -> Poly {
        Poly::from_coeffs(self.0.f, self.digits(a))
    }
    fn from_poly(&self, p: &Poly) -> RElem {
        let mut ds = p.coeffs().to_vec();
        ds.resize(self.0.d, 0);
        self.from_digits(&ds)
    }

    pub fn add(&self, a: RElem, b: RElem) -> RElem {
        let f = self.0.f;
        if self.0.d == 1 {
            return f.add(a as Elem, b as Elem) as RElem;
        }
        let q = f.q() as u64;
        let (mut a, mut b, mut out, mut pw) = (a, b, 0u64, 1u64);
        while a > 0 || b > 0 {
            out += f.add((a % q) as Elem, (b % q) as Elem) as u64 * pw;
            a /= q;
            b /= q;
            pw *= q;
        }
        out
    }
    pub fn neg(&self, a: RElem) -> RElem {
        let f = self.0.f;
        if self.0.d == 1 {
            return f.neg(a as Elem) as RElem;
        }
        let ds: Vec<Elem> = self.digits(a).into_iter().map(|x| f.neg(x)).collect();
        self.from_digits(&ds)
    }
    pub fn sub(&self, a: RElem, b: RElem) -> RElem {
        self.add(a, self.neg(b))
    }
    pub fn mul(&self, a: RElem, b: RElem) -> RElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        if d.d == 1 {
            return d.f.mul(a as Elem, b as Elem) as RElem;
        }
        if !d.log.is_empty() {
            let n = d.size - 1;
            let e = (d.log[a as usize] as u64 + d.log[b as usize] as u64) % n;
            return d.exp[e as usize];
        }
        self.from_poly(&self.to_poly(a).mulmod(&self.to_poly(b), &d.modulus))
    }
    /// Multiplication by an element of F_q.
    pub fn scale(&self, c: Elem, a: RElem) -> RElem {
        let f = self.0.f;
        if self.0.d == 1 {
            return f.mul(c, a as Elem) as RElem;
        }
        let ds: Vec<Elem> = self.digits(a).into_iter().map(|x| f.mul(c, x)).collect();
        self.from_digits(&ds)
    }
    pub fn pow(&self, a: RElem, n: u64) -> RElem {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &*self.0;
        if !d.log.is_empty() {
            let m = d.size - 1;
            let e = ((d.log[a as usize] as u128 * (n % m) as u128) % m as u128) as usize;
            return d.exp[e];
        }
        let n = n % (d.size - 1);
        let n = if n == 0 { d.size - 1 } else { n };
        let (mut base, mut acc, mut k) = (a, 1, n);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
    pub fn inv(&self, a: RElem) -> RElem {
        assert!(a != 0, "inverse of zero");
        if self.0.d == 1 {
            return self.0.f.inv(a as Elem) as RElem;
        }
        self.pow(a, self.0.size - 2)
    }
    pub fn div(&self, a: RElem, b: RElem) -> RElem {
        self.mul(a, self.inv(b))
    }
    /// a^(q^k).
    pub fn frob(&self, a: RElem, k: u32) -> RElem {
        if self.0.d == 1 || a == 0 {
            return a;
        }
        let k = k as u64 % self.0.d as u64;
        self.pow(a, (self.0.f.q() as u64).pow(k as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = RElem> {
        0..self.0.size
    }

    pub fn fmt_elem(&self, a: RElem) -> String {
        if self.0.d == 1 {
            return self.0.f.fmt_elem(a as Elem);
        }
        let p = self.to_poly(a);
        if p.is_zero() {
            return "0".into();
        }
        let s = p.to_string().replace('t', "u");
        if p.coeffs().iter().filter(|&&c| c != 0).count() > 1 {
            format!("({s})")
        } else {
            s
        }
    }
}

fn build_tables(d: &mut RfData) {
    let n = d.size - 1;
    let factors = prime_factors(n);
    let slow = |a: &Poly, b: &Poly| a.mulmod(b, &d.modulus);
    let f = d.f;
    let to_poly = |a: u64| {
        let q = f.q() as u64;
        let mut a = a;
        let ds: Vec<Elem> = (0..d.d)
            .map(|_| {
                let r = (a % q) as Elem;
                a /= q;
                r
            })
            .collect();
        Poly::from_coeffs(f, ds)
    };
    let index = |p: &Poly| {
        let q = f.q() as u64;
        let mut ds = p.coeffs().to_vec();
        ds.resize(d.d, 0);
        ds.iter().rev().fold(0u64, |acc, &x| acc * q + x as u64)
    };
    let g = (2..d.size)
        .map(to_poly)
        .find(|g| factors.iter().all(|&l| !g.powmod(n / l, &d.modulus).is_one()))
        .expect("multiplicative group is cyclic");
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![0u32; d.size as usize];
    let mut x = Poly::one(f);
    for i in 0..n {
        let idx = index(&x);
        exp.push(idx);
        log[idx as usize] = i as u32;
        x = slow(&x, &g);
    }
    d.exp = exp;
    d.log = log;
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
