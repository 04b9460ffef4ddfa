//! Elliptic-curve analogue: Szpiro ratio, mu(E, N, (n!)) from local
//! reduction data, and the lower bound for mu in terms of the Szpiro ratio.
//!
//! Quantities are integer combinations sum c_p log p. Ratios of proportional
//! combinations are exact rationals; otherwise they are bracketed using
//! rational enclosures of log p.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticLocalData {
    pub p: u64,
    pub ord_delta: u32,
    pub ord_conductor: u32,
    pub ord_j: i64,
    /// [F_v : Q_p]
    pub weight: u32,
}

impl EllipticLocalData {
    pub fn semistable(&self) -> bool {
        self.ord_conductor <= 1
    }
    /// Order of the component group at a multiplicative place, 0 elsewhere.
    pub fn component_order(&self) -> u64 {
        if self.ord_conductor == 1 {
            (-self.ord_j).max(0) as u64
        } else {
            0
        }
    }
    fn j_weight(&self) -> i64 {
        self.weight as i64 * (-self.ord_j).max(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub label: String,
    pub local_data: Vec<EllipticLocalData>,
}

impl CurveRecord {
    pub fn semistable(&self) -> bool {
        self.local_data.iter().all(|d| d.semistable())
    }
    /// log |Norm Delta|
    pub fn discriminant_log(&self) -> LogForm {
        LogForm::from_terms(self.local_data.iter().map(|d| (d.p, d.weight as i64 * d.ord_delta as i64)))
    }
    /// log |Norm f|
    pub fn conductor_log(&self) -> LogForm {
        LogForm::from_terms(self.local_data.iter().map(|d| (d.p, d.weight as i64 * d.ord_conductor as i64)))
    }
}

/// sum_p c_p log p with c_p != 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogForm(BTreeMap<u64, i64>);

impl LogForm {
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, i64)>) -> LogForm {
        let mut m = BTreeMap::new();
        for (p, c) in terms {
            *m.entry(p).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        LogForm(m)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn terms(&self) -> &BTreeMap<u64, i64> {
        &self.0
    }
    /// Sign, decided exactly by comparing prod p^{c_p} over c_p > 0 and c_p < 0.
    pub fn sign(&self) -> Ordering {
        let mut pos = BigUint::one();
        let mut neg = BigUint::one();
        for (&p, &c) in &self.0 {
            let x = BigUint::from(p).pow(c.unsigned_abs() as u32);
            if c > 0 {
                pos *= x;
            } else {
                neg *= x;
            }
        }
        pos.cmp(&neg)
    }
    /// a / b when a = lambda b, which (log p being linearly independent over
    /// Q) is the only way the ratio can be rational.
    fn exact_ratio(a: &LogForm, b: &LogForm) -> Option<BigRational> {
        let (&p0, &c0) = b.0.iter().next()?;
        let lambda = BigRational::new(BigInt::from(a.0.get(&p0).copied().unwrap_or(0)), BigInt::from(c0));
        let same_support = a.0.keys().all(|p| b.0.contains_key(p));
        let proportional = same_support && b.0.iter().all(|(p, &c)| BigRational::from_integer(BigInt::from(a.0.get(p).copied().unwrap_or(0))) == &lambda * BigRational::from_integer(BigInt::from(c)));
        proportional.then_some(lambda)
    }
    fn enclose(&self, logs: &BTreeMap<u64, (BigRational, BigRational)>) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (p, &c) in &self.0 {
            let (l, h) = &logs[p];
            let c = BigRational::from_integer(BigInt::from(c));
            if c > BigRational::zero() {
                lo += &c * l;
                hi += &c * h;
            } else {
                lo += &c * h;
                hi += &c * l;
            }
        }
        (lo, hi)
    }
}

/// An exact rational, or a certified enclosure of an irrational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certified {
    Exact(BigRational),
    Interval(BigRational, BigRational),
}

impl Certified {
    pub fn lo(&self) -> &BigRational {
        match self {
            Certified::Exact(x) => x,
            Certified::Interval(l, _) => l,
        }
    }
    pub fn hi(&self) -> &BigRational {
        match self {
            Certified::Exact(x) => x,
            Certified::Interval(_, h) => h,
        }
    }
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Certified::Exact(x) => Some(x),
            Certified::Interval(..) => None,
        }
    }
    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }
    pub fn midpoint_f64(&self) -> f64 {
        let m = (self.lo() + self.hi()) / BigRational::from_integer(2.into());
        m.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Certified {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certified::Exact(x) => write!(out, "{x}"),
            Certified::Interval(..) => write!(out, "~{:.9}", self.midpoint_f64()),
        }
    }
}

fn dyadic_floor(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x * BigRational::from_integer(scale.clone())).floor().to_integer();
    BigRational::new(n, scale)
}

fn dyadic_ceil(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x * BigRational::from_integer(scale.clone())).ceil().to_integer();
    BigRational::new(n, scale)
}

/// 2 atanh(z) = 2 sum z^{2k+1}/(2k+1) for 0 <= z <= 1/3, enclosed to 2^-bits.
fn atanh2_enclosure(z: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let z2 = z * z;
    let mut term = z.clone();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    let eps = BigRational::new(BigInt::one(), BigInt::one() << (bits + 2));
    loop {
        sum += &term / BigRational::from_integer(BigInt::from(2 * k + 1));
        term = &term * &z2;
        k += 1;
        // tail <= z^{2k+1} / ((2k+1) (1 - z^2))
        let tail = &term / (BigRational::from_integer(BigInt::from(2 * k + 1)) * (BigRational::one() - &z2));
        if tail < eps {
            let two = BigRational::from_integer(2.into());
            let lo = &two * &sum;
            let hi = &two * (&sum + &tail);
            return (dyadic_floor(&lo, bits + 1), dyadic_ceil(&hi, bits + 1));
        }
    }
}

/// Enclosure of ln p with width about 2^-bits.
pub fn log_enclosure(p: u64, bits: u32) -> (BigRational, BigRational) {
    let m = 63 - p.leading_zeros();
    // ln 2 = 2 atanh(1/3); ln(p / 2^m) = 2 atanh((p - 2^m)/(p + 2^m))
    let (l2lo, l2hi) = atanh2_enclosure(&BigRational::new(1.into(), 3.into()), bits + 8);
    let pm = BigInt::from(1u64 << m);
    let z = BigRational::new(BigInt::from(p) - &pm, BigInt::from(p) + &pm);
    let (ylo, yhi) = atanh2_enclosure(&z, bits + 8);
    let mm = BigRational::from_integer(BigInt::from(m));
    (dyadic_floor(&(&mm * l2lo + ylo), bits), dyadic_ceil(&(&mm * l2hi + yhi), bits))
}

fn log_table(forms: &[&LogForm], bits: u32) -> BTreeMap<u64, (BigRational, BigRational)> {
    let mut t = BTreeMap::new();
    for f in forms {
        for &p in f.0.keys() {
            t.entry(p).or_insert_with(|| log_enclosure(p, bits));
        }
    }
    t
}

/// a / b for b > 0: exact when proportional, otherwise an enclosure of width < 2^-target_bits.
pub fn certified_ratio(a: &LogForm, b: &LogForm, target_bits: u32) -> Certified {
    if let Some(x) = LogForm::exact_ratio(a, b) {
        return Certified::Exact(x);
    }
    let target = BigRational::new(BigInt::one(), BigInt::one() << target_bits);
    let mut bits = target_bits + 16;
    loop {
        let logs = log_table(&[a, b], bits);
        let (alo, ahi) = a.enclose(&logs);
        let (blo, bhi) = b.enclose(&logs);
        if blo > BigRational::zero() {
            let cands = [&alo / &blo, &alo / &bhi, &ahi / &blo, &ahi / &bhi];
            let lo = cands.iter().min().expect("nonempty").clone();
            let hi = cands.iter().max().expect("nonempty").clone();
            if &hi - &lo < target {
                return Certified::Interval(lo, hi);
            }
        }
        bits *= 2;
    }
}

/// log|Norm Delta| / log|Norm f|, to width < 10^-6 when irrational.
pub fn szpiro_ratio(rec: &CurveRecord) -> Result<Certified> {
    let f = rec.conductor_log();
    if f.is_zero() {
        return Err(Error::TrivialConductor);
    }
    Ok(certified_ratio(&rec.discriminant_log(), &f, 20))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn n_factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Multiplicative places whose component group Z/(-ord_j) is not killed by n!.
pub fn s_of_factorial(rec: &CurveRecord, n: u64) -> Vec<usize> {
    let nf = n_factorial(n);
    rec.local_data
        .iter()
        .enumerate()
        .filter(|(_, d)| {
            let e = d.component_order();
            e > 0 && !(&nf % e).is_zero()
        })
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticMu {
    pub mu: Certified,
    /// Row indices of S_E((n!)).
    pub s_a: Vec<usize>,
    /// Row indices of the excluded set.
    pub witness_s: Vec<usize>,
}

struct MuForms {
    num: LogForm,
    den: LogForm,
    s_a: Vec<usize>,
    witness_s: Vec<usize>,
}

fn mu_forms(rec: &CurveRecord, n_excl: usize, n: u64) -> MuForms {
    let s_a = s_of_factorial(rec, n);
    let size = |i: &usize| {
        let d = &rec.local_data[*i];
        BigUint::from(d.p).pow(d.j_weight() as u32)
    };
    let mut by_j = s_a.clone();
    by_j.sort_by(|x, y| size(y).cmp(&size(x)).then(x.cmp(y)));
    let mut witness_s: Vec<usize> = by_j.into_iter().take(n_excl).collect();
    witness_s.sort();
    let rows = |keep: &dyn Fn(usize) -> bool| LogForm::from_terms(rec.local_data.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, d)| (d.p, d.j_weight())));
    let den = rows(&|i| !witness_s.contains(&i));
    let num = rows(&|i| !witness_s.contains(&i) && !s_a.contains(&i));
    MuForms { num, den, s_a, witness_s }
}

fn mu_value(m: &MuForms, bits: u32) -> Certified {
    if m.den.is_zero() {
        Certified::Exact(BigRational::one())
    } else {
        certified_ratio(&m.num, &m.den, bits)
    }
}

/// mu(E, N, (n!)): the excluded set is the N rows of S_E with the largest
/// weighted j_v (compared exactly as p^{w e}).
pub fn mu_elliptic(rec: &CurveRecord, n_excl: usize, n: u64) -> Result<EllipticMu> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let m = mu_forms(rec, n_excl, n);
    Ok(EllipticMu { mu: mu_value(&m, 40), s_a: m.s_a, witness_s: m.witness_s })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub holds: bool,
    pub lhs: Certified,
    pub rhs: Certified,
    pub sigma: Certified,
}

/// Checks mu(E, 0, (n!)) >= (1 - sigma/n) / (sigma (1 - 1/n)).
pub fn theorem_check(rec: &CurveRecord, n: u64) -> Result<TheoremCheck> {
    if !rec.semistable() {
        return Err(Error::NotSemistable);
    }
    let d = rec.discriminant_log();
    let f = rec.conductor_log();
    if f.is_zero() {
        return Err(Error::TrivialConductor);
    }
    let nn = BigRational::from_integer(BigInt::from(n));
    // n > sigma  <=>  n log f - log Delta > 0
    let gap = LogForm::from_terms(f.0.iter().map(|(&p, &c)| (p, c * n as i64)).chain(d.0.iter().map(|(&p, &c)| (p, -c))));
    if n < 2 || gap.sign() != Ordering::Greater {
        return Err(Error::NTooSmall);
    }
    let one = BigRational::one();
    // rhs(sigma) = (n/sigma - 1)/(n - 1), decreasing in sigma
    let rhs_of = |s: &BigRational| (&nn / s - &one) / (&nn - &one);
    let forms = mu_forms(rec, 0, n);
    let mut bits = 40;
    loop {
        let mu = mu_value(&forms, bits);
        let sigma = certified_ratio(&d, &f, bits);
        let rhs = match &sigma {
            Certified::Exact(s) => Certified::Exact(rhs_of(s)),
            Certified::Interval(lo, hi) => Certified::Interval(rhs_of(hi), rhs_of(lo)),
        };
        if mu.lo() >= rhs.hi() {
            return Ok(TheoremCheck { holds: true, lhs: mu, rhs, sigma });
        }
        if mu.hi() < rhs.lo() {
            return Ok(TheoremCheck { holds: false, lhs: mu, rhs, sigma });
        }
        if mu.exact().is_some() && rhs.exact().is_some() {
            unreachable!("exact values are always comparable");
        }
        if bits > 4096 {
            return Err(Error::PrecisionExhausted("could not separate mu from the bound".into()));
        }
        bits *= 2;
    }
}

fn field<'a>(rec: &'a csv::StringRecord, i: usize, name: &str, row: usize) -> Result<&'a str> {
    rec.get(i).map(str::trim).ok_or_else(|| Error::Parse(format!("row {row}: missing {name}")))
}

fn int_field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, name: &str, row: usize) -> Result<T> {
    let s = field(rec, i, name, row)?.replace('\u{2212}', "-");
    s.parse().map_err(|_| Error::Parse(format!("row {row}: {name} = \"{s}\" is not an integer")))
}

/// Reads `label,p,ord_delta,ord_cond,ord_j,weight` rows and groups them by
/// label in order of first appearance.
pub fn ingest_csv<R: Read>(input: R) -> Result<Vec<CurveRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    let expected = ["label", "p", "ord_delta", "ord_cond", "ord_j", "weight"];
    if header.len() == 0 {
        return Ok(Vec::new());
    }
    if header.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Parse(format!("expected header {}", expected.join(","))));
    }
    let mut out: Vec<CurveRecord> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| Error::Parse(format!("row {row}: {e}")))?;
        let label = field(&rec, 0, "label", row)?.to_string();
        let p: u64 = int_field(&rec, 1, "p", row)?;
        let ord_delta: i64 = int_field(&rec, 2, "ord_delta", row)?;
        let ord_cond: i64 = int_field(&rec, 3, "ord_cond", row)?;
        let ord_j: i64 = int_field(&rec, 4, "ord_j", row)?;
        let weight: u32 = int_field(&rec, 5, "weight", row)?;
        let bad = |msg: String| Error::InvariantViolation { row, msg };
        if !is_prime(p) {
            return Err(bad(format!("p = {p} is not prime")));
        }
        if ord_delta < 0 || ord_cond < 0 {
            return Err(bad("orders must be non-negative".into()));
        }
        if weight == 0 {
            return Err(bad("weight must be positive".into()));
        }
        match ord_cond {
            0 if ord_j < 0 => return Err(bad("good reduction with non-integral j".into())),
            1 if ord_j >= 0 => return Err(bad("multiplicative reduction needs ord_j < 0".into())),
            1 if ord_delta != -ord_j => return Err(bad("multiplicative reduction needs ord_delta = -ord_j".into())),
            _ => {}
        }
        let d = EllipticLocalData { p, ord_delta: ord_delta as u32, ord_conductor: ord_cond as u32, ord_j, weight };
        match out.iter_mut().find(|r| r.label == label) {
            Some(r) => {
                if r.local_data.iter().any(|x| x.p == p) {
                    return Err(bad(format!("prime {p} repeated for {label}")));
                }
                r.local_data.push(d);
            }
            None => out.push(CurveRecord { label, local_data: vec![d] }),
        }
    }
    Ok(out)
}

/// Whole-file convenience wrapper for [`ingest_csv`].
pub fn ingest_csv_path(path: &std::path::Path) -> Result<Vec<CurveRecord>> {
    ingest_csv(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn rec(rows: &[(u64, u32, u32, i64)]) -> CurveRecord {
        CurveRecord { label: "x".into(), local_data: rows.iter().map(|&(p, d, c, j)| EllipticLocalData { p, ord_delta: d, ord_conductor: c, ord_j: j, weight: 1 }).collect() }
    }

    #[test]
    fn conductor_11() {
        let recs = ingest_csv("label,p,ord_delta,ord_cond,ord_j,weight\n11a1,11,5,1,-5,1\n".as_bytes()).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(szpiro_ratio(r).unwrap(), Certified::Exact(rat(5, 1)));
        assert_eq!(mu_elliptic(r, 0, 6).unwrap().mu, Certified::Exact(rat(1, 1)));
        let c = theorem_check(r, 6).unwrap();
        assert!(c.holds);
        assert_eq!(c.lhs, Certified::Exact(rat(1, 1)));
        assert_eq!(c.rhs, Certified::Exact(rat(1, 25)));
    }

    #[test]
    fn ingestion_errors() {
        assert!(ingest_csv("".as_bytes()).unwrap().is_empty());
        assert!(ingest_csv("label,p,ord_delta,ord_cond,ord_j,weight\n".as_bytes()).unwrap().is_empty());
        let e = ingest_csv("label,p,ord_delta,ord_cond,ord_j,weight\na,3,1,1,-1,1\nb,5,2,1,0,1\n".as_bytes()).unwrap_err();
        assert_eq!(e, Error::InvariantViolation { row: 2, msg: "multiplicative reduction needs ord_j < 0".into() });
        assert!(matches!(ingest_csv("label,p\n".as_bytes()), Err(Error::Parse(_))));
        assert!(matches!(ingest_csv("label,p,ord_delta,ord_cond,ord_j,weight\na,4,1,1,-1,1\n".as_bytes()), Err(Error::InvariantViolation { .. })));
    }

    #[test]
    fn szpiro_examples() {
        assert_eq!(szpiro_ratio(&rec(&[(2, 1, 1, -1), (3, 1, 1, -1)])).unwrap(), Certified::Exact(rat(1, 1)));
        assert_eq!(szpiro_ratio(&rec(&[(2, 0, 0, 0)])), Err(Error::TrivialConductor));
        // (6 log 2 + 3 log 7) / (log 2 + log 7) for 14a1
        let s = szpiro_ratio(&rec(&[(2, 6, 1, -6), (7, 3, 1, -3)])).unwrap();
        assert!(s.width() < rat(1, 1_000_000));
        let f = (6.0 * 2f64.ln() + 3.0 * 7f64.ln()) / 14f64.ln();
        assert!((s.midpoint_f64() - f).abs() < 1e-6);
    }

    #[test]
    fn log_enclosures_are_tight_and_correct() {
        for p in [2u64, 3, 5, 7, 11, 101, 65537] {
            let (lo, hi) = log_enclosure(p, 50);
            let x = (p as f64).ln();
            assert!(lo.to_f64().unwrap() <= x + 1e-12 && hi.to_f64().unwrap() >= x - 1e-12);
            assert!(&hi - &lo < rat(1, 1 << 40));
        }
    }

    #[test]
    fn mu_cases() {
        let r = rec(&[(2, 7, 1, -7)]);
        assert_eq!(mu_elliptic(&r, 0, 6).unwrap().mu, Certified::Exact(rat(0, 1)));
        assert_eq!(mu_elliptic(&r, 1, 6).unwrap().mu, Certified::Exact(rat(1, 1)));
        assert_eq!(mu_elliptic(&r, 0, 7).unwrap().mu, Certified::Exact(rat(1, 1)));
        // 7 log 2 in S, 2 log 3 not: mu = 2 log 3 / (7 log 2 + 2 log 3)
        let r = rec(&[(2, 7, 1, -7), (3, 2, 1, -2)]);
        let m = mu_elliptic(&r, 0, 6).unwrap().mu;
        let f = 2.0 * 3f64.ln() / (7.0 * 2f64.ln() + 2.0 * 3f64.ln());
        assert!((m.midpoint_f64() - f).abs() < 1e-9);
    }

    #[test]
    fn small_n_is_rejected() {
        let r = rec(&[(11, 5, 1, -5)]);
        assert_eq!(theorem_check(&r, 5), Err(Error::NTooSmall));
        let r = rec(&[(11, 5, 2, 0)]);
        assert_eq!(theorem_check(&r, 6), Err(Error::NotSemistable));
    }
}
