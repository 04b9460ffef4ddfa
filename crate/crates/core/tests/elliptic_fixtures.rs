//! Curve records derived from Weierstrass equations, checked against the
//! elliptic module's ratios and bounds.

use drinfeld_core::elliptic::{ingest_csv, mu_elliptic, s_of_factorial, szpiro_ratio, theorem_check, Certified, CurveRecord};
use num_rational::BigRational;

struct Curve {
    label: &'static str,
    a: [i128; 5],
    /// Minimal discriminant from the tables.
    delta: i128,
}

const CURVES: [Curve; 7] = [
    Curve { label: "11a1", a: [0, -1, 1, -10, -20], delta: -161051 },
    Curve { label: "14a1", a: [1, 0, 1, 4, -6], delta: -21952 },
    Curve { label: "15a1", a: [1, 1, 1, -10, -10], delta: 50625 },
    Curve { label: "17a1", a: [1, -1, 1, -1, -14], delta: -83521 },
    Curve { label: "19a1", a: [0, 1, 1, -9, -15], delta: -6859 },
    Curve { label: "21a1", a: [1, 0, 0, -4, -1], delta: 3969 },
    Curve { label: "37a1", a: [0, 0, 1, -1, 0], delta: 37 },
];

/// (c4, Delta) of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
fn invariants([a1, a2, a3, a4, a6]: [i128; 5]) -> (i128, i128) {
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = b2 * b2 - 24 * b4;
    let delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    (c4, delta)
}

fn ord(mut n: i128, p: i128) -> u32 {
    let mut k = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

fn primes_of(mut n: i128) -> Vec<i128> {
    n = n.abs();
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

/// CSV rows for a minimal model with multiplicative reduction at every bad
/// prime (p does not divide c4).
fn rows(c: &Curve) -> String {
    let (c4, delta) = invariants(c.a);
    let mut s = String::new();
    for p in primes_of(delta) {
        assert_eq!(ord(c4, p), 0, "{} is not semistable at {p}", c.label);
        let e = ord(delta, p);
        let oj = 3 * ord(c4, p) as i64 - e as i64;
        s += &format!("{},{p},{e},1,{oj},1\n", c.label);
    }
    s
}

fn records() -> Vec<CurveRecord> {
    let mut text = "label,p,ord_delta,ord_cond,ord_j,weight\n".to_string();
    for c in &CURVES {
        text += &rows(c);
    }
    ingest_csv(text.as_bytes()).unwrap()
}

fn record(label: &str) -> CurveRecord {
    records().into_iter().find(|r| r.label == label).unwrap()
}

fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

#[test]
fn oracle_matches_table_discriminants() {
    for c in &CURVES {
        assert_eq!(invariants(c.a).1, c.delta, "{}", c.label);
    }
}

#[test]
fn szpiro_ratios() {
    let exact = [("11a1", 5), ("15a1", 4), ("17a1", 4), ("19a1", 3), ("37a1", 1)];
    for (label, s) in exact {
        assert_eq!(szpiro_ratio(&record(label)).unwrap(), Certified::Exact(BigRational::from_integer(s.into())), "{label}");
    }
    let mixed = [("14a1", (6.0 * 2f64.ln() + 3.0 * 7f64.ln()) / 14f64.ln()), ("21a1", (4.0 * 3f64.ln() + 2.0 * 7f64.ln()) / 21f64.ln())];
    for (label, expect) in mixed {
        let s = szpiro_ratio(&record(label)).unwrap();
        assert!(s.exact().is_none(), "{label}");
        assert!(to_f64(s.lo()) <= expect + 1e-12 && expect - 1e-12 <= to_f64(s.hi()), "{label}: {s}");
        assert!(to_f64(&s.width()) < 1e-5);
    }
}

#[test]
fn component_torsion_and_mu() {
    let r = record("11a1");
    // the component group at 11 is cyclic of order 5
    assert_eq!(s_of_factorial(&r, 4).len(), 1);
    assert!(s_of_factorial(&r, 5).is_empty());
    assert_eq!(mu_elliptic(&r, 0, 4).unwrap().mu, Certified::Exact(BigRational::from_integer(0.into())));
    assert_eq!(mu_elliptic(&r, 0, 5).unwrap().mu, Certified::Exact(BigRational::from_integer(1.into())));
    assert_eq!(mu_elliptic(&r, 1, 4).unwrap().mu, Certified::Exact(BigRational::from_integer(1.into())));

    // 14a1: orders 6 at 2 and 3 at 7; (3!) kills both
    let r = record("14a1");
    assert!(s_of_factorial(&r, 3).is_empty());
    assert_eq!(s_of_factorial(&r, 2).len(), 2);
}

#[test]
fn lower_bound_holds_past_sigma() {
    for r in records() {
        let sigma = szpiro_ratio(&r).unwrap();
        let n0 = to_f64(sigma.hi()).floor() as u64 + 1;
        for n in n0..n0 + 12 {
            let c = theorem_check(&r, n).unwrap();
            assert!(c.holds, "{} n = {n}: lhs {} rhs {}", r.label, c.lhs, c.rhs);
        }
    }
}
