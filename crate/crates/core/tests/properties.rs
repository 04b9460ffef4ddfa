use std::collections::BTreeMap;

use drinfeld_core::drinfeld::DrinfeldModule;
use drinfeld_core::elliptic::{log_enclosure, mu_elliptic, szpiro_ratio, theorem_check, CurveRecord, EllipticLocalData};
use drinfeld_core::funcfield::{height, product_formula_check, Fq, LogValue, Place, Poly, RatFunc};
use drinfeld_core::globalmu::{mu, mu_ratio, per_place_j, s_of_ideal};
use drinfeld_core::localdyn::julia_contains;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const QS: [u32; 4] = [2, 3, 4, 5];

fn poly(f: Fq, c: &[u8]) -> Poly {
    Poly::from_coeffs(f, c.iter().map(|x| x % f.q() as u8).collect())
}

fn ratfunc(f: Fq, (n, d): &(Vec<u8>, Vec<u8>)) -> RatFunc {
    let den = poly(f, d);
    let den = if den.is_zero() { Poly::one(f) } else { den };
    RatFunc::new(poly(f, n), den).unwrap()
}

fn raw_ratfunc(max_len: usize) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (prop::collection::vec(any::<u8>(), 0..=max_len), prop::collection::vec(any::<u8>(), 0..=max_len))
}

fn module() -> impl Strategy<Value = DrinfeldModule> {
    (0..2usize, prop::collection::vec(raw_ratfunc(3), 1..=2)).prop_filter_map("leading coefficient vanishes", |(qi, cs)| {
        let f = Fq::new(QS[qi]).unwrap();
        let a: Vec<RatFunc> = cs.iter().map(|c| ratfunc(f, c)).collect();
        DrinfeldModule::new(f, a).ok()
    })
}

fn subsets(places: &[Place], max: usize) -> Vec<Vec<Place>> {
    let mut out = vec![Vec::new()];
    for p in places {
        let mut more = Vec::new();
        for s in &out {
            if s.len() < max {
                let mut t = s.clone();
                t.push(p.clone());
                more.push(t);
            }
        }
        out.extend(more);
    }
    out
}

fn semistable_record() -> impl Strategy<Value = CurveRecord> {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23];
    prop::sample::subsequence(primes.to_vec(), 1..=4)
        .prop_flat_map(|ps| {
            let k = ps.len();
            (Just(ps), prop::collection::vec((1u32..=12, 1u32..=2, any::<bool>()), k))
        })
        .prop_map(|(ps, data)| {
            let mut rows: Vec<EllipticLocalData> = ps
                .iter()
                .zip(&data)
                .map(|(&p, &(e, weight, good))| {
                    if good {
                        EllipticLocalData { p, ord_delta: 0, ord_conductor: 0, ord_j: 0, weight }
                    } else {
                        EllipticLocalData { p, ord_delta: e, ord_conductor: 1, ord_j: -(e as i64), weight }
                    }
                })
                .collect();
            if rows.iter().all(|r| r.ord_conductor == 0) {
                rows[0] = EllipticLocalData { p: rows[0].p, ord_delta: data[0].0, ord_conductor: 1, ord_j: -(data[0].0 as i64), weight: rows[0].weight };
            }
            CurveRecord { label: "r".into(), local_data: rows }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_formula_and_naive_height(qi in 0..4usize, x in raw_ratfunc(6)) {
        let f = Fq::new(QS[qi]).unwrap();
        let x = ratfunc(f, &x);
        prop_assume!(!x.is_zero());
        prop_assert_eq!(product_formula_check(&x).unwrap(), LogValue::from_integer(0));
        prop_assert_eq!(height(&x), LogValue::from_integer(x.naive_degree()));
    }

    #[test]
    fn mu_greedy_is_optimal_and_monotone(phi in module(), ai in 0..4usize) {
        let f = phi.field();
        let a = [Poly::t(f), Poly::linear(f, 1), &Poly::t(f) * &Poly::t(f), Poly::one(f)][ai].clone();
        let j = per_place_j(&phi);
        let s_a = s_of_ideal(&phi, &a);
        prop_assume!(s_a.is_ok());
        let s_a = s_a.unwrap();
        let finite: Vec<Place> = j.keys().filter(|v| !v.is_infinite()).cloned().collect();
        let mut prev = None;
        for n in 0..=finite.len() + 1 {
            let m = mu(&phi, n, &a).unwrap();
            let best = subsets(&finite, n).iter().map(|s| mu_ratio(&j, &s_a, s)).max().unwrap();
            prop_assert_eq!(m.mu, best, "N = {}", n);
            prop_assert_eq!(m.mu, mu_ratio(&j, &s_a, &m.witness_s));
            prop_assert!(m.witness_s.len() <= n);
            if let Some(p) = prev {
                prop_assert!(m.mu >= p);
            }
            prop_assert!(m.mu >= LogValue::from_integer(0) && m.mu <= LogValue::from_integer(1));
            prev = Some(m.mu);
        }
        let bad_finite = bad_finite(&phi);
        prop_assert_eq!(mu(&phi, bad_finite, &a).unwrap().mu, LogValue::from_integer(1));
    }

    #[test]
    fn twisting_preserves_local_invariants(phi in module(), alpha in raw_ratfunc(2)) {
        let alpha = ratfunc(phi.field(), &alpha);
        prop_assume!(!alpha.is_zero());
        let psi = phi.twist(&alpha).unwrap();
        prop_assert!(phi.j_invariant().equivalent(&psi.j_invariant()));
        let nonzero = |m: BTreeMap<Place, LogValue>| -> BTreeMap<Place, LogValue> { m.into_iter().filter(|(_, x)| *x != LogValue::from_integer(0)).collect() };
        prop_assert_eq!(nonzero(per_place_j(&phi)), nonzero(per_place_j(&psi)));
        let t = Poly::t(phi.field());
        if let (Ok(a), Ok(b)) = (mu(&phi, 0, &t), mu(&psi, 0, &t)) {
            prop_assert_eq!(a.mu, b.mu);
            prop_assert_eq!(a.s_a, b.s_a);
        }
    }

    #[test]
    fn julia_set_is_forward_invariant(phi in module(), x in raw_ratfunc(2), vi in 0..2usize) {
        let f = phi.field();
        let v = Place::finite([Poly::t(f), Poly::linear(f, 1)][vi].clone()).unwrap();
        let x = ratfunc(f, &x);
        if let Ok(true) = julia_contains(&phi, &v, &x) {
            let y = phi.eval_t(&x);
            if let Ok(inside) = julia_contains(&phi, &v, &y) {
                prop_assert!(inside, "phi_T({}) = {} left the filled Julia set at {}", x, y, v);
            }
        }
    }

    #[test]
    fn elliptic_bound_past_szpiro_ratio(rec in semistable_record(), extra in 1u64..8) {
        let sigma = szpiro_ratio(&rec).unwrap();
        let n = sigma.hi().floor().to_integer().to_u64().unwrap() + extra;
        let c = theorem_check(&rec, n).unwrap();
        prop_assert!(c.holds, "n = {}: {} < {}", n, c.lhs, c.rhs);
        let m0 = mu_elliptic(&rec, 0, n).unwrap().mu;
        let m1 = mu_elliptic(&rec, 1, n).unwrap().mu;
        prop_assert!(m1.hi() >= m0.lo());
        prop_assert!(m0.lo() >= &num_rational::BigRational::from_integer(0.into()));
    }

    #[test]
    fn log_enclosure_contains_ln(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101, 65537]), bits in 8u32..64) {
        let (lo, hi) = log_enclosure(p, bits);
        let ln = (p as f64).ln();
        prop_assert!(lo.to_f64().unwrap() <= ln + 1e-12 && ln - 1e-12 <= hi.to_f64().unwrap());
        prop_assert!((hi - lo).to_f64().unwrap() <= 4.0 * 2f64.powi(-(bits as i32)));
    }
}

fn bad_finite(phi: &DrinfeldModule) -> usize {
    per_place_j(phi).iter().filter(|(v, x)| !v.is_infinite() && **x > LogValue::from_integer(0)).count()
}
