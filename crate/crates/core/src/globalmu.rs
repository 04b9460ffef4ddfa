//! Global assembly: bad places, S_phi(a), mu(phi, N, a), the torsion bound,
//! the adelic form of the inequality, and scans over one-parameter families.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::drinfeld::{full_torsion, parse_kv, parse_list, DrinfeldModule};
use crate::error::{Error, Result};
use crate::funcfield::{height, parse_expr, support_of, weighted_height, Expr, ExprOps, Fq, LogValue, Place, Poly, RatFunc, RatFuncOps};
use crate::localdyn::{component_module, local_report};

fn zero() -> LogValue {
    LogValue::from_integer(0)
}

/// Places (finite and infinite) with j_v > 0.
pub fn bad_places(phi: &DrinfeldModule) -> Vec<Place> {
    support_of(phi.coeffs()).into_iter().filter(|v| local_report(phi, v).j_v > zero()).collect()
}

/// j_v at every place of the support of the coefficients (zero elsewhere).
pub fn per_place_j(phi: &DrinfeldModule) -> BTreeMap<Place, LogValue> {
    support_of(phi.coeffs()).into_iter().map(|v| (v.clone(), local_report(phi, &v).j_v)).collect()
}

/// Finite places whose component module is not killed by a. Only bad
/// places can contribute: the module is trivial where j_v = 0.
pub fn s_of_ideal(phi: &DrinfeldModule, a: &Poly) -> Result<Vec<Place>> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut out = Vec::new();
    for v in bad_places(phi).into_iter().filter(|v| !v.is_infinite()) {
        let cm = component_module(phi, &v, 0)?;
        if !cm.complete {
            return Err(Error::IncompleteComponentData(v.to_string()));
        }
        if !cm.killed_by(a) {
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuResult {
    pub mu: LogValue,
    pub s_bad: Vec<Place>,
    pub s_a: Vec<Place>,
    pub witness_s: Vec<Place>,
    pub per_place_j: BTreeMap<Place, LogValue>,
}

/// (sum of j_v over finite v outside S_a and S) / (sum over finite v outside
/// S), with 1 for an empty denominator.
pub fn mu_ratio(j: &BTreeMap<Place, LogValue>, s_a: &[Place], s: &[Place]) -> LogValue {
    let mut num = zero();
    let mut den = zero();
    for (v, jv) in j.iter().filter(|(v, _)| !v.is_infinite() && !s.contains(v)) {
        den += jv;
        if !s_a.contains(v) {
            num += jv;
        }
    }
    if den.is_zero() {
        LogValue::one()
    } else {
        num / den
    }
}

/// mu(phi, N, (a)). The optimum excludes the N places of S_a with the largest
/// j_v: dropping a place of S_a only shrinks the denominator, while dropping
/// v outside S_a replaces X/Y by (X - j_v)/(Y - j_v) <= X/Y.
pub fn mu(phi: &DrinfeldModule, n: usize, a: &Poly) -> Result<MuResult> {
    let j = per_place_j(phi);
    let s_bad: Vec<Place> = j.iter().filter(|(_, x)| **x > zero()).map(|(v, _)| v.clone()).collect();
    let s_a = s_of_ideal(phi, a)?;
    let mut by_j: Vec<&Place> = s_a.iter().collect();
    by_j.sort_by(|x, y| j[*y].cmp(&j[*x]).then(x.cmp(y)));
    let mut witness_s: Vec<Place> = by_j.into_iter().take(n).cloned().collect();
    witness_s.sort();
    let mu = mu_ratio(&j, &s_a, &witness_s);
    Ok(MuResult { mu, s_bad, s_a, witness_s, per_place_j: j })
}

/// Norm(a)^r q^{4 r^2 (1 + N)} for A = F_q[T], L = F_q(t).
pub fn torsion_bound(q: u64, r: usize, n: usize, a: &Poly) -> BigUint {
    let e = r as u64 * a.deg().max(0) as u64 + 4 * (r * r) as u64 * (1 + n as u64);
    BigUint::from(q).pow(e as u32)
}

/// Tests S = {inf} u S_phi(a) against
/// sum_{v in S} j_v <= (1/q) j_inf + (1 - 1/q) h(j_phi).
pub fn adelic_check(phi: &DrinfeldModule, a: &Poly) -> Result<(bool, Vec<Place>)> {
    let j = per_place_j(phi);
    let mut s = vec![Place::Infinite];
    s.extend(s_of_ideal(phi, a)?);
    let lhs: LogValue = s.iter().map(|v| j.get(v).copied().unwrap_or_else(zero)).sum();
    let q = LogValue::from_integer(phi.q() as i64);
    let hj = weighted_height(&phi.j_invariant());
    let j_inf = j.get(&Place::Infinite).copied().unwrap_or_else(zero);
    let rhs = j_inf / q + (LogValue::one() - LogValue::one() / q) * hj;
    Ok((lhs <= rhs, s))
}

/// Coefficients of phi_T as expressions in t and a parameter.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub f: Fq,
    pub param: String,
    pub coeffs: Vec<Expr>,
}

struct FamilyOps<'a> {
    base: RatFuncOps,
    param: &'a str,
    value: &'a RatFunc,
}

impl ExprOps for FamilyOps<'_> {
    type Value = RatFunc;
    fn int(&self, n: i64) -> Result<RatFunc> {
        self.base.int(n)
    }
    fn var(&self, name: &str) -> Result<RatFunc> {
        if name == self.param {
            Ok(self.value.clone())
        } else {
            self.base.var(name)
        }
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a + b
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a - b
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a * b
    }
    fn div(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        a.div(b).map_err(|_| Error::Invalid("coefficient has a pole at this parameter".into()))
    }
    fn pow(&self, a: &RatFunc, n: i64) -> Result<RatFunc> {
        a.pow(n).map_err(|_| Error::Invalid("coefficient has a pole at this parameter".into()))
    }
}

impl FamilySpec {
    /// Module file syntax plus `param = <name>`; coefficients may use the parameter.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let kv = parse_kv(text)?;
        let get = |k: &str| kv.iter().find(|(a, _)| a == k).map(|(_, b)| b.as_str());
        let q: u32 = get("q").ok_or_else(|| Error::Parse("missing 'q'".into()))?.parse().map_err(|_| Error::Parse("q must be an integer".into()))?;
        let f = Fq::new(q).map_err(|_| Error::Parse(format!("q = {q} is not a prime power")))?;
        let param = get("param").unwrap_or("beta").to_string();
        if param == "t" || param == "T" || param == "z" {
            return Err(Error::Parse(format!("parameter name '{param}' is reserved")));
        }
        let coeffs = parse_list(get("coeffs").ok_or_else(|| Error::Parse("missing 'coeffs'".into()))?)?.iter().map(|s| parse_expr(s)).collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("no coefficients".into()));
        }
        if let Some(r) = get("rank") {
            let r: usize = r.parse().map_err(|_| Error::Parse("rank must be an integer".into()))?;
            if r != coeffs.len() {
                return Err(Error::Parse(format!("rank = {r} but {} coefficients given", coeffs.len())));
            }
        }
        for e in &coeffs {
            let mut vars = Vec::new();
            e.vars(&mut vars);
            if let Some(bad) = vars.iter().find(|v| !matches!(v.as_str(), "t" | "T" | "z") && **v != param) {
                return Err(Error::Parse(format!("unknown identifier '{bad}'")));
            }
        }
        Ok(FamilySpec { f, param, coeffs })
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// The fibre at beta; Invalid where a coefficient has a pole or a_r = 0.
    pub fn specialize(&self, beta: &RatFunc) -> Result<DrinfeldModule> {
        let ops = FamilyOps { base: RatFuncOps { f: self.f }, param: &self.param, value: beta };
        let a = self.coeffs.iter().map(|e| e.eval(&ops)).collect::<Result<Vec<_>>>()?;
        if a.last().is_some_and(|x| x.is_zero()) {
            return Err(Error::Invalid("leading coefficient vanishes".into()));
        }
        DrinfeldModule::new(self.f, a)
    }
}

/// All beta in F_q(t) with height <= h, ordered by (height, denominator, numerator).
pub fn params_up_to_height(f: Fq, h: usize) -> Vec<RatFunc> {
    let nums = Poly::all_up_to_degree(f, h);
    let dens: Vec<Poly> = (0..=h).flat_map(|d| Poly::monics_of_degree(f, d)).collect();
    let mut out: Vec<(i64, RatFunc)> = Vec::new();
    for d in &dens {
        for n in &nums {
            if n.is_zero() && d.deg() > 0 {
                continue;
            }
            if !n.gcd(d).is_one() && !n.is_zero() {
                continue;
            }
            let x = RatFunc::new(n.clone(), d.clone()).expect("nonzero denominator");
            let ht = height(&x);
            out.push((*ht.numer() / *ht.denom(), x));
        }
    }
    out.sort_by(|(ha, a), (hb, b)| ha.cmp(hb).then_with(|| a.den().coeffs().len().cmp(&b.den().coeffs().len())).then_with(|| a.den().coeffs().cmp(b.den().coeffs())).then_with(|| a.num().coeffs().len().cmp(&b.num().coeffs().len())).then_with(|| a.num().coeffs().cmp(b.num().coeffs())));
    out.into_iter().map(|x| x.1).collect()
}

#[derive(Clone, Debug)]
pub struct FamilyRow {
    pub beta: RatFunc,
    pub h_j: LogValue,
    pub mu: LogValue,
    pub s_a_size: usize,
    /// Largest #phi[a](L) over monic a of degree 1 and 2.
    pub torsion_found: u64,
    pub bound: BigUint,
    pub flags: String,
}

#[derive(Clone, Debug)]
pub struct FamilySummary {
    pub fibres: usize,
    pub rejected: usize,
    pub failed: usize,
    pub min_mu: Option<LogValue>,
    pub max_torsion: u64,
}

#[derive(Clone, Debug)]
pub struct FamilyScan {
    pub rows: Vec<FamilyRow>,
    /// (beta, error code and message) for fibres that were skipped or failed.
    pub log: Vec<(RatFunc, String)>,
    pub summary: FamilySummary,
}

pub const FAMILY_COLUMNS: [&str; 7] = ["beta", "h_j", "mu", "S_a_size", "torsion_found", "bound", "flags"];

impl FamilyRow {
    pub fn fields(&self) -> Vec<String> {
        vec![self.beta.to_string(), self.h_j.to_string(), self.mu.to_string(), self.s_a_size.to_string(), self.torsion_found.to_string(), self.bound.to_string(), self.flags.clone()]
    }
}

impl FamilySummary {
    pub fn fields(&self, bound: &BigUint) -> Vec<String> {
        let mu = self.min_mu.map_or(String::new(), |m| m.to_string());
        vec!["summary".into(), String::new(), mu, String::new(), self.max_torsion.to_string(), bound.to_string(), format!("fibres={};rejected={};failed={}", self.fibres, self.rejected, self.failed)]
    }
}

enum Fibre {
    Row(FamilyRow),
    Rejected(RatFunc, Error),
    Failed(RatFunc, Error),
}

fn scan_fibre(spec: &FamilySpec, beta: &RatFunc, n: usize, a: &Poly, tors_polys: &[Poly]) -> Fibre {
    let phi = match spec.specialize(beta) {
        Ok(p) => p,
        Err(e) => return Fibre::Rejected(beta.clone(), e),
    };
    let run = || -> Result<FamilyRow> {
        let m = mu(&phi, n, a)?;
        let mut flags = Vec::new();
        let torsion_found = match full_torsion(&phi) {
            Ok(ft) => tors_polys.iter().map(|b| (spec.f.q() as u64).pow(ft.kernel_of(b).len() as u32)).max().unwrap_or(1),
            Err(e) => {
                flags.push(format!("torsion:{}", e.code()));
                1
            }
        };
        Ok(FamilyRow {
            beta: beta.clone(),
            h_j: weighted_height(&phi.j_invariant()),
            mu: m.mu,
            s_a_size: m.s_a.len(),
            torsion_found,
            bound: torsion_bound(phi.q(), phi.rank(), n, a),
            flags: flags.join(";"),
        })
    };
    match run() {
        Ok(r) => Fibre::Row(r),
        Err(e) => Fibre::Failed(beta.clone(), e),
    }
}

/// One row per fibre with height(beta) <= max_height, in parameter order.
/// Rejected specializations and per-fibre failures are logged and skipped.
pub fn family_scan(spec: &FamilySpec, max_height: usize, n: usize, a: &Poly) -> FamilyScan {
    let f = spec.f;
    let tors_polys: Vec<Poly> = (1..=2).flat_map(|d| Poly::monics_of_degree(f, d)).collect();
    let params = params_up_to_height(f, max_height);
    let fibres: Vec<Fibre> = params.par_iter().map(|b| scan_fibre(spec, b, n, a, &tors_polys)).collect();
    let mut rows = Vec::new();
    let mut log = Vec::new();
    let mut rejected = 0;
    let mut failed = 0;
    for fb in fibres {
        match fb {
            Fibre::Row(r) => rows.push(r),
            Fibre::Rejected(b, e) => {
                rejected += 1;
                log.push((b, format!("{}: {e}", e.code())));
            }
            Fibre::Failed(b, e) => {
                failed += 1;
                log.push((b, format!("{}: {e}", e.code())));
            }
        }
    }
    let summary = FamilySummary {
        fibres: rows.len(),
        rejected,
        failed,
        min_mu: rows.iter().map(|r| r.mu).min(),
        max_torsion: rows.iter().map(|r| r.torsion_found).max().unwrap_or(1),
    };
    FamilyScan { rows, log, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse_ratfunc;

    fn module(q: u32, cs: &[&str]) -> DrinfeldModule {
        let f = Fq::new(q).unwrap();
        DrinfeldModule::new(f, cs.iter().map(|s| parse_ratfunc(f, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn bad_places_examples() {
        assert!(bad_places(&DrinfeldModule::carlitz(Fq::new(3).unwrap())).is_empty());
        let phi = module(3, &["1", "t"]);
        let f = phi.field();
        assert_eq!(bad_places(&phi), vec![Place::Finite(Poly::t(f))]);
        assert!(bad_places(&module(5, &["2", "3"])).is_empty());
    }

    #[test]
    fn mu_definition_cases() {
        let f = Fq::new(3).unwrap();
        let tp = Poly::t(f);
        let c = DrinfeldModule::carlitz(f);
        assert_eq!(mu(&c, 0, &tp).unwrap().mu, LogValue::one());
        let mut j = BTreeMap::new();
        let v1 = Place::Finite(tp.clone());
        let v2 = Place::Finite(Poly::linear(f, 1));
        j.insert(v1.clone(), LogValue::new(1, 8));
        j.insert(v2.clone(), LogValue::new(3, 8));
        assert_eq!(mu_ratio(&j, &[v1.clone()], &[]), LogValue::new(3, 4));
        j.remove(&v2);
        assert_eq!(mu_ratio(&j, &[v1.clone()], &[]), zero());
        assert_eq!(mu_ratio(&j, &[v1.clone()], &[v1]), LogValue::one());
    }

    #[test]
    fn torsion_bound_values() {
        let f = Fq::new(3).unwrap();
        let tp = Poly::t(f);
        assert_eq!(torsion_bound(3, 1, 0, &tp), BigUint::from(3u32).pow(5));
        assert_eq!(torsion_bound(3, 2, 0, &tp), BigUint::from(3u32).pow(18));
        assert!(torsion_bound(3, 2, 1, &tp) > torsion_bound(3, 2, 0, &tp));
        assert!(torsion_bound(3, 2, 0, &(&tp * &tp)) > torsion_bound(3, 2, 0, &tp));
    }

    #[test]
    fn component_torsion_place_enters_s_a() {
        // prescribed torsion point 1/t at (t): component module A/(T)
        for q in [2u32, 3] {
            let f = Fq::new(q).unwrap();
            let x0 = RatFunc::t(f).inv().unwrap();
            let phi = DrinfeldModule::with_torsion_point(f, vec![RatFunc::one(f)], &x0).unwrap();
            let v = Place::Finite(Poly::t(f));
            assert!(bad_places(&phi).contains(&v));
            assert!(!s_of_ideal(&phi, &Poly::t(f)).unwrap().contains(&v));
            assert!(s_of_ideal(&phi, &Poly::linear(f, 1)).unwrap().contains(&v));
        }
    }

    #[test]
    fn j_sum_is_height_of_j() {
        for cs in [&["1", "t"][..], &["t^2+1", "1/(t+1)"], &["1/t", "t^3", "t+2"], &["t^4"]] {
            let phi = module(3, cs);
            let total: LogValue = per_place_j(&phi).values().sum();
            assert_eq!(total, weighted_height(&phi.j_invariant()), "{cs:?}");
        }
    }

    #[test]
    fn adelic_examples() {
        let f = Fq::new(3).unwrap();
        let (ok, s) = adelic_check(&DrinfeldModule::carlitz(f), &Poly::t(f)).unwrap();
        assert!(ok);
        assert_eq!(s, vec![Place::Infinite]);
    }

    #[test]
    fn family_parse_and_specialize() {
        let spec = FamilySpec::parse("q = 5\nparam = beta\ncoeffs = [1, beta^3 - beta]\n").unwrap();
        let f = spec.f;
        let b = parse_ratfunc(f, "t+1").unwrap();
        let phi = spec.specialize(&b).unwrap();
        assert_eq!(phi.coeff(2), parse_ratfunc(f, "(t+1)^3 - t - 1").unwrap());
        assert!(matches!(spec.specialize(&RatFunc::one(f)), Err(Error::Invalid(_))));
        assert!(FamilySpec::parse("q = 5\ncoeffs = [1, gamma]\n").is_err());
    }

    #[test]
    fn parameters_by_height() {
        let f = Fq::new(2).unwrap();
        let ps = params_up_to_height(f, 1);
        // 0, 1, then t, t+1, 1/t, 1/(t+1), (t+1)/t, t/(t+1)
        assert_eq!(ps.len(), 8);
        assert!(ps[0].is_zero());
        assert!(ps.windows(2).all(|w| height(&w[0]) <= height(&w[1])));
    }

    #[test]
    fn constant_family_has_mu_one() {
        let spec = FamilySpec::parse("q = 3\ncoeffs = [1]\n").unwrap();
        let scan = family_scan(&spec, 1, 0, &Poly::t(spec.f));
        assert!(scan.rows.iter().all(|r| r.mu == LogValue::one()));
        assert_eq!(scan.summary.fibres, scan.rows.len());
    }
}

