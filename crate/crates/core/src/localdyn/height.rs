use std::collections::{BTreeMap, HashSet};

use super::component::{julia_contains, phi0_contains};
use super::report::{c_of_phi, j_of_subring_generator, local_report};
use crate::drinfeld::{DrinfeldModule, TwistedPoly};
use crate::error::{Error, Result};
use crate::funcfield::{log_plus, valuation, LogValue, Place, Poly, RatFunc};

/// lambda = B_part + E_part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightDecomposition {
    pub lambda: LogValue,
    pub b_part: LogValue,
    pub e_part: LogValue,
    pub coset_trivial: bool,
}

fn in_julia(phi: &DrinfeldModule, v: &Place, x: &RatFunc) -> Result<bool> {
    if v.is_infinite() {
        // only the escape criterion is available at the infinite place
        let l = LogValue::from_integer(-valuation(x, v).expect("x != 0"));
        return Ok(l <= local_report(phi, v).b_t_log);
    }
    julia_contains(phi, v, x)
}

/// lambda_phi(x) = log|x^{-1}|_v + c_v(phi).
pub fn local_height(phi: &DrinfeldModule, v: &Place, x: &RatFunc) -> Result<LogValue> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if !in_julia(phi, v, x)? {
        return Err(Error::NotInJuliaSet);
    }
    Ok(lambda_unchecked(phi, v, x))
}

fn lambda_unchecked(phi: &DrinfeldModule, v: &Place, x: &RatFunc) -> LogValue {
    LogValue::from_integer(valuation(x, v).expect("x != 0") * v.deg()) + c_of_phi(phi, v)
}

/// Splits lambda into the coset part B (constant on nontrivial cosets of
/// phi^0, and j_v on phi^0 itself) and the excess E.
pub fn height_decompose(phi: &DrinfeldModule, v: &Place, x: &RatFunc) -> Result<HeightDecomposition> {
    if v.is_infinite() {
        return Err(Error::Invalid("height decomposition needs a finite place".into()));
    }
    let lambda = local_height(phi, v, x)?;
    let trivial = phi0_contains(phi, v, x);
    let b_part = if trivial { local_report(phi, v).j_v } else { lambda };
    Ok(HeightDecomposition { lambda, b_part, e_part: lambda - b_part, coset_trivial: trivial })
}

/// |phi_a(x)| = max_i |c_i x^{q^i}| over the coefficients of phi_a.
pub fn is_generic(phi: &DrinfeldModule, a: &Poly, v: &Place, x: &RatFunc) -> Result<bool> {
    if a.deg() < 1 {
        return Err(Error::ConstantArgument);
    }
    Ok(generic_for(&phi.phi_image(a), phi.q(), v, x))
}

pub fn is_t_generic(phi: &DrinfeldModule, v: &Place, x: &RatFunc) -> bool {
    generic_for(&phi.phi_t(), phi.q(), v, x)
}

fn generic_for(pa: &TwistedPoly, q: u64, v: &Place, x: &RatFunc) -> bool {
    let Some(vx) = valuation(x, v) else { return true };
    let top = pa
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation(c, v).map(|vc| vc + q.pow(i as u32) as i64 * vx))
        .min()
        .expect("phi_a != 0");
    valuation(&pa.eval(x), v) == Some(top)
}

/// (1 - 1/q) j_{phi_T,v} - log+|T^{-1}|_v / (q (q^{R-1})^2) with R = r deg T.
pub fn lambda_lower_bound(phi: &DrinfeldModule, v: &Place, t: &Poly) -> Result<LogValue> {
    let q = phi.q() as i64;
    let big_r = phi.rank() as u32 * t.deg() as u32;
    let j = j_of_subring_generator(phi, t, v)?;
    let t_inv = LogValue::from_integer(valuation(&RatFunc::from_poly(t.clone()), v).expect("T != 0") * v.deg());
    let den = q * q.pow(big_r - 1).pow(2);
    Ok(j * LogValue::new(q - 1, q) - log_plus(t_inv) / den)
}

/// Output of the generic-subgroup refinement.
#[derive(Clone, Debug)]
pub struct Refinement {
    /// Y: every y has y and phi_T(y) both T-generic.
    pub generic_set: Vec<RatFunc>,
    /// The subgroup generated by Y.
    pub subgroup: Vec<RatFunc>,
    /// Number of translation rounds taken (at most 2R).
    pub rounds: usize,
    pub lambda_bound: LogValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Label {
    Generic,
    Disk(usize),
}

struct Labeler<'a> {
    v: &'a Place,
    reps: Vec<(RatFunc, i64)>,
}

impl Labeler<'_> {
    /// Non-generic points are grouped by the relation |x - y| < |x| = |y|.
    fn label(&mut self, generic: bool, x: &RatFunc) -> Label {
        if generic {
            return Label::Generic;
        }
        let vx = valuation(x, self.v).expect("non-generic points are nonzero");
        for (i, (r, vr)) in self.reps.iter().enumerate() {
            if *vr == vx && valuation(&(x - r), self.v).map_or(true, |d| d > vx) {
                return Label::Disk(i);
            }
        }
        self.reps.push((x.clone(), vx));
        Label::Disk(self.reps.len() - 1)
    }
}

fn closure_check(xs: &[RatFunc]) -> Result<HashSet<RatFunc>> {
    let set: HashSet<RatFunc> = xs.iter().cloned().collect();
    let f = xs.first().ok_or(Error::NotASubgroup)?.field();
    if !set.contains(&RatFunc::zero(f)) {
        return Err(Error::NotASubgroup);
    }
    for a in &set {
        for b in &set {
            if !set.contains(&(a + b)) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    Ok(set)
}

fn generated_subgroup(ys: &[RatFunc]) -> Vec<RatFunc> {
    let f = ys[0].field();
    let mut set: HashSet<RatFunc> = HashSet::new();
    set.insert(RatFunc::zero(f));
    for y in ys {
        if set.contains(y) {
            continue;
        }
        let cur: Vec<RatFunc> = set.iter().cloned().collect();
        let mut cy = y.clone();
        for _ in 1..f.p() {
            for z in &cur {
                set.insert(z + &cy);
            }
            cy = &cy + y;
        }
    }
    let mut out: Vec<RatFunc> = set.into_iter().collect();
    out.sort_by_key(|x| x.to_string());
    out
}

/// Finds a subgroup Y of X with #Y >= q^{-4 r^2 deg(T)^2} #X on whose nonzero
/// elements lambda_phi is at least the `lambda_lower_bound`.
///
/// Each round labels x by (Z-class of x, Z-class of phi_T(x)), where generic
/// points form the class Z_0; the largest bucket is kept, and unless it is
/// (Z_0, Z_0) it is translated back to contain 0.
pub fn refine_generic_subgroup(phi: &DrinfeldModule, xs: &[RatFunc], v: &Place, t: &Poly) -> Result<Refinement> {
    if t.deg() < 1 {
        return Err(Error::ConstantArgument);
    }
    let set = closure_check(xs)?;
    for x in &set {
        if !x.is_zero() && !in_julia(phi, v, x)? {
            return Err(Error::NotASubgroup);
        }
    }
    let pt = phi.phi_image(t);
    let q = phi.q();
    let big_r = phi.rank() * t.deg() as usize;
    let mut cur: Vec<RatFunc> = set.into_iter().collect();
    cur.sort_by_key(|x| x.to_string());
    let lambda_bound = lambda_lower_bound(phi, v, t)?;
    for round in 0..=2 * big_r {
        let mut lab = Labeler { v, reps: Vec::new() };
        let mut buckets: BTreeMap<(Label, Label), Vec<RatFunc>> = BTreeMap::new();
        for x in &cur {
            let y = pt.eval(x);
            let l1 = lab.label(generic_for(&pt, q, v, x), x);
            let l2 = lab.label(generic_for(&pt, q, v, &y), &y);
            buckets.entry((l1, l2)).or_default().push(x.clone());
        }
        let best = buckets.values().map(|b| b.len()).max().expect("nonempty");
        let gg = (Label::Generic, Label::Generic);
        let key = if buckets.get(&gg).is_some_and(|b| b.len() == best) {
            gg
        } else {
            *buckets.iter().find(|(_, b)| b.len() == best).expect("max exists").0
        };
        let bucket = buckets.remove(&key).expect("present");
        if key == gg {
            let subgroup = generated_subgroup(&bucket);
            return Ok(Refinement { generic_set: bucket, subgroup, rounds: round, lambda_bound });
        }
        let x0 = bucket[0].clone();
        cur = bucket.iter().map(|y| y - &x0).collect();
    }
    Err(Error::Invalid(format!("refinement did not reach the generic case within {} rounds", 2 * big_r + 1)))
}
