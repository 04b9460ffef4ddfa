use num_bigint::BigUint;

use super::report::{component_size_bound, component_window, local_report, log_q_ceil, LocalModule, LocalReport};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::funcfield::{valuation, Elem, Fq, LogValue, Place, Poly, RatFunc};
use crate::linalg::{invariant_factors, Mat};
use crate::localfield::{LaurentSeries, EXACT};

/// F_phi(L_v) / phi^0(L_v) as an F_q[T]-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentModule {
    pub invariant_factors: Vec<Poly>,
    pub size: BigUint,
    pub complete: bool,
}

impl ComponentModule {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
    /// Whether a kills the module.
    pub fn killed_by(&self, a: &Poly) -> bool {
        self.invariant_factors.last().map_or(true, |m| m.divides(a))
    }
    /// log_q of the number of a-torsion elements: sum deg gcd(a, a_i).
    pub fn torsion_exponent(&self, a: &Poly) -> u32 {
        if a.is_zero() {
            return self.invariant_factors.iter().map(|p| p.deg() as u32).sum();
        }
        self.invariant_factors.iter().map(|p| p.gcd(a).deg() as u32).sum()
    }
}

/// phi_T acting on pi^kmin O / pi^k0 O, with the coordinates below kmin
/// recording escape from the Julia disk.
///
/// F_q coordinates: index (k - kmin) * d + i for the coefficient theta^i pi^k.
#[derive(Clone, Debug)]
pub struct ComponentSpace {
    f: Fq,
    d: usize,
    kmin: i64,
    k0: i64,
    /// columns: images of the basis of W in pi^kext O / pi^k0 O
    phi: Mat,
    /// basis of M = classes whose whole orbit stays in W
    m_basis: Vec<Vec<Elem>>,
    /// phi_T on M in the basis m_basis
    phi_m: Mat,
}

impl ComponentSpace {
    pub fn new(m: &LocalModule) -> Result<ComponentSpace> {
        let rep = m.report();
        if rep.place.is_infinite() {
            return Err(Error::Invalid("component space needs a finite place".into()));
        }
        let k = m.field();
        let res = k.residue();
        let f = k.fq();
        let d = res.degree();
        let q = m.q() as i64;
        let (kmin, k0) = component_window(&rep);
        let mut kext = kmin;
        for (i, v) in m.valuations().iter().enumerate() {
            if let Some(v) = v {
                kext = kext.min(v + q.pow(i as u32) * kmin);
            }
        }
        let n = d * (k0 - kmin) as usize;
        let rows = d * (k0 - kext) as usize;
        let mut cols = Vec::with_capacity(n);
        for kk in kmin..k0 {
            for i in 0..d {
                let x = LaurentSeries::monomial(k, res.theta_power(i), kk, EXACT);
                let y = m.eval(&x);
                if y.prec() < k0 {
                    return Err(Error::PrecisionExhausted(format!("phi_T known only to pi^{} on the component window", y.prec())));
                }
                cols.push(series_coords(&y, kext, k0, d));
            }
        }
        let phi = Mat::from_cols(f, rows, &cols);
        let low = d * (kmin - kext) as usize;
        let m_basis = stable_subspace(f, &phi, low, n);
        let phi_m = restrict(f, &phi, low, &m_basis);
        Ok(ComponentSpace { f, d, kmin, k0, phi, m_basis, phi_m })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.kmin, self.k0)
    }
    pub fn dim_w(&self) -> usize {
        self.d * (self.k0 - self.kmin) as usize
    }
    pub fn dim_m(&self) -> usize {
        self.m_basis.len()
    }
    pub fn phi_on_m(&self) -> &Mat {
        &self.phi_m
    }
    pub fn module(&self) -> ComponentModule {
        let inv = invariant_factors(&self.phi_m);
        let size = BigUint::from(self.f.q()).pow(self.m_basis.len() as u32);
        ComponentModule { invariant_factors: inv, size, complete: true }
    }

    /// Coordinates in W of a series, or None if v(x) < kmin.
    pub fn coords(&self, x: &LaurentSeries) -> Result<Option<Vec<Elem>>> {
        if !x.is_zero() && x.valuation().is_some_and(|v| v < self.kmin) {
            return Ok(None);
        }
        if x.prec() < self.k0 {
            return Err(Error::PrecisionExhausted(format!("point known only to pi^{}", x.prec())));
        }
        Ok(Some(series_coords(x, self.kmin, self.k0, self.d)))
    }

    /// Whether the class with coordinates w lies in M.
    pub fn in_m(&self, w: &[Elem]) -> bool {
        if w.iter().all(|&c| c == 0) {
            return true;
        }
        if self.m_basis.is_empty() {
            return false;
        }
        Mat::from_cols(self.f, self.dim_w(), &self.m_basis).solve(w).is_some()
    }

    /// Degree of the minimal annihilator of w, searching up to degree `budget`.
    /// None if the orbit escapes W first.
    pub fn annihilator_degree(&self, w: &[Elem], budget: u32) -> Result<Option<u32>> {
        let n = self.dim_w();
        let low = self.phi.rows() - n;
        let mut krylov: Vec<Vec<Elem>> = Vec::new();
        let mut cur = w.to_vec();
        for deg in 0..=budget {
            if span_contains(self.f, n, &krylov, &cur) {
                return Ok(Some(deg));
            }
            krylov.push(cur.clone());
            let img = self.phi.mul_vec(&cur);
            if img[..low].iter().any(|&c| c != 0) {
                return Ok(None);
            }
            cur = img[low..].to_vec();
        }
        Err(Error::BudgetExceeded { budget })
    }
}

fn series_coords(x: &LaurentSeries, lo: i64, hi: i64, d: usize) -> Vec<Elem> {
    let res = x.residue();
    let mut out = Vec::with_capacity(d * (hi - lo) as usize);
    for kk in lo..hi {
        out.extend(res.digits(x.coeff(kk)));
    }
    out
}

fn span_contains(f: Fq, dim: usize, basis: &[Vec<Elem>], v: &[Elem]) -> bool {
    if v.iter().all(|&c| c == 0) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    Mat::from_cols(f, dim, basis).solve(v).is_some()
}

/// Largest subspace M of W with E phi M = 0 and phi M in M.
fn stable_subspace(f: Fq, phi: &Mat, low: usize, n: usize) -> Vec<Vec<Elem>> {
    let mut basis: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    loop {
        if basis.is_empty() {
            return basis;
        }
        let b = Mat::from_cols(f, n, &basis);
        let img = phi.mul(&b);
        // constraints: escape part vanishes, W part lies in span(basis)
        let ann = b.transpose().kernel();
        let mut rows: Vec<Vec<Elem>> = (0..low).map(|i| img.row(i).to_vec()).collect();
        for c in &ann {
            let row: Vec<Elem> = (0..basis.len())
                .map(|j| (0..n).fold(0, |s, i| f.add(s, f.mul(c[i], img.get(low + i, j)))))
                .collect();
            rows.push(row);
        }
        if rows.is_empty() {
            return basis;
        }
        let ker = Mat::from_rows(f, basis.len(), &rows).kernel();
        if ker.len() == basis.len() {
            return basis;
        }
        basis = ker.iter().map(|y| b.mul_vec(y)).collect();
    }
}

fn restrict(f: Fq, phi: &Mat, low: usize, basis: &[Vec<Elem>]) -> Mat {
    let m = basis.len();
    if m == 0 {
        return Mat::zeros(f, 0, 0);
    }
    let n = basis[0].len();
    let b = Mat::from_cols(f, n, basis);
    let cols: Vec<Vec<Elem>> = basis
        .iter()
        .map(|x| {
            let y = phi.mul_vec(x);
            b.solve(&y[low..]).expect("M is phi-stable")
        })
        .collect();
    Mat::from_cols(f, m, &cols)
}

/// The component module at a finite place.
pub fn component_module(phi: &DrinfeldModule, v: &Place, prec: i64) -> Result<ComponentModule> {
    let m = LocalModule::from_drinfeld(phi, v, prec)?;
    Ok(ComponentSpace::new(&m)?.module())
}

/// The component module of a module given by local coefficients.
pub fn component_module_local(m: &LocalModule) -> Result<ComponentModule> {
    Ok(ComponentSpace::new(m)?.module())
}

/// x in phi^0(L_v): log|x| <= -j + c at finite v, x = 0 at the infinite place.
pub fn phi0_contains(phi: &DrinfeldModule, v: &Place, x: &RatFunc) -> bool {
    if x.is_zero() {
        return true;
    }
    if v.is_infinite() {
        return false;
    }
    let rep = local_report(phi, v);
    log_abs_of(x, v) <= rep.phi0_log_radius
}

fn log_abs_of(x: &RatFunc, v: &Place) -> LogValue {
    LogValue::from_integer(-valuation(x, v).expect("x != 0") * v.deg())
}

/// Annihilator-degree budget D = ceil(log_q(component_size_bound)).
pub fn degree_budget(rep: &LocalReport) -> u32 {
    log_q_ceil(rep.q, &component_size_bound(rep))
}

/// Membership of x in the filled Julia set F_phi(L_v), v finite.
///
/// Escaped points are rejected by the B_T disk; otherwise the class of x in
/// L_v / phi^0(L_v) is tested for membership in the bounded part M, and its
/// minimal annihilator b (phi_b(x) in phi^0) is found within the budget.
pub fn julia_contains(phi: &DrinfeldModule, v: &Place, x: &RatFunc) -> Result<bool> {
    julia_contains_with(phi, v, x, None)
}

/// julia_contains with the annihilator degree budget overridden.
pub fn julia_contains_with(phi: &DrinfeldModule, v: &Place, x: &RatFunc, budget: Option<u32>) -> Result<bool> {
    if v.is_infinite() {
        return Err(Error::Invalid("filled Julia membership is decided at finite places".into()));
    }
    if x.is_zero() {
        return Ok(true);
    }
    let rep = local_report(phi, v);
    if log_abs_of(x, v) > rep.b_t_log {
        return Ok(false);
    }
    if log_abs_of(x, v) <= rep.phi0_log_radius {
        return Ok(true);
    }
    let m = LocalModule::from_drinfeld(phi, v, 0)?;
    let space = ComponentSpace::new(&m)?;
    let (_, k0) = space.window();
    let xs = m.field().embed(x, k0);
    let w = space.coords(&xs)?.expect("inside the B_T disk");
    if !space.in_m(&w) {
        return Ok(false);
    }
    let forced = budget.is_some();
    let budget = budget.unwrap_or_else(|| degree_budget(&rep));
    match space.annihilator_degree(&w, budget)? {
        Some(_) => Ok(true),
        None if forced => Err(Error::BudgetExceeded { budget }),
        None => Err(Error::InvariantViolation { row: 0, msg: "class of M escaped W".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::{full_torsion, DrinfeldModule};
    use crate::funcfield::parse_ratfunc;

    fn ex() -> DrinfeldModule {
        let f = Fq::new(3).unwrap();
        DrinfeldModule::new(f, vec![RatFunc::one(f), RatFunc::t(f)]).unwrap()
    }

    #[test]
    fn example_module_is_trivial() {
        let phi = ex();
        let v = Place::finite(Poly::t(phi.field())).unwrap();
        let cm = component_module(&phi, &v, 0).unwrap();
        assert!(cm.is_trivial());
        assert_eq!(cm.size, BigUint::from(1u32));
        // oracle: v(phi_T(x)) = 1 + 9 v(x) for v(x) < 0
        let f = phi.field();
        for k in 1..4 {
            let x = RatFunc::t(f).pow(-k).unwrap();
            let y = phi.eval_t(&x);
            assert_eq!(valuation(&y, &v), Some(1 - 9 * k as i64));
            assert!(!julia_contains(&phi, &v, &x).unwrap());
        }
    }

    #[test]
    fn good_reduction_is_trivial() {
        let f = Fq::new(3).unwrap();
        let phi = DrinfeldModule::new(f, vec![parse_ratfunc(f, "t+1").unwrap(), RatFunc::one(f)]).unwrap();
        for v in crate::funcfield::enumerate_places(f, 2).into_iter().skip(1) {
            let cm = component_module(&phi, &v, 0).unwrap();
            assert!(cm.is_trivial(), "{v}");
        }
    }

    #[test]
    fn phi0_membership() {
        let phi = ex();
        let f = phi.field();
        let v = Place::finite(Poly::t(f)).unwrap();
        assert!(phi0_contains(&phi, &v, &RatFunc::zero(f)));
        assert!(phi0_contains(&phi, &v, &RatFunc::one(f)));
        assert!(!phi0_contains(&phi, &v, &RatFunc::t(f).inv().unwrap()));
        assert!(!phi0_contains(&phi, &Place::Infinite, &RatFunc::one(f)));
        let carlitz = DrinfeldModule::carlitz(f);
        let x = parse_ratfunc(f, "t/(t+1)").unwrap();
        assert!(phi0_contains(&carlitz, &v, &x));
        assert!(julia_contains(&carlitz, &v, &x).unwrap());
    }

    #[test]
    fn torsion_points_are_in_julia() {
        // phi_T = t x + t x^2 over F_2 has t-torsion containing 1? phi_T(1) = t + t = 0
        let f = Fq::new(2).unwrap();
        let t = RatFunc::t(f);
        let phi = DrinfeldModule::new(f, vec![t.clone()]).unwrap();
        assert!(phi.eval_t(&RatFunc::one(f)).is_zero());
        let tors = full_torsion(&phi).unwrap();
        for x in crate::drinfeld::span_points(f, &tors.points_basis()) {
            for v in crate::funcfield::enumerate_places(f, 2).into_iter().skip(1) {
                assert!(julia_contains(&phi, &v, &x).unwrap());
            }
        }
    }

    #[test]
    fn prescribed_torsion_gives_nontrivial_module() {
        for q in [2u32, 3] {
            let f = Fq::new(q).unwrap();
            let t = RatFunc::t(f);
            let x0 = t.inv().unwrap();
            let phi = DrinfeldModule::with_torsion_point(f, vec![&t + &RatFunc::one(f)], &x0).unwrap();
            let v = Place::finite(Poly::t(f)).unwrap();
            assert!(!phi0_contains(&phi, &v, &x0));
            assert!(julia_contains(&phi, &v, &x0).unwrap());
            let cm = component_module(&phi, &v, 0).unwrap();
            assert!(!cm.is_trivial());
            assert!(cm.size <= component_size_bound(&local_report(&phi, &v)));
        }
    }
}
