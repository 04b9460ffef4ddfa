//! Dense linear algebra over F_q and Smith forms over F_q[T].

use crate::funcfield::{Elem, Fq, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    f: Fq,
    rows: usize,
    cols: usize,
    a: Vec<Elem>,
}

impl Mat {
    pub fn zeros(f: Fq, rows: usize, cols: usize) -> Mat {
        Mat { f, rows, cols, a: vec![0; rows * cols] }
    }
    pub fn identity(f: Fq, n: usize) -> Mat {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }
    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(f: Fq, rows: usize, cols: &[Vec<Elem>]) -> Mat {
        let mut m = Mat::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }
    pub fn from_rows(f: Fq, cols: usize, rows: &[Vec<Elem>]) -> Mat {
        let mut m = Mat::zeros(f, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            m.a[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }
    pub fn field(&self) -> Fq {
        self.f
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.a[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.a[i * self.cols + j] = x;
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let f = self.f;
        let mut m = Mat::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let y = o.get(k, j);
                    if y != 0 {
                        let idx = i * o.cols + j;
                        m.a[idx] = f.add(m.a[idx], f.mul(x, y));
                    }
                }
            }
        }
        m
    }
    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.f;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }
    pub fn stack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut a = self.a.clone();
        a.extend_from_slice(&o.a);
        Mat { f: self.f, rows: self.rows + o.rows, cols: self.cols, a }
    }
    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.f;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.a.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let x = self.get(r, j);
                self.set(r, j, f.mul(x, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let m = self.get(i, c);
                if m == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let x = f.sub(self.get(i, j), f.mul(m, self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space {x : A x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let f = self.f;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b, if any.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        let f = self.f;
        let mut aug = Mat::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Row-reduced basis of the span of the given vectors.
pub fn span_basis(f: Fq, dim: usize, vs: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_rows(f, dim, vs);
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// All F_q-linear combinations of a basis (q^k vectors).
pub fn enumerate_span(f: Fq, dim: usize, basis: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![0; dim]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * f.q() as usize);
        for v in &out {
            for c in f.elements() {
                next.push(v.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect());
            }
        }
        out = next;
    }
    out
}

/// Nonconstant invariant factors (monic, divisibility chain) of T*I - m, i.e.
/// the module structure of F_q^n under T acting by m.
pub fn invariant_factors(m: &Mat) -> Vec<Poly> {
    let f = m.field();
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = f.neg(m.get(i, j));
                    if i == j {
                        Poly::from_coeffs(f, vec![c, 1])
                    } else {
                        Poly::constant(f, c)
                    }
                })
                .collect()
        })
        .collect();
    let diag = smith_diagonal(&mut a);
    diag.into_iter().filter(|p| p.deg() > 0).collect()
}

fn smith_diagonal(a: &mut [Vec<Poly>]) -> Vec<Poly> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let f = a[0][0].field();
    let mut diag = Vec::new();
    for k in 0..n.min(cols) {
        loop {
            // pivot of minimal degree in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].deg() < a[bi][bj].deg()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // remaining block is zero
                for _ in k..n.min(cols) {
                    diag.push(Poly::zero(f));
                }
                return normalize_chain(diag);
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let piv = a[k][k].clone();
            let mut clean = true;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (qt, _) = a[i][k].divrem(&piv);
                for j in k..cols {
                    let s = &a[i][j] - &(&qt * &a[k][j]);
                    a[i][j] = s;
                }
                if !a[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let (qt, _) = a[k][j].divrem(&piv);
                for row in a.iter_mut().skip(k) {
                    let s = &row[j] - &(&qt * &row[k]);
                    row[j] = s;
                }
                if !a[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the rest by the pivot
            let mut bad = None;
            'outer: for i in k + 1..n {
                for j in k + 1..cols {
                    if !a[i][j].rem(&piv).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in k..cols {
                        let s = &a[k][j] + &a[i][j];
                        a[k][j] = s;
                    }
                }
                None => {
                    diag.push(piv.monic());
                    break;
                }
            }
        }
    }
    normalize_chain(diag)
}

fn normalize_chain(mut d: Vec<Poly>) -> Vec<Poly> {
    // zeros (infinite factors) go last; the loop above already yields a chain
    d.sort_by_key(|p| if p.is_zero() { i64::MAX } else { p.deg() });
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_solve() {
        let f = Fq::new(3).unwrap();
        let m = Mat::from_rows(f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|&x| x == 0));
        let x = m.solve(&[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);
        let inconsistent = Mat::from_rows(f, 2, &[vec![1, 0], vec![1, 0]]);
        assert!(inconsistent.solve(&[1, 2]).is_none());
    }

    #[test]
    fn invariant_factors_of_companion_blocks() {
        let f = Fq::new(2).unwrap();
        // nilpotent Jordan block of size 2 and a 1x1 zero block: factors T, T^2
        let mut m = Mat::zeros(f, 3, 3);
        m.set(1, 0, 1);
        let inv = invariant_factors(&m);
        let t = Poly::t(f);
        assert_eq!(inv, vec![t.clone(), &t * &t]);
        // identity: T+1 twice
        let inv = invariant_factors(&Mat::identity(f, 2));
        let tp1 = Poly::from_coeffs(f, vec![1, 1]);
        assert_eq!(inv, vec![tp1.clone(), tp1]);
    }

    #[test]
    fn invariant_factors_cyclic() {
        let f = Fq::new(3).unwrap();
        // companion matrix of T^2 + 1
        let m = Mat::from_rows(f, 2, &[vec![0, 2], vec![1, 0]]);
        assert_eq!(invariant_factors(&m), vec![Poly::from_coeffs(f, vec![1, 0, 1])]);
    }

    #[test]
    fn span_enumeration() {
        let f = Fq::new(3).unwrap();
        let b = span_basis(f, 3, &[vec![1, 0, 1], vec![2, 0, 2], vec![0, 1, 0]]);
        assert_eq!(b.len(), 2);
        assert_eq!(enumerate_span(f, 3, &b).len(), 9);
    }
}
