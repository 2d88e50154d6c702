//! Dense linear algebra over a [`Field`]. Buckets are small (tens of
//! columns at most), so plain row-major `Vec`s and Gaussian elimination are
//! all that is needed.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<F>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduces in place to reduced row echelon form and returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().unwrap();
            for j in 0..self.cols {
                self[(r, j)] = self[(r, j)] * inv;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self[(r, j)];
                    self[(i, j)] = self[(i, j)] - f * v;
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

    /// Basis of { v : self · v = 0 }.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// A subspace of `F^dim`, stored as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    dim: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: vec![], pivots: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        Self::span(dim, &Matrix::<F>::identity(dim).row_vecs())
    }

    pub fn span(dim: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(dim);
        }
        let mut m = Matrix::from_rows(dim, vectors);
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { dim, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p];
            if c.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(row) {
                *o = *o - c * b;
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.dim, &vs)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        // Solve a·A = b·B via the kernel of [A; -B]ᵀ.
        let (a, b) = (self.dimension(), other.dimension());
        if a == 0 || b == 0 {
            return Self::zero(self.dim);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|&x| -x).collect()));
        let m = Matrix::from_columns(self.dim, &cols);
        let vs: Vec<Vec<F>> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![F::zero(); self.dim];
                for (coef, row) in k[..a].iter().zip(&self.basis) {
                    for (o, &x) in v.iter_mut().zip(row) {
                        *o = *o + *coef * x;
                    }
                }
                v
            })
            .collect();
        Self::span(self.dim, &vs)
    }

    /// Extends `self` to a basis of `larger`, returning the added vectors in
    /// the order the ambient standard basis first becomes necessary.
    pub fn complement_in(&self, larger: &Subspace<F>) -> Vec<Vec<F>> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in &larger.basis {
            if !acc.contains(v) {
                out.push(acc.reduce(v));
                acc = acc.sum(&Subspace::span(self.dim, std::slice::from_ref(v)));
            }
        }
        out
    }
}

/// F3 coordinates of a vector over an extension field, concatenated.
pub fn restrict_scalars<F: Field>(v: &[F]) -> Vec<crate::field::F3> {
    v.iter().flat_map(|x| x.to_f3()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F3, F9};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn f3(v: &[i64]) -> Vec<F3> {
        v.iter().map(|&x| F3::new(x)).collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = Matrix::from_rows(3, &[f3(&[1, 1, 0]), f3(&[0, 1, 1])]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn f9_rank() {
        let w = F9::OMEGA;
        let m = Matrix::from_rows(2, &[vec![F9::ONE, w], vec![w, w * w]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, &[f3(&[1, 0, 0]), f3(&[0, 1, 0])]);
        let b = Subspace::span(3, &[f3(&[0, 1, 0]), f3(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b).dimension(), 1);
        assert!(a.intersect(&b).contains(&f3(&[0, 1, 0])));
        assert_eq!(a.sum(&b).dimension(), 3);
    }

    #[test]
    fn complement() {
        let small = Subspace::span(3, &[f3(&[1, 1, 0])]);
        let big = Subspace::span(3, &[f3(&[1, 0, 0]), f3(&[0, 1, 0])]);
        let c = small.complement_in(&big);
        assert_eq!(c.len(), 1);
        assert_eq!(small.sum(&Subspace::span(3, &c)), big);
    }

    fn mat_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(-1i64..=1, r * c))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, data) in mat_strategy()) {
            let rows: Vec<Vec<F3>> = data.chunks(c).map(f3).collect();
            let m = Matrix::from_rows(c, &rows);
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), c);
            for v in &k {
                prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let _ = r;
        }

        #[test]
        fn intersection_dimension_formula((_r, c, data) in mat_strategy(), (_r2, _c2, data2) in mat_strategy()) {
            let a = Subspace::span(c, &data.chunks(c).map(f3).collect::<Vec<_>>());
            let b_rows: Vec<Vec<F3>> = data2.to_vec()
                .chunks(c).filter(|ch| ch.len() == c).map(f3).collect();
            let b = Subspace::span(c, &b_rows);
            let i = a.intersect(&b);
            prop_assert_eq!(a.dimension() + b.dimension(), a.sum(&b).dimension() + i.dimension());
            prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
        }
    }
}
