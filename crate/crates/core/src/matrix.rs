//! Exact dense linear algebra over Q(i, √2).
//!
//! Ranks, kernels and echelon forms are computed by fraction-free Gaussian
//! elimination with first-nonzero pivot selection, so identical inputs always
//! produce identical bases and reports.

use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn column_vector(entries: Vec<Scalar>) -> Self {
        let rows = entries.len();
        Matrix {
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * s)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if found != pivot_row {
                m.swap_rows(found, pivot_row);
            }
            let inv = m[(pivot_row, col)].inv().expect("nonzero pivot");
            for j in col..m.cols {
                m[(pivot_row, j)] = &m[(pivot_row, j)] * &inv;
            }
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in col..m.cols {
                        if m[(pivot_row, j)].is_zero() {
                            continue;
                        }
                        let delta = &factor * &m[(pivot_row, j)];
                        m[(r, j)] = m[(r, j)].clone() - delta;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, ordered by free column index (lexicographically
    /// first independent vectors after elimination).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (col, pr) in pivot_of_col.iter().enumerate() {
                if let Some(row) = pr {
                    v[col] = -r[(*row, free)].clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution x of self · x = b, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::column_vector(b.to_vec()));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !rhs[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &rhs[(k, j)];
                }
            }
            acc
        })
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - rhs[(i, j)].clone()
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of Q(i,√2)^n held as the row space of an RREF matrix,
/// so equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn from_spanning(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient));
        let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: Matrix::from_rows(rows),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows())
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    /// Reduces v against the basis; the result is zero iff v lies in the space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for i in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&j| !self.basis[(i, j)].is_zero())
                .expect("rref row is nonzero");
            if !v[pivot_col].is_zero() {
                let factor = v[pivot_col].clone();
                for j in 0..self.ambient {
                    if self.basis[(i, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self.basis[(i, j)];
                    v[j] = v[j].clone() - delta;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_spanning(self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // Solve u^T A = w^T B by stacking [A^T | -B^T] and reading kernels.
        let at = self.basis.transpose();
        let bt = other.basis.transpose().scale(&-Scalar::one());
        let stacked = at.hstack(&bt);
        let mut vectors = Vec::new();
        for k in stacked.kernel_basis() {
            let coeffs = &k[..self.dim()];
            let mut v = vec![Scalar::zero(); self.ambient];
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..self.ambient {
                    v[j] = v[j].clone() + c * &self.basis[(i, j)];
                }
            }
            vectors.push(v);
        }
        Subspace::from_spanning(self.ambient, &vectors)
    }

    /// The preimage {x : A·x ∈ self} of this subspace under A.
    pub fn preimage(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.rows(), self.ambient);
        // x ↦ reduction of A·x against the basis is linear; its kernel is the preimage.
        let red = Matrix::from_fn(self.ambient, a.cols(), |i, j| {
            let col = a.column(j);
            self.reduce(&col)[i].clone()
        });
        Subspace::from_spanning(a.cols(), &red.kernel_basis())
    }

    /// The image {A·x : x ∈ self} of this subspace under A.
    pub fn image(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.cols(), self.ambient);
        let vs: Vec<Vec<Scalar>> = self.basis_vectors().iter().map(|v| a.apply(v)).collect();
        Subspace::from_spanning(a.rows(), &vs)
    }

    /// Extends `self` by vectors of `larger`, returning representatives of a
    /// complement of `self` inside `larger` (greedy, deterministic).
    pub fn complement_in(&self, larger: &Subspace) -> Vec<Vec<Scalar>> {
        assert!(larger.contains_subspace(self), "not nested");
        let mut reps = Vec::new();
        let mut acc = self.clone();
        for v in larger.basis_vectors() {
            if !acc.contains(&v) {
                reps.push(v.clone());
                acc = acc.sum(&Subspace::from_spanning(self.ambient, &[v]));
            }
        }
        reps
    }

    /// Coordinates of v in the ordered list [basis of self ++ reps], if v lies
    /// in the sum; used to express quotient classes in chosen representatives.
    pub fn coords_with_reps(&self, reps: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut cols = self.basis_vectors();
        cols.extend(reps.to_vec());
        if cols.is_empty() {
            return if v.iter().all(Scalar::is_zero) {
                Some(Vec::new())
            } else {
                None
            };
        }
        let m = Matrix::from_rows(cols).transpose();
        m.solve(v)
    }
}

pub fn kernel_subspace(a: &Matrix) -> Subspace {
    Subspace::from_spanning(a.cols(), &a.kernel_basis())
}

pub fn image_subspace(a: &Matrix) -> Subspace {
    let vs: Vec<Vec<Scalar>> = (0..a.cols()).map(|j| a.column(j)).collect();
    Subspace::from_spanning(a.rows(), &vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(1), s(0), s(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(0)]]);
        assert_eq!(m.solve(&[s(3), s(0)]), Some(vec![s(3), s(0)]));
        assert_eq!(m.solve(&[s(3), s(1)]), None);
    }

    #[test]
    fn irrational_pivots() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::sqrt2(), s(2)],
            vec![s(1), Scalar::sqrt2()],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn subspace_lattice() {
        let e1 = vec![s(1), s(0), s(0)];
        let e2 = vec![s(0), s(1), s(0)];
        let e3 = vec![s(0), s(0), s(1)];
        let u = Subspace::from_spanning(3, &[e1.clone(), e2.clone()]);
        let w = Subspace::from_spanning(3, &[e2.clone(), e3.clone()]);
        assert_eq!(u.intersection(&w).dim(), 1);
        assert!(u.intersection(&w).contains(&e2));
        assert_eq!(u.sum(&w).dim(), 3);
        let reps = u.intersection(&w).complement_in(&w);
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn preimage_of_subspace() {
        // A maps (x, y) to (x, y, 0); preimage of span{e1} is the x-axis.
        let a = Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(0), s(1)], vec![s(0), s(0)]]);
        let target = Subspace::from_spanning(3, &[vec![s(1), s(0), s(0)]]);
        let pre = target.preimage(&a);
        assert_eq!(pre.dim(), 1);
        assert!(pre.contains(&[s(1), s(0)]));
    }
}
