//! Dense square complex matrices for the equivalence oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Matrix {
        Matrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Matrix {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Row-major construction; panics unless `rows` is square.
    pub fn from_rows(rows: &[&[Complex64]]) -> Matrix {
        let dim = rows.len();
        let mut m = Matrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// Permutation matrix sending basis state `j` to `perm(j)`.
    pub fn permutation(dim: usize, perm: impl Fn(usize) -> usize) -> Matrix {
        let mut m = Matrix::zeros(dim);
        for j in 0..dim {
            m[(perm(j), j)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.dim).map(move |i| self[(i, j)])
    }

    pub fn adjoint(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `|tr(self† other)| / dim`; equals 1 exactly when the two unitaries
    /// agree up to a global phase.
    pub fn phase_fidelity(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..self.dim {
            for k in 0..self.dim {
                tr += self[(k, i)].conj() * other[(k, i)];
            }
        }
        tr.norm() / self.dim as f64
    }

    /// Equal up to a global phase: `1 - |tr(self† other)|/dim <= tol`.
    pub fn equals_up_to_phase(&self, other: &Matrix, tol: f64) -> bool {
        1.0 - self.phase_fidelity(other) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).max_abs_diff(&Matrix::identity(self.dim)) <= tol
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_phase_is_ignored() {
        let id = Matrix::identity(4);
        let phase = Complex64::from_polar(1.0, 0.7);
        let mut rotated = Matrix::identity(4);
        for i in 0..4 {
            rotated[(i, i)] = phase;
        }
        assert!(id.equals_up_to_phase(&rotated, 1e-12));
        assert!(id.max_abs_diff(&rotated) > 0.1);

        let mut relative = Matrix::identity(4);
        relative[(3, 3)] = Complex64::new(-1.0, 0.0);
        assert!(!id.equals_up_to_phase(&relative, 1e-6));
    }

    #[test]
    fn permutation_is_unitary() {
        let swap = Matrix::permutation(4, |j| ((j & 1) << 1) | (j >> 1));
        assert!(swap.is_unitary(1e-14));
        assert_eq!(swap[(2, 1)], Complex64::new(1.0, 0.0));
    }
}
