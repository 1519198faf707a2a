use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elimination::{fraction_free_reduce, integer_nullspace, IntegerSystem};
use super::rational_to_f64;
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigRational::one() } else { BigRational::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigRational>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(invalid(format!("{} values for a {rows}x{cols} matrix", values.len())));
        }
        Ok(Self::from_fn(rows, cols, |i, j| BigRational::from_integer(BigInt::from(values[i * cols + j]))))
    }

    /// Builds a matrix from rows, requiring equal row lengths.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid("ragged rows"));
        }
        let nrows = rows.len();
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a symmetric matrix, rejecting asymmetric input.
    pub fn symmetric_from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        if !m.is_symmetric() {
            return Err(invalid("matrix is not symmetric"));
        }
        Ok(m)
    }

    /// The 0/1 adjacency matrix.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.order();
        let mut m = Self::zeros(n, n);
        for (u, v) in g.edges() {
            m[(u, v)] = BigRational::one();
            m[(v, u)] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in difference");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self − λ I`.
    pub fn shift_diagonal(&self, lambda: &BigRational) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= lambda;
        }
        m
    }

    /// Entrywise (Schur) product.
    pub fn hadamard(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| rational_to_f64(&self[(i, j)]))
    }

    /// Row `i` scaled by the lcm of its denominators, as integers.
    fn integer_row(row: &[BigRational]) -> Vec<(usize, BigInt)> {
        let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        row.iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(j, q)| (j, q.numer() * (&lcm / q.denom())))
            .collect()
    }

    pub(crate) fn to_integer_system(&self) -> IntegerSystem {
        let mut sys = IntegerSystem::new(self.cols);
        for i in 0..self.rows {
            sys.push_row(Self::integer_row(self.row(i)));
        }
        sys
    }

    /// Basis of the right kernel, as primitive integer vectors.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        integer_nullspace(&self.to_integer_system())
            .into_iter()
            .map(|v| v.into_iter().map(BigRational::from_integer).collect())
            .collect()
    }

    /// Indices of a maximal set of linearly independent columns (the pivot
    /// columns of the row echelon form).
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut dense: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut d = vec![BigInt::zero(); self.cols];
                for (j, v) in Self::integer_row(self.row(i)) {
                    d[j] = v;
                }
                d
            })
            .collect();
        fraction_free_reduce(&mut dense, self.cols).0
    }

    pub fn rank(&self) -> usize {
        self.cols - integer_nullspace(&self.to_integer_system()).len()
    }

    /// Kernel basis stacked as the columns of an `cols × k` matrix.
    pub fn nullspace_matrix(&self) -> Self {
        let basis = self.nullspace();
        Self::from_fn(self.cols, basis.len(), |i, j| basis[j][i].clone())
    }

    /// Inverse by Gauss–Jordan over the rationals; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] / &piv;
                inv[(c, j)] = &inv[(c, j)] / &piv;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= t;
                    let t = &f * &inv[(c, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Largest absolute row sum.
    pub fn max_abs_row_sum(&self) -> BigRational {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|q| if q < &BigRational::zero() { -q } else { q.clone() }).sum::<BigRational>())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Orthogonal projector `B(BᵀB)⁻¹Bᵀ` onto the kernel of `m`, for any kernel basis `B`.
pub fn projector_onto_nullspace(m: &ExactMatrix) -> ExactMatrix {
    let b = m.nullspace_matrix();
    if b.cols() == 0 {
        return ExactMatrix::zeros(m.cols(), m.cols());
    }
    let bt = b.transpose();
    let inv = bt.mul(&b).inverse().expect("kernel basis has full column rank");
    b.mul(&inv).mul(&bt)
}
