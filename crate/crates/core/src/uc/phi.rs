use nalgebra::DMatrix;
use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::exact::ExactMatrix;
use crate::framework::{Framework, Matrix};
use crate::graph::Graph;

const FLOAT_TOLERANCE: f64 = 1e-9;

/// The linear bijection `ℛ(G) → 𝒳(G)`, `R ↦ PRPᵀ`, for a least-eigenvalue
/// framework.
///
/// On the exact path `P` is a set of linearly independent columns of `E_τ`
/// and the inverse is `(PᵀP)⁻¹PᵀXP(PᵀP)⁻¹`. On the floating path `P` has
/// orthonormal columns and the inverse is `PᵀXP`.
#[derive(Clone, Debug)]
pub struct Phi {
    graph: Graph,
    p: Matrix,
    gram_inverse: Option<ExactMatrix>,
}

impl Phi {
    pub fn for_framework(fw: &Framework) -> Result<Self> {
        match fw.gram() {
            Matrix::Exact(e) => {
                let cols = e.pivot_columns();
                let p = e.select_columns(&cols);
                let gram_inverse = p.transpose().mul(&p).inverse().expect("independent columns");
                Ok(Phi { graph: fw.graph().clone(), p: Matrix::Exact(p), gram_inverse: Some(gram_inverse) })
            }
            Matrix::Float(_) => {
                let p = fw.matrix().ok_or_else(|| invalid("floating framework has no framework matrix"))?.to_f64();
                let ptp = p.transpose() * &p;
                if (ptp - DMatrix::identity(p.ncols(), p.ncols())).abs().max() > 1e-8 {
                    return Err(invalid("floating framework matrix must have orthonormal columns"));
                }
                Ok(Phi { graph: fw.graph().clone(), p: Matrix::Float(p), gram_inverse: None })
            }
        }
    }

    /// `d`, the size of the matrices in `ℛ(G)`.
    pub fn dimension(&self) -> usize {
        self.p.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.p
    }

    /// `p_iᵀ R p_j = 0` for every `i ≃ j`.
    pub fn is_in_rspace(&self, r: &Matrix) -> bool {
        match self.phi_unchecked(r) {
            Some(x) => self.vanishes_on_close_pairs(&x),
            None => false,
        }
    }

    fn vanishes_on_close_pairs(&self, x: &Matrix) -> bool {
        let n = self.graph.order();
        let close = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.graph.is_close(i, j));
        match x {
            Matrix::Exact(x) => close.into_iter().all(|(i, j)| x[(i, j)].is_zero()),
            Matrix::Float(x) => close.into_iter().all(|(i, j)| x[(i, j)].abs() <= FLOAT_TOLERANCE),
        }
    }

    fn phi_unchecked(&self, r: &Matrix) -> Option<Matrix> {
        let d = self.dimension();
        if r.rows() != d || r.cols() != d {
            return None;
        }
        Some(match (&self.p, r) {
            (Matrix::Exact(p), Matrix::Exact(r)) => {
                if !r.is_symmetric() {
                    return None;
                }
                Matrix::Exact(p.mul(r).mul(&p.transpose()))
            }
            (p, r) => {
                let (p, r) = (p.to_f64(), r.to_f64());
                if (&r - r.transpose()).abs().max() > FLOAT_TOLERANCE {
                    return None;
                }
                Matrix::Float(&p * r * p.transpose())
            }
        })
    }

    /// `Φ(R) = PRPᵀ`; rejects `R ∉ ℛ(G)`.
    pub fn phi(&self, r: &Matrix) -> Result<Matrix> {
        let x = self.phi_unchecked(r).ok_or_else(|| invalid("R is not a symmetric d x d matrix"))?;
        if !self.vanishes_on_close_pairs(&x) {
            return Err(invalid("R is not in the R-space: p_i^T R p_j != 0 on a closed neighborhood pair"));
        }
        Ok(x)
    }

    pub fn phi_inverse(&self, x: &Matrix) -> Result<Matrix> {
        let n = self.graph.order();
        if x.rows() != n || x.cols() != n {
            return Err(invalid(format!("X must be {n}x{n}")));
        }
        match (&self.p, x, &self.gram_inverse) {
            (Matrix::Exact(p), Matrix::Exact(x), Some(gi)) => {
                let pt = p.transpose();
                Ok(Matrix::Exact(gi.mul(&pt).mul(x).mul(p).mul(gi)))
            }
            (p, x, gi) => {
                let (p, x) = (p.to_f64(), x.to_f64());
                let core = p.transpose() * x * &p;
                Ok(Matrix::Float(match gi {
                    Some(gi) => {
                        let gi = gi.to_f64();
                        &gi * core * &gi
                    }
                    None => core,
                }))
            }
        }
    }
}

pub fn phi(r: &Matrix, fw: &Framework) -> Result<Matrix> {
    Phi::for_framework(fw)?.phi(r)
}

pub fn phi_inverse(x: &Matrix, fw: &Framework) -> Result<Matrix> {
    Phi::for_framework(fw)?.phi_inverse(x)
}
