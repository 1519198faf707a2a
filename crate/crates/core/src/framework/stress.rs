use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{least_eigenvalue_framework, numerical_rank, BackendChoice, Framework, Matrix, GRAM_TOLERANCE};
use crate::error::{Error, Result};
use crate::exact::{is_psd_exact, is_psd_pivoted, ExactMatrix, Spectrum, DEFAULT_TOLERANCE};
use crate::graph::{EdgeKind, Graph};

/// A candidate spherical stress matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct StressMatrix {
    z: ExactMatrix,
}

/// The five stress conditions, each checked on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StressConditions {
    /// `Z ⪰ 0`.
    pub psd: bool,
    /// `Z_ij = 0` for distinct non-adjacent `i, j`.
    pub support: bool,
    /// `Z_ij ≥ 0` on struts, `Z_ij ≤ 0` on cables.
    pub signs: bool,
    /// `ZP = 0`.
    pub annihilates: bool,
    /// `corank Z = dim span(p_i)`.
    pub corank: bool,
}

impl StressConditions {
    pub fn all(&self) -> bool {
        self.psd && self.support && self.signs && self.annihilates && self.corank
    }
}

impl StressMatrix {
    pub fn new(z: ExactMatrix) -> Self {
        StressMatrix { z }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.z
    }

    pub fn corank(&self) -> usize {
        self.z.nullspace().len()
    }

    /// Evaluates every condition against `fw` on `fw`'s tensegrity graph.
    ///
    /// `ZP = 0` is checked as `Z·PPᵀ = 0`, which is equivalent and needs only
    /// the Gram matrix.
    pub fn check(&self, fw: &Framework) -> Result<StressConditions> {
        let g = fw.graph();
        let n = g.order();
        if self.z.rows() != n || !self.z.is_square() {
            return Err(crate::error::invalid("stress matrix size does not match the framework"));
        }
        let psd = if n <= 48 { is_psd_exact(&self.z)? } else { is_psd_pivoted(&self.z)? };
        let support = (0..n).all(|i| (0..n).all(|j| g.is_close(i, j) || self.z[(i, j)].is_zero()));
        let signs = g.edges().all(|(i, j)| {
            let zij = &self.z[(i, j)];
            match g.edge_kind(i, j).expect("edge") {
                EdgeKind::Strut => !zij.is_negative(),
                EdgeKind::Cable => !zij.is_positive(),
                EdgeKind::Bar => true,
            }
        });
        let (annihilates, corank) = match fw.gram() {
            Matrix::Exact(gram) => (self.z.mul(gram).is_zero(), self.corank() == gram.rank()),
            Matrix::Float(gram) => {
                let zg = self.z.to_f64() * gram;
                (zg.abs().max() <= GRAM_TOLERANCE, self.corank() == numerical_rank(gram))
            }
        };
        Ok(StressConditions { psd, support, signs, annihilates, corank })
    }
}

/// `Z = A − τI`, verified against the least-eigenvalue framework.
pub fn canonical_stress(g: &Graph, spectrum: &Spectrum) -> Result<StressMatrix> {
    if g.has_cables() {
        return Err(Error::Unsupported("canonical stress needs a tensegrity without cables".into()));
    }
    let tau: &BigRational = spectrum
        .exact_tau()
        .ok_or_else(|| Error::Unsupported("canonical stress needs an exact least eigenvalue".into()))?;
    let z = StressMatrix::new(ExactMatrix::adjacency(g).shift_diagonal(tau));
    let fw = least_eigenvalue_framework(g, BackendChoice::Exact, DEFAULT_TOLERANCE)?;
    let c = z.check(&fw)?;
    if !c.all() {
        return Err(Error::Internal(format!("A - tau I fails a stress condition: {c:?}")));
    }
    Ok(z)
}
