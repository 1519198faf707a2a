//! Tensegrity frameworks, domination and least-eigenvalue frameworks.
//!
//! A framework's Gram matrix is its source of truth: congruent frameworks are
//! interchangeable, and the Gram matrix of a least-eigenvalue framework is the
//! exactly computable projector `E_τ` even when no orthonormal rational
//! framework matrix exists.

mod kneser;
mod stress;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::{
    floating_least_eigenspace, format_float, integer_least_eigenvalue, projector_onto_nullspace, Backend,
    ExactMatrix, FloatingEigenspace, Scalar, Spectrum, DEFAULT_TOLERANCE,
};
use crate::graph::{EdgeKind, Graph};

pub use kneser::{kneser_framework, qkneser_framework};
pub use stress::{canonical_stress, StressConditions, StressMatrix};

/// Absolute tolerance for comparing floating Gram entries.
pub const GRAM_TOLERANCE: f64 = 1e-9;

/// A dense matrix that is either exact or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum Matrix {
    Exact(ExactMatrix),
    Float(DMatrix<f64>),
}

impl Matrix {
    pub fn rows(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.rows(),
            Matrix::Float(m) => m.nrows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.cols(),
            Matrix::Float(m) => m.ncols(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Matrix::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&ExactMatrix> {
        match self {
            Matrix::Exact(m) => Some(m),
            Matrix::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            Matrix::Exact(m) => m.to_f64(),
            Matrix::Float(m) => m.clone(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        match self {
            Matrix::Exact(m) => Scalar::Exact(m[(i, j)].clone()),
            Matrix::Float(m) => Scalar::Float(m[(i, j)]),
        }
    }

    /// `M Mᵀ`.
    pub fn gram(&self) -> Matrix {
        match self {
            Matrix::Exact(m) => Matrix::Exact(m.mul(&m.transpose())),
            Matrix::Float(m) => Matrix::Float(m * m.transpose()),
        }
    }

    /// Row-major entries in canonical text form.
    pub fn render(&self) -> Vec<String> {
        match self {
            Matrix::Exact(m) => m.entries().iter().map(crate::exact::format_rational).collect(),
            Matrix::Float(m) => {
                let mut out = Vec::with_capacity(m.len());
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        out.push(format_float(m[(i, j)]));
                    }
                }
                out
            }
        }
    }

    /// Exact rank, or numerical rank with the relative threshold `1e-9`.
    pub fn rank(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.rank(),
            Matrix::Float(m) => numerical_rank(m),
        }
    }
}

pub(crate) fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-9 * top.max(1.0)).count()
}

/// Which spectral backend to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BackendChoice {
    /// Exact when the least eigenvalue is a certified integer, floating otherwise.
    #[default]
    Auto,
    Exact,
    Floating,
}

/// The least eigenspace of a graph from either backend.
#[derive(Clone, Debug)]
pub enum LeastEigenspace {
    Exact { spectrum: Spectrum, projector: ExactMatrix },
    Floating(FloatingEigenspace),
}

impl LeastEigenspace {
    pub fn spectrum(&self) -> &Spectrum {
        match self {
            LeastEigenspace::Exact { spectrum, .. } => spectrum,
            LeastEigenspace::Floating(f) => &f.spectrum,
        }
    }
}

/// Resolves the least eigenvalue of `g` with the requested backend.
pub fn least_eigenspace(g: &Graph, choice: BackendChoice, tol: f64) -> Result<LeastEigenspace> {
    if g.order() == 0 {
        return Err(invalid("graph has no vertices"));
    }
    let a = ExactMatrix::adjacency(g);
    let floating = || floating_least_eigenspace(&a.to_f64(), tol).map(LeastEigenspace::Floating);
    if choice == BackendChoice::Floating {
        return floating();
    }
    match integer_least_eigenvalue(&a)? {
        Some(spectrum) => {
            let tau = spectrum.exact_tau().expect("exact backend").clone();
            let projector = projector_onto_nullspace(&a.shift_diagonal(&tau));
            Ok(LeastEigenspace::Exact { spectrum, projector })
        }
        None if choice == BackendChoice::Exact => Err(Error::Unsupported(
            "least eigenvalue is not an integer; use the floating backend".into(),
        )),
        None => floating(),
    }
}

/// A graph together with a vector assignment, held through its Gram matrix.
#[derive(Clone, Debug)]
pub struct Framework {
    graph: Graph,
    p: Option<Matrix>,
    gram: Matrix,
    spectrum: Option<Spectrum>,
}

impl Framework {
    /// Framework with matrix `p` (row `i` is the vector of vertex `i`).
    pub fn from_matrix(graph: Graph, p: Matrix) -> Result<Self> {
        if p.rows() != graph.order() {
            return Err(invalid(format!("{} rows for {} vertices", p.rows(), graph.order())));
        }
        let gram = p.gram();
        Ok(Framework { graph, p: Some(p), gram, spectrum: None })
    }

    /// Framework known only through its Gram matrix.
    pub fn from_gram(graph: Graph, gram: Matrix) -> Result<Self> {
        let n = graph.order();
        if gram.rows() != n || gram.cols() != n {
            return Err(invalid(format!("Gram matrix is {}x{}, expected {n}x{n}", gram.rows(), gram.cols())));
        }
        let symmetric = match &gram {
            Matrix::Exact(m) => m.is_symmetric(),
            Matrix::Float(m) => (m - m.transpose()).abs().max() <= GRAM_TOLERANCE,
        };
        if !symmetric {
            return Err(invalid("Gram matrix is not symmetric"));
        }
        Ok(Framework { graph, p: None, gram, spectrum: None })
    }

    pub fn with_spectrum(mut self, spectrum: Spectrum) -> Self {
        self.spectrum = Some(spectrum);
        self
    }

    /// Same vectors on a relabeled tensegrity graph with identical edges.
    pub fn with_graph(mut self, graph: Graph) -> Result<Self> {
        if !graph.same_structure(&self.graph) {
            return Err(invalid("replacement graph has different edges"));
        }
        self.graph = graph;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The framework matrix, when one was constructed.
    pub fn matrix(&self) -> Option<&Matrix> {
        self.p.as_ref()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn spectrum(&self) -> Option<&Spectrum> {
        self.spectrum.as_ref()
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_exact(&self) -> bool {
        self.gram.is_exact()
    }

    /// Dimension of the span of the vectors.
    pub fn dimension(&self) -> usize {
        self.gram.rank()
    }

    /// Scales the vectors to unit length; the diagonal must be constant and positive.
    pub fn rescaled_to_unit_diagonal(&self) -> Result<Framework> {
        let n = self.order();
        match &self.gram {
            Matrix::Exact(g) => {
                let d = g[(0, 0)].clone();
                if d <= BigRational::zero() || (0..n).any(|i| g[(i, i)] != d) {
                    return Err(invalid("diagonal is not a positive constant"));
                }
                let s = BigRational::one() / d;
                Ok(Framework { gram: Matrix::Exact(g.scale(&s)), p: None, ..self.clone() })
            }
            Matrix::Float(g) => {
                let d = g[(0, 0)];
                if d <= 0.0 || (0..n).any(|i| (g[(i, i)] - d).abs() > GRAM_TOLERANCE) {
                    return Err(invalid("diagonal is not a positive constant"));
                }
                Ok(Framework { gram: Matrix::Float(g / d), p: None, ..self.clone() })
            }
        }
    }

    pub fn report(&self) -> FrameworkReport {
        let backend = match (&self.spectrum, &self.gram) {
            (Some(s), _) => s.backend.to_string(),
            (None, Matrix::Exact(_)) => Backend::Exact.to_string(),
            (None, Matrix::Float(_)) => Backend::Floating { tol: DEFAULT_TOLERANCE }.to_string(),
        };
        FrameworkReport {
            n: self.order(),
            d: self.dimension(),
            backend,
            gram: self.gram.render(),
            tau: self.spectrum.as_ref().map(|s| s.tau.clone()),
            tau_multiplicity: self.spectrum.as_ref().map(|s| s.tau_multiplicity),
        }
    }
}

/// Serialized form of a framework; field order is the key order.
#[derive(Clone, Debug, Serialize)]
pub struct FrameworkReport {
    pub n: usize,
    pub d: usize,
    pub backend: String,
    pub gram: Vec<String>,
    pub tau: Option<Scalar>,
    pub tau_multiplicity: Option<usize>,
}

/// The least-eigenvalue framework of `g`.
///
/// On the exact path the framework matrix is `E_τ` itself: its rows span the
/// least eigenspace and `E_τ E_τᵀ = E_τ`, so it is congruent to every
/// orthonormal choice. On the floating path it is an orthonormal eigenbasis.
pub fn least_eigenvalue_framework(g: &Graph, choice: BackendChoice, tol: f64) -> Result<Framework> {
    match least_eigenspace(g, choice, tol)? {
        LeastEigenspace::Exact { spectrum, projector } => {
            let gram = Matrix::Exact(projector.clone());
            Ok(Framework { graph: g.clone(), p: Some(Matrix::Exact(projector)), gram, spectrum: Some(spectrum) })
        }
        LeastEigenspace::Floating(f) => {
            let p = Matrix::Float(f.basis.clone());
            Ok(Framework::from_matrix(g.clone(), p)?.with_spectrum(f.spectrum))
        }
    }
}

fn check_same_graph(p: &Framework, q: &Framework) -> Result<()> {
    if !p.graph.same_structure(&q.graph) {
        return Err(invalid("frameworks are on different graphs"));
    }
    Ok(())
}

/// `p ⪰ q`: equal on the diagonal and on bars, `q ≥ p` on cables and
/// `q ≤ p` on struts. Edge roles are read from `p`'s graph.
pub fn dominates(p: &Framework, q: &Framework) -> Result<bool> {
    check_same_graph(p, q)?;
    let n = p.order();
    let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| p.graph.is_close(i, j));
    match (&p.gram, &q.gram) {
        (Matrix::Exact(a), Matrix::Exact(b)) => {
            for (i, j) in pairs {
                let (x, y) = (&a[(i, j)], &b[(i, j)]);
                let ok = match role(&p.graph, i, j) {
                    EdgeKind::Bar => x == y,
                    EdgeKind::Cable => y >= x,
                    EdgeKind::Strut => y <= x,
                };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let (a, b) = (p.gram.to_f64(), q.gram.to_f64());
            for (i, j) in pairs {
                let (x, y) = (a[(i, j)], b[(i, j)]);
                let ok = match role(&p.graph, i, j) {
                    EdgeKind::Bar => (x - y).abs() <= GRAM_TOLERANCE,
                    EdgeKind::Cable => y >= x - GRAM_TOLERANCE,
                    EdgeKind::Strut => y <= x + GRAM_TOLERANCE,
                };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The diagonal behaves like a bar.
fn role(g: &Graph, i: usize, j: usize) -> EdgeKind {
    if i == j {
        EdgeKind::Bar
    } else {
        g.edge_kind(i, j).expect("pair is an edge")
    }
}

/// Equal Gram matrices (exactly, or within [`GRAM_TOLERANCE`]).
pub fn congruent(p: &Framework, q: &Framework) -> Result<bool> {
    if p.order() != q.order() {
        return Err(invalid(format!("frameworks have {} and {} vertices", p.order(), q.order())));
    }
    Ok(match (&p.gram, &q.gram) {
        (Matrix::Exact(a), Matrix::Exact(b)) => a == b,
        _ => (p.gram.to_f64() - q.gram.to_f64()).abs().max() <= GRAM_TOLERANCE,
    })
}
