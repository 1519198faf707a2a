//! Vector colorings: validation, optimal colorings of 1-walk-regular graphs
//! and unique vector colorability.
//!
//! For a 1-walk-regular graph the scaled least-eigenvalue framework
//! `(n/d)E_τ` is an optimal strict vector coloring of value `1 − r/τ`. It is
//! the unique optimal coloring iff `𝒳(G) = 0`; otherwise `(n/d)(E_τ + cX)`
//! for a nonzero `X ∈ 𝒳(G)` is a second one. For these graphs unique
//! vector colorability and unique strict vector colorability coincide, so a
//! single verdict is reported.

mod walk;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::exact::{is_psd_exact, is_psd_pivoted, ExactMatrix, Scalar, DEFAULT_TOLERANCE};
use crate::framework::{least_eigenvalue_framework, BackendChoice, Framework, Matrix, GRAM_TOLERANCE};
use crate::graph::{emit_graph6, EdgeKind, Graph};
use crate::uc::{dominated_frameworks, xspace};

pub use walk::{is_one_walk_regular, OneWalkRegularCertificate, WalkWitness};

/// Unit vectors given by their Gram matrix, with value `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorColoring {
    pub gram: Matrix,
    pub t: Scalar,
    pub strict: bool,
}

impl VectorColoring {
    /// SHA-256 of the canonical serialization `n;e_11,e_12,…` (row-major).
    pub fn gram_digest(&self) -> String {
        gram_digest(&self.gram)
    }
}

pub fn gram_digest(gram: &Matrix) -> String {
    let text = format!("{};{}", gram.rows(), gram.render().join(","));
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// First violated constraint of a vector coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Violation {
    /// `gram_ii ≠ 1`.
    Diagonal { i: usize },
    NotPsd,
    /// `gram_ij > −1/(t−1)` on an edge.
    Edge { i: usize, j: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ColoringCheck {
    Valid,
    ValidStrict,
    Invalid(Violation),
}

impl ColoringCheck {
    pub fn is_valid(&self) -> bool {
        !matches!(self, ColoringCheck::Invalid(_))
    }
}

/// Checks unit diagonal, PSD and `gram_ij ≤ −1/(t−1)` on every edge, in that order.
pub fn validate_coloring(g: &Graph, gram: &Matrix, t: &Scalar) -> Result<ColoringCheck> {
    let n = g.order();
    if gram.rows() != n || gram.cols() != n {
        return Err(invalid(format!("Gram matrix must be {n}x{n}")));
    }
    match (gram, t) {
        (Matrix::Exact(m), Scalar::Exact(t)) => validate_exact(g, m, t),
        _ => validate_float(g, &gram.to_f64(), t.to_f64()),
    }
}

fn validate_exact(g: &Graph, m: &ExactMatrix, t: &BigRational) -> Result<ColoringCheck> {
    if !m.is_symmetric() {
        return Err(invalid("Gram matrix is not symmetric"));
    }
    if *t <= BigRational::one() {
        return Err(invalid("value t must exceed 1"));
    }
    if let Some(i) = (0..g.order()).find(|&i| !m[(i, i)].is_one()) {
        return Ok(ColoringCheck::Invalid(Violation::Diagonal { i }));
    }
    let psd = if m.rows() <= 48 { is_psd_exact(m)? } else { is_psd_pivoted(m)? };
    if !psd {
        return Ok(ColoringCheck::Invalid(Violation::NotPsd));
    }
    let bound = -(BigRational::one() / (t - BigRational::one()));
    let mut strict = true;
    for (i, j) in g.edges() {
        if m[(i, j)] > bound {
            return Ok(ColoringCheck::Invalid(Violation::Edge { i, j }));
        }
        strict &= m[(i, j)] == bound;
    }
    Ok(if strict { ColoringCheck::ValidStrict } else { ColoringCheck::Valid })
}

fn validate_float(g: &Graph, m: &DMatrix<f64>, t: f64) -> Result<ColoringCheck> {
    if (m - m.transpose()).abs().max() > GRAM_TOLERANCE {
        return Err(invalid("Gram matrix is not symmetric"));
    }
    if !(t > 1.0) {
        return Err(invalid("value t must exceed 1"));
    }
    if let Some(i) = (0..g.order()).find(|&i| (m[(i, i)] - 1.0).abs() > GRAM_TOLERANCE) {
        return Ok(ColoringCheck::Invalid(Violation::Diagonal { i }));
    }
    if nalgebra::SymmetricEigen::new(m.clone()).eigenvalues.min() < -GRAM_TOLERANCE {
        return Ok(ColoringCheck::Invalid(Violation::NotPsd));
    }
    let bound = -1.0 / (t - 1.0);
    let mut strict = true;
    for (i, j) in g.edges() {
        if m[(i, j)] > bound + GRAM_TOLERANCE {
            return Ok(ColoringCheck::Invalid(Violation::Edge { i, j }));
        }
        strict &= (m[(i, j)] - bound).abs() <= GRAM_TOLERANCE;
    }
    Ok(if strict { ColoringCheck::ValidStrict } else { ColoringCheck::Valid })
}

/// Relabels every edge as a strut.
pub fn struts_tensegrity(g: &Graph) -> Graph {
    g.with_uniform_labels(EdgeKind::Strut)
}

fn require_one_walk_regular(g: &Graph) -> Result<()> {
    if g.order() == 0 {
        return Err(invalid("graph has no vertices"));
    }
    let cert = is_one_walk_regular(g);
    match cert.witness {
        Some(w) if !cert.verdict => Err(invalid(format!("graph is not 1-walk-regular: {w}"))),
        _ => Ok(()),
    }
}

fn identity_coloring(n: usize) -> VectorColoring {
    VectorColoring { gram: Matrix::Exact(ExactMatrix::identity(n)), t: Scalar::integer(1), strict: true }
}

fn scale_gram(m: &Matrix, s: &BigRational) -> Matrix {
    match m {
        Matrix::Exact(e) => Matrix::Exact(e.scale(s)),
        Matrix::Float(f) => Matrix::Float(f * crate::exact::rational_to_f64(s)),
    }
}

fn coloring_from_framework(fw: &Framework, gram: &Matrix, t: &Scalar) -> Result<VectorColoring> {
    let n = fw.order();
    let d = fw.spectrum().expect("least-eigenvalue framework").tau_multiplicity;
    let s = BigRational::new(BigInt::from(n), BigInt::from(d));
    let gram = scale_gram(gram, &s);
    match validate_coloring(fw.graph(), &gram, t)? {
        ColoringCheck::ValidStrict => Ok(VectorColoring { gram, t: t.clone(), strict: true }),
        other => Err(Error::Internal(format!("scaled least-eigenvalue coloring fails validation: {other:?}"))),
    }
}

fn value(g: &Graph, tau: &Scalar) -> Result<Scalar> {
    let r = g.regular_degree().ok_or_else(|| invalid("graph is not regular"))? as i64;
    Ok(match tau {
        Scalar::Exact(q) => Scalar::Exact(BigRational::one() - BigRational::from_integer(BigInt::from(r)) / q),
        Scalar::Float(x) => Scalar::Float(1.0 - r as f64 / x),
    })
}

/// The optimal strict vector coloring `i ↦ √(n/d) p_i` of a 1-walk-regular
/// graph, as a Gram matrix. Edgeless graphs get value 1 and `Gram = I`.
pub fn optimal_vector_coloring_1wr(g: &Graph) -> Result<VectorColoring> {
    optimal_coloring_with(g, BackendChoice::Auto, DEFAULT_TOLERANCE).map(|(c, _)| c)
}

fn optimal_coloring_with(g: &Graph, choice: BackendChoice, tol: f64) -> Result<(VectorColoring, Option<Framework>)> {
    require_one_walk_regular(g)?;
    if g.edge_count() == 0 {
        return Ok((identity_coloring(g.order()), None));
    }
    let fw = least_eigenvalue_framework(&g.with_uniform_labels(EdgeKind::Bar), choice, tol)?;
    let t = value(g, &fw.spectrum().expect("spectrum").tau)?;
    let c = coloring_from_framework(&fw, fw.gram(), &t)?;
    Ok((c, Some(fw)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UvcVerdict {
    #[serde(rename = "UVC")]
    Uvc,
    #[serde(rename = "not-UVC")]
    NotUvc,
}

/// Verdict with the optimal coloring and, when not unique, a second one.
#[derive(Clone, Debug)]
pub struct UvcResult {
    pub verdict: UvcVerdict,
    pub coloring: VectorColoring,
    /// `None` when the verdict short-circuits on a disconnected graph.
    pub x_dim: Option<usize>,
    pub second: Option<VectorColoring>,
    pub witness: Option<String>,
}

impl UvcResult {
    pub fn is_uvc(&self) -> bool {
        self.verdict == UvcVerdict::Uvc
    }
}

pub fn is_uniquely_vector_colorable_1wr(g: &Graph) -> Result<UvcResult> {
    uvc_with(g, BackendChoice::Auto, DEFAULT_TOLERANCE)
}

/// [`is_uniquely_vector_colorable_1wr`] with an explicit backend.
pub fn uvc_with(g: &Graph, choice: BackendChoice, tol: f64) -> Result<UvcResult> {
    let (coloring, fw) = optimal_coloring_with(g, choice, tol)?;
    if !g.is_connected() {
        let comps = g.components();
        return Ok(UvcResult {
            verdict: UvcVerdict::NotUvc,
            coloring,
            x_dim: None,
            second: None,
            witness: Some(format!(
                "disconnected: rotating the component containing vertex {} independently of the rest gives another optimal coloring",
                comps[0][0]
            )),
        });
    }
    let Some(fw) = fw else {
        // a single vertex
        return Ok(UvcResult { verdict: UvcVerdict::Uvc, coloring, x_dim: Some(0), second: None, witness: None });
    };
    let xs = xspace(fw.graph(), fw.spectrum().expect("spectrum"))?;
    let x_dim = xs.dim();
    if x_dim == 0 {
        return Ok(UvcResult { verdict: UvcVerdict::Uvc, coloring, x_dim: Some(0), second: None, witness: None });
    }
    let dominated = dominated_frameworks(&fw, &xs.basis[0], None)?;
    let second = coloring_from_framework(&fw, dominated.gram(), &coloring.t)?;
    if second.gram == coloring.gram {
        return Err(Error::Internal("second coloring coincides with the first".into()));
    }
    Ok(UvcResult {
        verdict: UvcVerdict::NotUvc,
        coloring,
        x_dim: Some(x_dim),
        second: Some(second),
        witness: Some("second optimal coloring (n/d)(E + cX) from a nonzero X".into()),
    })
}

/// Serialized coloring verdict; field order is the key order.
#[derive(Clone, Debug, Serialize)]
pub struct ColoringReport {
    pub graph6: String,
    pub t: Scalar,
    pub strict: bool,
    pub uvc: bool,
    pub x_dim: Option<usize>,
    pub gram_digest: String,
    pub second_coloring: Option<SecondColoringReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondColoringReport {
    pub t: Scalar,
    pub strict: bool,
    pub gram_digest: String,
    pub gram: Vec<String>,
}

impl ColoringReport {
    pub fn new(g: &Graph, r: &UvcResult) -> Self {
        ColoringReport {
            graph6: emit_graph6(g),
            t: r.coloring.t.clone(),
            strict: r.coloring.strict,
            uvc: r.is_uvc(),
            x_dim: r.x_dim,
            gram_digest: r.coloring.gram_digest(),
            second_coloring: r.second.as_ref().map(|s| SecondColoringReport {
                t: s.t.clone(),
                strict: s.strict,
                gram_digest: s.gram_digest(),
                gram: s.gram.render(),
            }),
        }
    }
}

/// Exact value of a Gram entry, when available.
pub fn exact_entry(m: &Matrix, i: usize, j: usize) -> Option<BigRational> {
    m.as_exact().map(|e| e[(i, j)].clone())
}
