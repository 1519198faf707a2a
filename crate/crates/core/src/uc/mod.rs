//! Universal completability of least-eigenvalue frameworks.
//!
//! The least-eigenvalue framework of `G` is universally completable iff
//! `𝒳(G) = 0`. Every element of `𝒳(G)` yields a dominated framework, and
//! `Φ` identifies `𝒳(G)` with the space `ℛ(G)` of admissible perturbations.

mod conditions;
mod dominated;
mod phi;
mod xspace;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Scalar, Spectrum};
use crate::framework::{least_eigenspace, BackendChoice};
use crate::graph::{emit_graph6, Graph};

pub use conditions::{clique_condition, clique_condition_any, neighborhood_condition, ConditionVerdict, CONDITION_MARGIN};
pub use dominated::{dominated_frameworks, equal_on_close_pairs, gershgorin_scale};
pub use phi::{phi, phi_inverse, Phi};
pub use xspace::{
    is_in_xspace_exact, is_in_xspace_float, xspace, xspace_with, XSpaceBasis, XSpaceMethod, SINGULAR_THRESHOLD,
};
pub(crate) use xspace::exact_xspace_dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "UC")]
    Uc,
    #[serde(rename = "not-UC")]
    NotUc,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Uc => "UC",
            Verdict::NotUc => "not-UC",
        })
    }
}

/// Verdict with its evidence: the spectrum and a basis of `𝒳(G)`.
#[derive(Clone, Debug)]
pub struct UcResult {
    pub verdict: Verdict,
    pub spectrum: Spectrum,
    pub xspace: XSpaceBasis,
}

/// Decides whether the least-eigenvalue framework of `g` is universally
/// completable.
pub fn is_universally_completable(g: &Graph, choice: BackendChoice, tol: f64) -> Result<UcResult> {
    if g.has_cables() {
        return Err(Error::Unsupported("universal completability test needs a tensegrity without cables".into()));
    }
    let spectrum = least_eigenspace(g, choice, tol)?.spectrum().clone();
    let xs = xspace(g, &spectrum)?;
    let verdict = if xs.dim() == 0 { Verdict::Uc } else { Verdict::NotUc };
    Ok(UcResult { verdict, spectrum, xspace: xs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    pub neighborhood: bool,
    pub clique: bool,
    pub split: bool,
}

impl ConditionFlags {
    pub fn evaluate(g: &Graph) -> Result<Self> {
        Ok(ConditionFlags {
            neighborhood: neighborhood_condition(g)?.holds(),
            clique: clique_condition_any(g)?,
            split: g.is_split(),
        })
    }
}

/// Serialized verdict; field order is the key order.
#[derive(Clone, Debug, Serialize)]
pub struct UcReport {
    pub graph6: String,
    pub tau: Scalar,
    pub tau_mult: usize,
    pub x_dim: usize,
    pub verdict: Verdict,
    pub conditions: ConditionFlags,
    pub backend: String,
    /// `σ_min/σ_max` of the floating linear system; absent on the exact path.
    pub margin: Option<Scalar>,
}

impl UcReport {
    pub fn new(g: &Graph, r: &UcResult) -> Result<Self> {
        Ok(UcReport {
            graph6: emit_graph6(g),
            tau: r.spectrum.tau.clone(),
            tau_mult: r.spectrum.tau_multiplicity,
            x_dim: r.xspace.dim(),
            verdict: r.verdict,
            conditions: ConditionFlags::evaluate(g)?,
            backend: r.spectrum.backend.to_string(),
            margin: r.xspace.margin.map(Scalar::Float),
        })
    }
}
