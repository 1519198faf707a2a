//! Universal completability survey of connected Cayley graphs on `Z_2^n`.
//!
//! Connection sets are taken up to `GL(n,2)`: two sets related by an
//! invertible linear map give isomorphic graphs, so one representative per
//! orbit is tested. Isomorphic graphs from different orbits are not merged.

mod orbits;
mod report;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{cayley_spectrum, Scalar};
use crate::graph::{cayley_z2, CayleySpec};
use crate::uc::{exact_xspace_dim, XSpaceMethod};

pub use orbits::{enumerate_orbits, orbits_exhaustive, orbits_orderly, EXHAUSTIVE_MAX_N, MAX_SURVEY_N};
pub use report::{write_csv, write_json, write_table, EQUIVALENCE};

/// One orbit representative and its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub n: u32,
    pub connection_set: Vec<u32>,
    pub connected: bool,
    pub tau: i64,
    pub tau_mult: usize,
    pub x_dim: usize,
    pub uc: bool,
}

/// Counts per exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub n: u32,
    pub connected: usize,
    pub uc: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub equivalence: &'static str,
    pub summary: Vec<SurveySummary>,
    pub records: Vec<SurveyRecord>,
}

/// Tests one Cayley graph exactly, through its character eigenvectors.
pub fn survey_one(spec: &CayleySpec) -> Result<SurveyRecord> {
    let g = cayley_z2(spec)?;
    let cs = cayley_spectrum(spec);
    let tau = match &cs.spectrum.tau {
        Scalar::Exact(t) if t.is_integer() => {
            i64::try_from(t.to_integer()).map_err(|_| Error::Internal("least eigenvalue overflows".into()))?
        }
        _ => return Err(Error::Internal("Cayley spectrum must be integral".into())),
    };
    let tau_q = cs.spectrum.exact_tau().expect("exact").clone();
    let x_dim = exact_xspace_dim(&g, &tau_q, &cs.eigenvector_matrix(), XSpaceMethod::Auto);
    Ok(SurveyRecord {
        n: spec.n(),
        connection_set: spec.connection_set().iter().copied().collect(),
        connected: spec.spans(),
        tau,
        tau_mult: cs.spectrum.tau_multiplicity,
        x_dim,
        uc: x_dim == 0,
    })
}

/// Surveys every orbit for one exponent on a pool of `workers` threads.
pub fn run_survey(n: u32, workers: usize) -> Result<Vec<SurveyRecord>> {
    let reps = enumerate_orbits(n, workers)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Resource(e.to_string()))?;
    pool.install(|| reps.par_iter().map(survey_one).collect())
}

/// Surveys every exponent in `ns`.
pub fn survey_report(ns: &[u32], workers: usize) -> Result<SurveyReport> {
    let mut records = Vec::new();
    let mut summary = Vec::new();
    for &n in ns {
        let recs = run_survey(n, workers)?;
        summary.push(SurveySummary { n, connected: recs.len(), uc: recs.iter().filter(|r| r.uc).count() });
        records.extend(recs);
    }
    Ok(SurveyReport { equivalence: EQUIVALENCE, summary, records })
}
