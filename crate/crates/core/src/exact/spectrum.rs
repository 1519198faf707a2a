use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::{is_psd_exact, is_psd_pivoted, ExactMatrix, Scalar};
use crate::error::{invalid, Error, Result};
use crate::graph::CayleySpec;

/// Default clustering tolerance for floating eigenvalues.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

const MAX_SWEEPS: usize = 10_000;

/// Above this order the exact PSD certificate switches from the
/// characteristic polynomial to symmetric pivoting.
const CHARPOLY_LIMIT: usize = 48;

/// Which spectral backend produced a result.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Backend {
    Exact,
    Floating { tol: f64 },
}

impl Backend {
    pub fn is_exact(&self) -> bool {
        matches!(self, Backend::Exact)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Floating { .. } => f.write_str("floating"),
        }
    }
}

impl Serialize for Backend {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Eigenvalues with multiplicities, ascending, and the least one singled out.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub pairs: Vec<(Scalar, usize)>,
    pub tau: Scalar,
    pub tau_multiplicity: usize,
    pub backend: Backend,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    pub fn distinct_eigenvalues(&self) -> usize {
        self.pairs.len()
    }

    /// The exact least eigenvalue, when the backend is exact.
    pub fn exact_tau(&self) -> Option<&BigRational> {
        self.tau.as_exact()
    }
}

fn eigenvalues_sorted(m: &DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    SymmetricEigen::try_new(m.clone(), f64::EPSILON, MAX_SWEEPS).ok_or(Error::Numerical { iterations: MAX_SWEEPS })
}

/// Groups sorted values into runs whose consecutive gaps are within `tol`;
/// returns `(mean, indices)` per run.
fn clusters(values: &[(f64, usize)], tol: f64) -> Vec<(f64, Vec<usize>)> {
    let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &(v, i) in values {
        match out.last_mut() {
            Some((_, idx)) if v - last <= tol => idx.push(i),
            _ => out.push((0.0, vec![i])),
        }
        last = v;
    }
    let lookup: BTreeMap<usize, f64> = values.iter().map(|&(v, i)| (i, v)).collect();
    for (mean, idx) in out.iter_mut() {
        *mean = idx.iter().map(|i| lookup[i]).sum::<f64>() / idx.len() as f64;
    }
    out
}

fn sorted_with_index(eig: &nalgebra::DVector<f64>) -> Vec<(f64, usize)> {
    let mut v: Vec<(f64, usize)> = eig.iter().copied().zip(0..).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v
}

/// Least eigenvalue of a symmetric matrix when it is an integer, with an
/// exact multiplicity; `None` when it is not an integer.
///
/// Integers are scanned upward from the Gershgorin bound. The first `λ`
/// with `A − λI` singular is the least eigenvalue iff `A − λI ⪰ 0`, which is
/// certified exactly; otherwise the least eigenvalue lies strictly below an
/// integer-free interval and is not integral.
pub fn integer_least_eigenvalue(a: &ExactMatrix) -> Result<Option<Spectrum>> {
    if !a.is_symmetric() {
        return Err(invalid("least eigenvalue of an asymmetric matrix"));
    }
    let n = a.rows();
    if n == 0 {
        return Err(invalid("least eigenvalue of an empty matrix"));
    }
    let bound = a.max_abs_row_sum().ceil().to_integer().to_i64().ok_or_else(|| invalid("entries too large"))?;
    let mut found = None;
    for lambda in -bound..=bound {
        let shifted = a.shift_diagonal(&BigRational::from_integer(BigInt::from(lambda)));
        let nullity = shifted.nullspace().len();
        if nullity > 0 {
            let psd = if n <= CHARPOLY_LIMIT { is_psd_exact(&shifted)? } else { is_psd_pivoted(&shifted)? };
            if psd {
                found = Some((lambda, nullity));
            }
            break;
        }
    }
    let Some((tau, d)) = found else {
        return Ok(None);
    };

    let eig = eigenvalues_sorted(&a.to_f64())?;
    let mut pairs = Vec::new();
    for (i, (mean, idx)) in clusters(&sorted_with_index(&eig.eigenvalues), DEFAULT_TOLERANCE).into_iter().enumerate() {
        if i == 0 {
            if (mean - tau as f64).abs() > 1e-6 || idx.len() != d {
                return Err(Error::Internal(format!(
                    "floating spectrum ({mean}, x{}) disagrees with certified least eigenvalue ({tau}, x{d})",
                    idx.len()
                )));
            }
            pairs.push((Scalar::integer(tau), d));
            continue;
        }
        let k = mean.round();
        let exact = (mean - k).abs() < 1e-6 && {
            let shifted = a.shift_diagonal(&BigRational::from_integer(BigInt::from(k as i64)));
            shifted.nullspace().len() == idx.len()
        };
        let value = if exact { Scalar::integer(k as i64) } else { Scalar::Float(mean) };
        pairs.push((value, idx.len()));
    }
    Ok(Some(Spectrum {
        pairs,
        tau: Scalar::integer(tau),
        tau_multiplicity: d,
        backend: Backend::Exact,
    }))
}

/// Spectrum of a real symmetric matrix with an orthonormal basis of the
/// least eigenspace.
#[derive(Clone, Debug)]
pub struct FloatingEigenspace {
    pub spectrum: Spectrum,
    /// `n × d`, orthonormal columns.
    pub basis: DMatrix<f64>,
}

pub fn floating_least_eigenspace(a: &DMatrix<f64>, tol: f64) -> Result<FloatingEigenspace> {
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    if !a.is_square() || a.nrows() == 0 {
        return Err(invalid("eigenspace of a non-square or empty matrix"));
    }
    let asym = (0..a.nrows()).flat_map(|i| (0..i).map(move |j| (i, j))).any(|(i, j)| (a[(i, j)] - a[(j, i)]).abs() > 1e-12);
    if asym {
        return Err(invalid("eigenspace of an asymmetric matrix"));
    }
    let eig = eigenvalues_sorted(a)?;
    let groups = clusters(&sorted_with_index(&eig.eigenvalues), tol);
    let (tau, low) = groups[0].clone();
    let basis = DMatrix::from_fn(a.nrows(), low.len(), |i, j| eig.eigenvectors[(i, low[j])]);
    let pairs = groups.iter().map(|(m, idx)| (Scalar::Float(*m), idx.len())).collect();
    Ok(FloatingEigenspace {
        spectrum: Spectrum {
            pairs,
            tau: Scalar::Float(tau),
            tau_multiplicity: low.len(),
            backend: Backend::Floating { tol },
        },
        basis,
    })
}

/// Exact spectrum of a Cayley graph on `Z_2^n` from its characters.
#[derive(Clone, Debug)]
pub struct CayleySpectrum {
    pub spectrum: Spectrum,
    n: u32,
    /// Characters `v` whose eigenvalue is the least one, ascending.
    pub tau_characters: Vec<u32>,
}

impl CayleySpectrum {
    /// The `±1` character vectors spanning the least eigenspace, as columns.
    pub fn eigenvector_matrix(&self) -> ExactMatrix {
        let size = 1usize << self.n;
        ExactMatrix::from_fn(size, self.tau_characters.len(), |a, j| {
            let s = if (a as u32 & self.tau_characters[j]).count_ones().is_multiple_of(2) { 1 } else { -1 };
            BigRational::from_integer(BigInt::from(s))
        })
    }
}

/// The eigenvalue for character `v` is `Σ_{c ∈ C} (−1)^{v·c}`.
pub fn cayley_spectrum(spec: &CayleySpec) -> CayleySpectrum {
    let size = 1u32 << spec.n();
    let mut by_value: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for v in 0..size {
        let ev: i64 = spec
            .connection_set()
            .iter()
            .map(|&c| if (v & c).count_ones() % 2 == 0 { 1 } else { -1 })
            .sum();
        by_value.entry(ev).or_default().push(v);
    }
    let (&tau, chars) = by_value.iter().next().expect("at least one character");
    let tau_characters = chars.clone();
    let pairs = by_value.iter().map(|(&ev, vs)| (Scalar::integer(ev), vs.len())).collect();
    CayleySpectrum {
        spectrum: Spectrum {
            pairs,
            tau: Scalar::integer(tau),
            tau_multiplicity: tau_characters.len(),
            backend: Backend::Exact,
        },
        n: spec.n(),
        tau_characters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_to_f64;

    fn close_to(x: f64, q: &BigRational, tol: f64) -> bool {
        (x - rational_to_f64(q)).abs() <= tol
    }
    use crate::graph::{cayley_z2, complete, cycle, petersen};

    fn adj(g: &crate::graph::Graph) -> ExactMatrix {
        ExactMatrix::adjacency(g)
    }

    #[test]
    fn integer_examples() {
        let s = integer_least_eigenvalue(&adj(&complete(4).unwrap())).unwrap().unwrap();
        assert_eq!((s.tau.clone(), s.tau_multiplicity), (Scalar::integer(-1), 3));
        assert_eq!(s.pairs, vec![(Scalar::integer(-1), 3), (Scalar::integer(3), 1)]);

        let s = integer_least_eigenvalue(&adj(&petersen())).unwrap().unwrap();
        assert_eq!((s.tau.clone(), s.tau_multiplicity), (Scalar::integer(-2), 4));
        assert_eq!(s.order(), 10);
        assert!(s.pairs.iter().all(|(v, _)| v.is_exact()));

        assert!(integer_least_eigenvalue(&adj(&cycle(5).unwrap())).unwrap().is_none());
    }

    #[test]
    fn integer_path_rejects_larger_singular_shift() {
        // C_6 has spectrum {2,1,1,-1,-1,-2}; C_7 has none integral but 2
        let s = integer_least_eigenvalue(&adj(&cycle(6).unwrap())).unwrap().unwrap();
        assert_eq!(s.tau, Scalar::integer(-2));
        assert!(integer_least_eigenvalue(&adj(&cycle(7).unwrap())).unwrap().is_none());
    }

    #[test]
    fn edgeless_and_single_vertex() {
        let g = crate::graph::Graph::empty(3).unwrap();
        let s = integer_least_eigenvalue(&adj(&g)).unwrap().unwrap();
        assert_eq!((s.tau.clone(), s.tau_multiplicity), (Scalar::integer(0), 3));
        let one = crate::graph::Graph::empty(1).unwrap();
        assert_eq!(integer_least_eigenvalue(&adj(&one)).unwrap().unwrap().tau_multiplicity, 1);
    }

    #[test]
    fn floating_examples() {
        let c5 = floating_least_eigenspace(&adj(&cycle(5).unwrap()).to_f64(), DEFAULT_TOLERANCE).unwrap();
        let expect = 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
        assert!((c5.spectrum.tau.to_f64() - expect).abs() < 1e-9);
        assert_eq!(c5.spectrum.tau_multiplicity, 2);
        let gram = c5.basis.transpose() * &c5.basis;
        assert!((gram - DMatrix::<f64>::identity(2, 2)).abs().max() < 1e-12);

        let d = floating_least_eigenspace(&DMatrix::from_diagonal(&nalgebra::dvector![1.0, 2.0, 3.0]), 1e-8).unwrap();
        assert_eq!(d.spectrum.tau_multiplicity, 1);
        assert!((d.spectrum.tau.to_f64() - 1.0).abs() < 1e-12);

        let c7 = floating_least_eigenspace(&adj(&cycle(7).unwrap()).to_f64(), 1e-8).unwrap();
        assert!((c7.spectrum.tau.to_f64() - 2.0 * (6.0 * std::f64::consts::PI / 7.0).cos()).abs() < 1e-9);
        assert_eq!(c7.spectrum.tau_multiplicity, 2);
    }

    #[test]
    fn cayley_examples() {
        let k4 = cayley_spectrum(&CayleySpec::new(2, [1, 2, 3]).unwrap());
        assert_eq!(k4.spectrum.pairs, vec![(Scalar::integer(-1), 3), (Scalar::integer(3), 1)]);
        let c4 = cayley_spectrum(&CayleySpec::new(2, [1, 2]).unwrap());
        assert_eq!(
            c4.spectrum.pairs,
            vec![(Scalar::integer(-2), 1), (Scalar::integer(0), 2), (Scalar::integer(2), 1)]
        );
        let q3 = cayley_spectrum(&CayleySpec::new(3, [1, 2, 4]).unwrap());
        assert_eq!((q3.spectrum.tau.clone(), q3.spectrum.tau_multiplicity), (Scalar::integer(-3), 1));
        assert_eq!(q3.tau_characters, vec![7]);
    }

    #[test]
    fn cayley_eigenvectors_are_eigenvectors() {
        let spec = CayleySpec::new(3, [1, 2, 4, 7]).unwrap();
        let cs = cayley_spectrum(&spec);
        let a = adj(&cayley_z2(&spec).unwrap());
        let v = cs.eigenvector_matrix();
        let tau = cs.spectrum.exact_tau().unwrap().clone();
        assert_eq!(a.mul(&v), v.scale(&tau));
        assert_eq!(v.cols(), cs.spectrum.tau_multiplicity);
    }

    #[test]
    fn cayley_agrees_with_floating_for_small_n() {
        for n in 1..=4u32 {
            for mask in 1u32..(1 << ((1 << n) - 1)).min(1 << 10) {
                let set: Vec<u32> = (1..(1u32 << n)).filter(|c| mask >> (c - 1) & 1 == 1).collect();
                let spec = CayleySpec::new(n, set).unwrap();
                if !spec.spans() {
                    continue;
                }
                let cs = cayley_spectrum(&spec);
                let fl = floating_least_eigenspace(&adj(&cayley_z2(&spec).unwrap()).to_f64(), 1e-8).unwrap();
                assert!(close_to(fl.spectrum.tau.to_f64(), cs.spectrum.exact_tau().unwrap(), 1e-9));
            }
        }
    }
}
