use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::xspace::{is_in_xspace_exact, is_in_xspace_float};
use crate::error::{invalid, Error, Result};
use crate::exact::{is_psd_exact, is_psd_pivoted, Scalar};
use crate::framework::{dominates, Framework, Matrix, GRAM_TOLERANCE};

/// Gershgorin scale `1 / max_i Σ_j |x_ij|`, so that `λ_min(cX) ≥ −1`.
pub fn gershgorin_scale(x: &Matrix) -> Option<Scalar> {
    match x {
        Matrix::Exact(m) => {
            let s = m.max_abs_row_sum();
            (!s.is_zero()).then(|| Scalar::Exact(BigRational::one() / s))
        }
        Matrix::Float(m) => {
            let s = m.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
            (s > 0.0).then(|| Scalar::Float(1.0 / s))
        }
    }
}

/// The framework with Gram matrix `PPᵀ + cX`, dominated by the
/// least-eigenvalue framework `p`.
///
/// `c` defaults to [`gershgorin_scale`]. The result is checked to be PSD
/// and dominated by `p` with equality on every `i ≃ j`.
pub fn dominated_frameworks(p: &Framework, x: &Matrix, c: Option<Scalar>) -> Result<Framework> {
    let spectrum = p.spectrum().ok_or_else(|| invalid("framework carries no least eigenvalue"))?;
    let g = p.graph();
    let member = match (x, &spectrum.tau) {
        (Matrix::Exact(m), Scalar::Exact(tau)) => is_in_xspace_exact(g, tau, m),
        (m, tau) => is_in_xspace_float(g, tau.to_f64(), &m.to_f64(), 1e-7),
    };
    if !member {
        return Err(invalid("X is not in the X-space of the graph"));
    }
    let Some(default_c) = gershgorin_scale(x) else {
        return Ok(p.clone());
    };
    let c = c.unwrap_or(default_c);
    let gram = match (p.gram(), x, &c) {
        (Matrix::Exact(e), Matrix::Exact(m), Scalar::Exact(c)) => {
            if !c.is_positive() {
                return Err(invalid("scale must be positive"));
            }
            let gram = e.add(&m.scale(c));
            let psd = if gram.rows() <= 48 { is_psd_exact(&gram)? } else { is_psd_pivoted(&gram)? };
            if !psd {
                return Err(Error::Internal("PP^T + cX is not PSD; the scale is too large".into()));
            }
            Matrix::Exact(gram)
        }
        (e, m, c) => {
            let c = c.to_f64();
            if !(c > 0.0) {
                return Err(invalid("scale must be positive"));
            }
            let gram = e.to_f64() + m.to_f64() * c;
            let lmin = nalgebra::SymmetricEigen::new(gram.clone()).eigenvalues.min();
            if lmin < -GRAM_TOLERANCE {
                return Err(Error::Internal(format!("PP^T + cX has eigenvalue {lmin}; the scale is too large")));
            }
            Matrix::Float(gram)
        }
    };
    let q = Framework::from_gram(g.clone(), gram)?.with_spectrum(spectrum.clone());
    if !dominates(p, &q)? || !equal_on_close_pairs(p, &q) {
        return Err(Error::Internal("dominated framework breaks an equality constraint".into()));
    }
    Ok(q)
}

/// `p` and `q` agree on the diagonal and on every edge.
pub fn equal_on_close_pairs(p: &Framework, q: &Framework) -> bool {
    let g = p.graph();
    let n = g.order();
    let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| g.is_close(i, j));
    match (p.gram(), q.gram()) {
        (Matrix::Exact(a), Matrix::Exact(b)) => pairs.into_iter().all(|(i, j)| a[(i, j)] == b[(i, j)]),
        (a, b) => {
            let (a, b) = (a.to_f64(), b.to_f64());
            pairs.into_iter().all(|(i, j)| (a[(i, j)] - b[(i, j)]).abs() <= GRAM_TOLERANCE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, ExactMatrix, DEFAULT_TOLERANCE};
    use crate::framework::{congruent, least_eigenvalue_framework, BackendChoice};
    use crate::graph::{cycle, Graph};
    use crate::uc::xspace::xspace;

    fn two_k2() -> (Framework, Matrix) {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let fw = least_eigenvalue_framework(&g, BackendChoice::Exact, DEFAULT_TOLERANCE).unwrap();
        let x = xspace(&g, fw.spectrum().unwrap()).unwrap().basis.remove(0);
        (fw, x)
    }

    #[test]
    fn zero_returns_the_framework() {
        let (fw, _) = two_k2();
        let q = dominated_frameworks(&fw, &Matrix::Exact(ExactMatrix::zeros(4, 4)), None).unwrap();
        assert!(congruent(&fw, &q).unwrap());
    }

    #[test]
    fn two_k2_second_framework() {
        let (fw, x) = two_k2();
        // basis element has entries ±1 off the closed neighborhoods, row sums 2
        assert_eq!(gershgorin_scale(&x), Some(Scalar::Exact(ratio(1, 2))));
        let q = dominated_frameworks(&fw, &x, None).unwrap();
        assert!(!congruent(&fw, &q).unwrap());
        assert!(equal_on_close_pairs(&fw, &q));
        // λ_min(X/2) = −1 lands on the boundary of the PSD cone: the two
        // edges collapse onto one line
        assert_eq!(q.dimension(), 1);
        let inner = dominated_frameworks(&fw, &x, Some(Scalar::Exact(ratio(1, 4)))).unwrap();
        assert_eq!(inner.dimension(), 2);
        assert!(!congruent(&fw, &inner).unwrap());
        let eig = nalgebra::SymmetricEigen::new(x.to_f64()).eigenvalues;
        assert!((eig.min() + 2.0).abs() < 1e-12 && (eig.max() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn oversized_scale_is_an_internal_error() {
        let (fw, x) = two_k2();
        let r = dominated_frameworks(&fw, &x, Some(Scalar::Exact(ratio(2, 1))));
        assert!(matches!(r, Err(Error::Internal(_))));
    }

    #[test]
    fn non_member_is_rejected() {
        let (fw, _) = two_k2();
        let bad = Matrix::Exact(ExactMatrix::identity(4));
        assert!(dominated_frameworks(&fw, &bad, None).is_err());
        let c5 = least_eigenvalue_framework(&cycle(5).unwrap(), BackendChoice::Auto, DEFAULT_TOLERANCE).unwrap();
        let q = dominated_frameworks(&c5, &Matrix::Float(nalgebra::DMatrix::zeros(5, 5)), None).unwrap();
        assert!(congruent(&c5, &q).unwrap());
    }
}
