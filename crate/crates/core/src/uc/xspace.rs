use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::exact::{floating_least_eigenspace, Backend, ExactMatrix, IntegerSystem, Scalar, Spectrum};
use crate::framework::Matrix;
use crate::graph::Graph;

/// Relative singular-value threshold for the floating kernel.
pub const SINGULAR_THRESHOLD: f64 = 1e-7;

/// How the linear system for `𝒳(G)` is parameterized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum XSpaceMethod {
    /// Whichever of the two below has fewer unknowns.
    #[default]
    Auto,
    /// One unknown `x_ij` per non-adjacent pair, equations `(A − τI)X = 0`.
    Direct,
    /// `X = BRBᵀ` for a basis `B` of the least eigenspace and symmetric `R`,
    /// equations `(BRBᵀ)_ij = 0` for `i ≃ j`.
    Eigenbasis,
}

/// A basis of `𝒳(G) = {X symmetric : (A+I)∘X = 0, (A − τI)X = 0}`.
#[derive(Clone, Debug)]
pub struct XSpaceBasis {
    pub tau: Scalar,
    pub basis: Vec<Matrix>,
    pub backend: Backend,
    /// Smallest over largest singular value of the constraint matrix
    /// (floating path only; `None` when there are no unknowns).
    pub margin: Option<f64>,
}

impl XSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn complement_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !g.has_edge(i, j)).collect()
}

fn close_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| g.is_close(i, j)).collect()
}

fn choose(method: XSpaceMethod, g: &Graph, d: usize) -> XSpaceMethod {
    match method {
        XSpaceMethod::Auto if d * (d + 1) / 2 <= complement_pairs(g).len() => XSpaceMethod::Eigenbasis,
        XSpaceMethod::Auto => XSpaceMethod::Direct,
        m => m,
    }
}

/// `𝒳(G)` for the least eigenvalue recorded in `spectrum`.
pub fn xspace(g: &Graph, spectrum: &Spectrum) -> Result<XSpaceBasis> {
    xspace_with(g, spectrum, XSpaceMethod::Auto)
}

pub fn xspace_with(g: &Graph, spectrum: &Spectrum, method: XSpaceMethod) -> Result<XSpaceBasis> {
    if spectrum.order() != g.order() {
        return Err(invalid("spectrum does not belong to this graph"));
    }
    let a = ExactMatrix::adjacency(g);
    match (&spectrum.tau, spectrum.backend) {
        (Scalar::Exact(tau), _) => {
            let shifted = a.shift_diagonal(tau);
            let b = shifted.nullspace_matrix();
            if b.cols() != spectrum.tau_multiplicity {
                return Err(invalid("least eigenvalue multiplicity does not match the graph"));
            }
            let basis = exact_xspace(g, tau, &b, method);
            Ok(XSpaceBasis {
                tau: spectrum.tau.clone(),
                basis: basis.into_iter().map(Matrix::Exact).collect(),
                backend: Backend::Exact,
                margin: None,
            })
        }
        (Scalar::Float(tau), backend) => {
            let tol = match backend {
                Backend::Floating { tol } => tol,
                Backend::Exact => crate::exact::DEFAULT_TOLERANCE,
            };
            let eig = floating_least_eigenspace(&a.to_f64(), tol)?;
            if eig.spectrum.tau_multiplicity != spectrum.tau_multiplicity || (eig.spectrum.tau.to_f64() - tau).abs() > 1e-6 {
                return Err(invalid("floating spectrum does not match the graph"));
            }
            let (basis, margin) = floating_xspace(g, *tau, &eig.basis, method);
            Ok(XSpaceBasis {
                tau: spectrum.tau.clone(),
                basis: basis.into_iter().map(Matrix::Float).collect(),
                backend,
                margin,
            })
        }
    }
}

/// Exact `𝒳(G)` given an integer-or-rational basis `b` (as columns) of the
/// least eigenspace.
pub(crate) fn exact_xspace(g: &Graph, tau: &BigRational, b: &ExactMatrix, method: XSpaceMethod) -> Vec<ExactMatrix> {
    match choose(method, g, b.cols()) {
        XSpaceMethod::Direct => direct_exact(g, tau),
        _ => eigenbasis_exact(g, b),
    }
}

/// Dimension only; skips forming the basis matrices.
pub(crate) fn exact_xspace_dim(g: &Graph, tau: &BigRational, b: &ExactMatrix, method: XSpaceMethod) -> usize {
    match choose(method, g, b.cols()) {
        XSpaceMethod::Direct => direct_system(g, tau).1.len(),
        _ => eigenbasis_system(g, b).1.len(),
    }
}

fn direct_system(g: &Graph, tau: &BigRational) -> (Vec<(usize, usize)>, Vec<Vec<BigInt>>) {
    let n = g.order();
    let pairs = complement_pairs(g);
    let mut index = vec![usize::MAX; n * n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        index[i * n + j] = k;
        index[j * n + i] = k;
    }
    let (num, den) = (tau.numer().clone(), tau.denom().clone());
    let mut sys = IntegerSystem::new(pairs.len());
    for i in 0..n {
        for j in 0..n {
            // row (i, j) of den·(A − τI)X
            let mut row: Vec<(usize, BigInt)> = g
                .neighbors(i)
                .filter(|&l| index[l * n + j] != usize::MAX ).map(|l| (index[l * n + j], den.clone()))
                .collect();
            if index[i * n + j] != usize::MAX {
                row.push((index[i * n + j], -num.clone()));
            }
            if !row.is_empty() {
                sys.push_row(row);
            }
        }
    }
    (pairs, crate::exact::integer_nullspace(&sys))
}

fn direct_exact(g: &Graph, tau: &BigRational) -> Vec<ExactMatrix> {
    let n = g.order();
    let (pairs, kernel) = direct_system(g, tau);
    kernel
        .into_iter()
        .map(|v| {
            let mut x = ExactMatrix::zeros(n, n);
            for (&(i, j), c) in pairs.iter().zip(v) {
                let c = BigRational::from_integer(c);
                x[(i, j)] = c.clone();
                x[(j, i)] = c;
            }
            x
        })
        .collect()
}

fn sym_unknowns(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|k| (k..d).map(move |l| (k, l))).collect()
}

/// Integer rows of `B` (denominators cleared per column, which rescales
/// `R` but not its kernel dimension).
fn integer_columns(b: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let (n, d) = (b.rows(), b.cols());
    let scale: Vec<BigInt> = (0..d).map(|k| (0..n).fold(BigInt::one(), |acc, i| acc.lcm(b[(i, k)].denom()))).collect();
    (0..n)
        .map(|i| (0..d).map(|k| b[(i, k)].numer() * (&scale[k] / b[(i, k)].denom())).collect())
        .collect()
}

fn eigenbasis_system(g: &Graph, b: &ExactMatrix) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let d = b.cols();
    let rows = integer_columns(b);
    let unknowns = sym_unknowns(d);
    let mut sys = IntegerSystem::new(unknowns.len());
    for (i, j) in close_pairs(g) {
        let (bi, bj) = (&rows[i], &rows[j]);
        sys.push_row(unknowns.iter().enumerate().map(|(u, &(k, l))| {
            let c = if k == l { &bi[k] * &bj[k] } else { &bi[k] * &bj[l] + &bi[l] * &bj[k] };
            (u, c)
        }));
    }
    (rows, crate::exact::integer_nullspace(&sys))
}

fn eigenbasis_exact(g: &Graph, b: &ExactMatrix) -> Vec<ExactMatrix> {
    let (n, d) = (g.order(), b.cols());
    let (rows, kernel) = eigenbasis_system(g, b);
    let bint = ExactMatrix::from_fn(n, d, |i, k| BigRational::from_integer(rows[i][k].clone()));
    let unknowns = sym_unknowns(d);
    kernel
        .into_iter()
        .map(|v| {
            let mut r = ExactMatrix::zeros(d, d);
            for (&(k, l), c) in unknowns.iter().zip(v) {
                let c = BigRational::from_integer(c);
                r[(k, l)] = c.clone();
                r[(l, k)] = c;
            }
            primitive(bint.mul(&r).mul(&bint.transpose()))
        })
        .collect()
}

/// Scales an integer matrix so its entries have gcd 1.
fn primitive(x: ExactMatrix) -> ExactMatrix {
    let g = x.entries().iter().fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()));
    if g.is_zero() || g.is_one() {
        return x;
    }
    x.scale(&BigRational::new(BigInt::one(), g))
}

fn floating_kernel(m: DMatrix<f64>) -> (Vec<nalgebra::DVector<f64>>, Option<f64>) {
    let cols = m.ncols();
    if cols == 0 {
        return (Vec::new(), None);
    }
    // pad to at least as many rows as columns so V is square
    let rows = m.nrows().max(cols);
    let mut padded = DMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(&m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let sv = &svd.singular_values;
    let top = sv.max();
    let margin = if top > 0.0 { sv.min() / top } else { 0.0 };
    let cutoff = SINGULAR_THRESHOLD * top;
    let kernel = (0..cols).filter(|&k| sv[k] <= cutoff).map(|k| v_t.row(k).transpose()).collect();
    (kernel, Some(margin))
}

fn floating_xspace(g: &Graph, tau: f64, p: &DMatrix<f64>, method: XSpaceMethod) -> (Vec<DMatrix<f64>>, Option<f64>) {
    let n = g.order();
    match choose(method, g, p.ncols()) {
        XSpaceMethod::Direct => {
            let pairs = complement_pairs(g);
            let mut index = vec![usize::MAX; n * n];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                index[i * n + j] = k;
                index[j * n + i] = k;
            }
            let mut m = DMatrix::zeros(n * n, pairs.len());
            for i in 0..n {
                for j in 0..n {
                    for l in g.neighbors(i) {
                        if index[l * n + j] != usize::MAX {
                            m[(i * n + j, index[l * n + j])] += 1.0;
                        }
                    }
                    if index[i * n + j] != usize::MAX {
                        m[(i * n + j, index[i * n + j])] -= tau;
                    }
                }
            }
            let (kernel, margin) = floating_kernel(m);
            let basis = kernel
                .into_iter()
                .map(|v| {
                    let mut x = DMatrix::zeros(n, n);
                    for (&(i, j), &c) in pairs.iter().zip(v.iter()) {
                        x[(i, j)] = c;
                        x[(j, i)] = c;
                    }
                    x
                })
                .collect();
            (basis, margin)
        }
        _ => {
            let d = p.ncols();
            let unknowns = sym_unknowns(d);
            let close = close_pairs(g);
            let mut m = DMatrix::zeros(close.len(), unknowns.len());
            for (row, &(i, j)) in close.iter().enumerate() {
                for (u, &(k, l)) in unknowns.iter().enumerate() {
                    m[(row, u)] = if k == l { p[(i, k)] * p[(j, k)] } else { p[(i, k)] * p[(j, l)] + p[(i, l)] * p[(j, k)] };
                }
            }
            let (kernel, margin) = floating_kernel(m);
            let basis = kernel
                .into_iter()
                .map(|v| {
                    let mut r = DMatrix::zeros(d, d);
                    for (&(k, l), &c) in unknowns.iter().zip(v.iter()) {
                        r[(k, l)] = c;
                        r[(l, k)] = c;
                    }
                    p * r * p.transpose()
                })
                .collect();
            (basis, margin)
        }
    }
}

/// `(A+I)∘X = 0` and `(A − τI)X = 0`, exactly.
pub fn is_in_xspace_exact(g: &Graph, tau: &BigRational, x: &ExactMatrix) -> bool {
    let n = g.order();
    x.rows() == n
        && x.is_symmetric()
        && (0..n).all(|i| (0..n).all(|j| !g.is_close(i, j) || x[(i, j)].is_zero()))
        && ExactMatrix::adjacency(g).shift_diagonal(tau).mul(x).is_zero()
}

/// Floating membership test with absolute tolerance `tol`.
pub fn is_in_xspace_float(g: &Graph, tau: f64, x: &DMatrix<f64>, tol: f64) -> bool {
    let n = g.order();
    if x.nrows() != n || x.ncols() != n || (x - x.transpose()).abs().max() > tol {
        return false;
    }
    let support = (0..n).all(|i| (0..n).all(|j| !g.is_close(i, j) || x[(i, j)].abs() <= tol));
    let mut a = ExactMatrix::adjacency(g).to_f64();
    for i in 0..n {
        a[(i, i)] -= tau;
    }
    support && (a * x).abs().max() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer_least_eigenvalue, rat};
    use crate::graph::{cycle, petersen, q_kneser};

    fn exact_spectrum(g: &Graph) -> Spectrum {
        integer_least_eigenvalue(&ExactMatrix::adjacency(g)).unwrap().unwrap()
    }

    #[test]
    fn two_k2_has_one_dimensional_xspace() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let s = exact_spectrum(&g);
        for method in [XSpaceMethod::Direct, XSpaceMethod::Eigenbasis] {
            let xs = xspace_with(&g, &s, method).unwrap();
            assert_eq!(xs.dim(), 1);
            let x = xs.basis[0].as_exact().unwrap();
            let c = x[(0, 2)].clone();
            assert!(!c.is_zero());
            assert_eq!(x[(1, 3)], c);
            assert_eq!(x[(0, 3)], -c.clone());
            assert_eq!(x[(1, 2)], -c);
            assert!(is_in_xspace_exact(&g, &rat(-1), x));
        }
    }

    #[test]
    fn c5_is_uc_on_floating_path() {
        let g = cycle(5).unwrap();
        let fl = floating_least_eigenspace(&ExactMatrix::adjacency(&g).to_f64(), 1e-8).unwrap();
        for method in [XSpaceMethod::Direct, XSpaceMethod::Eigenbasis] {
            let xs = xspace_with(&g, &fl.spectrum, method).unwrap();
            assert_eq!(xs.dim(), 0);
            assert!(xs.margin.unwrap() > 1e-4);
        }
    }

    #[test]
    fn methods_agree_on_small_examples() {
        for g in [petersen(), cycle(6).unwrap(), q_kneser(2, 4, 2).unwrap()] {
            let s = exact_spectrum(&g);
            let direct = xspace_with(&g, &s, XSpaceMethod::Direct).unwrap();
            let eig = xspace_with(&g, &s, XSpaceMethod::Eigenbasis).unwrap();
            assert_eq!(direct.dim(), eig.dim());
            let tau = s.exact_tau().unwrap();
            for x in direct.basis.iter().chain(&eig.basis) {
                assert!(is_in_xspace_exact(&g, tau, x.as_exact().unwrap()));
            }
        }
    }

    #[test]
    fn q_kneser_is_not_uc() {
        let g = q_kneser(2, 4, 2).unwrap();
        assert!(xspace(&g, &exact_spectrum(&g)).unwrap().dim() >= 1);
        assert_eq!(xspace(&petersen(), &exact_spectrum(&petersen())).unwrap().dim(), 0);
    }
}
