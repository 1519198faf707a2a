use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Framework, Matrix};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::graph::subspace::{enumerate_subspaces, q_integer};
use crate::graph::{kneser, kneser_vertices, q_kneser, q_kneser_vertices};

fn check_range(n: usize, r: usize) -> Result<()> {
    if r == 0 || n < 2 * r + 1 {
        return Err(Error::OutOfRange(format!("needs r >= 1 and n >= 2r+1, got n = {n}, r = {r}")));
    }
    Ok(())
}

fn int(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Weighted incidence framework of the Kneser graph `K(n, r)`.
///
/// Row `S` (an `r`-subset, colex order) has `α = r − n` on the elements of
/// `S` and `β = r` elsewhere, so every row sums to zero.
pub fn kneser_framework(n: usize, r: usize) -> Result<Framework> {
    check_range(n, r)?;
    let verts = kneser_vertices(n, r)?;
    let (alpha, beta) = (int(r as i128 - n as i128), int(r as i128));
    let p = ExactMatrix::from_fn(verts.len(), n, |i, e| {
        if verts[i].contains(&e) {
            alpha.clone()
        } else {
            beta.clone()
        }
    });
    Framework::from_matrix(kneser(n, r)?, Matrix::Exact(p))
}

/// Weighted incidence framework of the `q`-Kneser graph `qK(n, r)`.
///
/// Rows are `r`-subspaces, columns are the lines of `F_q^n`; the entry is
/// `α = [r]_q − [n]_q` when the line lies in the subspace and `β = [r]_q`
/// otherwise.
pub fn qkneser_framework(q: u64, n: usize, r: usize) -> Result<Framework> {
    check_range(n, r)?;
    let graph = q_kneser(q, n, r)?;
    let verts = q_kneser_vertices(q, n, r)?;
    let lines = enumerate_subspaces(q, n, 1)?;
    let lines_in = |k: usize| q_integer(k as u32, q) as i128;
    let (alpha, beta) = (int(lines_in(r) - lines_in(n)), int(lines_in(r)));
    let p = ExactMatrix::from_fn(verts.len(), lines.len(), |i, l| {
        if verts[i].contains_code(lines[l].elements()[0]) {
            alpha.clone()
        } else {
            beta.clone()
        }
    });
    Framework::from_matrix(graph, Matrix::Exact(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::Zero;

    fn row_sums_vanish(p: &ExactMatrix) -> bool {
        (0..p.rows()).all(|i| p.row(i).iter().sum::<BigRational>().is_zero())
    }

    #[test]
    fn kneser_constants() {
        let f = kneser_framework(5, 2).unwrap();
        let p = f.matrix().unwrap().as_exact().unwrap();
        assert_eq!((p.rows(), p.cols()), (10, 5));
        assert_eq!(p.row(0), &[rat(-3), rat(-3), rat(2), rat(2), rat(2)]);
        assert!(row_sums_vanish(p));
        assert!(matches!(kneser_framework(4, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn qkneser_constants() {
        let f = qkneser_framework(2, 5, 2).unwrap();
        let p = f.matrix().unwrap().as_exact().unwrap();
        assert_eq!((p.rows(), p.cols()), (155, 31));
        for i in 0..p.rows() {
            let alphas = p.row(i).iter().filter(|&x| *x == rat(-28)).count();
            let betas = p.row(i).iter().filter(|&x| *x == rat(3)).count();
            assert_eq!((alphas, betas), (3, 28));
        }
        assert!(row_sums_vanish(p));
        assert!(matches!(qkneser_framework(2, 4, 2), Err(Error::OutOfRange(_))));
    }
}
