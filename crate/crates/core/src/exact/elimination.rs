//! Exact kernels of integer systems.
//!
//! The engine is fraction-free Gauss–Jordan elimination (Bareiss' exact
//! division step applied above and below each pivot), which keeps every
//! intermediate entry an integer minor of the input. Two cheaper routes run
//! first and are only accepted after exact verification:
//!
//! 1. rows are screened mod `p`; if they reach full column rank the kernel is
//!    certified trivial (rank over `Q` is at least rank mod `p`);
//! 2. otherwise the mod-`p` kernel is lifted by rational reconstruction and
//!    every candidate vector is checked against every row over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::{self, ModEchelon};

/// A homogeneous integer linear system stored as sparse rows.
#[derive(Clone, Debug, Default)]
pub struct IntegerSystem {
    cols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerSystem {
    pub fn new(cols: usize) -> Self {
        IntegerSystem { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row given as `(column, coefficient)` pairs; zero coefficients
    /// are dropped and repeated columns are summed.
    pub fn push_row<I: IntoIterator<Item = (usize, BigInt)>>(&mut self, entries: I) {
        let mut row: Vec<(usize, BigInt)> = Vec::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            match row.iter_mut().find(|(k, _)| *k == c) {
                Some((_, acc)) => *acc += v,
                None => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }

    /// True when `x` solves every row exactly.
    pub fn is_solved_by(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|row| row.iter().map(|(c, a)| a * &x[*c]).sum::<BigInt>().is_zero())
    }

    fn dense_rows(&self, which: &[usize]) -> Vec<Vec<BigInt>> {
        which
            .iter()
            .map(|&i| {
                let mut d = vec![BigInt::zero(); self.cols];
                for (c, v) in &self.rows[i] {
                    d[*c] = v.clone();
                }
                d
            })
            .collect()
    }
}

/// Basis of the kernel of `sys` as primitive integer vectors.
///
/// Each vector is attached to a distinct non-pivot column and is positive there.
pub fn integer_nullspace(sys: &IntegerSystem) -> Vec<Vec<BigInt>> {
    let cols = sys.cols;
    let mut ech = ModEchelon::new(cols);
    let mut selected = Vec::new();
    for (i, row) in sys.rows.iter().enumerate() {
        if ech.rank() == cols {
            break;
        }
        let residues: Vec<(usize, u64)> = row.iter().map(|(c, v)| (*c, modular::from_bigint(v))).filter(|(_, v)| *v != 0).collect();
        if ech.insert(&residues) {
            selected.push(i);
        }
    }
    if ech.rank() == cols {
        return Vec::new();
    }

    if let Some(basis) = lift_modular_kernel(&ech) {
        if basis.iter().all(|(_, v)| sys.is_solved_by(v)) {
            return finish(basis);
        }
    }

    let basis = fraction_free_kernel(sys.dense_rows(&selected), cols);
    if basis.iter().all(|(_, v)| sys.is_solved_by(v)) {
        return finish(basis);
    }
    let all: Vec<usize> = (0..sys.rows.len()).collect();
    finish(fraction_free_kernel(sys.dense_rows(&all), cols))
}

fn finish(basis: Vec<(usize, Vec<BigInt>)>) -> Vec<Vec<BigInt>> {
    basis
        .into_iter()
        .map(|(free, mut v)| {
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in v.iter_mut() {
                    *x = &*x / &g;
                }
            }
            if v[free].is_negative() {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
            v
        })
        .collect()
}

fn lift_modular_kernel(ech: &ModEchelon) -> Option<Vec<(usize, Vec<BigInt>)>> {
    ech.kernel()
        .into_iter()
        .map(|(free, v)| {
            let fracs: Vec<(i64, i64)> = v.iter().map(|&a| modular::rational_reconstruct(a)).collect::<Option<_>>()?;
            let lcm = fracs.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(&BigInt::from(*d)));
            let ints = fracs.iter().map(|(n, d)| BigInt::from(*n) * (&lcm / BigInt::from(*d))).collect();
            Some((free, ints))
        })
        .collect()
}

/// Fraction-free Gauss–Jordan elimination in place. Returns the pivot columns
/// (one per leading row) and the common value of all pivot entries.
pub(crate) fn fraction_free_reduce(a: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, BigInt) {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        let (head, rest) = a.split_at_mut(r);
        let (pivot_row, tail) = rest.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                let num = &piv * &*x - &f * y;
                debug_assert!((&num % &prev).is_zero(), "inexact fraction-free division");
                *x = num / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (pivots, prev)
}

fn fraction_free_kernel(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<(usize, Vec<BigInt>)> {
    let (pivots, d) = fraction_free_reduce(&mut a, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![BigInt::zero(); cols];
            v[f] = d.clone();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            (f, v)
        })
        .collect()
}

#[cfg(test)]
pub(crate) fn fraction_free_nullspace_for_tests(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    finish(fraction_free_kernel(rows, cols))
}
