//! Subspaces of `F_q^n` for prime `q`, represented by reduced row echelon bases.

use crate::error::{invalid, Error, Result};

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// `[k]_q = 1 + q + … + q^{k−1}`, the number of lines in a `k`-space.
pub fn q_integer(k: u32, q: u64) -> u128 {
    (0..k).map(|i| (q as u128).pow(i)).sum()
}

/// Gaussian binomial `[n choose k]_q`, or `None` on overflow.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow(n - i)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow(i + 1)?.checked_sub(1)?)?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    Some(num / den)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An `r`-dimensional subspace of `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    /// Reduced row echelon basis, `r` rows of length `n`.
    pub rref: Vec<Vec<u32>>,
    /// Base-`q` codes of all nonzero vectors, sorted.
    elements: Vec<u64>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rref.len()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// True when the two subspaces intersect only in zero.
    pub fn is_skew_to(&self, other: &Subspace) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.elements, &other.elements);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn contains_code(&self, code: u64) -> bool {
        self.elements.binary_search(&code).is_ok()
    }
}

fn encode(v: &[u32], q: u64) -> u64 {
    v.iter().fold(0u64, |acc, &x| acc * q + x as u64)
}

fn span_codes(rows: &[Vec<u32>], q: u64, n: usize) -> Vec<u64> {
    let r = rows.len();
    let total = (q as usize).pow(r as u32);
    let mut out = Vec::with_capacity(total - 1);
    let mut coeffs = vec![0u32; r];
    for _ in 1..total {
        // increment the coefficient vector
        for c in coeffs.iter_mut() {
            *c += 1;
            if (*c as u64) < q {
                break;
            }
            *c = 0;
        }
        let v: Vec<u32> = (0..n)
            .map(|j| {
                (rows.iter().zip(&coeffs).map(|(row, &c)| row[j] as u64 * c as u64).sum::<u64>() % q) as u32
            })
            .collect();
        out.push(encode(&v, q));
    }
    out.sort_unstable();
    out
}

/// All `r`-dimensional subspaces of `F_q^n`, sorted lexicographically by their
/// row-major RREF matrices. `q` must be prime.
pub fn enumerate_subspaces(q: u64, n: usize, r: usize) -> Result<Vec<Subspace>> {
    if !is_prime(q) {
        return Err(Error::Unsupported(format!("q = {q} is not prime")));
    }
    if r > n {
        return Err(invalid(format!("r = {r} exceeds n = {n}")));
    }
    let count = gaussian_binomial(n as u32, r as u32, q)
        .filter(|&c| c <= crate::graph::MAX_VERTICES as u128)
        .ok_or_else(|| Error::Resource(format!("[{n} choose {r}]_{q} exceeds the vertex cap")))?;
    (q as u128)
        .checked_pow(n as u32)
        .filter(|&v| v < u64::MAX as u128)
        .ok_or_else(|| Error::Resource(format!("{q}^{n} does not fit vector codes")))?;

    let mut out = Vec::with_capacity(count as usize);
    let mut pivots: Vec<usize> = (0..r).collect();
    loop {
        // free positions: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let p = &pivots;
                (p[i] + 1..n).filter(move |c| !p.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut rows = vec![vec![0u32; n]; r];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            for (&(i, c), &v) in free.iter().zip(&vals) {
                rows[i][c] = v;
            }
            let elements = span_codes(&rows, q, n);
            out.push(Subspace { rref: rows, elements });
            // odometer over free entries
            let mut k = 0;
            while k < vals.len() {
                vals[k] += 1;
                if (vals[k] as u64) < q {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
            if k == vals.len() {
                break;
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    out.sort_by(|a, b| a.rref.cmp(&b.rref));
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// Advances a sorted `k`-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
