//! Arithmetic modulo the Mersenne prime `2^61 − 1`.
//!
//! Used only to pre-screen integer systems: rows independent mod `p` are
//! independent over `Q`, and candidate kernels obtained mod `p` are always
//! re-verified exactly before they are trusted.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub(crate) const PRIME: u64 = (1 << 61) - 1;

#[inline]
pub(crate) fn mul(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let s = (p as u64 & PRIME) + (p >> 61) as u64;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

pub(crate) fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, PRIME - 2)
}

pub(crate) fn from_bigint(v: &BigInt) -> u64 {
    let r = (v % BigInt::from(PRIME)).to_i128().expect("residue fits");
    if r < 0 {
        (r + PRIME as i128) as u64
    } else {
        r as u64
    }
}

/// Recovers `n/d` with `|n|, d ≤ sqrt(p/2)` from its residue, if one exists.
pub(crate) fn rational_reconstruct(a: u64) -> Option<(i64, i64)> {
    let bound: i128 = ((PRIME / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (PRIME as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound || gcd(r1, t1.abs()) != 1 {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((n as i64, d as i64))
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Reduced row echelon form over `F_p`, built one row at a time.
pub(crate) struct ModEchelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl ModEchelon {
    pub(crate) fn new(cols: usize) -> Self {
        ModEchelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a sparse row; returns whether it was independent of the rows so far.
    pub(crate) fn insert(&mut self, entries: &[(usize, u64)]) -> bool {
        let mut dense = vec![0u64; self.cols];
        for &(c, v) in entries {
            dense[c] = v;
        }
        // Basis rows vanish on every other pivot column, so only the original
        // support can meet a pivot.
        for &(c, _) in entries {
            if let Some(i) = self.pivot_row[c] {
                let f = dense[c];
                if f != 0 {
                    for (d, &b) in dense.iter_mut().zip(&self.rows[i]) {
                        if b != 0 {
                            *d = sub(*d, mul(f, b));
                        }
                    }
                }
            }
        }
        let Some(pc) = dense.iter().position(|&v| v != 0) else {
            return false;
        };
        let s = inv(dense[pc]);
        for d in dense.iter_mut() {
            *d = mul(*d, s);
        }
        for row in &mut self.rows {
            let f = row[pc];
            if f != 0 {
                for (r, &b) in row.iter_mut().zip(&dense) {
                    if b != 0 {
                        *r = sub(*r, mul(f, b));
                    }
                }
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.pivots.push(pc);
        self.rows.push(dense);
        true
    }

    /// Kernel basis mod `p`, one vector per free column `f` (with a 1 at `f`).
    pub(crate) fn kernel(&self) -> Vec<(usize, Vec<u64>)> {
        (0..self.cols)
            .filter(|&f| self.pivot_row[f].is_none())
            .map(|f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = sub(0, row[f]);
                }
                (f, v)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_recovers_small_fractions() {
        for (n, d) in [(1i64, 1i64), (-3, 7), (22, 9), (0, 1), (-123456, 7891)] {
            let a = mul(from_bigint(&BigInt::from(n)), inv(from_bigint(&BigInt::from(d))));
            assert_eq!(rational_reconstruct(a), Some((n, d)));
        }
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = ModEchelon::new(3);
        assert!(e.insert(&[(0, 1), (1, 2)]));
        assert!(e.insert(&[(1, 1), (2, 1)]));
        assert!(!e.insert(&[(0, 1), (1, 3), (2, 1)]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.kernel().len(), 1);
    }
}
