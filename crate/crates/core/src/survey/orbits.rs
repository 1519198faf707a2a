//! `GL(n,2)`-orbits of connection sets in `Z_2^n ∖ {0}`.
//!
//! A connection set is a bitmask: bit `x − 1` stands for the element `x`.
//! Sets in one orbit have equal size, and for equal sizes the lexicographic
//! order of sorted element lists is: `T < U` iff `min(T △ U) ∈ T`. The
//! canonical representative of an orbit is its least member.
//!
//! The least member always has "basis form": for an ordered basis
//! `b_1, …, b_m` of its span drawn from the set, the group element sending
//! `b_k ↦ 2^{k−1}` produces it. Canonicity is therefore decided by a search
//! over ordered bases from the set, comparing images one dyadic block
//! `[2^{j−1}, 2^j)` at a time and abandoning a branch as soon as its block
//! differs.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::{gf2_rank, CayleySpec};

/// Largest supported exponent.
pub const MAX_SURVEY_N: u32 = 5;

/// Largest exponent enumerated exhaustively.
pub const EXHAUSTIVE_MAX_N: u32 = 4;

#[inline]
fn bit(x: u32) -> u64 {
    1u64 << (x - 1)
}

/// `a < b` for sets of equal size.
#[inline]
pub(crate) fn set_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

pub(crate) fn elements(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn rank(mask: u64) -> u32 {
    gf2_rank(elements(mask))
}

/// Every invertible `n × n` matrix over `GF(2)`, as the images of `e_1, …, e_n`.
pub(crate) fn general_linear_group(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(n as usize);
    fn extend(n: u32, cols: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cols.len() == n as usize {
            out.push(cols.clone());
            return;
        }
        for v in 1..(1u32 << n) {
            // v must avoid the span of the columns chosen so far
            let span_hit = (0..(1u32 << cols.len())).any(|c| {
                cols.iter().enumerate().filter(|(k, _)| c >> k & 1 == 1).fold(0, |acc, (_, &b)| acc ^ b) == v
            });
            if !span_hit {
                cols.push(v);
                extend(n, cols, out);
                cols.pop();
            }
        }
    }
    extend(n, &mut cols, &mut out);
    out
}

#[inline]
fn apply(g: &[u32], x: u32) -> u32 {
    g.iter().enumerate().filter(|(k, _)| x >> k & 1 == 1).fold(0, |acc, (_, &c)| acc ^ c)
}

fn image(g: &[u32], mask: u64) -> u64 {
    elements(mask).into_iter().fold(0, |acc, x| acc | bit(apply(g, x)))
}

/// Orbit representatives by exhaustive enumeration of all subsets.
pub fn orbits_exhaustive(n: u32) -> Result<Vec<u64>> {
    if n == 0 || n > EXHAUSTIVE_MAX_N {
        return Err(invalid(format!("exhaustive enumeration needs 1 <= n <= {EXHAUSTIVE_MAX_N}")));
    }
    let group = general_linear_group(n);
    let points = (1u32 << n) - 1;
    let total = 1u64 << points;
    let mut seen = vec![false; total as usize];
    let mut reps = Vec::new();
    for mask in 0..total {
        if seen[mask as usize] {
            continue;
        }
        let mut best = mask;
        for g in &group {
            let img = image(g, mask);
            seen[img as usize] = true;
            if set_less(img, best) {
                best = img;
            }
        }
        if rank(best) == n {
            reps.push(best);
        }
    }
    reps.sort_unstable_by(|a, b| canonical_order(*a, *b));
    Ok(reps)
}

/// Total order used for reports: by size, then lexicographically.
pub(crate) fn canonical_order(a: u64, b: u64) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| elements(a).cmp(&elements(b)))
}

/// Whether `mask` is the least member of its orbit.
pub(crate) fn is_canonical(mask: u64) -> bool {
    let set = elements(mask);
    let mut img = [0u32; 64];
    let mut in_span = [false; 64];
    in_span[0] = true;
    !smaller_image_exists(&set, mask, 0, &mut img, &mut in_span)
}

/// Depth-first over ordered bases from `set`. `img[v]` is the image of `v`
/// for `v` in the current span (flagged in `in_span`).
fn smaller_image_exists(set: &[u32], mask: u64, j: u32, img: &mut [u32; 64], in_span: &mut [bool; 64]) -> bool {
    let candidates: Vec<u32> = set.iter().copied().filter(|&s| !in_span[s as usize]).collect();
    if candidates.is_empty() {
        return false;
    }
    let block_lo = 1u32 << j;
    let block_hi = 1u32 << (j + 1);
    let target: u64 = set
        .iter()
        .filter(|&&s| s >= block_lo && s < block_hi)
        .fold(0, |acc, &s| acc | bit(s));
    for b in candidates {
        // extend the span by b ↦ 2^j
        let old: Vec<u32> = (0..64u32).filter(|&v| in_span[v as usize]).collect();
        for &v in &old {
            let w = v ^ b;
            in_span[w as usize] = true;
            img[w as usize] = img[v as usize] | block_lo;
        }
        let block: u64 = set
            .iter()
            .filter(|&&s| in_span[s as usize] && img[s as usize] >= block_lo)
            .fold(0, |acc, &s| acc | bit(img[s as usize]));
        let found = if block == target {
            smaller_image_exists(set, mask, j + 1, img, in_span)
        } else {
            let d = block ^ target;
            block & (d & d.wrapping_neg()) != 0
        };
        for &v in &old {
            in_span[(v ^ b) as usize] = false;
        }
        if found {
            return true;
        }
    }
    false
}

/// Orbit representatives by orderly generation: canonical sets are grown one
/// element at a time, adding only elements above the current maximum, and a
/// new element outside the current span must be the next power of two.
pub fn orbits_orderly(n: u32, workers: usize) -> Result<Vec<u64>> {
    if n == 0 || n > MAX_SURVEY_N {
        return Err(Error::Unsupported(format!("survey supports 1 <= n <= {MAX_SURVEY_N}, got {n}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Resource(e.to_string()))?;
    let top = 1u32 << n;
    let mut level: Vec<(u64, u32)> = vec![(0, 0)];
    let mut spanning = Vec::new();
    while !level.is_empty() {
        let next: Vec<(u64, u32)> = pool.install(|| {
            level
                .par_iter()
                .flat_map_iter(|&(mask, m)| {
                    let max = if mask == 0 { 0 } else { 64 - mask.leading_zeros() };
                    let lim = 1u32 << m;
                    (max + 1..top)
                        .filter(move |&x| x <= lim)
                        .map(move |x| (mask | bit(x), if x == lim { m + 1 } else { m }))
                        .filter(|&(child, _)| is_canonical(child))
                        .collect::<Vec<_>>()
                })
                .collect()
        });
        spanning.extend(next.iter().filter(|&&(_, m)| m == n).map(|&(mask, _)| mask));
        level = next;
    }
    spanning.sort_unstable_by(|a, b| canonical_order(*a, *b));
    Ok(spanning)
}

/// Orbit representatives of spanning connection sets (connected Cayley
/// graphs) in `Z_2^n`.
pub fn enumerate_orbits(n: u32, workers: usize) -> Result<Vec<CayleySpec>> {
    if n == 0 || n > MAX_SURVEY_N {
        return Err(Error::Unsupported(format!("survey supports 1 <= n <= {MAX_SURVEY_N}, got {n}")));
    }
    let masks = if n <= EXHAUSTIVE_MAX_N { orbits_exhaustive(n)? } else { orbits_orderly(n, workers)? };
    masks.into_iter().map(|m| CayleySpec::new(n, elements(m))).collect()
}
