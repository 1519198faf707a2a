//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use eigenframe::graph::{cayley_z2, complete, cycle, kneser, petersen, q_kneser, CayleySpec, Graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Rank by textbook Gaussian elimination over the rationals.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let v = &rows[rank][k] * &f;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim 𝒳(G)` with one unknown per unordered pair `i ≤ j`, explicit
/// `(A+I)∘X = 0` rows and all `n²` rows of `(A − τI)X = 0`.
pub fn brute_force_xspace_dim(g: &Graph, tau: i64) -> usize {
    let n = g.order();
    let idx = |i: usize, j: usize| {
        let (a, b) = (i.min(j), i.max(j));
        a * n - a * (a + 1) / 2 + b
    };
    let unknowns = n * (n + 1) / 2;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j || g.has_edge(i, j) {
                let mut r = vec![q(0); unknowns];
                r[idx(i, j)] = q(1);
                rows.push(r);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![q(0); unknowns];
            for l in 0..n {
                let a = if l == i { -tau } else if g.has_edge(i, l) { 1 } else { 0 };
                if a != 0 {
                    r[idx(l, j)] += q(a);
                }
            }
            rows.push(r);
        }
    }
    unknowns - rational_rank(rows)
}

/// Least eigenvalue when it is an integer: nalgebra's estimate rounded,
/// confirmed by a singular `A − τI` over the rationals.
pub fn integral_least_eigenvalue(g: &Graph) -> Option<i64> {
    let n = g.order();
    let a = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let lmin: f64 = nalgebra::SymmetricEigen::new(a).eigenvalues.min();
    let t = lmin.round();
    if (lmin - t).abs() > 1e-6 {
        return None;
    }
    let t = t as i64;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(-t) } else if g.has_edge(i, j) { q(1) } else { q(0) }).collect())
        .collect();
    (rational_rank(rows) < n).then_some(t)
}

/// Backtracking isomorphism test.
pub fn is_isomorphic(g: &Graph, h: &Graph, vertex_transitive: bool) -> bool {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(g: &Graph, h: &Graph, v: usize, map: &mut [usize], used: &mut [bool], fix_first: bool) -> bool {
        let n = g.order();
        if v == n {
            return true;
        }
        let candidates: Vec<usize> = if fix_first && v == 0 { vec![0] } else { (0..n).collect() };
        for w in candidates {
            if used[w] || g.degree(v) != h.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                map[v] = w;
                used[w] = true;
                if extend(g, h, v + 1, map, used, fix_first) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    extend(g, h, 0, &mut map, &mut used, vertex_transitive)
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

pub fn cayley(n: u32, set: &[u32]) -> Graph {
    cayley_z2(&CayleySpec::new(n, set.iter().copied()).unwrap()).unwrap()
}

/// Twenty-odd 1-walk-regular graphs: vertex- and edge-transitive families.
pub fn one_walk_regular_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=11 {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for n in 3..=7 {
        out.push((format!("K{n}"), complete(n).unwrap()));
    }
    out.push(("Petersen".into(), petersen()));
    for (n, r) in [(6, 2), (7, 2), (7, 3)] {
        out.push((format!("K({n},{r})"), kneser(n, r).unwrap()));
    }
    out.push(("qK(2,4,2)".into(), q_kneser(2, 4, 2).unwrap()));
    out.push(("Q3".into(), cayley(3, &[1, 2, 4])));
    out.push(("Q4".into(), cayley(4, &[1, 2, 4, 8])));
    out
}
