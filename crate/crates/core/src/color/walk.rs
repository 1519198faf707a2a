use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{integer_least_eigenvalue, ExactMatrix};
use crate::graph::Graph;

/// Where walk counts first disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WalkWitness {
    /// Closed `k`-walks at `u` and `v` differ.
    Vertex { k: usize, u: usize, v: usize },
    /// `k`-walks between the ends of two edges differ.
    Edge { k: usize, e: (usize, usize), f: (usize, usize) },
}

impl std::fmt::Display for WalkWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkWitness::Vertex { k, u, v } => write!(f, "closed {k}-walk counts differ at vertices {u} and {v}"),
            WalkWitness::Edge { k, e, f: g } => {
                write!(f, "{k}-walk counts differ on edges {}-{} and {}-{}", e.0, e.1, g.0, g.1)
            }
        }
    }
}

/// `Aᵏ ∘ I = a_k I` and `Aᵏ ∘ A = b_k A` for `k = 0..=max_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneWalkRegularCertificate {
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub max_power: usize,
    pub verdict: bool,
    pub witness: Option<WalkWitness>,
}

/// Highest power that needs checking: the degree of the minimal polynomial
/// minus one when the whole spectrum is certified, `n − 1` otherwise.
fn power_bound(g: &Graph) -> usize {
    let n = g.order();
    let a = ExactMatrix::adjacency(g);
    match integer_least_eigenvalue(&a) {
        Ok(Some(s)) if s.pairs.iter().all(|(v, _)| v.is_exact()) && s.order() == n => s.pairs.len() - 1,
        _ => n.saturating_sub(1),
    }
}

fn multiply(x: &[Vec<BigInt>], g: &Graph) -> Vec<Vec<BigInt>> {
    // X·A by summing neighbor columns
    x.iter()
        .map(|row| {
            (0..g.order())
                .map(|j| g.neighbors(j).fold(BigInt::zero(), |acc, l| acc + &row[l]))
                .collect()
        })
        .collect()
}

pub fn is_one_walk_regular(g: &Graph) -> OneWalkRegularCertificate {
    let n = g.order();
    let max_power = power_bound(g);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut power: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for k in 0..=max_power {
        if k > 0 {
            power = multiply(&power, g);
        }
        let a_k = power.first().map_or_else(BigInt::zero, |r| r[0].clone());
        if let Some(u) = (1..n).find(|&u| power[u][u] != a_k) {
            return fail(a, b, max_power, WalkWitness::Vertex { k, u: 0, v: u });
        }
        let b_k = edges.first().map_or_else(BigInt::zero, |&(i, j)| power[i][j].clone());
        if let Some(&f) = edges.iter().find(|&&(i, j)| power[i][j] != b_k) {
            return fail(a, b, max_power, WalkWitness::Edge { k, e: edges[0], f });
        }
        a.push(a_k);
        b.push(b_k);
    }
    OneWalkRegularCertificate { a, b, max_power, verdict: true, witness: None }
}

fn fail(a: Vec<BigInt>, b: Vec<BigInt>, max_power: usize, w: WalkWitness) -> OneWalkRegularCertificate {
    OneWalkRegularCertificate { a, b, max_power, verdict: false, witness: Some(w) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, petersen};

    #[test]
    fn petersen_counts() {
        let c = is_one_walk_regular(&petersen());
        assert!(c.verdict);
        assert_eq!(c.max_power, 2);
        assert_eq!(c.a, vec![BigInt::from(1), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(c.b, vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn c5_and_star() {
        let c = is_one_walk_regular(&cycle(5).unwrap());
        assert!(c.verdict && c.max_power == 4);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = is_one_walk_regular(&star);
        assert!(!c.verdict);
        assert_eq!(c.witness, Some(WalkWitness::Vertex { k: 2, u: 0, v: 1 }));
    }

    #[test]
    fn path_fails_on_edges_or_vertices() {
        // P_4 is not regular
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_one_walk_regular(&p4).verdict);
        // the triangular prism is regular but its edges are not all alike
        let prism = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        let c = is_one_walk_regular(&prism);
        assert!(!c.verdict);
        assert!(matches!(c.witness, Some(WalkWitness::Edge { k: 2, .. })));
    }
}
