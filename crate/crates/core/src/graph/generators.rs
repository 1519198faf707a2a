use std::collections::BTreeSet;

use super::subspace::{enumerate_subspaces, Subspace};
use super::{Graph, MAX_VERTICES};
use crate::error::{invalid, Error, Result};

/// The cycle `C_n`: `x ~ x ± 1 (mod n)`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|x| (x, (x + 1) % n)))
}

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// The Petersen graph, built as the Kneser graph `K(5,2)`.
pub fn petersen() -> Graph {
    kneser(5, 2).expect("K(5,2) is valid")
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// The `r`-subsets of `{0, …, n−1}` in colexicographic order.
pub fn kneser_vertices(n: usize, r: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 || r == 0 || r > n {
        return Err(invalid(format!("kneser needs n >= 1 and 1 <= r <= n, got ({n},{r})")));
    }
    if binomial(n, r) > MAX_VERTICES as u128 || n > 63 {
        return Err(Error::Resource(format!("C({n},{r}) exceeds the vertex cap")));
    }
    // Gosper's hack walks r-bit masks in increasing order, which is colex order.
    let mut out = Vec::new();
    let mut mask: u64 = (1u64 << r) - 1;
    while mask < 1u64 << n {
        out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        let c = mask & mask.wrapping_neg();
        let rr = mask + c;
        mask = (((rr ^ mask) >> 2) / c) | rr;
    }
    Ok(out)
}

/// The Kneser graph `K(n, r)`: `r`-subsets of an `n`-set, adjacent when disjoint.
/// Vertices are the subsets in colex order (see [`kneser_vertices`]).
pub fn kneser(n: usize, r: usize) -> Result<Graph> {
    let verts = kneser_vertices(n, r)?;
    let masks: Vec<u64> = verts.iter().map(|s| s.iter().map(|&i| 1u64 << i).sum()).collect();
    let mut g = Graph::empty(verts.len())?;
    for (a, &ma) in masks.iter().enumerate() {
        for (b, &mb) in masks.iter().enumerate().skip(a + 1) {
            if ma & mb == 0 {
                g.set_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// The `r`-dimensional subspaces of `F_q^n`, in lexicographic RREF order.
pub fn q_kneser_vertices(q: u64, n: usize, r: usize) -> Result<Vec<Subspace>> {
    if n == 0 || r == 0 {
        return Err(invalid(format!("q-kneser needs n >= 1 and r >= 1, got ({n},{r})")));
    }
    enumerate_subspaces(q, n, r)
}

/// The `q`-Kneser graph `qK(n, r)`: `r`-subspaces of `F_q^n`, adjacent when they
/// intersect trivially. `q` must be prime.
pub fn q_kneser(q: u64, n: usize, r: usize) -> Result<Graph> {
    let verts = q_kneser_vertices(q, n, r)?;
    let mut g = Graph::empty(verts.len())?;
    for (a, s) in verts.iter().enumerate() {
        for (b, t) in verts.iter().enumerate().skip(a + 1) {
            if s.is_skew_to(t) {
                g.set_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// A Cayley graph on `Z_2^n` given by its connection set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleySpec {
    n: u32,
    connection_set: BTreeSet<u32>,
}

impl CayleySpec {
    pub fn new<I: IntoIterator<Item = u32>>(n: u32, connection_set: I) -> Result<Self> {
        if n == 0 || n > 20 {
            return Err(invalid(format!("Z_2^n needs 1 <= n <= 20, got {n}")));
        }
        let connection_set: BTreeSet<u32> = connection_set.into_iter().collect();
        if connection_set.contains(&0) {
            return Err(invalid("the zero vector cannot be in the connection set"));
        }
        if let Some(&c) = connection_set.iter().find(|&&c| c >> n != 0) {
            return Err(invalid(format!("{c:#x} is not an element of Z_2^{n}")));
        }
        Ok(CayleySpec { n, connection_set })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn connection_set(&self) -> &BTreeSet<u32> {
        &self.connection_set
    }

    /// GF(2) rank of the connection set.
    pub fn rank(&self) -> u32 {
        gf2_rank(self.connection_set.iter().copied())
    }

    /// The graph is connected iff the connection set spans `Z_2^n`.
    pub fn spans(&self) -> bool {
        self.rank() == self.n
    }
}

pub(crate) fn gf2_rank<I: IntoIterator<Item = u32>>(vectors: I) -> u32 {
    // basis indexed by leading bit
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 31 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

/// Builds the Cayley graph: vertex `a` is the bit-vector with integer value `a`,
/// and `a ~ b` iff `a ⊕ b` lies in the connection set.
pub fn cayley_z2(spec: &CayleySpec) -> Result<Graph> {
    let size = 1usize << spec.n;
    let mut g = Graph::empty(size)?;
    for a in 0..size {
        for &c in &spec.connection_set {
            let b = a ^ c as usize;
            if a < b {
                g.set_edge(a, b);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cycles() {
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.regular_degree(), Some(2));
        assert!(c5.maximal_cliques().iter().all(|c| c.len() == 2));
        let c4 = cycle(4).unwrap();
        let comp = c4.complement();
        assert_eq!(comp.edge_count(), 2);
        assert_eq!(comp.regular_degree(), Some(1));
        assert!(cycle(2).is_err());
    }

    #[test]
    fn kneser_examples() {
        let p = kneser(5, 2).unwrap();
        assert_eq!((p.order(), p.edge_count(), p.regular_degree()), (10, 15, Some(3)));
        assert_eq!(kneser(3, 1).unwrap(), complete(3).unwrap());
        let m = kneser(4, 2).unwrap();
        assert_eq!((m.order(), m.edge_count(), m.regular_degree()), (6, 3, Some(1)));
        assert!(kneser(3, 4).is_err());
    }

    #[test]
    fn kneser_vertices_are_colex() {
        let v = kneser_vertices(4, 2).unwrap();
        assert_eq!(v, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn q_kneser_examples() {
        assert_eq!(q_kneser(2, 2, 1).unwrap(), complete(3).unwrap());
        let g = q_kneser(2, 4, 2).unwrap();
        assert_eq!((g.order(), g.regular_degree()), (35, Some(16)));
        assert_eq!(q_kneser(2, 5, 2).unwrap().order(), 155);
        assert!(matches!(q_kneser(6, 3, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cayley_examples() {
        let c4 = cayley_z2(&CayleySpec::new(2, [1, 2]).unwrap()).unwrap();
        assert_eq!(c4.regular_degree(), Some(2));
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.is_connected());
        assert_eq!(cayley_z2(&CayleySpec::new(2, [1, 2, 3]).unwrap()).unwrap(), complete(4).unwrap());
        let q3 = cayley_z2(&CayleySpec::new(3, [1, 2, 4]).unwrap()).unwrap();
        assert_eq!((q3.order(), q3.edge_count()), (8, 12));
        // bipartite by parity of popcount
        assert!(q3.edges().all(|(u, v)| (u.count_ones() + v.count_ones()) % 2 == 1));
        assert!(CayleySpec::new(2, [0, 1]).is_err());
        assert!(!CayleySpec::new(3, [1, 2, 3]).unwrap().spans());
    }
}
