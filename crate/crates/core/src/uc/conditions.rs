use crate::error::{invalid, Error, Result};
use crate::exact::{floating_least_eigenspace, integer_least_eigenvalue, ExactMatrix, Scalar, DEFAULT_TOLERANCE};
use crate::framework::numerical_rank;
use crate::graph::Graph;

/// Margin used when either side of the neighborhood comparison is floating.
pub const CONDITION_MARGIN: f64 = 1e-6;

/// Outcome of a sufficient condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionVerdict {
    Holds,
    /// The condition fails at this vertex.
    FailsAt(usize),
    Fails,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionVerdict::Holds)
    }
}

fn least_eigenvalue(g: &Graph) -> Result<Scalar> {
    if g.order() == 0 {
        return Ok(Scalar::integer(0));
    }
    let a = ExactMatrix::adjacency(g);
    match integer_least_eigenvalue(&a)? {
        Some(s) => Ok(s.tau),
        None => Ok(floating_least_eigenspace(&a.to_f64(), DEFAULT_TOLERANCE)?.spectrum.tau),
    }
}

fn strictly_greater(a: &Scalar, b: &Scalar) -> bool {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x > y,
        _ => a.to_f64() > b.to_f64() + CONDITION_MARGIN,
    }
}

/// `λ_min(G ∖ N[i]) > τ` for every vertex `i`; sufficient for universal
/// completability. An empty punctured graph counts as `λ_min = 0`.
pub fn neighborhood_condition(g: &Graph) -> Result<ConditionVerdict> {
    if g.has_cables() {
        return Err(Error::Unsupported("sufficient conditions need a tensegrity without cables".into()));
    }
    if g.order() == 0 {
        return Err(invalid("graph has no vertices"));
    }
    let tau = least_eigenvalue(g)?;
    for v in 0..g.order() {
        let (h, _) = g.induced_delete_closed_nbhd(v)?;
        if !strictly_greater(&least_eigenvalue(&h)?, &tau) {
            return Ok(ConditionVerdict::FailsAt(v));
        }
    }
    Ok(ConditionVerdict::Holds)
}

/// The principal submatrix of `A − τI` off the clique is invertible;
/// sufficient for universal completability.
pub fn clique_condition(g: &Graph, clique: &[usize]) -> Result<ConditionVerdict> {
    if g.has_cables() {
        return Err(Error::Unsupported("sufficient conditions need a tensegrity without cables".into()));
    }
    if clique.iter().any(|&v| v >= g.order()) || !g.is_clique(clique) {
        return Err(invalid("vertex set is not a clique"));
    }
    let rest: Vec<usize> = (0..g.order()).filter(|v| !clique.contains(v)).collect();
    if rest.is_empty() {
        return Ok(ConditionVerdict::Holds);
    }
    let a = ExactMatrix::adjacency(g);
    let invertible = match least_eigenvalue(g)? {
        Scalar::Exact(tau) => {
            let sub = a.shift_diagonal(&tau).principal_submatrix(&rest);
            sub.nullspace().is_empty()
        }
        Scalar::Float(tau) => {
            let mut sub = a.principal_submatrix(&rest).to_f64();
            for i in 0..rest.len() {
                sub[(i, i)] -= tau;
            }
            let sv = sub.clone().svd(false, false).singular_values;
            numerical_rank(&sub) == rest.len() && sv.min() > CONDITION_MARGIN
        }
    };
    Ok(if invertible { ConditionVerdict::Holds } else { ConditionVerdict::Fails })
}

/// The clique condition over every maximal clique; holds if any clique works.
pub fn clique_condition_any(g: &Graph) -> Result<bool> {
    for c in g.maximal_cliques() {
        if clique_condition(g, &c)?.holds() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    fn two_k2() -> Graph {
        Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(neighborhood_condition(&cycle(5).unwrap()).unwrap(), ConditionVerdict::Holds);
        assert_eq!(neighborhood_condition(&complete(4).unwrap()).unwrap(), ConditionVerdict::Holds);
        assert_eq!(neighborhood_condition(&two_k2()).unwrap(), ConditionVerdict::FailsAt(0));
    }

    #[test]
    fn clique_examples() {
        let k4 = complete(4).unwrap();
        assert!(clique_condition(&k4, &[0, 1, 2, 3]).unwrap().holds());
        assert_eq!(clique_condition(&two_k2(), &[0, 1]).unwrap(), ConditionVerdict::Fails);
        assert!(clique_condition(&two_k2(), &[0, 2]).is_err());
        // split: clique {0,1,2}, independent {3,4} attached to 0 and 1
        let split = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (4, 1)]).unwrap();
        assert!(clique_condition(&split, &[0, 1, 2]).unwrap().holds());
    }
}
