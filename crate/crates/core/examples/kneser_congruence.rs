//! The combinatorial Kneser framework is congruent to the least-eigenvalue one.

use eigenframe::exact::{ExactMatrix, DEFAULT_TOLERANCE};
use eigenframe::framework::{congruent, kneser_framework, least_eigenvalue_framework, BackendChoice, Framework, Matrix};
use eigenframe::graph::kneser;
use num_rational::BigRational;

fn main() -> eigenframe::Result<()> {
    for (n, r) in [(5, 2), (7, 2), (7, 3)] {
        let k = kneser_framework(n, r)?.rescaled_to_unit_diagonal()?;
        let g = kneser(n, r)?;
        let lef = least_eigenvalue_framework(&g, BackendChoice::Exact, DEFAULT_TOLERANCE)?;
        let s = BigRational::new((g.order() as i64).into(), (lef.dimension() as i64).into());
        let scaled = lef.gram().as_exact().map(|e: &ExactMatrix| e.scale(&s)).expect("exact");
        let lef = Framework::from_gram(g.clone(), Matrix::Exact(scaled))?;
        println!("K({n},{r}): d = {}, congruent to (n/d)E: {}", k.dimension(), congruent(&k, &lef)?);
    }
    Ok(())
}
