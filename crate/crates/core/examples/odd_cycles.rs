//! Odd cycles have universally completable least-eigenvalue frameworks.
//!
//! Their least eigenvalue `2cos(2πk/n)` is irrational for `n ≥ 5`, so the
//! check runs on the floating backend and reports the singular-value margin
//! of the linear system behind the verdict.

use eigenframe::exact::DEFAULT_TOLERANCE;
use eigenframe::framework::BackendChoice;
use eigenframe::graph::cycle;
use eigenframe::uc::is_universally_completable;

fn main() -> eigenframe::Result<()> {
    println!("{:>4}  {:>18}  {:>5}  {:>7}  {:>9}", "n", "tau", "x_dim", "verdict", "margin");
    for n in (3..=21).step_by(2) {
        let r = is_universally_completable(&cycle(n)?, BackendChoice::Auto, DEFAULT_TOLERANCE)?;
        let margin = r.xspace.margin.map_or("exact".to_string(), |m| format!("{m:.3e}"));
        println!("{n:>4}  {:>18}  {:>5}  {:>7}  {margin:>9}", r.spectrum.tau.to_string(), r.xspace.dim(), r.verdict.to_string());
    }
    Ok(())
}
