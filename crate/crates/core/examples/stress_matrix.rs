//! The spherical stress matrix `A − τI` certifies the least-eigenvalue framework.

use eigenframe::exact::DEFAULT_TOLERANCE;
use eigenframe::framework::{canonical_stress, least_eigenvalue_framework, BackendChoice};
use eigenframe::graph::{complete, cycle, petersen};

fn main() -> eigenframe::Result<()> {
    for (name, g) in [("K3", complete(3)?), ("C4", cycle(4)?), ("Petersen", petersen())] {
        let p = least_eigenvalue_framework(&g, BackendChoice::Exact, DEFAULT_TOLERANCE)?;
        let z = canonical_stress(&g, p.spectrum().expect("least eigenvalue"))?;
        let c = z.check(&p)?;
        println!(
            "{name:<9} corank {} dim {}  psd {} support {} signs {} ZP=0 {} corank {}",
            z.corank(),
            p.dimension(),
            c.psd,
            c.support,
            c.signs,
            c.annihilates,
            c.corank
        );
    }
    Ok(())
}
