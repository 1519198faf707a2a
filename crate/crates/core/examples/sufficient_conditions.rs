//! Sufficient conditions for universal completability next to the exact test.

use eigenframe::exact::DEFAULT_TOLERANCE;
use eigenframe::framework::BackendChoice;
use eigenframe::graph::{complete, cycle, petersen, Graph};
use eigenframe::uc::{is_universally_completable, ConditionFlags};

fn main() -> eigenframe::Result<()> {
    let graphs = vec![
        ("C5", cycle(5)?),
        ("K4", complete(4)?),
        ("Petersen", petersen()),
        ("K4 - e", Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?),
        ("2K2", Graph::from_edges(4, [(0, 1), (2, 3)])?),
        ("split", Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (4, 1)])?),
    ];
    println!("{:<9} {:>12} {:>7} {:>6}  verdict", "graph", "neighborhood", "clique", "split");
    for (name, g) in graphs {
        let f = ConditionFlags::evaluate(&g)?;
        let r = is_universally_completable(&g, BackendChoice::Auto, DEFAULT_TOLERANCE)?;
        println!("{name:<9} {:>12} {:>7} {:>6}  {}", f.neighborhood, f.clique, f.split, r.verdict);
    }
    Ok(())
}
