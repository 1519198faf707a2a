//! Optimal vector colorings of Kneser graphs and their uniqueness.

use eigenframe::color::{is_one_walk_regular, is_uniquely_vector_colorable_1wr, validate_coloring};
use eigenframe::graph::kneser;

fn main() -> eigenframe::Result<()> {
    for (n, r) in [(5, 2), (7, 2), (7, 3)] {
        let g = kneser(n, r)?;
        let cert = is_one_walk_regular(&g);
        let res = is_uniquely_vector_colorable_1wr(&g)?;
        let check = validate_coloring(&g, &res.coloring.gram, &res.coloring.t)?;
        println!(
            "K({n},{r}): {} vertices, 1-walk-regular up to A^{} = {}, t = {}, {:?}, uvc = {}",
            g.order(),
            cert.max_power,
            cert.verdict,
            res.coloring.t,
            check,
            res.is_uvc()
        );
    }
    Ok(())
}
