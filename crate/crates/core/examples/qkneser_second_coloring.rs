//! The q-Kneser graph qK(4,2) over GF(2) has two distinct optimal vector colorings.

use eigenframe::color::{is_uniquely_vector_colorable_1wr, validate_coloring};
use eigenframe::graph::q_kneser;

fn main() -> eigenframe::Result<()> {
    let g = q_kneser(2, 4, 2)?;
    let res = is_uniquely_vector_colorable_1wr(&g)?;
    println!("{} vertices, degree {:?}, t = {}", g.order(), g.regular_degree(), res.coloring.t);
    println!("dim X = {:?}, verdict {:?}", res.x_dim, res.verdict);
    println!("first coloring  {}", res.coloring.gram_digest());
    if let Some(second) = &res.second {
        let check = validate_coloring(&g, &second.gram, &second.t)?;
        println!("second coloring {} at t = {}: {:?}", second.gram_digest(), second.t, check);
        let moved = (0..g.order())
            .flat_map(|i| (i + 1..g.order()).map(move |j| (i, j)))
            .filter(|&(i, j)| res.coloring.gram.entry(i, j) != second.gram.entry(i, j))
            .count();
        println!("{moved} non-adjacent pairs change their inner product");
    }
    Ok(())
}
