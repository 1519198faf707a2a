//! Reading and writing graph6.

use eigenframe::graph::{emit_graph6, parse_graph6, parse_graph6_lines, petersen};

fn main() -> eigenframe::Result<()> {
    let s = emit_graph6(&petersen());
    println!("Petersen: {s}");
    let g = parse_graph6(&s)?;
    println!("{} vertices, {} edges, same graph: {}", g.order(), g.edge_count(), g.same_structure(&petersen()));

    let batch = parse_graph6_lines("A_\nBw\nCF\n\nCr\n")?;
    for g in &batch {
        println!("{:>3} -> {} vertices, {} edges", emit_graph6(g), g.order(), g.edge_count());
    }
    match parse_graph6("A~") {
        Err(e) => println!("A~ rejected: {e}"),
        Ok(_) => println!("A~ accepted"),
    }
    Ok(())
}
