//! A framework dominated by, but not congruent to, a least-eigenvalue framework.
//!
//! Two disjoint edges have a one-dimensional `𝒳`. Adding a multiple of its
//! generator to `E_τ` keeps every closed-neighborhood inner product and moves
//! the others.

use eigenframe::exact::DEFAULT_TOLERANCE;
use eigenframe::framework::{congruent, dominates, least_eigenvalue_framework, BackendChoice};
use eigenframe::graph::Graph;
use eigenframe::uc::{dominated_frameworks, gershgorin_scale, xspace, Phi};

fn print(label: &str, rows: Vec<String>, n: usize) {
    println!("{label}:");
    for row in rows.chunks(n) {
        println!("  {}", row.iter().map(|s| format!("{s:>5}")).collect::<Vec<_>>().join(" "));
    }
}

fn main() -> eigenframe::Result<()> {
    let g = Graph::from_edges(4, [(0, 1), (2, 3)])?;
    let p = least_eigenvalue_framework(&g, BackendChoice::Exact, DEFAULT_TOLERANCE)?;
    let xs = xspace(&g, p.spectrum().expect("least eigenvalue"))?;
    println!("tau = {}, dim X = {}", p.spectrum().unwrap().tau, xs.dim());
    let x = &xs.basis[0];
    print("X", x.render(), 4);

    let phi = Phi::for_framework(&p)?;
    let r = phi.phi_inverse(x)?;
    print("R = Phi^-1(X)", r.render(), phi.dimension());

    let c = gershgorin_scale(x).expect("nonzero X");
    let q = dominated_frameworks(&p, x, Some(c.clone()))?;
    print("E", p.gram().render(), 4);
    print(&format!("E + {c} X"), q.gram().render(), 4);
    println!("dominates: {}, congruent: {}, dimension {} -> {}", dominates(&p, &q)?, congruent(&p, &q)?, p.dimension(), q.dimension());
    Ok(())
}
