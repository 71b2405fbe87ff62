//! Build and print the dilogarithm potential of a knot diagram: one term
//! per surviving tetrahedron plus the log-linear part.
//!
//!     cargo run --release --example potential_terms

use kashaev::basepoint::choose_base_point;
use kashaev::diagram::KnotDiagram;
use kashaev::potential::PotentialFunction;
use kashaev::reduced::build_reduced_graph;

fn main() -> kashaev::Result<()> {
    let d = KnotDiagram::from_braid("s1 s1 s2 -s1 s2 s2")?;
    let bp = choose_base_point(&d)?;
    let g = build_reduced_graph(&d, &bp)?;
    let v = PotentialFunction::build(&g)?;
    println!("m = {}, |E| = {} ({} unknowns, {} pinned)", g.m, g.edges.len(),
        g.free_edges().len(), g.pinned_edges().len());
    for t in &v.terms {
        let sgn = if t.sign > 0 { '+' } else { '-' };
        println!(
            "  {sgn} [ Li2( (z{}/z{})^{:+} ) - pi^2/6 ]   (crossing {}, face {})",
            t.phi, t.psi, t.sign, t.nu, t.face
        );
    }
    for (e, eps) in &v.linear {
        println!("  - 2*pi*i * ({eps}) * log z{e}");
    }
    Ok(())
}
