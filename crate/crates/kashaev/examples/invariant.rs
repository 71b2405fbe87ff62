//! Compute the Kashaev invariant ⟨K⟩_N of the figure-eight knot by all
//! three routes and print them side by side.
//!
//!     cargo run --release --example invariant

use kashaev::basepoint::choose_base_point;
use kashaev::diagram::KnotDiagram;
use kashaev::qarith::Precision;
use kashaev::reduced::build_reduced_graph;
use kashaev::statesum::{figure_eight_oracle, full_invariant, reduced_invariant};

fn main() -> kashaev::Result<()> {
    let d = KnotDiagram::from_braid("s1 -s2 s1 -s2")?;
    let bp = choose_base_point(&d)?;
    let g = build_reduced_graph(&d, &bp)?;

    println!("{:>3}  {:>24}  {:>24}  {:>24}", "N", "full", "reduced", "closed form");
    for n in 1..=6 {
        let full = full_invariant(&d, n, Precision::Standard)?;
        let red = reduced_invariant(&d, &bp, &g, n, Precision::Standard)?;
        let oracle = figure_eight_oracle(n)?;
        println!(
            "{n:>3}  {:>11.6}{:+.6}i  {:>11.6}{:+.6}i  {:>11.6}{:+.6}i",
            full.re, full.im, red.re, red.im, oracle.re, oracle.im
        );
    }
    Ok(())
}
