//! Newton from many random seeds: every stationary branch value found,
//! compared against the geometric volume.
//!
//!     cargo run --release --example competitors

use kashaev::basepoint::choose_base_point;
use kashaev::diagram::KnotDiagram;
use kashaev::potential::PotentialFunction;
use kashaev::reduced::build_reduced_graph;
use kashaev::solver::competitor_scan;

fn main() -> kashaev::Result<()> {
    let d = KnotDiagram::from_braid("s1 -s2 s1 -s2")?;
    let bp = choose_base_point(&d)?;
    let g = build_reduced_graph(&d, &bp)?;
    let v = PotentialFunction::build(&g)?;
    let pts = competitor_scan(&g, &v, 200, 7);
    println!("{} distinct critical points from 200 seeds:", pts.len());
    for p in &pts {
        println!(
            "  Im V = {:+.12} (geometric: {}, residual {:.1e})",
            p.im_v, p.geometric, p.residual_norm
        );
    }
    Ok(())
}
