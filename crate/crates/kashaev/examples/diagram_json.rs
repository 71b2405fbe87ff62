//! Parse a braid word, emit the canonical JSON of the diagram, base
//! point, reduced graph and census, and round-trip it through a PD code.
//!
//!     cargo run --release --example diagram_json

use kashaev::basepoint::choose_base_point;
use kashaev::diagram::KnotDiagram;
use kashaev::pd::PdCode;
use kashaev::reduced::build_reduced_graph;

fn main() -> kashaev::Result<()> {
    let d = KnotDiagram::from_braid("s1 -s2 s1 -s2")?;
    let bp = choose_base_point(&d)?;
    let g = build_reduced_graph(&d, &bp)?;

    println!("diagram:        {}", serde_json::to_string(&d)?);
    println!("base point:     {}", serde_json::to_string(&bp)?);
    println!("reduced graph:  {}", serde_json::to_string(&g)?);

    let pd = PdCode::from_diagram(&d);
    println!("PD code:        {}", serde_json::to_string(&pd)?);
    let back = pd.to_braid()?;
    println!("recovered word: {back}");

    let d2: KnotDiagram = serde_json::from_str(&serde_json::to_string(&d)?)?;
    assert_eq!(d, d2, "JSON round trip must reproduce the structure");
    println!("JSON round trip: identical");
    Ok(())
}
