//! End-to-end drivers tying the modules together: text input to diagram,
//! diagram to solved volume, diagram to invariant values.
//!
//! The volume driver walks the valid base points in curve order and
//! returns the first one whose stationary system has a solution with all
//! shapes in the upper half plane. Some presentations have no such
//! interior solution — the complete structure wants flat or degenerate
//! tetrahedra — and then the driver falls back to the volume-maximizing
//! stationary point across all base points, flagged `geometric: false`;
//! its Im V₀ still carries the volume.

use serde::{Deserialize, Serialize};

use crate::basepoint::{valid_base_points, BasePointDecomposition};
use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::pd::PdCode;
use crate::potential::PotentialFunction;
use crate::reduced::{build_reduced_graph, ReducedGraph};
use crate::solver::{newton_solve_best, GeometricSolution, NewtonSettings};

/// Parse either a braid word (`s1 -s2 ...`) or a PD code (`X[...] ...`).
pub fn parse_input(text: &str) -> Result<KnotDiagram> {
    let t = text.trim();
    if t.contains('[') || t.to_ascii_lowercase().starts_with('x') {
        PdCode::parse(t)?.to_diagram()
    } else {
        KnotDiagram::from_braid(t)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolvedDiagram {
    pub base: BasePointDecomposition,
    pub graph: ReducedGraph,
    pub potential: PotentialFunction,
    pub solution: GeometricSolution,
}

/// Solve the hyperbolicity system, walking base points until a geometric
/// solution appears; otherwise the best stationary point over all bases.
pub fn solve_volume(d: &KnotDiagram, settings: &NewtonSettings) -> Result<SolvedDiagram> {
    let bases = valid_base_points(d);
    if bases.is_empty() {
        return Err(Error::NoBasePoint(
            "no base point admits the construction on this diagram".into(),
        ));
    }
    let mut best: Option<SolvedDiagram> = None;
    for bp in bases {
        let g = build_reduced_graph(d, &bp)?;
        let v = PotentialFunction::build(&g)?;
        let sol = match newton_solve_best(&g, &v, settings) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let cand = SolvedDiagram { base: bp, graph: g, potential: v, solution: sol };
        if cand.solution.geometric {
            return Ok(cand);
        }
        let better = match &best {
            None => true,
            Some(b) => cand.solution.volume > b.solution.volume,
        };
        if better {
            best = Some(cand);
        }
    }
    best.ok_or(Error::NoGeometricSolution { restarts: settings.restarts, best_im_v: f64::NAN })
}
