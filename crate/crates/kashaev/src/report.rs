//! Machine-readable output records for the CLI. Every record carries a
//! versioned `schema` tag; identical inputs and seeds give byte-identical
//! JSON apart from the `timestamp` field.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{FitModel, GrowthFit, Sample};
use crate::solver::{CriticalPoint, GeometricSolution};

fn timestamp() -> String {
    match std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH) {
        Ok(d) => format!("{}", d.as_secs()),
        Err(_) => "0".into(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantReport {
    pub schema: String,
    pub input: String,
    pub n: usize,
    pub method: String,
    pub precision: String,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub log_abs: f64,
    pub timestamp: String,
}

impl InvariantReport {
    pub fn new(input: &str, n: usize, method: &str, precision: &str, v: Complex64) -> Self {
        InvariantReport {
            schema: "kashaev/invariant-v1".into(),
            input: input.into(),
            n,
            method: method.into(),
            precision: precision.into(),
            re: v.re,
            im: v.im,
            abs: v.norm(),
            log_abs: v.norm().ln(),
            timestamp: timestamp(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShapeReport {
    pub nu: usize,
    pub face: usize,
    pub re: f64,
    pub im: f64,
    pub volume: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompetitorReport {
    pub im_v: f64,
    pub geometric: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VolumeReport {
    pub schema: String,
    pub input: String,
    pub base_edge: usize,
    pub geometric: bool,
    pub volume: f64,
    pub bloch_wigner_sum: f64,
    pub residual: f64,
    pub newton_iterations: usize,
    pub edge_product_dev: f64,
    pub face_product_dev: f64,
    pub cusp_condition_dev: f64,
    pub shapes: Vec<ShapeReport>,
    pub competitors: Vec<CompetitorReport>,
    pub timestamp: String,
}

impl VolumeReport {
    pub fn new(input: &str, base_edge: usize, sol: &GeometricSolution) -> Self {
        VolumeReport {
            schema: "kashaev/volume-v1".into(),
            input: input.into(),
            base_edge,
            geometric: sol.geometric,
            volume: sol.volume,
            bloch_wigner_sum: sol.bloch_wigner_sum,
            residual: sol.residual_norm,
            newton_iterations: sol.newton_iterations,
            edge_product_dev: sol.edge_product_dev,
            face_product_dev: sol.face_product_dev,
            cusp_condition_dev: sol.cusp_condition_dev,
            shapes: sol
                .shapes
                .iter()
                .map(|s| ShapeReport {
                    nu: s.nu,
                    face: s.face,
                    re: s.value.re,
                    im: s.value.im,
                    volume: s.volume,
                })
                .collect(),
            competitors: sol
                .competitors
                .iter()
                .map(|c| CompetitorReport {
                    im_v: c.im_v,
                    geometric: c.geometric,
                    residual: c.residual_norm,
                })
                .collect(),
            timestamp: timestamp(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub input: String,
    pub method: String,
    pub model: FitModel,
    pub n_max: usize,
    pub samples: Vec<Sample>,
    pub truncated: bool,
    pub fit: GrowthFit,
    pub vol_estimate: f64,
    pub vol_geometric: f64,
    pub ratio: f64,
    pub timestamp: String,
}

impl VerifyReport {
    pub fn new(
        input: &str,
        method: &str,
        n_max: usize,
        samples: Vec<Sample>,
        truncated: bool,
        fit: GrowthFit,
        vol_geometric: f64,
    ) -> Self {
        VerifyReport {
            schema: "kashaev/verify-v1".into(),
            input: input.into(),
            method: method.into(),
            model: fit.model,
            n_max,
            vol_estimate: fit.vol_estimate,
            vol_geometric,
            ratio: fit.vol_estimate / vol_geometric,
            samples,
            truncated,
            fit,
            timestamp: timestamp(),
        }
    }

    /// CSV of the sample table: `n,re,im,abs,log_abs`.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("n,re,im,abs,log_abs\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{:e},{:e},{:e},{:e}\n",
                s.n, s.re, s.im, s.abs, s.log_abs
            ));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialReport {
    pub schema: String,
    pub input: String,
    pub base_edge: usize,
    pub m: usize,
    pub edges: usize,
    pub free_edges: Vec<usize>,
    pub pinned_edges: Vec<usize>,
    pub terms: Vec<PotentialTermReport>,
    pub linear: Vec<(usize, i8)>,
    pub diagram: crate::diagram::KnotDiagram,
    pub reduced_graph: crate::reduced::ReducedGraph,
    pub base: crate::basepoint::BasePointDecomposition,
    pub timestamp: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialTermReport {
    pub nu: usize,
    pub face: usize,
    pub sign: i8,
    pub phi: usize,
    pub psi: usize,
}

impl PotentialReport {
    pub fn new(
        input: &str,
        d: &crate::diagram::KnotDiagram,
        bp: &crate::basepoint::BasePointDecomposition,
        g: &crate::reduced::ReducedGraph,
        v: &crate::potential::PotentialFunction,
    ) -> Self {
        PotentialReport {
            schema: "kashaev/potential-v1".into(),
            input: input.into(),
            base_edge: bp.base_edge,
            m: g.m,
            edges: g.edges.len(),
            free_edges: g.free_edges(),
            pinned_edges: g.pinned_edges(),
            terms: v
                .terms
                .iter()
                .map(|t| PotentialTermReport {
                    nu: t.nu,
                    face: t.face,
                    sign: t.sign,
                    phi: t.phi,
                    psi: t.psi,
                })
                .collect(),
            linear: v.linear.clone(),
            diagram: d.clone(),
            reduced_graph: g.clone(),
            base: bp.clone(),
            timestamp: timestamp(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema: String,
    pub n: usize,
    pub per_identity: [f64; 8],
    pub max_deviation: f64,
    pub passed: bool,
    pub timestamp: String,
}

impl SelftestReport {
    pub fn new(rep: &crate::qarith::Lemma3Report, tolerance: f64) -> Self {
        SelftestReport {
            schema: "kashaev/selftest-v1".into(),
            n: rep.n,
            per_identity: rep.per_identity,
            max_deviation: rep.max_deviation,
            passed: rep.max_deviation < tolerance,
            timestamp: timestamp(),
        }
    }
}

/// Competitor-scan record for the `volume --scan` output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub input: String,
    pub samples: usize,
    pub points: Vec<CompetitorReport>,
    pub timestamp: String,
}

impl ScanReport {
    pub fn new(input: &str, samples: usize, pts: &[CriticalPoint]) -> Self {
        ScanReport {
            schema: "kashaev/scan-v1".into(),
            input: input.into(),
            samples,
            points: pts
                .iter()
                .map(|c| CompetitorReport {
                    im_v: c.im_v,
                    geometric: c.geometric,
                    residual: c.residual_norm,
                })
                .collect(),
            timestamp: timestamp(),
        }
    }
}
