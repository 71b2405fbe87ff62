//! Newton iteration on the stationary system of the potential, with
//! deterministic random restarts, geometricity certification and the
//! volume extraction.
//!
//! The unknowns are u(φ) = log z(φ) on ℰ ∖ ℱ. The residual is the
//! log-gradient z∂V/∂z with its imaginary part wrapped to (-π, π], so a
//! zero is a stationary point of some branch V₀ of V. At a converged
//! point the branch offsets K(φ) = Im(z∂V/∂z)/2π are integers; the
//! reported volume is
//!
//!   Im V₀ = Im V - 2π Σ K(φ) log|z(φ)|,
//!
//! which equals Σ D(shape) at any stationary point — the two routes are
//! computed independently and cross-checked by the caller.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dilog::bloch_wigner;
use crate::error::{Error, Result};
use crate::potential::{wrap_angle, EdgeAssignment, PotentialFunction};
use crate::reduced::{ReducedGraph, VertexKind};

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NewtonSettings {
    pub tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        NewtonSettings { tol: 1e-12, max_iter: 100, restarts: 64, seed: 0x6b6e6f74 }
    }
}

/// One ideal tetrahedron of the solved structure.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Shape {
    pub nu: usize,
    pub face: usize,
    pub value: Complex64,
    /// D(value), its hyperbolic volume
    pub volume: f64,
}

/// A critical point of some branch of V.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub z: EdgeAssignment,
    pub shapes: Vec<Shape>,
    /// Im V₀ on the branch stationary here
    pub im_v: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub geometric: bool,
}

/// A solved stationary point together with its diagnostics. `geometric`
/// records whether every shape has positive imaginary part; the strict
/// [`newton_solve`] only returns solutions with the flag set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeometricSolution {
    /// all shapes strictly in the upper half plane
    pub geometric: bool,
    pub z0: EdgeAssignment,
    pub shapes: Vec<Shape>,
    /// Im V₀(z₀)
    pub volume: f64,
    /// Σ D(shape): must agree with `volume`
    pub bloch_wigner_sum: f64,
    pub residual_norm: f64,
    pub newton_iterations: usize,
    /// worst deviation of the edge products Π z_{νμ} over full crossings
    pub edge_product_dev: f64,
    /// worst deviation of the interior face-class products
    pub face_product_dev: f64,
    /// worst deviation of the two cusp conditions
    pub cusp_condition_dev: f64,
    /// other critical points seen during the restarts, best first
    pub competitors: Vec<CriticalPoint>,
}

fn assignment_from_logs(v: &PotentialFunction, u: &[Complex64]) -> EdgeAssignment {
    let mut z = EdgeAssignment::ones(v.n_edges);
    for (i, &e) in v.free_edges.iter().enumerate() {
        z.z[e] = u[i].exp();
    }
    z
}

fn wrapped_residual(v: &PotentialFunction, z: &EdgeAssignment) -> Result<Vec<Complex64>> {
    Ok(v.log_gradient(z)?
        .into_iter()
        .map(|w| Complex64::new(w.re, wrap_angle(w.im)))
        .collect())
}

fn norm_inf(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Damped Newton from one start vector; None if it fails to converge.
fn newton_from(
    v: &PotentialFunction,
    u0: Vec<Complex64>,
    settings: &NewtonSettings,
) -> Option<(EdgeAssignment, f64, usize)> {
    let nf = v.free_edges.len();
    let mut u = u0;
    let mut z = assignment_from_logs(v, &u);
    let mut f = wrapped_residual(v, &z).ok()?;
    let mut fnorm = norm_inf(&f);
    for iter in 0..settings.max_iter {
        if fnorm < settings.tol {
            return Some((z, fnorm, iter));
        }
        let jac = v.log_jacobian(&z).ok()?;
        let mut a = nalgebra::DMatrix::<Complex64>::zeros(nf, nf);
        let mut b = nalgebra::DVector::<Complex64>::zeros(nf);
        for r in 0..nf {
            b[r] = -f[r];
            for c in 0..nf {
                a[(r, c)] = jac[r][c];
            }
        }
        let step = a.lu().solve(&b)?;
        // backtracking line search on the wrapped residual
        let mut scale = 1.0f64;
        let mut accepted = false;
        for _ in 0..40 {
            let ut: Vec<Complex64> =
                u.iter().zip(step.iter()).map(|(ui, si)| ui + scale * si).collect();
            let zt = assignment_from_logs(v, &ut);
            if let Ok(ft) = wrapped_residual(v, &zt) {
                let fn_t = norm_inf(&ft);
                if fn_t < fnorm * (1.0 - 1e-4 * scale) || fn_t < settings.tol {
                    u = ut;
                    z = zt;
                    f = ft;
                    fnorm = fn_t;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    if fnorm < settings.tol {
        return Some((z, fnorm, settings.max_iter));
    }
    None
}

/// Least-squares seed: every live ratio near exp(iπ/3).
fn regular_seed(g: &ReducedGraph, v: &PotentialFunction) -> Vec<Complex64> {
    let nf = v.free_edges.len();
    let pos: std::collections::HashMap<usize, usize> =
        v.free_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // rows: u(φ) - u(ψ) = iπ/3 over live corners; solve the normal
    // equations for the imaginary parts (real parts stay 0)
    let mut ata = nalgebra::DMatrix::<f64>::zeros(nf, nf);
    let mut atb = nalgebra::DVector::<f64>::zeros(nf);
    for c in g.census.live() {
        let target = std::f64::consts::PI / 3.0;
        let iphi = pos.get(&c.phi).copied();
        let ipsi = pos.get(&c.psi).copied();
        let mut row: Vec<(usize, f64)> = Vec::new();
        if let Some(i) = iphi {
            row.push((i, 1.0));
        }
        if let Some(i) = ipsi {
            row.push((i, -1.0));
        }
        for &(i, ci) in &row {
            atb[i] += ci * target;
            for &(j, cj) in &row {
                ata[(i, j)] += ci * cj;
            }
        }
    }
    for i in 0..nf {
        ata[(i, i)] += 1e-9;
    }
    let im = ata.lu().solve(&atb).unwrap_or_else(|| nalgebra::DVector::zeros(nf));
    (0..nf).map(|i| Complex64::new(0.0, im[i])).collect()
}

fn random_seed(nf: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..nf)
        .map(|_| {
            let r: f64 = rng.gen_range(0.5f64..2.0).ln();
            let th: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            Complex64::new(r, th)
        })
        .collect()
}

/// Volume on the branch stationary at z: Im V - 2π Σ K(φ) log|z(φ)|.
fn branch_volume(v: &PotentialFunction, z: &EdgeAssignment) -> Result<f64> {
    let raw = v.log_gradient(z)?;
    let val = v.eval(z)?;
    let mut im_v0 = val.im;
    for (w, &e) in raw.iter().zip(v.free_edges.iter()) {
        let k = (w.im / TAU).round();
        im_v0 -= TAU * k * z.z[e].norm().ln();
    }
    Ok(im_v0)
}

fn classify(
    v: &PotentialFunction,
    z: EdgeAssignment,
    residual_norm: f64,
    iterations: usize,
) -> Option<CriticalPoint> {
    let shapes: Vec<Shape> = v
        .shapes(&z)
        .into_iter()
        .map(|(nu, face, value)| Shape { nu, face, value, volume: bloch_wigner(value) })
        .collect();
    let geometric = shapes.iter().all(|s| s.value.im > 1e-10);
    let im_v = branch_volume(v, &z).ok()?;
    Some(CriticalPoint { z, shapes, im_v, residual_norm, iterations, geometric })
}

fn dedupe(points: &mut Vec<CriticalPoint>) {
    let mut kept: Vec<CriticalPoint> = Vec::new();
    for p in points.drain(..) {
        let dup = kept.iter().any(|q| {
            p.z.z
                .iter()
                .zip(q.z.z.iter())
                .all(|(a, b)| (a - b).norm() < 1e-6 * (1.0 + a.norm()))
        });
        if !dup {
            kept.push(p);
        }
    }
    *points = kept;
}

/// All critical points found from the seed schedule, deduplicated and
/// sorted by Im V descending.
pub fn critical_points(
    g: &ReducedGraph,
    v: &PotentialFunction,
    settings: &NewtonSettings,
) -> Vec<CriticalPoint> {
    let nf = v.free_edges.len();
    let seeds: Vec<Vec<Complex64>> = {
        let mut s = vec![regular_seed(g, v)];
        let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
        for _ in 1..settings.restarts.max(1) {
            s.push(random_seed(nf, &mut rng));
        }
        s
    };
    let mut points: Vec<CriticalPoint> = seeds
        .into_par_iter()
        .filter_map(|u0| {
            let (z, r, it) = newton_from(v, u0, settings)?;
            classify(v, z, r, it)
        })
        .collect();
    points.sort_by(|a, b| b.im_v.partial_cmp(&a.im_v).unwrap_or(std::cmp::Ordering::Equal));
    dedupe(&mut points);
    points
}

/// Product relations at a solved point (diagnostics for the census and
/// the face partition): edge products around full crossings, interior
/// face-class products, and the two cusp conditions.
fn product_relations(g: &ReducedGraph, z: &EdgeAssignment) -> (f64, f64, f64) {
    let one = Complex64::new(1.0, 0.0);
    let shape = |c: &crate::reduced::CensusEntry| z.z[c.phi] / z.z[c.psi];

    let mut edge_dev = 0.0f64;
    for vtx in &g.vertices {
        if vtx.kind != VertexKind::Full {
            continue;
        }
        let mut prod = one;
        for c in g.census.live().filter(|c| c.nu == vtx.crossing) {
            prod *= shape(c);
        }
        edge_dev = edge_dev.max((prod - one).norm());
    }

    let class_product = |faces: &[usize]| {
        let mut prod = one;
        for c in g.census.live() {
            if faces.contains(&c.face) {
                prod *= shape(c);
            }
        }
        prod
    };
    let mut face_dev = 0.0f64;
    for (li, faces) in g.m_classes.iter().enumerate() {
        if li == 0 || li == g.m_classes.len() - 1 {
            continue;
        }
        face_dev = face_dev.max((class_product(faces) - one).norm());
    }

    let vertex_product = |kind: VertexKind| {
        let mut prod = one;
        for vtx in g.vertices.iter().filter(|v| v.kind == kind) {
            for c in g.census.live().filter(|c| c.nu == vtx.crossing) {
                prod *= shape(c);
            }
        }
        prod
    };
    let m0 = class_product(&g.m_classes[0]);
    let mm1 = class_product(g.m_classes.last().unwrap());
    let cusp_dev = (m0 - vertex_product(VertexKind::X))
        .norm()
        .max((mm1 - vertex_product(VertexKind::Y)).norm());

    (edge_dev, face_dev, cusp_dev)
}

/// Solve the stationary system and certify a geometric solution.
pub fn newton_solve(
    g: &ReducedGraph,
    v: &PotentialFunction,
    settings: &NewtonSettings,
) -> Result<GeometricSolution> {
    let points = critical_points(g, v, settings);
    if points.is_empty() {
        return Err(Error::NoGeometricSolution { restarts: settings.restarts, best_im_v: f64::NAN });
    }
    let best_geometric = points.iter().position(|p| p.geometric);
    let Some(gi) = best_geometric else {
        return Err(Error::NoGeometricSolution {
            restarts: settings.restarts,
            best_im_v: points.first().map(|p| p.im_v).unwrap_or(f64::NAN),
        });
    };
    let chosen = points[gi].clone();
    let competitors: Vec<CriticalPoint> =
        points.into_iter().enumerate().filter(|&(i, _)| i != gi).map(|(_, p)| p).collect();
    Ok(package(g, chosen, competitors))
}

fn package(
    g: &ReducedGraph,
    chosen: CriticalPoint,
    competitors: Vec<CriticalPoint>,
) -> GeometricSolution {
    let bw: f64 = chosen.shapes.iter().map(|s| s.volume).sum();
    let (edge_dev, face_dev, cusp_dev) = product_relations(g, &chosen.z);
    GeometricSolution {
        geometric: chosen.geometric,
        volume: chosen.im_v,
        bloch_wigner_sum: bw,
        z0: chosen.z,
        shapes: chosen.shapes,
        residual_norm: chosen.residual_norm,
        newton_iterations: chosen.iterations,
        edge_product_dev: edge_dev,
        face_product_dev: face_dev,
        cusp_condition_dev: cusp_dev,
        competitors,
    }
}

/// Like [`newton_solve`] but falls back to the critical point with the
/// largest Im V when no geometric one is found.
pub fn newton_solve_best(
    g: &ReducedGraph,
    v: &PotentialFunction,
    settings: &NewtonSettings,
) -> Result<GeometricSolution> {
    let points = critical_points(g, v, settings);
    if points.is_empty() {
        return Err(Error::NoGeometricSolution { restarts: settings.restarts, best_im_v: f64::NAN });
    }
    let gi = points.iter().position(|p| p.geometric).unwrap_or(0);
    let chosen = points[gi].clone();
    let competitors: Vec<CriticalPoint> =
        points.into_iter().enumerate().filter(|&(i, _)| i != gi).map(|(_, p)| p).collect();
    Ok(package(g, chosen, competitors))
}

/// Newton from many random seeds; every distinct critical point with its
/// Im V, sorted descending. A numerical probe of the expectation that no
/// stationary branch value exceeds the geometric volume.
pub fn competitor_scan(
    g: &ReducedGraph,
    v: &PotentialFunction,
    samples: usize,
    seed: u64,
) -> Vec<CriticalPoint> {
    let settings = NewtonSettings { restarts: samples, seed, ..NewtonSettings::default() };
    critical_points(g, v, &settings)
}
