//! The dilogarithm potential V(z) on edge assignments of the reduced
//! graph, its analytic gradient, and the combinatorial residual system.
//!
//! Each live census entry (ν, μ) contributes
//!
//!   V_{νμ}(z) = ε(ν,μ) · ( Li₂( (z(φ)/z(ψ))^{ε(ν,μ)} ) - π²/6 ),
//!
//! and the edge classes add the linear term -2πi Σ ε(φ) log z(φ) over the
//! unknown edges. Pinned edges carry z = 1. The stationary equations
//! z(φ)·∂V/∂z(φ) = 0 (mod 2πi) are the hyperbolicity equations; their
//! multiplicative form — one product of (1 - shape^{±1}) factors per
//! unknown edge, numerator for ψ-side incidences, denominator for φ-side,
//! with absent neighbors simply missing — is what `residual_system`
//! evaluates, so comparing it with the gradient is a genuine consistency
//! check of two evaluation routes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dilog::li2;
use crate::error::{Error, Result};
use crate::reduced::ReducedGraph;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;
const PI2_6: f64 = PI * PI / 6.0;

/// One dilogarithm term of the potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialTerm {
    pub nu: usize,
    pub face: usize,
    /// ε(ν,μ)
    pub sign: i8,
    pub phi: usize,
    pub psi: usize,
}

/// z: ℰ → ℂ with z = 1 on the pinned edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeAssignment {
    pub z: Vec<Complex64>,
}

impl EdgeAssignment {
    /// All-ones assignment (the pinned values everywhere).
    pub fn ones(n_edges: usize) -> Self {
        EdgeAssignment { z: vec![Complex64::new(1.0, 0.0); n_edges] }
    }

    pub fn validate(&self, g: &ReducedGraph) -> Result<()> {
        for (e, z) in self.z.iter().enumerate() {
            if z.re == 0.0 && z.im == 0.0 {
                return Err(Error::Config(format!("edge {e} carries z = 0")));
            }
            if g.edges[e].on_boundary && (*z - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
                return Err(Error::Config(format!("pinned edge {e} must carry z = 1, got {z}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialFunction {
    pub terms: Vec<PotentialTerm>,
    /// (edge, ε(φ)) for unknown edges with a nonzero class
    pub linear: Vec<(usize, i8)>,
    /// ℰ ∖ ℱ in construction order: the unknowns of the stationary system
    pub free_edges: Vec<usize>,
    pub n_edges: usize,
}

/// Wrap an angle to (-π, π].
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(TAU);
    if y > PI {
        y -= TAU;
    }
    y
}

impl PotentialFunction {
    /// Assemble the term list from the live census.
    pub fn build(g: &ReducedGraph) -> Result<PotentialFunction> {
        let terms: Vec<PotentialTerm> = g
            .census
            .live()
            .map(|c| PotentialTerm { nu: c.nu, face: c.face, sign: c.sign, phi: c.phi, psi: c.psi })
            .collect();
        if terms.is_empty() {
            return Err(Error::Internal("empty census: nothing to build".into()));
        }
        let free_edges = g.free_edges();
        let linear: Vec<(usize, i8)> = free_edges
            .iter()
            .map(|&e| (e, g.edges[e].eps))
            .filter(|&(_, eps)| eps != 0)
            .collect();
        // every unknown edge must appear in some term or the linear part
        for &e in &free_edges {
            let housed = terms.iter().any(|t| t.phi == e || t.psi == e)
                || linear.iter().any(|&(le, _)| le == e);
            if !housed {
                return Err(Error::Internal(format!("edge {e} appears in no potential term")));
            }
        }
        Ok(PotentialFunction { terms, linear, free_edges, n_edges: g.edges.len() })
    }

    /// The ε-twisted ratio ρ = (z(φ)/z(ψ))^{ε} of one term.
    fn rho(&self, t: &PotentialTerm, z: &EdgeAssignment) -> Complex64 {
        let r = z.z[t.phi] / z.z[t.psi];
        if t.sign >= 0 {
            r
        } else {
            1.0 / r
        }
    }

    fn check_ratio(&self, t: &PotentialTerm, rho: Complex64) -> Result<()> {
        if !rho.is_finite() || rho.norm() < 1e-14 || (rho - 1.0).norm() < 1e-14 {
            return Err(Error::SingularTerm { nu: t.nu, mu: t.face, ratio: format!("{rho}") });
        }
        Ok(())
    }

    /// V(z) on principal branches.
    pub fn eval(&self, z: &EdgeAssignment) -> Result<Complex64> {
        let mut v = Complex64::default();
        for t in &self.terms {
            let rho = self.rho(t, z);
            self.check_ratio(t, rho)?;
            v += t.sign as f64 * (li2(rho) - PI2_6);
        }
        for &(e, eps) in &self.linear {
            v -= Complex64::new(0.0, TAU) * (eps as f64) * z.z[e].ln();
        }
        Ok(v)
    }

    /// z(e)·∂V/∂z(e) for every unknown edge, on principal branches.
    pub fn log_gradient(&self, z: &EdgeAssignment) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::default(); self.free_edges.len()];
        let pos = self.position_map();
        for t in &self.terms {
            let rho = self.rho(t, z);
            self.check_ratio(t, rho)?;
            let l = (Complex64::new(1.0, 0.0) - rho).ln();
            if let Some(&i) = pos.get(&t.psi) {
                out[i] += l;
            }
            if let Some(&i) = pos.get(&t.phi) {
                out[i] -= l;
            }
        }
        for &(e, eps) in &self.linear {
            if let Some(&i) = pos.get(&e) {
                out[i] -= Complex64::new(0.0, TAU * eps as f64);
            }
        }
        Ok(out)
    }

    /// ∂V/∂z(e) for every unknown edge.
    pub fn gradient(&self, z: &EdgeAssignment) -> Result<Vec<Complex64>> {
        let lg = self.log_gradient(z)?;
        Ok(lg.into_iter().zip(self.free_edges.iter()).map(|(v, &e)| v / z.z[e]).collect())
    }

    /// Jacobian of the log-gradient in log coordinates:
    /// ∂(z_e ∂V/∂z_e) / ∂(log z_f).
    pub fn log_jacobian(&self, z: &EdgeAssignment) -> Result<Vec<Vec<Complex64>>> {
        let nf = self.free_edges.len();
        let mut jac = vec![vec![Complex64::default(); nf]; nf];
        let pos = self.position_map();
        for t in &self.terms {
            let rho = self.rho(t, z);
            self.check_ratio(t, rho)?;
            // d Log(1-ρ)/d u_f = -ε ρ/(1-ρ) (δ_{fφ} - δ_{fψ})
            let base = -(t.sign as f64) * rho / (Complex64::new(1.0, 0.0) - rho);
            let iphi = pos.get(&t.phi).copied();
            let ipsi = pos.get(&t.psi).copied();
            for (row, row_sign) in [(ipsi, 1.0), (iphi, -1.0)] {
                if let Some(r) = row {
                    if let Some(f) = iphi {
                        jac[r][f] += row_sign * base;
                    }
                    if let Some(f) = ipsi {
                        jac[r][f] -= row_sign * base;
                    }
                }
            }
        }
        Ok(jac)
    }

    /// Shapes z(φ)/z(ψ) of the live tetrahedra.
    pub fn shapes(&self, z: &EdgeAssignment) -> Vec<(usize, usize, Complex64)> {
        self.terms.iter().map(|t| (t.nu, t.face, z.z[t.phi] / z.z[t.psi])).collect()
    }

    fn position_map(&self) -> std::collections::HashMap<usize, usize> {
        self.free_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    }
}

/// The combinatorial per-edge residuals: the log of the LHS/RHS product
/// of each unknown edge's relation, imaginary part wrapped to (-π, π].
/// Zero exactly when the relation holds.
pub fn residual_system(
    g: &ReducedGraph,
    v: &PotentialFunction,
    z: &EdgeAssignment,
) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(v.free_edges.len());
    for &e in &v.free_edges {
        let mut log_sum = Complex64::default();
        for c in g.census.live() {
            if c.phi != e && c.psi != e {
                continue;
            }
            let r = z.z[c.phi] / z.z[c.psi];
            let rho = if c.sign >= 0 { r } else { 1.0 / r };
            let f = Complex64::new(1.0, 0.0) - rho;
            if f.norm() < 1e-14 || !f.is_finite() {
                return Err(Error::SingularTerm { nu: c.nu, mu: c.face, ratio: format!("{rho}") });
            }
            if c.psi == e {
                log_sum += f.ln();
            } else {
                log_sum -= f.ln();
            }
        }
        out.push(Complex64::new(log_sum.re, wrap_angle(log_sum.im)));
    }
    Ok(out)
}

/// Worst difference between the combinatorial residual and the analytic
/// log-gradient, reduced mod 2πi.
pub fn residual_gradient_gap(
    g: &ReducedGraph,
    v: &PotentialFunction,
    z: &EdgeAssignment,
) -> Result<f64> {
    let res = residual_system(g, v, z)?;
    let lg = v.log_gradient(z)?;
    let mut worst = 0.0f64;
    for (r, gl) in res.iter().zip(lg.iter()) {
        worst = worst.max((r.re - gl.re).abs()).max(wrap_angle(r.im - gl.im).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basepoint::choose_base_point;
    use crate::diagram::KnotDiagram;
    use crate::reduced::build_reduced_graph;
    use rand::{Rng, SeedableRng};

    fn setup(word: &str) -> (ReducedGraph, PotentialFunction) {
        let d = KnotDiagram::from_braid(word).unwrap();
        let bp = choose_base_point(&d).unwrap();
        let g = build_reduced_graph(&d, &bp).unwrap();
        let v = PotentialFunction::build(&g).unwrap();
        (g, v)
    }

    fn random_assignment(g: &ReducedGraph, rng: &mut rand_chacha::ChaCha8Rng) -> EdgeAssignment {
        let mut z = EdgeAssignment::ones(g.edges.len());
        for &e in &g.free_edges() {
            let r = rng.gen_range(0.5..2.0);
            let th = rng.gen_range(-3.0..3.0);
            z.z[e] = Complex64::from_polar(r, th);
        }
        z
    }

    #[test]
    fn term_count_matches_census() {
        for word in ["s1 -s2 s1 -s2", "s1 s1 s1 -s2 s1 -s2"] {
            let (g, v) = setup(word);
            assert_eq!(v.terms.len(), g.census.live_count(), "{word}");
        }
        // alternating input: no linear part
        let (_, v) = setup("s1 -s2 s1 -s2");
        assert!(v.linear.is_empty());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (g, v) = setup("s1 s1 s1 -s2 s1 -s2");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let h = 1e-6;
        let mut checked = 0;
        let mut attempts = 0;
        while checked < 100 && attempts < 10000 {
            attempts += 1;
            let z = random_assignment(&g, &mut rng);
            let Ok(grad) = v.gradient(&z) else { continue };
            let mut ok = true;
            for (i, &e) in v.free_edges.iter().enumerate() {
                let mut zp = z.clone();
                zp.z[e] += h;
                let mut zm = z.clone();
                zm.z[e] -= h;
                let (Ok(vp), Ok(vm)) = (v.eval(&zp), v.eval(&zm)) else {
                    ok = false;
                    break;
                };
                let fd = (vp - vm) / (2.0 * h);
                if (fd - grad[i]).norm() > 1e-6 * grad[i].norm().max(1.0) {
                    // a principal-branch cut runs between the stencil
                    // points; resample
                    ok = false;
                    break;
                }
            }
            if ok {
                checked += 1;
            }
        }
        assert_eq!(checked, 100, "could not verify 100 clean points");
    }

    #[test]
    fn residual_matches_gradient_mod_2pi() {
        for word in ["s1 -s2 s1 -s2", "s1 s1 s1 -s2 s1 -s2"] {
            let (g, v) = setup(word);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
            let mut checked = 0;
            while checked < 100 {
                let z = random_assignment(&g, &mut rng);
                match residual_gradient_gap(&g, &v, &z) {
                    Ok(gap) => {
                        assert!(gap < 1e-8, "{word}: gap {gap}");
                        checked += 1;
                    }
                    Err(_) => continue,
                }
            }
        }
    }

    #[test]
    fn singular_ratio_is_reported() {
        let (g, v) = setup("s1 -s2 s1 -s2");
        let z = EdgeAssignment::ones(g.edges.len()); // every ratio becomes 1
        assert!(matches!(v.eval(&z), Err(Error::SingularTerm { .. })));
    }

    #[test]
    fn real_ratio_point_has_no_volume() {
        // every shape real: each tetrahedron is flat, D vanishes, and the
        // only contribution to Im V is the principal cut of the ratios
        // that land on [1, ∞)
        let (g, v) = setup("s1 -s2 s1 -s2");
        let mut z = EdgeAssignment::ones(g.edges.len());
        for &e in &v.free_edges {
            z.z[e] = Complex64::new(2.0, 0.0);
        }
        for (_, _, r) in v.shapes(&z) {
            assert_eq!(r.im, 0.0);
            assert_eq!(crate::dilog::bloch_wigner(r), 0.0);
        }
        // and with ratios kept off the cut the potential is honestly real
        for &e in &v.free_edges {
            z.z[e] = Complex64::new(0.6, 0.0);
        }
        let mut on_cut = false;
        for t in &v.terms {
            let r = z.z[t.phi] / z.z[t.psi];
            let rho = if t.sign >= 0 { r } else { 1.0 / r };
            if rho.re >= 1.0 {
                on_cut = true;
            }
        }
        if !on_cut {
            assert!(v.eval(&z).unwrap().im.abs() < 1e-12);
        }
    }
}
