//! Kashaev invariants and hyperbolic volumes of knots, computed from
//! closed-braid diagrams.
//!
//! The pipeline has two independent halves that this crate ties together:
//!
//! 1. **State sums.** The Kashaev invariant ⟨K⟩_N is computed exactly at
//!    q = exp(2πi/N), either by the brute-force state sum over all edge
//!    colourings ([`statesum::full_invariant`], a small-N oracle) or by
//!    the reduced sum over simple states indexed by the edges of the
//!    reduced graph ([`statesum::reduced_invariant`]).
//! 2. **Geometry.** The same reduced graph drives a dilogarithm potential
//!    function whose stationary points solve the hyperbolicity equations
//!    of the knot complement; Newton iteration with restarts finds the
//!    geometric solution and Im V₀ gives the hyperbolic volume
//!    ([`solver::newton_solve`]).
//!
//! [`asymptotics`] fits the exponential growth rate of log|⟨K⟩_N| and
//! compares 2π·slope against the solved volume — a numerical check of the
//! volume conjecture on small hyperbolic knots.
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `kashaev` binary for a scriptable CLI over the same calls.

pub mod asymptotics;
pub mod basepoint;
pub mod dd;
pub mod diagram;
pub mod dilog;
pub mod error;
pub mod pd;
pub mod pipeline;
pub mod potential;
pub mod qarith;
pub mod reduced;
pub mod report;
pub mod solver;
pub mod statesum;

pub use basepoint::{choose_base_point, BasePointDecomposition};
pub use diagram::{BraidWord, KnotDiagram};
pub use dilog::{bloch_wigner, li2};
pub use error::{Error, Result};

pub use potential::{EdgeAssignment, PotentialFunction};
pub use qarith::{Precision, RootOfUnityContext};
pub use solver::{newton_solve, GeometricSolution, NewtonSettings};
pub use reduced::{build_reduced_graph, ReducedGraph, TetrahedronCensus};

