//! Invariant growth sequences and exponential-rate fits.
//!
//! The volume conjecture predicts log|⟨K⟩_N| ~ (vol/2π)·N, with slowly
//! decaying corrections; empirically the sequences behave like
//! a·N + b·log N + c. [`fit_growth`] fits either model by least squares
//! and reports 2π·a as the volume estimate together with the residuals
//! and a confidence width for the slope.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basepoint::BasePointDecomposition;
use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::qarith::Precision;
use crate::reduced::ReducedGraph;
use crate::statesum;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Σ|(q)_k|², valid for the figure-eight knot only
    Oracle,
    Reduced,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum FitModel {
    Linear,
    #[default]
    LogCorrected,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Sample {
    pub n: usize,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub log_abs: f64,
}

impl Sample {
    pub fn new(n: usize, v: Complex64) -> Sample {
        Sample { n, re: v.re, im: v.im, abs: v.norm(), log_abs: v.norm().ln() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthFit {
    pub model: FitModel,
    /// slope a of log|⟨K⟩_N| = a·N (+ b·log N) + c
    pub slope: f64,
    pub log_coeff: Option<f64>,
    pub intercept: f64,
    /// 2π · slope
    pub vol_estimate: f64,
    pub residual_rms: f64,
    /// 2π · (standard error of the slope)
    pub confidence_width: f64,
    pub window: (usize, usize),
    pub samples_used: usize,
}

/// Exact values ⟨K⟩_N for N = 1..n_max. A per-N budget overrun truncates
/// the series instead of failing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Series {
    pub samples: Vec<Sample>,
    pub truncated: bool,
}

pub fn invariant_series(
    d: &KnotDiagram,
    bp: &BasePointDecomposition,
    g: &ReducedGraph,
    n_max: usize,
    method: Method,
    precision: Precision,
    per_n_budget: f64,
) -> Result<Series> {
    if method == Method::Oracle {
        // the closed form is the figure-eight knot's; refuse elsewhere
        let probe_n = 3;
        let full = statesum::full_invariant(d, probe_n, Precision::Standard)?;
        let oracle = statesum::figure_eight_oracle(probe_n)?;
        if (full - oracle).norm() > 1e-8 * oracle.norm() {
            return Err(Error::Config(
                "the oracle method is the figure-eight closed form; this diagram is not 4_1"
                    .into(),
            ));
        }
    }
    let mut samples = Vec::new();
    let mut truncated = false;
    for n in 1..=n_max {
        let value = match method {
            Method::Oracle => statesum::figure_eight_oracle(n)?,
            Method::Reduced => {
                match statesum::reduced_invariant_budget(d, bp, g, n, precision, per_n_budget) {
                    Ok(v) => v,
                    Err(Error::Budget(_)) => {
                        truncated = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            Method::Full => match statesum::full_invariant_budget(d, n, precision, per_n_budget) {
                Ok(v) => v,
                Err(Error::Budget(_)) => {
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e),
            },
        };
        samples.push(Sample::new(n, value));
    }
    Ok(Series { samples, truncated })
}

/// Least squares on the windowed samples; `window_fraction` keeps the
/// upper part of the N range (0.5 keeps the top half).
pub fn fit_growth_windowed(
    samples: &[Sample],
    model: FitModel,
    window_fraction: f64,
) -> Result<GrowthFit> {
    if !(0.0..=1.0).contains(&window_fraction) {
        return Err(Error::Config("window fraction must be in [0, 1]".into()));
    }
    let usable: Vec<Sample> = samples
        .iter()
        .filter(|s| s.n >= 1 && s.abs > 0.0 && s.log_abs.is_finite())
        .cloned()
        .collect();
    if usable.len() < 4 {
        return Err(Error::Config(format!("need at least 4 usable samples, got {}", usable.len())));
    }
    let n_hi = usable.iter().map(|s| s.n).max().unwrap();
    let n_lo_bound = ((n_hi as f64) * (1.0 - window_fraction)).floor() as usize;
    let win: Vec<Sample> = usable.iter().filter(|s| s.n > n_lo_bound).cloned().collect();
    let win = if win.len() >= 4 { win } else { usable };
    fit_growth(&win, model)
}

pub fn fit_growth(samples: &[Sample], model: FitModel) -> Result<GrowthFit> {
    let rows: Vec<&Sample> = samples.iter().filter(|s| s.log_abs.is_finite()).collect();
    let m = rows.len();
    let p = match model {
        FitModel::Linear => 2,
        FitModel::LogCorrected => 3,
    };
    if m < p + 1 {
        return Err(Error::Config(format!("need at least {} samples, got {m}", p + 1)));
    }
    let design = |s: &Sample| -> Vec<f64> {
        match model {
            FitModel::Linear => vec![s.n as f64, 1.0],
            FitModel::LogCorrected => vec![s.n as f64, (s.n as f64).ln(), 1.0],
        }
    };
    let mut xtx = nalgebra::DMatrix::<f64>::zeros(p, p);
    let mut xty = nalgebra::DVector::<f64>::zeros(p);
    for s in &rows {
        let x = design(s);
        for i in 0..p {
            xty[i] += x[i] * s.log_abs;
            for j in 0..p {
                xtx[(i, j)] += x[i] * x[j];
            }
        }
    }
    let chol = xtx
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Config("rank-deficient design matrix (too few distinct N)".into()))?;
    let beta = chol.solve(&xty);
    let mut rss = 0.0;
    for s in &rows {
        let x = design(s);
        let fitv: f64 = x.iter().zip(beta.iter()).map(|(a, b)| a * b).sum();
        rss += (s.log_abs - fitv).powi(2);
    }
    let dof = (m.saturating_sub(p)).max(1) as f64;
    let sigma2 = rss / dof;
    let cov00 = chol.inverse()[(0, 0)] * sigma2;
    let slope = beta[0];
    let n_lo = rows.iter().map(|s| s.n).min().unwrap();
    let n_hi = rows.iter().map(|s| s.n).max().unwrap();
    Ok(GrowthFit {
        model,
        slope,
        log_coeff: match model {
            FitModel::Linear => None,
            FitModel::LogCorrected => Some(beta[1]),
        },
        intercept: beta[p - 1],
        vol_estimate: TAU * slope,
        residual_rms: (rss / m as f64).sqrt(),
        confidence_width: TAU * cov00.max(0.0).sqrt(),
        window: (n_lo, n_hi),
        samples_used: m,
    })
}
