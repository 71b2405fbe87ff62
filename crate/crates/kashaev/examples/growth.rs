//! Fit the exponential growth rate of |⟨4_1⟩_N| and compare 2π·slope
//! against the hyperbolic volume of the figure-eight complement.
//!
//!     cargo run --release --example growth

use kashaev::asymptotics::{fit_growth_windowed, FitModel, Sample};
use kashaev::statesum::figure_eight_oracle;

fn main() -> kashaev::Result<()> {
    let samples: Vec<Sample> =
        (1..=200).map(|n| Ok(Sample::new(n, figure_eight_oracle(n)?))).collect::<kashaev::Result<_>>()?;
    let vol = 2.029883212819307;
    for model in [FitModel::Linear, FitModel::LogCorrected] {
        let fit = fit_growth_windowed(&samples, model, 0.5)?;
        println!(
            "{:?}: 2π·slope = {:.9} (volume {:.9}, ratio {:.6}, ±{:.2e})",
            model, fit.vol_estimate, vol, fit.vol_estimate / vol, fit.confidence_width
        );
        if let Some(b) = fit.log_coeff {
            println!("    log N coefficient: {b:.4}");
        }
    }
    Ok(())
}
