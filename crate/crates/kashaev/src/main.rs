//! Thin command-line front end over the library: parse → invariant /
//! volume / verify, with stable JSON outputs. Exit codes: 0 success,
//! 2 invalid input or configuration, 3 budget exceeded or no solution.

use clap::{Parser, Subcommand, ValueEnum};
use kashaev::asymptotics::{self, FitModel};
use kashaev::error::Error;
use kashaev::pipeline;
use kashaev::potential::PotentialFunction;
use kashaev::qarith::{Precision, RootOfUnityContext};
use kashaev::reduced::build_reduced_graph;
use kashaev::report::*;
use kashaev::solver::{competitor_scan, NewtonSettings};
use kashaev::statesum;

#[derive(Parser)]
#[command(name = "kashaev", version, about = "Kashaev invariants and hyperbolic volumes of knots")]
struct Cli {
    /// worker threads (also honors KASHAEV_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// write the JSON report here instead of stdout
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Full,
    Reduced,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Std,
    Dd,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Precision {
        match p {
            PrecisionArg::Std => Precision::Standard,
            PrecisionArg::Dd => Precision::DoubleDouble,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Linear,
    LogCorrected,
}

#[derive(Subcommand)]
enum Command {
    /// Compute ⟨K⟩_N exactly
    Invariant {
        #[arg(long)]
        input: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "reduced")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "std")]
        precision: PrecisionArg,
        /// state budget before refusing
        #[arg(long, default_value_t = 2e9)]
        budget: f64,
    },
    /// Solve the hyperbolicity equations and report the volume
    Volume {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0x6b6e6f74)]
        seed: u64,
    },
    /// Shapes of the solved triangulation (volume subcommand's shape list)
    Shapes {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0x6b6e6f74)]
        seed: u64,
    },
    /// Compare the invariant growth rate against the solved volume
    Verify {
        #[arg(long)]
        input: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "log-corrected")]
        model: ModelArg,
        /// auto picks the figure-eight closed form when it applies
        #[arg(long, value_enum, default_value = "reduced")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "std")]
        precision: PrecisionArg,
        /// per-N state budget
        #[arg(long, default_value_t = 2e9)]
        budget: f64,
        /// write the sample table as CSV here
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0x6b6e6f74)]
        seed: u64,
    },
    /// Emit the potential function term list (with the diagram, base
    /// point, reduced graph and census as JSON)
    EmitPotential {
        #[arg(long)]
        input: String,
    },
    /// Internal self-tests
    Selftest {
        #[command(subcommand)]
        which: SelftestCommand,
    },
    /// Newton from many random seeds; all critical points found
    Scan {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0x6b6e6f74)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SelftestCommand {
    /// Exhaustive R-matrix partial-sum identities at one N
    Lemma3 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

fn emit(output: &Option<std::path::PathBuf>, json: String) -> Result<(), Error> {
    match output {
        Some(p) => std::fs::write(p, json + "\n").map_err(Error::from),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let threads = cli
        .threads
        .or_else(|| std::env::var("KASHAEV_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }

    match cli.command {
        Command::Invariant { input, n, method, precision, budget } => {
            let d = pipeline::parse_input(&input)?;
            let prec: Precision = precision.into();
            let (value, mname) = match method {
                MethodArg::Full => (statesum::full_invariant_budget(&d, n, prec, budget)?, "full"),
                MethodArg::Reduced => {
                    let bp = kashaev::basepoint::choose_base_point(&d)?;
                    let g = build_reduced_graph(&d, &bp)?;
                    (statesum::reduced_invariant_budget(&d, &bp, &g, n, prec, budget)?, "reduced")
                }
                MethodArg::Oracle => {
                    // guarded: the closed form is the figure-eight knot's
                    let probe = statesum::full_invariant(&d, 3, Precision::Standard)?;
                    let oracle = statesum::figure_eight_oracle(3)?;
                    if (probe - oracle).norm() > 1e-8 * oracle.norm() {
                        return Err(Error::Config(
                            "oracle method applies to the figure-eight knot only".into(),
                        ));
                    }
                    (statesum::figure_eight_oracle(n)?, "oracle")
                }
            };
            let pname = match precision {
                PrecisionArg::Std => "std",
                PrecisionArg::Dd => "dd",
            };
            let rep = InvariantReport::new(&input, n, mname, pname, value);
            emit(&cli.output, serde_json::to_string_pretty(&rep)?)
        }
        ref cmd @ (Command::Volume { .. } | Command::Shapes { .. }) => {
            let shapes_only = matches!(cmd, Command::Shapes { .. });
            let (input, tol, restarts, seed) = match cmd {
                Command::Volume { input, tol, restarts, seed }
                | Command::Shapes { input, tol, restarts, seed } => {
                    (input.clone(), *tol, *restarts, *seed)
                }
                _ => unreachable!(),
            };
            let d = pipeline::parse_input(&input)?;
            let settings = NewtonSettings { tol, restarts, seed, ..Default::default() };
            let solved = pipeline::solve_volume(&d, &settings)?;
            let rep = VolumeReport::new(&input, solved.base.base_edge, &solved.solution);
            if shapes_only {
                #[derive(serde::Serialize)]
                struct ShapesReport<'a> {
                    schema: &'a str,
                    input: &'a str,
                    volume: f64,
                    geometric: bool,
                    shapes: &'a [ShapeReport],
                    timestamp: &'a str,
                }
                let sr = ShapesReport {
                    schema: "kashaev/shapes-v1",
                    input: &input,
                    volume: rep.volume,
                    geometric: rep.geometric,
                    shapes: &rep.shapes,
                    timestamp: &rep.timestamp,
                };
                emit(&cli.output, serde_json::to_string_pretty(&sr)?)
            } else {
                emit(&cli.output, serde_json::to_string_pretty(&rep)?)
            }
        }
        Command::Verify { input, n_max, model, method, precision, budget, csv, restarts, seed } => {
            let d = pipeline::parse_input(&input)?;
            let bp = kashaev::basepoint::choose_base_point(&d)?;
            let g = build_reduced_graph(&d, &bp)?;
            let (m, mname) = match method {
                MethodArg::Oracle => (asymptotics::Method::Oracle, "oracle"),
                MethodArg::Reduced => (asymptotics::Method::Reduced, "reduced"),
                MethodArg::Full => (asymptotics::Method::Full, "full"),
            };
            let series =
                asymptotics::invariant_series(&d, &bp, &g, n_max, m, precision.into(), budget)?;
            let fit_model = match model {
                ModelArg::Linear => FitModel::Linear,
                ModelArg::LogCorrected => FitModel::LogCorrected,
            };
            let fit = asymptotics::fit_growth_windowed(&series.samples, fit_model, 0.5)?;
            let settings = NewtonSettings { restarts, seed, ..Default::default() };
            let solved = pipeline::solve_volume(&d, &settings)?;
            let rep = VerifyReport::new(
                &input,
                mname,
                n_max,
                series.samples,
                series.truncated,
                fit,
                solved.solution.volume,
            );
            if let Some(p) = csv {
                std::fs::write(p, rep.samples_csv())?;
            }
            emit(&cli.output, serde_json::to_string_pretty(&rep)?)
        }
        Command::EmitPotential { input } => {
            let d = pipeline::parse_input(&input)?;
            let bp = kashaev::basepoint::choose_base_point(&d)?;
            let g = build_reduced_graph(&d, &bp)?;
            let v = PotentialFunction::build(&g)?;
            let rep = PotentialReport::new(&input, &d, &bp, &g, &v);
            emit(&cli.output, serde_json::to_string_pretty(&rep)?)
        }
        Command::Selftest { which } => match which {
            SelftestCommand::Lemma3 { n, tolerance } => {
                let ctx = RootOfUnityContext::new(n)?;
                let rep = SelftestReport::new(&ctx.lemma3_report(), tolerance);
                let ok = rep.passed;
                emit(&cli.output, serde_json::to_string_pretty(&rep)?)?;
                if !ok {
                    return Err(Error::Internal(format!(
                        "lemma3 self-test failed at N = {n}: max deviation {}",
                        rep.max_deviation
                    )));
                }
                Ok(())
            }
        },
        Command::Scan { input, samples, seed } => {
            let d = pipeline::parse_input(&input)?;
            let bp = kashaev::basepoint::choose_base_point(&d)?;
            let g = build_reduced_graph(&d, &bp)?;
            let v = PotentialFunction::build(&g)?;
            let pts = competitor_scan(&g, &v, samples, seed);
            let rep = ScanReport::new(&input, samples, &pts);
            emit(&cli.output, serde_json::to_string_pretty(&rep)?)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Budget(_) | Error::NoGeometricSolution { .. } => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}
