//! Command-line front end: phase-diagram scans, spectrum surfaces and ray
//! cuts, exact-diagonalization runs, splitting fits and holonomy loops.
//! All outputs are deterministic files; exit code 0 means every requested
//! point computed cleanly.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use double_dicke::berry::{compare_holonomy, wilson_loop_holonomy, LoopSpec, DEFAULT_N_STEPS};
use double_dicke::error::{Error, Result};
use double_dicke::exactdiag::{
    build_hamiltonian, cutoff_convergence, diagonalize, ground_manifold, ground_splittings,
    order_parameters, symmetry_report, BasisSpec, DEFAULT_GAP_FACTOR,
};
use double_dicke::io::{
    self, berry_json, exact_json, log_slope, parse_json_arg, phase_csv, spectrum_csv,
    splittings_csv, write_eigenvectors, write_file, OutputFormat, RunConfig,
};
use double_dicke::model::ModelParams;
use double_dicke::sweep::{phase_sweep, spectrum_surface, GridSpec, RaySpec};

#[derive(Parser)]
#[command(name = "double-dicke", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Model parameters: inline JSON or a path to a JSON file.
    #[arg(long)]
    params: String,
    /// Output file path.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Worker threads for sweeps (default: all cores). Holonomy is always
    /// sequential; the path-ordered product fixes the order.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Mean-field phase classification and ground energy over a grid.
    PhaseDiagram {
        #[command(flatten)]
        common: Common,
        /// Grid spec as JSON: {"min_c":..,"max_c":..,"n_c":..,"min_i":..,"max_i":..,"n_i":..}
        #[arg(long)]
        grid: String,
        /// Relative tolerance for flagging points on a critical line.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Bogoliubov excitation branches over a grid or along a ray.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "ray")]
        grid: Option<String>,
        /// Ray spec as JSON: {"theta":..,"r_max":..,"n_points":..}
        #[arg(long)]
        ray: Option<String>,
    },
    /// Finite-size diagonalization with symmetry checks and manifold data.
    Exact {
        #[command(flatten)]
        common: Common,
        /// Fock cutoff; omit to auto-converge by cutoff doubling.
        #[arg(long)]
        n_max: Option<u32>,
        /// Number of low-lying states.
        #[arg(long, default_value_t = 8)]
        n_low: usize,
        /// Eigenvalue convergence tolerance for the cutoff-doubling loop.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also dump eigenvectors to this binary file (JSON sidecar added).
        #[arg(long)]
        vectors: Option<PathBuf>,
    },
    /// Ground-manifold splittings over a list of symmetric couplings, with
    /// the ln(splitting) vs Omega^2 slope fit.
    Splittings {
        #[command(flatten)]
        common: Common,
        /// Comma-separated couplings, applied to both chains.
        #[arg(long, value_delimiter = ',')]
        omegas: Vec<f64>,
        #[arg(long, default_value_t = 60)]
        n_max: u32,
    },
    /// Wilson-loop holonomy of the four-state ground manifold.
    Berry {
        #[command(flatten)]
        common: Common,
        /// Loop spec as JSON: {"vertices":[[..,..],..],"n_steps":..}
        #[arg(long = "loop")]
        loop_spec: String,
        #[arg(long, default_value_t = 60)]
        n_max: u32,
    },
}

fn init_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                eprintln!("completed with flagged failures (see error column)");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Returns whether every requested point computed cleanly.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::PhaseDiagram { common, grid, tol } => {
            init_threads(common.threads);
            let params: ModelParams = parse_json_arg(&common.params)?;
            let grid: GridSpec = parse_json_arg(&grid)?;
            let cfg = RunConfig {
                subcommand: "phase-diagram".into(),
                params,
                grid: Some(grid),
                ray: None,
                loop_spec: None,
                n_max: None,
                tol: Some(tol),
                threads: common.threads,
                format: common.format,
            };
            let rows = phase_sweep(&grid.points(), &params, tol)?;
            let text = match common.format {
                OutputFormat::Csv => phase_csv(&cfg, &rows),
                OutputFormat::Json => to_pretty(&json!({
                    "version": io::VERSION, "config": cfg, "rows": rows,
                })),
            };
            write_file(&common.out, &text)?;
            Ok(true)
        }
        Command::Spectrum { common, grid, ray } => {
            init_threads(common.threads);
            let params: ModelParams = parse_json_arg(&common.params)?;
            let grid: Option<GridSpec> = grid.as_deref().map(parse_json_arg).transpose()?;
            let ray: Option<RaySpec> = ray.as_deref().map(parse_json_arg).transpose()?;
            let points = match (&grid, &ray) {
                (Some(g), None) => g.points(),
                (None, Some(r)) => r.points(),
                _ => {
                    return Err(Error::InvalidArgument(
                        "spectrum needs exactly one of --grid or --ray".into(),
                    ))
                }
            };
            let cfg = RunConfig {
                subcommand: "spectrum".into(),
                params,
                grid,
                ray,
                loop_spec: None,
                n_max: None,
                tol: None,
                threads: common.threads,
                format: common.format,
            };
            let rows = spectrum_surface(&points, &params);
            let clean = rows.iter().all(|r| r.error.is_none());
            let text = match common.format {
                OutputFormat::Csv => spectrum_csv(&cfg, &rows, ray.as_ref()),
                OutputFormat::Json => to_pretty(&json!({
                    "version": io::VERSION, "config": cfg, "rows": rows,
                })),
            };
            write_file(&common.out, &text)?;
            Ok(clean)
        }
        Command::Exact {
            common,
            n_max,
            n_low,
            tol,
            vectors,
        } => {
            let params: ModelParams = parse_json_arg(&common.params)?;
            let cfg = RunConfig {
                subcommand: "exact".into(),
                params,
                grid: None,
                ray: None,
                loop_spec: None,
                n_max,
                tol: Some(tol),
                threads: None,
                format: OutputFormat::Json,
            };
            let spec = match n_max {
                Some(n) => {
                    let basis = BasisSpec::new(params.n_c, params.n_i, n);
                    let h = build_hamiltonian(&params, &basis)?;
                    diagonalize(&h, n_low.min(h.matrix.dim))?
                }
                None => cutoff_convergence(&params, tol, n_low)?,
            };
            let h = build_hamiltonian(&params, &spec.basis)?;
            let symmetry = symmetry_report(&h.matrix, &spec.basis);
            let manifold = ground_manifold(&spec, DEFAULT_GAP_FACTOR).ok();
            let order = manifold
                .as_ref()
                .and_then(|m| order_parameters(&spec, m, &spec.basis).ok());
            let text = exact_json(&cfg, &spec, manifold.as_ref(), Some(&symmetry), order.as_ref());
            write_file(&common.out, &text)?;
            if let Some(vec_path) = vectors {
                write_eigenvectors(&vec_path, &spec, &cfg)?;
            }
            Ok(true)
        }
        Command::Splittings {
            common,
            omegas,
            n_max,
        } => {
            let params: ModelParams = parse_json_arg(&common.params)?;
            if omegas.len() < 2 {
                return Err(Error::InvalidArgument(
                    "splittings needs at least two couplings to fit a slope".into(),
                ));
            }
            let cfg = RunConfig {
                subcommand: "splittings".into(),
                params,
                grid: None,
                ray: None,
                loop_spec: None,
                n_max: Some(n_max),
                tol: None,
                threads: None,
                format: common.format,
            };
            let basis = BasisSpec::new(params.n_c, params.n_i, n_max);
            let mut rows = Vec::with_capacity(omegas.len());
            for &omega in &omegas {
                let p = params.with_couplings(omega, omega);
                rows.push((omega, ground_splittings(&p, &basis)?));
            }
            let fit: Vec<(f64, f64)> = rows.iter().map(|&(o, s)| (o * o, s[2])).collect();
            let slope = log_slope(&fit);
            let text = match common.format {
                OutputFormat::Csv => splittings_csv(&cfg, &rows, slope),
                OutputFormat::Json => to_pretty(&json!({
                    "version": io::VERSION, "config": cfg,
                    "rows": rows.iter().map(|(o, s)| json!({"Omega": o, "splittings": s})).collect::<Vec<_>>(),
                    "fitted_slope": slope,
                })),
            };
            write_file(&common.out, &text)?;
            Ok(true)
        }
        Command::Berry {
            common,
            loop_spec,
            n_max,
        } => {
            let params: ModelParams = parse_json_arg(&common.params)?;
            let mut loop_spec: LoopSpec = parse_json_arg(&loop_spec)?;
            if loop_spec.n_steps == 0 {
                loop_spec.n_steps = DEFAULT_N_STEPS;
            }
            let cfg = RunConfig {
                subcommand: "berry".into(),
                params,
                grid: None,
                ray: None,
                loop_spec: Some(loop_spec.clone()),
                n_max: Some(n_max),
                tol: None,
                threads: None,
                format: OutputFormat::Json,
            };
            let basis = BasisSpec::new(params.n_c, params.n_i, n_max);
            let holonomy = wilson_loop_holonomy(&loop_spec, &params, &basis)?;
            let report = compare_holonomy(&holonomy);
            let text = berry_json(&cfg, &holonomy, &report);
            write_file(&common.out, &text)?;
            Ok(true)
        }
    }
}

fn to_pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("document serializes")
}
