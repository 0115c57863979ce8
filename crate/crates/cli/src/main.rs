//! Command-line front end for the reflectionless-potential laboratory.
//!
//! Subcommands sample potentials and eigenfunctions on grids, compute
//! analytic and numeric scattering amplitudes, enumerate the integer
//! catalog, and run the built-in verification suites. Data commands emit
//! CSV (default) or JSON; floats carry 17 significant digits so every
//! value reparses to the identical f64.
//!
//! Exit codes: 0 success, 1 runtime or verification failure (a JSON error
//! object goes to stderr), 2 command-line usage error.

// Range checks use the negated comparison `!(hi > lo)` on purpose so that a
// NaN parsed from the command line fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use output::{CatalogPayload, Format, ScatterRow, VerifyPayload, SCHEMA_VERSION};
use reflectionless::scattering::{analytic_amplitudes, scatter_sweep, Incidence, ScatterConfig};
use reflectionless::{catalog, spectra, verify, Branch, GridSpec, PotentialSpec};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "reflectionless",
    version,
    about = "Exactly solvable reflectionless and PT-symmetric potentials: \
             closed forms, spectra, scattering, and self-verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a potential V(x) on a uniform grid.
    Potential {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample a normalized bound-state wavefunction on a uniform grid.
    Wavefunction {
        #[command(flatten)]
        family: FamilyArgs,
        /// Bound-state index within the family (0 = deepest).
        #[arg(long, default_value_t = 0)]
        state: u32,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reflection and transmission amplitudes over a set of momenta.
    Scatter {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated momenta, e.g. "0.5,1,2,4" (conflicts with --k-min/--k-max/--k-points).
        #[arg(long)]
        k_list: Option<String>,
        /// Start of a uniform momentum grid.
        #[arg(
            long,
            requires = "k_max",
            requires = "k_points",
            conflicts_with = "k_list"
        )]
        k_min: Option<f64>,
        /// End of a uniform momentum grid.
        #[arg(long, requires = "k_min")]
        k_max: Option<f64>,
        /// Number of points in the uniform momentum grid.
        #[arg(long, requires = "k_min")]
        k_points: Option<usize>,
        /// Which amplitudes to compute.
        #[arg(long, value_enum, default_value_t = SourceArg::Both)]
        source: SourceArg,
        /// Side the incident wave comes from.
        #[arg(long, value_enum, default_value_t = IncidenceArg::Left)]
        incidence: IncidenceArg,
        /// Half width L of the numerical integration box [-L, L].
        #[arg(long, default_value_t = 25.0)]
        box_half_width: f64,
        /// Runge-Kutta step for the numerical run.
        #[arg(long, default_value_t = 1e-3)]
        dx: f64,
        /// Skip the step-halving convergence check (faster, less safe).
        #[arg(long)]
        no_step_check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate the integer-parameter catalog of solvable potentials.
    Catalog {
        /// Depth index N of the underlying real well.
        #[arg(long)]
        n: u32,
        /// Largest extension order m to include (0 = base potentials only).
        #[arg(long, default_value_t = 0)]
        m_max: u32,
        /// Also report the real sech^2 well spectrum for comparison.
        #[arg(long)]
        include_real: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run built-in verification suites against frozen reference values.
    Verify {
        /// Suite name (specfun, n3, scattering, counting) or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Smaller draws and coarser grids for fast smoke checks.
        #[arg(long)]
        quick: bool,
        /// Machine-readable report instead of the text summary.
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// -N(N+1) sech^2 x.
    Realsech,
    /// PT-symmetric complex Scarf II.
    Scarf2,
    /// Rationally extended complex Scarf II.
    Scarf2ext,
    /// One-parameter isospectral deformation of the real well.
    Isofamily,
    /// lambda -> 0 limit of the deformation.
    Pursey,
    /// lambda -> -1 limit of the deformation.
    Am,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Normal,
    Parametric,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Normal => Branch::Normal,
            BranchArg::Parametric => Branch::Parametric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Analytic,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IncidenceArg {
    Left,
    Right,
}

impl From<IncidenceArg> for Incidence {
    fn from(i: IncidenceArg) -> Self {
        match i {
            IncidenceArg::Left => Incidence::Left,
            IncidenceArg::Right => Incidence::Right,
        }
    }
}

#[derive(Args)]
struct FamilyArgs {
    /// Potential family.
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Depth index N (realsech, isofamily, pursey, am).
    #[arg(long)]
    n: Option<u32>,
    /// Scarf II parameter a.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Scarf II parameter b.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Extension order m (scarf2ext).
    #[arg(long)]
    m: Option<u32>,
    /// Deformation parameter lambda (isofamily), outside [-1, 0].
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Eigenfunction branch of the complex families.
    #[arg(long, value_enum, default_value_t = BranchArg::Normal)]
    branch: BranchArg,
    /// Replace the potential by its supersymmetric partner.
    #[arg(long)]
    partner: bool,
}

impl FamilyArgs {
    fn build(&self) -> Result<PotentialSpec, String> {
        let need_u32 = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| format!("--{name} is required for this family"))
        };
        let need_f64 = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| format!("--{name} is required for this family"))
        };
        let forbid_f64 = |v: Option<f64>, name: &str| {
            if v.is_some() {
                Err(format!("--{name} does not apply to this family"))
            } else {
                Ok(())
            }
        };
        let forbid_u32 = |v: Option<u32>, name: &str| {
            if v.is_some() {
                Err(format!("--{name} does not apply to this family"))
            } else {
                Ok(())
            }
        };
        let real_family = |n: Option<u32>, a, b, m, lambda| -> Result<u32, String> {
            forbid_f64(a, "a")?;
            forbid_f64(b, "b")?;
            forbid_u32(m, "m")?;
            forbid_f64(lambda, "lambda")?;
            need_u32(n, "n")
        };
        let spec = match self.family {
            FamilyKind::Realsech => PotentialSpec::RealSech {
                n: real_family(self.n, self.a, self.b, self.m, self.lambda)?,
            },
            FamilyKind::Scarf2 => {
                forbid_u32(self.n, "n")?;
                forbid_u32(self.m, "m")?;
                forbid_f64(self.lambda, "lambda")?;
                PotentialSpec::ScarfII {
                    a: need_f64(self.a, "a")?,
                    b: need_f64(self.b, "b")?,
                    branch: self.branch.into(),
                }
            }
            FamilyKind::Scarf2ext => {
                forbid_u32(self.n, "n")?;
                forbid_f64(self.lambda, "lambda")?;
                PotentialSpec::ScarfIIExtended {
                    a: need_f64(self.a, "a")?,
                    b: need_f64(self.b, "b")?,
                    m: need_u32(self.m, "m")?,
                    branch: self.branch.into(),
                }
            }
            FamilyKind::Isofamily => {
                forbid_f64(self.a, "a")?;
                forbid_f64(self.b, "b")?;
                forbid_u32(self.m, "m")?;
                PotentialSpec::IsospectralFamily {
                    n: need_u32(self.n, "n")?,
                    lambda: need_f64(self.lambda, "lambda")?,
                }
            }
            FamilyKind::Pursey => PotentialSpec::Pursey {
                n: real_family(self.n, self.a, self.b, self.m, self.lambda)?,
            },
            FamilyKind::Am => PotentialSpec::AbrahamMoses {
                n: real_family(self.n, self.a, self.b, self.m, self.lambda)?,
            },
        };
        Ok(if self.partner {
            PotentialSpec::PartnerOf {
                base: Box::new(spec),
            }
        } else {
            spec
        })
    }
}

/// Build and validate the potential spec. Missing or extraneous family flags
/// are usage errors (exit 2); parameter values the library rejects are
/// runtime errors (exit 1).
fn build_spec(family: &FamilyArgs) -> Result<PotentialSpec, String> {
    let spec = match family.build() {
        Ok(spec) => spec,
        Err(msg) => usage_error(&msg),
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

#[derive(Args)]
struct GridArgs {
    /// Left end of the sampling interval.
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    x_min: f64,
    /// Right end of the sampling interval.
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    x_max: f64,
    /// Number of grid points (>= 2).
    #[arg(long, default_value_t = 2001)]
    points: usize,
}

impl GridArgs {
    fn build(&self) -> Result<GridSpec, String> {
        if self.points < 2 {
            return Err("--points must be at least 2".into());
        }
        if !(self.x_max > self.x_min) {
            return Err("--x-max must exceed --x-min".into());
        }
        let dx = (self.x_max - self.x_min) / (self.points - 1) as f64;
        GridSpec::new(self.x_min, dx, self.points).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn open_sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

#[cfg(feature = "parallel")]
fn configure_threads() {
    if let Ok(v) = std::env::var("REFLECTIONLESS_LAB_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("ignoring REFLECTIONLESS_LAB_THREADS={v:?}: expected a positive integer")
            }
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() {}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, msg).exit()
}

fn run_potential(family: &FamilyArgs, grid: &GridArgs, out: &OutputArgs) -> Result<(), String> {
    let spec = build_spec(family)?;
    let grid_spec = grid.build()?;
    let sampled = spec.sample(grid_spec).map_err(|e| e.to_string())?;
    let samples: Vec<(f64, f64, f64)> = sampled.iter().map(|(x, v)| (x, v.re, v.im)).collect();
    let mut sink = open_sink(out.output.as_ref()).map_err(|e| e.to_string())?;
    output::write_potential(&mut sink, out.format, &spec, &samples).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())
}

fn run_wavefunction(
    family: &FamilyArgs,
    state_index: u32,
    grid: &GridArgs,
    out: &OutputArgs,
) -> Result<(), String> {
    let spec = build_spec(family)?;
    let grid_spec = grid.build()?;
    let state = spectra::eigenfunction(&spec, state_index).map_err(|e| e.to_string())?;
    let samples: Vec<(f64, f64, f64, f64)> = grid_spec
        .points()
        .map(|x| {
            let psi = state.wavefunction.eval(x);
            (x, psi.re, psi.im, psi.norm())
        })
        .collect();
    let mut sink = open_sink(out.output.as_ref()).map_err(|e| e.to_string())?;
    output::write_wavefunction(
        &mut sink,
        out.format,
        &spec,
        state_index,
        state.energy,
        &samples,
    )
    .map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn run_scatter(
    family: &FamilyArgs,
    ks: &[f64],
    source: SourceArg,
    incidence: Incidence,
    cfg: &ScatterConfig,
    out: &OutputArgs,
) -> Result<(), String> {
    let spec = build_spec(family)?;
    let mut rows: Vec<ScatterRow> = Vec::new();
    let analytic: Vec<ScatterRow> = if source != SourceArg::Numeric {
        ks.iter()
            .map(|&k| {
                analytic_amplitudes(&spec, k, incidence)
                    .map(|a| ScatterRow::from(&a))
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let numeric: Vec<ScatterRow> = if source != SourceArg::Analytic {
        scatter_sweep(&spec, ks, incidence, cfg)
            .map_err(|e| e.to_string())?
            .iter()
            .map(ScatterRow::from)
            .collect()
    } else {
        Vec::new()
    };
    // Interleave so both amplitudes for one momentum sit on adjacent rows.
    match source {
        SourceArg::Analytic => rows.extend(analytic),
        SourceArg::Numeric => rows.extend(numeric),
        SourceArg::Both => {
            for (a, n) in analytic.into_iter().zip(numeric) {
                rows.push(a);
                rows.push(n);
            }
        }
    }
    let mut sink = open_sink(out.output.as_ref()).map_err(|e| e.to_string())?;
    output::write_scatter(&mut sink, out.format, &spec, &rows).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())
}

fn run_catalog(n: u32, m_max: u32, include_real: bool, out: &OutputArgs) -> Result<(), String> {
    let entries = catalog::enumerate(n, m_max).map_err(|e| e.to_string())?;
    let payload = CatalogPayload {
        schema_version: SCHEMA_VERSION,
        command: "catalog",
        n,
        m_max,
        expected_count: catalog::expected_count(n, m_max),
        distinct_potentials: catalog::distinct_potential_count(&entries),
        real_well_levels_x4: include_real.then(|| catalog::real_well_levels_x4(n)),
        entries,
    };
    let mut sink = open_sink(out.output.as_ref()).map_err(|e| e.to_string())?;
    output::write_catalog(&mut sink, out.format, &payload).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())
}

fn run_verify(
    suite: &str,
    quick: bool,
    format: Option<Format>,
    output: Option<&PathBuf>,
) -> Result<ExitCode, String> {
    let reports = if suite == "all" {
        verify::run_all(quick).map_err(|e| e.to_string())?
    } else {
        vec![verify::run_suite(suite, quick).map_err(|e| e.to_string())?]
    };
    let all_passed = reports.iter().all(|r| r.ok());
    let payload = VerifyPayload {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        all_passed,
        reports,
    };
    let mut sink = open_sink(output).map_err(|e| e.to_string())?;
    output::write_verify(&mut sink, format, &payload).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())?;
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn momentum_grid(
    k_list: Option<&String>,
    k_min: Option<f64>,
    k_max: Option<f64>,
    k_points: Option<usize>,
) -> Result<Vec<f64>, String> {
    if let Some(list) = k_list {
        let ks: Vec<f64> = list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad momentum {t:?}: {e}"))
            })
            .collect::<Result<_, _>>()?;
        if ks.is_empty() {
            return Err("--k-list must contain at least one momentum".into());
        }
        return Ok(ks);
    }
    match (k_min, k_max, k_points) {
        (Some(lo), Some(hi), Some(np)) => {
            if np < 1 {
                return Err("--k-points must be at least 1".into());
            }
            if np == 1 {
                return Ok(vec![lo]);
            }
            if !(hi > lo) {
                return Err("--k-max must exceed --k-min".into());
            }
            let step = (hi - lo) / (np - 1) as f64;
            Ok((0..np).map(|i| lo + step * i as f64).collect())
        }
        _ => Err("provide either --k-list or all of --k-min, --k-max, --k-points".into()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Potential { family, grid, out } => {
            run_potential(family, grid, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Wavefunction {
            family,
            state,
            grid,
            out,
        } => {
            run_wavefunction(family, *state, grid, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scatter {
            family,
            k_list,
            k_min,
            k_max,
            k_points,
            source,
            incidence,
            box_half_width,
            dx,
            no_step_check,
            out,
        } => {
            let ks = match momentum_grid(k_list.as_ref(), *k_min, *k_max, *k_points) {
                Ok(ks) => ks,
                Err(msg) => usage_error(&msg),
            };
            let cfg = ScatterConfig {
                box_half_width: *box_half_width,
                dx: *dx,
                check_step_halving: !*no_step_check,
                ..ScatterConfig::default()
            };
            run_scatter(family, &ks, *source, (*incidence).into(), &cfg, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog {
            n,
            m_max,
            include_real,
            out,
        } => {
            run_catalog(*n, *m_max, *include_real, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            quick,
            format,
            output,
        } => run_verify(suite, *quick, *format, output.as_ref()),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            let err = serde_json::json!({ "error": message });
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}
