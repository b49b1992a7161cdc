//! `prodspec`: spectral statistics of Gaussian matrix products as plot-ready
//! data files.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prodspec::finite_n::{grid, moment};
use prodspec::macroscopic::{edge_bounds, edges, macro_density, macro_density_m2};
use prodspec::mimo::ergodic_mi_sweep;
use prodspec::montecarlo::{compare_histogram, histogram_density, sample_squared_singular_values};
use prodspec::quad::{integrate_semi_infinite, QuadConfig};
use prodspec::{BiorthogonalSystem, Error, MacroSpec, McRun, Method, ProductSpec, Rescale};

use table::{join, Cell, Table};

const THREADS_VAR: &str = "PRODSPEC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "prodspec", version, about = "Singular-value statistics of products of complex Gaussian matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; tables default to csv, scalar results to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Number of factors M.
    #[arg(long)]
    factors: usize,
    /// Number of non-zero singular values N0.
    #[arg(long)]
    n0: usize,
    /// Index offsets ν_1..ν_M; a single value is used for every factor.
    #[arg(long, value_delimiter = ',', required = true)]
    nu: Vec<u32>,
}

impl SpecArgs {
    fn spec(&self) -> Result<ProductSpec, Error> {
        ProductSpec::new(self.factors, self.n0, broadcast(&self.nu, self.factors))
    }
}

#[derive(Debug, Args)]
struct MacroArgs {
    /// Number of factors M.
    #[arg(long)]
    factors: usize,
    /// Rescaled offsets ν̂_1..ν̂_M; a single value is used for every factor.
    #[arg(long, value_delimiter = ',', required = true)]
    nu_hat: Vec<f64>,
}

impl MacroArgs {
    fn spec(&self) -> Result<MacroSpec, Error> {
        MacroSpec::new(self.factors, broadcast(&self.nu_hat, self.factors))
    }
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Left end of the abscissa grid.
    #[arg(long, default_value_t = 0.0)]
    smin: f64,
    /// Right end; defaults to just beyond the macroscopic support.
    #[arg(long)]
    smax: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = 200)]
    points: usize,
}

#[derive(Debug, Args)]
struct McArgs {
    /// Number of independent product matrices.
    #[arg(long)]
    realizations: Option<usize>,
    /// Seed of the random streams.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScalingArg {
    /// Squared singular values s.
    Raw,
    /// ŝ = s/𝒩_M.
    Rescaled,
    /// σ̂ = √ŝ.
    SingularValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Quadrature,
    MeijerSum,
    MeijerTripleSum,
    MonteCarlo,
    /// Every method, one row each.
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact finite-N one-point density on a grid.
    Density {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = ScalingArg::Rescaled)]
        scaling: ScalingArg,
        /// Add the macroscopic density at ν̂ = ν/N0 as a second column.
        #[arg(long = "macro")]
        with_macro: bool,
    },
    /// Macroscopic (large-N0) density of ŝ on a grid.
    MacroDensity {
        #[command(flatten)]
        spec: MacroArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Add the two-factor closed form as a second column.
        #[arg(long)]
        closed_form: bool,
    },
    /// Moments E{s^ℓ} of the squared singular values.
    Moments {
        #[command(flatten)]
        spec: SpecArgs,
        /// Orders ℓ.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.5,1,2,3")]
        orders: Vec<f64>,
        /// Add the moment from quadrature of the density.
        #[arg(long)]
        quadrature: bool,
    },
    /// Support edges of the macroscopic density.
    Edges {
        #[command(flatten)]
        spec: MacroArgs,
        /// Add the analytic brackets of both edges.
        #[arg(long)]
        bounds: bool,
    },
    /// Simulated squared singular values, one row per realization.
    McSample {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Histogram of simulated squared singular values.
    McDensity {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long, default_value_t = 0.05)]
        bin_width: f64,
        #[arg(long, value_enum, default_value_t = ScalingArg::Rescaled)]
        scaling: ScalingArg,
        /// Add expected densities from the exact result and per-bin deviations
        /// in Poisson standard deviations.
        #[arg(long)]
        compare: bool,
    },
    /// Ergodic mutual information in bits.
    MutualInfo {
        #[command(flatten)]
        spec: SpecArgs,
        /// Signal-to-noise ratios (linear).
        #[arg(long, value_delimiter = ',', conflicts_with = "gamma_db", required_unless_present = "gamma_db")]
        gamma: Vec<f64>,
        /// Signal-to-noise ratios in dB.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gamma_db: Vec<f64>,
        #[arg(long, value_enum, default_value_t = MethodArg::MeijerSum)]
        method: MethodArg,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

/// Why a run failed, mapped to exit codes 2 and 3.
#[derive(Debug)]
enum Failure {
    Validation(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

fn validation<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Validation(msg.into()))
}

fn broadcast<T: Copy>(values: &[T], factors: usize) -> Vec<T> {
    if values.len() == 1 {
        vec![values[0]; factors]
    } else {
        values.to_vec()
    }
}

/// Right end of a grid for the given scaling, 25% beyond the macroscopic edge.
fn default_smax(spec: &ProductSpec, scaling: ScalingArg) -> Result<f64, Failure> {
    let s_plus = edges(&MacroSpec::from_finite(spec))?.s_plus * 1.25;
    Ok(match scaling {
        ScalingArg::Raw => s_plus * spec.scale(),
        ScalingArg::Rescaled => s_plus,
        ScalingArg::SingularValue => s_plus.sqrt(),
    })
}

fn abscissae(g: &GridArgs, default_hi: impl FnOnce() -> Result<f64, Failure>) -> Result<Vec<f64>, Failure> {
    let hi = match g.smax {
        Some(v) => v,
        None => default_hi()?,
    };
    Ok(grid(g.smin, hi, g.points)?)
}

fn spec_meta(t: &mut Table, spec: &ProductSpec) {
    t.meta("M", spec.factors()).meta("N0", spec.n0()).meta("nu", join(spec.nu()));
}

fn density(spec: ProductSpec, g: &GridArgs, scaling: ScalingArg, with_macro: bool) -> Result<Table, Failure> {
    if with_macro && scaling == ScalingArg::Raw {
        return validation("--macro needs --scaling rescaled or singular-value");
    }
    let x = abscissae(g, || default_smax(&spec, scaling))?;
    let sys = BiorthogonalSystem::new(spec.clone());
    let core_scaling = match scaling {
        ScalingArg::Raw => prodspec::Scaling::Raw,
        ScalingArg::Rescaled => prodspec::Scaling::Rescaled,
        ScalingArg::SingularValue => prodspec::Scaling::SingularValue,
    };
    let finite = sys.tabulate(core_scaling, &x)?;
    let mut t = Table::new(if with_macro { &["x", "density", "macroscopic"] } else { &["x", "density"] });
    t.meta("scaling", core_scaling.label());
    spec_meta(&mut t, &spec);
    let limit = MacroSpec::from_finite(&spec);
    if with_macro {
        t.meta("nu_hat", join(limit.nu_hat()));
    }
    for (&xi, &d) in x.iter().zip(&finite.density) {
        let mut row = vec![Cell::Num(xi), Cell::Num(d)];
        if with_macro {
            let m = match scaling {
                ScalingArg::SingularValue => 2.0 * xi * macro_density(&limit, xi * xi)?,
                _ => macro_density(&limit, xi)?,
            };
            row.push(Cell::Num(m));
        }
        t.push(row);
    }
    Ok(t)
}

fn macro_density_table(spec: MacroSpec, g: &GridArgs, closed_form: bool) -> Result<Table, Failure> {
    if closed_form && spec.factors() != 2 {
        return validation("--closed-form requires --factors 2");
    }
    let x = abscissae(g, || Ok(edges(&spec)?.s_plus * 1.25))?;
    let table = prodspec::macroscopic::macro_table(&spec, &x)?;
    let mut t = Table::new(if closed_form { &["x", "density", "closed_form"] } else { &["x", "density"] });
    t.meta("scaling", "macroscopic").meta("M", spec.factors()).meta("nu_hat", join(spec.nu_hat()));
    for (&xi, &d) in x.iter().zip(&table.density) {
        let mut row = vec![Cell::Num(xi), Cell::Num(d)];
        if closed_form {
            let nu = spec.nu_hat();
            row.push(Cell::Num(macro_density_m2(nu[0], nu[1], xi)));
        }
        t.push(row);
    }
    Ok(t)
}

/// `E{s^ℓ} = 𝒩_M^ℓ ∫ ŝ^ℓ ρ₁(ŝ) dŝ`.
fn moment_by_quadrature(sys: &BiorthogonalSystem, ell: f64) -> Result<f64, Failure> {
    let mut failure = None;
    let cfg = QuadConfig { rel_tol: 1e-11, ..QuadConfig::default() };
    let r = integrate_semi_infinite(
        |s| match sys.rescaled_density(s) {
            Ok(rho) => s.powf(ell) * rho,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        1.0,
        &cfg,
    )?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(r.value * sys.spec().scale().powf(ell))
}

fn moments(spec: ProductSpec, orders: &[f64], quadrature: bool) -> Result<Table, Failure> {
    let mut t = Table::new(if quadrature { &["order", "moment", "quadrature"] } else { &["order", "moment"] });
    spec_meta(&mut t, &spec);
    let values = orders.iter().map(|&l| moment(&spec, l)).collect::<Result<Vec<f64>, Error>>()?;
    let sys = BiorthogonalSystem::new(spec);
    for (&l, &v) in orders.iter().zip(&values) {
        let mut row = vec![Cell::Num(l), Cell::Num(v)];
        if quadrature {
            row.push(Cell::Num(moment_by_quadrature(&sys, l)?));
        }
        t.push(row);
    }
    Ok(t)
}

fn edges_table(spec: MacroSpec, bounds: bool) -> Result<Table, Failure> {
    let e = edges(&spec)?;
    let mut cols = vec!["s_minus", "s_plus", "u_minus", "u_plus"];
    let mut row = vec![Cell::Num(e.s_minus), Cell::Num(e.s_plus), Cell::Num(e.u_minus), Cell::Num(e.u_plus)];
    if bounds {
        let b = edge_bounds(&spec);
        cols.extend(["lower_minus", "upper_minus", "lower_plus", "upper_plus"]);
        row.extend([b.lower_minus, b.upper_minus, b.lower_plus, b.upper_plus].map(Cell::Num));
    }
    let mut t = Table::new(&cols);
    t.push(row);
    Ok(t)
}

fn mc_run(spec: ProductSpec, mc: &McArgs, default_realizations: usize) -> Result<McRun, Failure> {
    Ok(McRun::new(spec, mc.realizations.unwrap_or(default_realizations), mc.seed)?)
}

fn mc_sample(spec: ProductSpec, mc: &McArgs) -> Result<Table, Failure> {
    let run = mc_run(spec.clone(), mc, 50_000)?;
    let sample = sample_squared_singular_values(&run);
    let cols: Vec<String> = (1..=spec.n0()).map(|i| format!("s{i}")).collect();
    let mut t = Table::new(&cols.iter().map(String::as_str).collect::<Vec<_>>());
    spec_meta(&mut t, &spec);
    t.meta("seed", run.seed).meta("realizations", run.realizations);
    for row in sample.rows() {
        t.push(row.iter().map(|&v| Cell::Num(v)).collect());
    }
    Ok(t)
}

fn mc_density(spec: ProductSpec, mc: &McArgs, bin_width: f64, scaling: ScalingArg, compare: bool) -> Result<Table, Failure> {
    let run = mc_run(spec.clone(), mc, 50_000)?;
    let rescale = match scaling {
        ScalingArg::Raw => Rescale::Raw,
        ScalingArg::Rescaled => Rescale::Squared,
        ScalingArg::SingularValue => Rescale::SingularValue,
    };
    // validate before sampling
    prodspec::Histogram::new(0.0, bin_width, 1)?;
    let sample = sample_squared_singular_values(&run);
    let h = histogram_density(&sample, bin_width, rescale)?;
    let mut t = Table::new(if compare { &["bin_left", "density", "expected_density", "deviation"] } else { &["bin_left", "density"] });
    spec_meta(&mut t, &spec);
    t.meta("seed", run.seed).meta("realizations", run.realizations).meta("bin_width", bin_width);
    t.meta("total", h.total);
    let density = h.density();
    if !compare {
        for (k, &d) in density.iter().enumerate() {
            t.push(vec![Cell::Num(h.bin_left(k)), Cell::Num(d)]);
        }
        return Ok(t);
    }
    let sys = BiorthogonalSystem::new(spec);
    let bins = compare_histogram(&h, |x| match scaling {
        ScalingArg::Raw => sys.density(x).map(|r| r / sys.spec().n0() as f64),
        ScalingArg::Rescaled => sys.rescaled_density(x),
        ScalingArg::SingularValue => sys.singular_value_density(x),
    })?;
    let norm = h.total as f64 * bin_width;
    for (b, &d) in bins.iter().zip(&density) {
        let dev = if b.expected > 0.0 { Cell::Num(b.deviation()) } else { Cell::Empty };
        t.push(vec![Cell::Num(b.left), Cell::Num(d), Cell::Num(b.expected / norm), dev]);
    }
    Ok(t)
}

fn mutual_info(spec: ProductSpec, gamma: &[f64], gamma_db: &[f64], method: MethodArg, mc: &McArgs) -> Result<Table, Failure> {
    let gammas: Vec<f64> = if gamma.is_empty() { gamma_db.iter().map(|db| 10f64.powf(db / 10.0)).collect() } else { gamma.to_vec() };
    let monte_carlo = Method::MonteCarlo { realizations: mc.realizations.unwrap_or(100_000), seed: mc.seed };
    let methods = match method {
        MethodArg::Quadrature => vec![Method::Quadrature],
        MethodArg::MeijerSum => vec![Method::MeijerSum],
        MethodArg::MeijerTripleSum => vec![Method::MeijerTripleSum],
        MethodArg::MonteCarlo => vec![monte_carlo],
        MethodArg::All => vec![Method::Quadrature, Method::MeijerSum, Method::MeijerTripleSum, monte_carlo],
    };
    let mut t = Table::new(&["gamma_dB", "mi_bits", "method", "stderr_if_mc"]);
    spec_meta(&mut t, &spec);
    if methods.contains(&monte_carlo) {
        t.meta("realizations", mc.realizations.unwrap_or(100_000)).meta("seed", mc.seed);
    }
    for m in methods {
        for r in ergodic_mi_sweep(&spec, &gammas, m)? {
            let se = r.std_error.map_or(Cell::Empty, Cell::Num);
            t.push(vec![Cell::Num(10.0 * r.gamma.log10()), Cell::Num(r.bits), Cell::Text(r.method.to_string()), se]);
        }
    }
    Ok(t)
}

fn selftest() -> (Table, bool) {
    let checks = prodspec::selftest::run();
    let mut t = Table::new(&["check", "error", "tol", "passed"]);
    for c in &checks {
        eprintln!("{c}");
        t.push(vec![Cell::Text(c.name.into()), Cell::Num(c.error), Cell::Num(c.tol), Cell::Text(c.passed().to_string())]);
    }
    (t, checks.iter().all(|c| c.passed()))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = match raw.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return validation(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Validation(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let mut format = cli.format;
    let mut all_passed = true;
    let table = match cli.command {
        Command::Density { spec, grid, scaling, with_macro } => density(spec.spec()?, &grid, scaling, with_macro)?,
        Command::MacroDensity { spec, grid, closed_form } => macro_density_table(spec.spec()?, &grid, closed_form)?,
        Command::Moments { spec, orders, quadrature } => moments(spec.spec()?, &orders, quadrature)?,
        Command::Edges { spec, bounds } => {
            format.get_or_insert(Format::Json);
            edges_table(spec.spec()?, bounds)?
        }
        Command::McSample { spec, mc } => mc_sample(spec.spec()?, &mc)?,
        Command::McDensity { spec, mc, bin_width, scaling, compare } => mc_density(spec.spec()?, &mc, bin_width, scaling, compare)?,
        Command::MutualInfo { spec, gamma, gamma_db, method, mc } => mutual_info(spec.spec()?, &gamma, &gamma_db, method, &mc)?,
        Command::Selftest => {
            let (t, ok) = selftest();
            all_passed = ok;
            t
        }
    };
    let text = match format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if !all_passed {
        return Err(Failure::Numerical("self-test failed".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help and version exit 0, usage errors exit 2
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
