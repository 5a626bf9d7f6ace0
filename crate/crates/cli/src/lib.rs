//! Batch front end: level tables, wavefunction grids, propagator tables
//! across routes, the three-level system dump, and the verification
//! suites. Output is CSV or JSON only; anything human-oriented (route
//! substitution notes, pairwise difference summaries, verifier progress)
//! goes to stderr.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use accelosc::jordan::{build_jordan_system, jordan_propagator};
use accelosc::lattice::LatticeConfig;
use accelosc::model::{self, ModelParams, Regime};
use accelosc::propagator::{
    closed_form, equal_frequency_closed_form, momentum_integral, spectral_two_level, Route,
};
use accelosc::spectrum;
use accelosc::verify::{self, Suite};

/// Relative tolerance handed to the momentum route when tabulating.
const MOMENTUM_TABLE_TOL: f64 = 1e-8;

/// Geometry for the lattice route: period and site count are fixed so
/// tables are comparable across runs; the tau column records snapping.
const LATTICE_PERIOD: f64 = 40.0;
const LATTICE_SITES: usize = 4096;

/// Levels beyond this make the polynomial degrees (and the moment
/// recursion behind every inner product) grow too fast to stay desk-scale.
const MAX_LEVEL_CAP: u32 = 6;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations; exits 2.
    Usage(String),
    /// Valid request that could not be completed; exits 1.
    Failure(String),
    /// The verifier ran and found violations; exits 1 after the report.
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) | CliError::VerifyFailed => 1,
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => Some(m),
            CliError::VerifyFailed => None,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "accelosc", version, about = "Acceleration-oscillator spectra, states, and propagators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ParamArgs {
    /// Overall stiffness prefactor of the action.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Larger characteristic frequency.
    #[arg(long, default_value_t = 2.0)]
    pub omega1: f64,
    /// Smaller characteristic frequency.
    #[arg(long, default_value_t = 1.0)]
    pub omega2: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<ModelParams, CliError> {
        ModelParams::new(self.gamma, self.omega1, self.omega2)
            .map_err(|e| usage(format!("bad model parameters: {e}")))
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format; defaults to csv for tables and json for reports.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum SuiteArg {
    Core,
    Spectrum,
    Propagator,
    Jordan,
    Lattice,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Core => Suite::Core,
            SuiteArg::Spectrum => Suite::Spectrum,
            SuiteArg::Propagator => Suite::Propagator,
            SuiteArg::Jordan => Suite::Jordan,
            SuiteArg::Lattice => Suite::Lattice,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the (p, q, energy) level table.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        /// Include all levels with p + q up to this cap.
        #[arg(long, default_value_t = 3)]
        levels: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate states and their duals on a rectangular mesh.
    States {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2)]
        levels: u32,
        /// Mesh as xmin:xmax:n,vmin:vmax:n.
        #[arg(long, default_value = "-2:2:9,-2:2:9", allow_hyphen_values = true)]
        grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the propagator along the requested routes.
    Propagator {
        #[command(flatten)]
        params: ParamArgs,
        /// Time separations as start:stop:step or a comma list.
        #[arg(long, default_value = "0:5:0.5")]
        tau: String,
        /// Comma list from closed, spectral, momentum, lattice, jordan, equal.
        #[arg(long, default_value = "closed,spectral,momentum")]
        routes: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dump the three-level system and its propagator table as JSON.
    Jordan {
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Common frequency of the degenerate pair.
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value = "0:2:0.25")]
        tau: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suites and emit a machine-readable report.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Seed for the sampling checks; fixed seed means a byte-stable report.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Parses "start:stop:step" (inclusive; the stop lands in the grid when it
/// is within half a step) or a comma list, which must be strictly
/// increasing. All values must be finite and nonnegative.
pub fn parse_tau_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let num = |t: &str| -> Result<f64, CliError> {
        let v: f64 = t
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad number '{t}' in tau spec '{spec}'")))?;
        if !v.is_finite() {
            return Err(usage(format!("non-finite value in tau spec '{spec}'")));
        }
        Ok(v)
    };
    let taus = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(usage(format!("tau range '{spec}' must be start:stop:step")));
        }
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if stop < start {
            return Err(usage(format!("tau range '{spec}' is empty: stop below start")));
        }
        if start == stop {
            vec![start]
        } else {
            if step <= 0.0 {
                return Err(usage(format!("tau range '{spec}' needs a positive step")));
            }
            let mut out = Vec::new();
            loop {
                let v = start + out.len() as f64 * step;
                if v > stop + 0.5 * step {
                    break;
                }
                out.push(v);
            }
            out
        }
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if taus.is_empty() {
        return Err(usage(format!("tau spec '{spec}' produced no points")));
    }
    if taus[0] < 0.0 {
        return Err(usage("time separations must be nonnegative"));
    }
    if taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage(format!("tau list '{spec}' must be strictly increasing")));
    }
    Ok(taus)
}

/// Rectangular evaluation mesh, parsed from xmin:xmax:n,vmin:vmax:n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub nx: usize,
    pub vmin: f64,
    pub vmax: f64,
    pub nv: usize,
}

impl GridSpec {
    pub fn x_points(&self) -> Vec<f64> {
        linspace(self.xmin, self.xmax, self.nx)
    }

    pub fn v_points(&self) -> Vec<f64> {
        linspace(self.vmin, self.vmax, self.nv)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

pub fn parse_grid(spec: &str) -> Result<GridSpec, CliError> {
    let axes: Vec<&str> = spec.split(',').collect();
    if axes.len() != 2 {
        return Err(usage(format!("grid '{spec}' must be xmin:xmax:n,vmin:vmax:n")));
    }
    let axis = |text: &str| -> Result<(f64, f64, usize), CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(usage(format!("grid axis '{text}' must be min:max:n")));
        }
        let lo: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad grid bound '{}'", parts[0])))?;
        let hi: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad grid bound '{}'", parts[1])))?;
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad grid count '{}'", parts[2])))?;
        if !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(usage(format!("grid axis '{text}' needs min < max")));
        }
        if n < 2 {
            return Err(usage(format!("grid axis '{text}' needs at least 2 points")));
        }
        Ok((lo, hi, n))
    };
    let (xmin, xmax, nx) = axis(axes[0])?;
    let (vmin, vmax, nv) = axis(axes[1])?;
    Ok(GridSpec {
        xmin,
        xmax,
        nx,
        vmin,
        vmax,
        nv,
    })
}

pub fn parse_routes(spec: &str) -> Result<Vec<Route>, CliError> {
    let mut routes = Vec::new();
    for token in spec.split(',') {
        let route = match token.trim() {
            "closed" | "closed_form" => Route::ClosedForm,
            "spectral" => Route::Spectral,
            "momentum" | "momentum_integral" => Route::MomentumIntegral,
            "lattice" => Route::Lattice,
            "jordan" => Route::Jordan,
            "equal" | "equal_closed_form" => Route::EqualClosedForm,
            other => return Err(usage(format!("unknown route '{other}'"))),
        };
        if !routes.contains(&route) {
            routes.push(route);
        }
    }
    if routes.is_empty() {
        return Err(usage("no routes requested"));
    }
    Ok(routes)
}

/// Fully validated run description assembled from the parsed flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub tau_grid: Vec<f64>,
    pub level_cap: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub task: Task,
}

#[derive(Debug, Clone)]
pub enum Task {
    Spectrum,
    States { grid: GridSpec },
    Propagator { routes: Vec<Route> },
    Jordan,
    Verify { suite: Suite },
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.level_cap > MAX_LEVEL_CAP {
            return Err(usage(format!(
                "level cap {} exceeds the supported maximum {MAX_LEVEL_CAP}",
                self.level_cap
            )));
        }
        if self.tau_grid.first().is_some_and(|t| *t < 0.0)
            || self.tau_grid.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(usage("tau grid must be nonnegative and strictly increasing"));
        }
        Ok(())
    }
}

/// Lowers parsed flags into a validated [`RunConfig`].
pub fn lower(cli: Cli) -> Result<RunConfig, CliError> {
    let config = match cli.command {
        Command::Spectrum {
            params,
            levels,
            output,
        } => RunConfig {
            params: params.build()?,
            tau_grid: Vec::new(),
            level_cap: levels,
            format: output.format.unwrap_or(Format::Csv),
            out: output.out,
            seed: 0,
            task: Task::Spectrum,
        },
        Command::States {
            params,
            levels,
            grid,
            output,
        } => RunConfig {
            params: params.build()?,
            tau_grid: Vec::new(),
            level_cap: levels,
            format: output.format.unwrap_or(Format::Csv),
            out: output.out,
            seed: 0,
            task: Task::States {
                grid: parse_grid(&grid)?,
            },
        },
        Command::Propagator {
            params,
            tau,
            routes,
            output,
        } => RunConfig {
            params: params.build()?,
            tau_grid: parse_tau_range(&tau)?,
            level_cap: 0,
            format: output.format.unwrap_or(Format::Csv),
            out: output.out,
            seed: 0,
            task: Task::Propagator {
                routes: parse_routes(&routes)?,
            },
        },
        Command::Jordan {
            gamma,
            omega,
            tau,
            output,
        } => RunConfig {
            params: ModelParams::new(gamma, omega, omega)
                .map_err(|e| usage(format!("bad model parameters: {e}")))?,
            tau_grid: parse_tau_range(&tau)?,
            level_cap: 0,
            format: output.format.unwrap_or(Format::Json),
            out: output.out,
            seed: 0,
            task: Task::Jordan,
        },
        Command::Verify {
            params,
            suite,
            seed,
            output,
        } => RunConfig {
            params: params.build()?,
            tau_grid: Vec::new(),
            level_cap: 0,
            format: output.format.unwrap_or(Format::Json),
            out: output.out,
            seed,
            task: Task::Verify {
                suite: suite.into(),
            },
        },
    };
    config.validate()?;
    Ok(config)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    execute(&lower(cli)?)
}

pub fn execute(config: &RunConfig) -> Result<(), CliError> {
    match &config.task {
        Task::Spectrum => spectrum_task(config),
        Task::States { grid } => states_task(config, grid),
        Task::Propagator { routes } => propagator_task(config, routes),
        Task::Jordan => jordan_task(config),
        Task::Verify { suite } => verify_task(config, *suite),
    }
}

fn write_output(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn spectrum_task(config: &RunConfig) -> Result<(), CliError> {
    let levels = model::levels_up_to(config.level_cap);
    let rows: Vec<(u32, u32, f64)> = levels
        .iter()
        .map(|l| (l.p, l.q, model::energy(*l, &config.params)))
        .collect();
    let text = match config.format {
        Format::Csv => {
            let mut out = String::from("p,q,energy\n");
            for (p, q, e) in &rows {
                writeln!(out, "{p},{q},{e}").unwrap();
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(p, q, e)| serde_json::json!({"p": p, "q": q, "energy": e}))
                .collect();
            let doc = serde_json::json!({"params": config.params, "levels": items});
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    write_output(config, &text)
}

fn states_task(config: &RunConfig, grid: &GridSpec) -> Result<(), CliError> {
    if config.params.regime() == Regime::EqualFrequency {
        return Err(usage(
            "state construction needs distinct frequencies; the degenerate sector is served by the jordan subcommand",
        ));
    }
    let levels = model::levels_up_to(config.level_cap);
    let pairs: Vec<_> = levels
        .iter()
        .map(|l| spectrum::eigenpair(*l, &config.params))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Failure(format!("state construction failed: {e}")))?;

    let mut header = String::from("x,v");
    for l in &levels {
        write!(header, ",psi_{}_{},dual_{}_{}", l.p, l.q, l.p, l.q).unwrap();
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for x in grid.x_points() {
        for v in grid.v_points() {
            let mut row = vec![x, v];
            for pair in &pairs {
                row.push(pair.state.evaluate(x, v));
                row.push(pair.dual.evaluate(x, v));
            }
            rows.push(row);
        }
    }
    let text = match config.format {
        Format::Csv => {
            let mut out = header.clone();
            out.push('\n');
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = serde_json::json!({
                "params": config.params,
                "header": header.split(',').collect::<Vec<_>>(),
                "rows": rows,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    write_output(config, &text)
}

/// Resolves the requested routes against the parameter regime: the
/// unequal-frequency routes are substituted (with a note on stderr) when
/// the frequencies coincide, and the degenerate-only routes are rejected
/// when they do not.
fn resolve_routes(params: &ModelParams, requested: &[Route]) -> Result<Vec<Route>, CliError> {
    let equal = params.regime() == Regime::EqualFrequency;
    let mut resolved = Vec::new();
    for &route in requested {
        let mapped = match route {
            Route::ClosedForm if equal => {
                eprintln!("note: closed_form is undefined at equal frequencies; substituting equal_closed_form");
                Route::EqualClosedForm
            }
            Route::Spectral if equal => {
                eprintln!("note: the spectral route is undefined at equal frequencies; substituting jordan");
                Route::Jordan
            }
            Route::Jordan | Route::EqualClosedForm if !equal => {
                return Err(usage(format!(
                    "route {route} needs equal frequencies (omega1 = omega2)"
                )));
            }
            other => other,
        };
        if !resolved.contains(&mapped) {
            resolved.push(mapped);
        }
    }
    Ok(resolved)
}

fn propagator_task(config: &RunConfig, requested: &[Route]) -> Result<(), CliError> {
    let params = &config.params;
    let routes = resolve_routes(params, requested)?;
    let taus = &config.tau_grid;

    let fail = |e: accelosc::Error| CliError::Failure(format!("propagator evaluation failed: {e}"));
    let mut lattice_taus: Option<Vec<f64>> = None;
    let mut columns: Vec<(Route, Vec<f64>)> = Vec::new();
    for &route in &routes {
        let values: Vec<f64> = match route {
            Route::ClosedForm => taus
                .iter()
                .map(|&t| closed_form(t, params))
                .collect::<Result<_, _>>()
                .map_err(fail)?,
            Route::Spectral => taus
                .iter()
                .map(|&t| spectral_two_level(t, params))
                .collect::<Result<_, _>>()
                .map_err(fail)?,
            Route::MomentumIntegral => taus
                .iter()
                .map(|&t| momentum_integral(t, params, MOMENTUM_TABLE_TOL))
                .collect::<Result<_, _>>()
                .map_err(fail)?,
            Route::EqualClosedForm => taus
                .iter()
                .map(|&t| equal_frequency_closed_form(t, params.gamma(), params.omega1()))
                .collect(),
            Route::Jordan => {
                let sys = build_jordan_system(params.gamma(), params.omega1()).map_err(fail)?;
                taus.iter().map(|&t| jordan_propagator(&sys, t)).collect()
            }
            Route::Lattice => {
                let cfg = LatticeConfig::new(*params, LATTICE_PERIOD, LATTICE_SITES)
                    .map_err(|e| usage(format!("lattice route unavailable: {e}")))?;
                if taus.last().is_some_and(|t| *t > 0.5 * LATTICE_PERIOD) {
                    return Err(usage(format!(
                        "lattice route covers tau up to {}",
                        0.5 * LATTICE_PERIOD
                    )));
                }
                let snapped: Vec<f64> = taus.iter().map(|&t| cfg.nearest_site_tau(t)).collect();
                let values = snapped
                    .iter()
                    .map(|&t| accelosc::lattice::lattice_propagator(&cfg, t))
                    .collect::<Result<_, _>>()
                    .map_err(fail)?;
                lattice_taus = Some(snapped);
                values
            }
        };
        columns.push((route, values));
    }

    // Pairwise spread across routes, reported but never enforced here.
    let mut spreads: Vec<(Route, Route, f64)> = Vec::new();
    for i in 0..columns.len() {
        for j in (i + 1)..columns.len() {
            let (ra, va) = &columns[i];
            let (rb, vb) = &columns[j];
            let spread = va
                .iter()
                .zip(vb)
                .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE))
                .fold(0.0f64, f64::max);
            eprintln!("max relative difference {ra} vs {rb}: {spread:e}");
            spreads.push((*ra, *rb, spread));
        }
    }

    let text = match config.format {
        Format::Csv => {
            let mut header = String::from("tau");
            for (route, _) in &columns {
                write!(header, ",{route}").unwrap();
            }
            if lattice_taus.is_some() {
                header.push_str(",lattice_tau");
            }
            let mut out = header;
            out.push('\n');
            for (k, tau) in taus.iter().enumerate() {
                write!(out, "{tau}").unwrap();
                for (_, values) in &columns {
                    write!(out, ",{}", values[k]).unwrap();
                }
                if let Some(snapped) = &lattice_taus {
                    write!(out, ",{}", snapped[k]).unwrap();
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let cols: Vec<serde_json::Value> = columns
                .iter()
                .map(|(route, values)| {
                    serde_json::json!({"route": route.label(), "values": values})
                })
                .collect();
            let pairwise: Vec<serde_json::Value> = spreads
                .iter()
                .map(|(a, b, s)| {
                    serde_json::json!({
                        "first": a.label(),
                        "second": b.label(),
                        "max_rel_diff": s,
                    })
                })
                .collect();
            let mut doc = serde_json::json!({
                "params": config.params,
                "taus": taus,
                "columns": cols,
                "pairwise": pairwise,
            });
            if let Some(snapped) = &lattice_taus {
                doc["lattice_taus"] = serde_json::json!(snapped);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    write_output(config, &text)
}

fn jordan_task(config: &RunConfig) -> Result<(), CliError> {
    if config.format != Format::Json {
        return Err(usage("the jordan dump is json only"));
    }
    let (gamma, omega) = (config.params.gamma(), config.params.omega1());
    let sys = build_jordan_system(gamma, omega)
        .map_err(|e| CliError::Failure(format!("three-level construction failed: {e}")))?;
    let values: Vec<f64> = config
        .tau_grid
        .iter()
        .map(|&t| jordan_propagator(&sys, t))
        .collect();
    let doc = serde_json::json!({
        "system": sys,
        "propagator": {"taus": config.tau_grid, "values": values},
    });
    write_output(config, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
}

fn verify_task(config: &RunConfig, suite: Suite) -> Result<(), CliError> {
    if config.format != Format::Json {
        return Err(usage("the verification report is json only"));
    }
    let report = verify::run_suite(suite, &config.params, config.seed);
    for line in report.summary_lines() {
        eprintln!("{line}");
    }
    write_output(config, &report.to_json())?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}
