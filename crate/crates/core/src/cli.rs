//! The `keyrate` command line.
//!
//! Subcommands: `region`, `game`, `ne-map`, `dm-bound`. Every long flag can
//! also be given in a JSON config file (`--config FILE`) under the same
//! kebab-case key; flags override file values.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dm_bound::{inner_bound_terms, pure_strategy_dm_bounds, FactoredPmf, InnerBoundTerms};
use crate::error::{Error, Result};
use crate::game::{
    best_response_lambda, build_gamma1, gamma2_corner_ne, ne_map_with_tol, ne_report, pure_ne_clamped,
    AnalyticConditions, DEFAULT_NE_TOL,
};
use crate::gaussian::{ChannelParams, Margins};
use crate::output;
use crate::region::{
    hull_contains, region_hull, sweep_region, GridSpec, RegionSample, Scheme, DEFAULT_EVAL_CAP, DEFAULT_GRID,
};
use crate::strategy::{profile_label, Player, RatePair, PROFILES};

/// Environment variable capping worker threads (0 or unset = automatic).
pub const THREADS_ENV: &str = "KEYRATE_THREADS";

/// Directions and slack used when comparing region hulls.
pub const CONTAINMENT_DIRS: usize = 64;
pub const CONTAINMENT_SLACK: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "keyrate",
    version,
    about = "Secret-key rate regions and strategy games on the two-pair interference channel"
)]
pub struct Cli {
    /// JSON file whose keys mirror the long flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep rate regions of the pure, time-sharing and artificial-noise schemes.
    Region(RegionArgs),
    /// Analyse the 2×2 strategy game at one channel.
    Game(GameArgs),
    /// Map the equilibria of the 2×2 game over the (α1, α2) square.
    NeMap(NeMapArgs),
    /// Evaluate the discrete memoryless inner bound on a factored distribution.
    DmBound(DmBoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeArg {
    Pure,
    Ts,
    An,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ChannelArgs {
    /// Cross gain α1 into receiver 1.
    #[arg(long, allow_negative_numbers = true)]
    pub a1: Option<f64>,
    /// Cross gain α2 into receiver 2.
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    /// Power constraint P1 (linear SNR).
    #[arg(long)]
    pub p1: Option<f64>,
    /// Power constraint P2 (linear SNR).
    #[arg(long)]
    pub p2: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    /// Grid points for ρ1.
    #[arg(long)]
    pub rho_grid: Option<usize>,
    /// Grid points for each β.
    #[arg(long)]
    pub beta_grid: Option<usize>,
    /// Grid points for each λ.
    #[arg(long)]
    pub lambda_grid: Option<usize>,
    /// Fix β1 instead of sweeping it.
    #[arg(long)]
    pub beta1: Option<f64>,
    /// Fix β2 instead of sweeping it.
    #[arg(long)]
    pub beta2: Option<f64>,
    /// Refuse sweeps with more evaluations than this.
    #[arg(long)]
    pub max_evals: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GameArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long)]
    pub beta1: Option<f64>,
    #[arg(long)]
    pub beta2: Option<f64>,
    /// Payoff tolerance of the equilibrium test.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Add the best-response analysis of the artificial-noise game.
    #[arg(long)]
    pub gamma2: bool,
    /// Grid points of the best-response search.
    #[arg(long)]
    pub br_grid: Option<usize>,
    /// Report file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct NeMapArgs {
    /// Common power P1 = P2.
    #[arg(long)]
    pub p: Option<f64>,
    /// Grid points per axis.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Map file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DmBoundArgs {
    /// FactoredPmf JSON file.
    pub input: Option<PathBuf>,
    /// Report file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Config-file mirror of every flag.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigFile {
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub scheme: Option<SchemeArg>,
    pub rho_grid: Option<usize>,
    pub beta_grid: Option<usize>,
    pub lambda_grid: Option<usize>,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
    pub max_evals: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub tol: Option<f64>,
    pub gamma2: Option<bool>,
    pub br_grid: Option<usize>,
    pub p: Option<f64>,
    pub grid: Option<usize>,
    pub input: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::domain(format!("config file {}: {e}", path.display())))
    }
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Region {
        channel: ChannelParams,
        scheme: SchemeArg,
        grid: GridSpec,
        out_dir: PathBuf,
        format: OutputFormat,
    },
    Game {
        channel: ChannelParams,
        beta1: f64,
        beta2: f64,
        tol: f64,
        gamma2: bool,
        br_grid: usize,
        out: Option<PathBuf>,
    },
    NeMap {
        p: f64,
        grid_n: usize,
        tol: f64,
        out: Option<PathBuf>,
        format: OutputFormat,
    },
    DmBound {
        input: PathBuf,
        out: Option<PathBuf>,
    },
}

fn channel_from(c: &ChannelArgs, f: &ConfigFile) -> Result<ChannelParams> {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| Error::domain(format!("missing required --{name}")));
    ChannelParams::new(
        need(c.a1.or(f.a1), "a1")?,
        need(c.a2.or(f.a2), "a2")?,
        need(c.p1.or(f.p1), "p1")?,
        need(c.p2.or(f.p2), "p2")?,
    )
}

fn check_tol(tol: f64) -> Result<f64> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(Error::domain(format!("tolerance must be finite and >= 0, got {tol}")))
    }
}

fn check_beta(name: &str, b: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&b) {
        Ok(b)
    } else {
        Err(Error::domain(format!("{name} must lie in [0, 1], got {b}")))
    }
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<RunConfig> {
        let file = match &cli.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let f = &file;
        Ok(match &cli.command {
            Command::Region(a) => RunConfig::Region {
                channel: channel_from(&a.channel, f)?,
                scheme: a.scheme.or(f.scheme).unwrap_or(SchemeArg::All),
                grid: GridSpec {
                    rho: a.rho_grid.or(f.rho_grid).unwrap_or(DEFAULT_GRID),
                    beta: a.beta_grid.or(f.beta_grid).unwrap_or(DEFAULT_GRID),
                    lambda: a.lambda_grid.or(f.lambda_grid).unwrap_or(DEFAULT_GRID),
                    beta1: a.beta1.or(f.beta1).map(|b| check_beta("beta1", b)).transpose()?,
                    beta2: a.beta2.or(f.beta2).map(|b| check_beta("beta2", b)).transpose()?,
                    eval_cap: a.max_evals.or(f.max_evals).map_or(DEFAULT_EVAL_CAP, u128::from),
                },
                out_dir: a.out.clone().or(f.out.clone()).unwrap_or_else(|| PathBuf::from(".")),
                format: a.format.or(f.format).unwrap_or_default(),
            },
            Command::Game(a) => RunConfig::Game {
                channel: channel_from(&a.channel, f)?,
                beta1: check_beta("beta1", a.beta1.or(f.beta1).unwrap_or(1.0))?,
                beta2: check_beta("beta2", a.beta2.or(f.beta2).unwrap_or(1.0))?,
                tol: check_tol(a.tol.or(f.tol).unwrap_or(DEFAULT_NE_TOL))?,
                gamma2: a.gamma2 || f.gamma2.unwrap_or(false),
                br_grid: a.br_grid.or(f.br_grid).unwrap_or(1001),
                out: a.out.clone().or(f.out.clone()),
            },
            Command::NeMap(a) => RunConfig::NeMap {
                p: a.p.or(f.p).unwrap_or(1.0),
                grid_n: a.grid.or(f.grid).unwrap_or(101),
                tol: check_tol(a.tol.or(f.tol).unwrap_or(DEFAULT_NE_TOL))?,
                out: a.out.clone().or(f.out.clone()),
                format: a.format.or(f.format).unwrap_or_default(),
            },
            Command::DmBound(a) => RunConfig::DmBound {
                input: a
                    .input
                    .clone()
                    .or(f.input.clone())
                    .ok_or_else(|| Error::domain("dm-bound needs an input FactoredPmf JSON file"))?,
                out: a.out.clone().or(f.out.clone()),
            },
        })
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(io_err(path))
}

/// Writes to `path`, or to `stdout` when no path is given.
fn emit(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    match path {
        Some(p) => write_file(p, |w| body(w)),
        None => body(stdout).map_err(io_err(Path::new("<stdout>"))),
    }
}

fn say(stdout: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(stdout, "{line}").map_err(io_err(Path::new("<stdout>")))
}

fn write_region_files(dir: &Path, s: &RegionSample, format: OutputFormat) -> Result<()> {
    let name = s.scheme.as_str();
    match format {
        OutputFormat::Csv => {
            write_file(&dir.join(format!("{name}_points.csv")), |w| {
                output::write_region_csv(w, s, false)
            })?;
            write_file(&dir.join(format!("{name}_frontier.csv")), |w| {
                output::write_region_csv(w, s, true)
            })?;
            write_file(&dir.join(format!("{name}_hull.csv")), |w| {
                output::write_hull_csv(w, &s.hull)
            })
        }
        OutputFormat::Json => write_file(&dir.join(format!("{name}_region.json")), |w| {
            output::write_region_json(w, s)
        }),
    }
}

/// Sweeps the requested schemes and writes point, frontier and hull files.
pub fn cmd_region(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let RunConfig::Region {
        channel,
        scheme,
        grid,
        out_dir,
        format,
    } = cfg
    else {
        return Err(Error::domain("cmd_region needs a region configuration"));
    };
    let schemes: Vec<Scheme> = match scheme {
        SchemeArg::Pure => vec![Scheme::Pure],
        SchemeArg::Ts => vec![Scheme::Ts],
        SchemeArg::An => vec![Scheme::An],
        SchemeArg::All => Scheme::ALL.to_vec(),
    };
    // validate every sweep before touching the filesystem
    let samples = schemes
        .iter()
        .map(|&s| sweep_region(channel, s, grid))
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    for s in &samples {
        write_region_files(out_dir, s, *format)?;
        let m = s.max_rates();
        say(
            stdout,
            &format!(
                "scheme={} points={} frontier={} hull_vertices={} max_r1={} max_r2={}",
                s.scheme,
                s.points.len(),
                s.frontier.len(),
                s.hull.len(),
                output::sig12(m.r1),
                output::sig12(m.r2)
            ),
        )?;
    }
    if samples.len() == 3 {
        let (pure, ts, an) = (&samples[0], &samples[1], &samples[2]);
        let an_ts = hull_contains(&an.hull, &ts.hull, CONTAINMENT_DIRS, CONTAINMENT_SLACK);
        let ts_pure = hull_contains(&ts.hull, &pure.hull, CONTAINMENT_DIRS, CONTAINMENT_SLACK);
        let all_pts: Vec<RatePair> = samples.iter().flat_map(|s| s.points.iter().map(|p| p.rates)).collect();
        let union = region_hull(&all_pts);
        match format {
            OutputFormat::Csv => write_file(&out_dir.join("union_hull.csv"), |w| output::write_hull_csv(w, &union))?,
            OutputFormat::Json => write_file(&out_dir.join("union_hull.json"), |w| {
                serde_json::to_writer_pretty(&mut *w, &union)?;
                writeln!(w)
            })?,
        }
        say(
            stdout,
            &format!(
                "containment an_contains_ts={} ts_contains_pure={} union_hull_vertices={}",
                u8::from(an_ts),
                u8::from(ts_pure),
                union.len()
            ),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PayoffCell {
    profile: String,
    r1: f64,
    r2: f64,
    margin1: f64,
    margin2: f64,
}

#[derive(Serialize)]
struct BestResponseRow {
    player: u8,
    lambda_other: f64,
    argmax_min: f64,
    argmax_max: f64,
    max_payoff: f64,
    endpoint_payoff: f64,
    endpoint_attains: bool,
}

#[derive(Serialize)]
struct Gamma2Report {
    grid: usize,
    best_responses: Vec<BestResponseRow>,
    counterexamples: usize,
    corner_ne: Vec<String>,
    corner_ne_matches_gamma1: bool,
}

#[derive(Serialize)]
struct GameReport {
    channel: ChannelParams,
    beta1: f64,
    beta2: f64,
    tolerance: f64,
    payoffs: Vec<PayoffCell>,
    ne: Vec<String>,
    ne_clamped_rates: Vec<String>,
    analytic: AnalyticConditions,
    analytic_ne: Vec<String>,
    agree: bool,
    all_tie: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma2: Option<Gamma2Report>,
}

fn labels(ps: &[crate::strategy::Profile]) -> Vec<String> {
    ps.iter().map(|&p| profile_label(p)).collect()
}

/// Best-response responses probed for the artificial-noise game.
pub const LAMBDA_OTHER_PROBES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

pub fn cmd_game(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let RunConfig::Game {
        channel,
        beta1,
        beta2,
        tol,
        gamma2,
        br_grid,
        out,
    } = cfg
    else {
        return Err(Error::domain("cmd_game needs a game configuration"));
    };
    let g = build_gamma1(channel, *beta1, *beta2)?;
    let rep = ne_report(channel, *beta1, *beta2, *tol)?;
    let ne = rep.equilibria;
    let analytic_ne = rep.conditions.equilibria();
    let payoffs = PROFILES
        .iter()
        .map(|&p| {
            let r = g.rates(p);
            let Margins { m1, m2 } = g.margins[p.0.index()][p.1.index()];
            PayoffCell {
                profile: profile_label(p),
                r1: r.r1,
                r2: r.r2,
                margin1: m1,
                margin2: m2,
            }
        })
        .collect();
    let gamma2 = if *gamma2 {
        let mut rows = Vec::new();
        for player in [Player::One, Player::Two] {
            for &lo in &LAMBDA_OTHER_PROBES {
                let br = best_response_lambda(channel, player, lo, *br_grid)?;
                rows.push(BestResponseRow {
                    player: if player == Player::One { 1 } else { 2 },
                    lambda_other: lo,
                    argmax_min: br.argmax.iter().copied().fold(f64::INFINITY, f64::min),
                    argmax_max: br.argmax.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                    max_payoff: br.max_payoff,
                    endpoint_payoff: br.endpoint_payoff,
                    endpoint_attains: br.endpoint_attains,
                });
            }
        }
        let corner = gamma2_corner_ne(channel, *tol)?;
        Some(Gamma2Report {
            grid: *br_grid,
            counterexamples: rows.iter().filter(|r| !r.endpoint_attains).count(),
            best_responses: rows,
            corner_ne_matches_gamma1: corner == ne,
            corner_ne: labels(&corner),
        })
    } else {
        None
    };
    let report = GameReport {
        channel: *channel,
        beta1: *beta1,
        beta2: *beta2,
        tolerance: *tol,
        payoffs,
        ne: labels(&ne),
        ne_clamped_rates: labels(&pure_ne_clamped(&g, *tol)),
        analytic: rep.conditions,
        analytic_ne: labels(&analytic_ne),
        agree: rep.agree,
        all_tie: rep.all_tie,
        gamma2,
    };
    emit(out.as_deref(), stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)
    })
}

pub fn cmd_ne_map(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let RunConfig::NeMap {
        p,
        grid_n,
        tol,
        out,
        format,
    } = cfg
    else {
        return Err(Error::domain("cmd_ne_map needs an ne-map configuration"));
    };
    let map = ne_map_with_tol(*p, *grid_n, *tol)?;
    emit(out.as_deref(), stdout, |w| match format {
        OutputFormat::Csv => output::write_ne_map_csv(w, &map),
        OutputFormat::Json => output::write_ne_map_json(w, &map),
    })?;
    let line = format!("cells={} disagreements={}", map.cells.len(), map.disagreements());
    // keep stdout clean when it carries the map itself
    if out.is_some() {
        say(stdout, &line)
    } else {
        say(stderr, &line)
    }
}

#[derive(Serialize)]
struct DmReport {
    rates: RatePair,
    terms: InnerBoundTerms,
    forward_only: bool,
    forward_rates: RatePair,
    pure_strategy_bounds: Vec<(String, RatePair)>,
}

pub fn cmd_dm_bound(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let RunConfig::DmBound { input, out } = cfg else {
        return Err(Error::domain("cmd_dm_bound needs a dm-bound configuration"));
    };
    let f = FactoredPmf::from_json(&read(input)?)?;
    let terms = inner_bound_terms(&f)?;
    let pure = PROFILES
        .iter()
        .map(|&(s1, s2)| Ok((profile_label((s1, s2)), pure_strategy_dm_bounds(&f, s1, s2)?)))
        .collect::<Result<Vec<_>>>()?;
    let report = DmReport {
        rates: terms.rates(),
        terms,
        forward_only: f.forward_only(),
        forward_rates: terms.forward_rates(),
        pure_strategy_bounds: pure,
    };
    emit(out.as_deref(), stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)
    })
}

fn configure_threads() {
    let n = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    // a pool may already exist when called repeatedly in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cfg {
        RunConfig::Region { .. } => cmd_region(cfg, stdout),
        RunConfig::Game { .. } => cmd_game(cfg, stdout),
        RunConfig::NeMap { .. } => cmd_ne_map(cfg, stdout, stderr),
        RunConfig::DmBound { .. } => cmd_dm_bound(cfg, stdout),
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the process exit code. Errors go to `stderr` as one line.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return 1;
        }
        Err(e) => {
            // --help and --version
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    configure_threads();
    let result = RunConfig::resolve(&cli).and_then(|cfg| execute(&cfg, stdout, stderr));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "keyrate: {e}");
            e.exit_code()
        }
    }
}
