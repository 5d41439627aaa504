//! Command-line interface.

mod checks;

pub use checks::{CheckKind, CheckOutcome, CheckParams, CheckRegistry};

use std::ffi::OsString;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use thiserror::Error;

use crate::dt::{integer_dt, AttractorTable, DtContext, DtError, FCache};
use crate::flow::{flow_tree_scalar, FlowTreeError, StrategyRegistry};
use crate::lattice::{build_aux, Covector, DimVec, LatticeError, Quiver, SampleParams, DEFAULT_BUDGET};
use crate::scattering::{initial_from_table, reconstruct_rank2};
use crate::trees::{enumerate_trees, full_mask, tree_count};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Genericity(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Genericity(_) => 3,
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FlowTreeError> for CliError {
    fn from(e: FlowTreeError) -> Self {
        CliError::Genericity(e.to_string())
    }
}

impl From<DtError> for CliError {
    fn from(e: DtError) -> Self {
        match e {
            DtError::Flow(f) => f.into(),
            DtError::NotPolynomial { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "flowtree", version, about = "Refined DT invariants of quivers via the flow tree formula")]
struct Cli {
    /// Seed for every sampled perturbation
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Resampling attempts before giving up
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u32,
    /// Directory for the on-disk F cache
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the binary trees with r labelled leaves
    Trees { r: usize },
    /// Evaluate F for a list of classes at theta
    #[command(name = "F")]
    F(FArgs),
    /// Rational and integer DT invariants of a class at theta
    Dt(DtArgs),
    /// Independent scattering-diagram computations
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Run a property check
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct QuiverArgs {
    /// Quiver file with `vertices k` and `arrow i j count` lines
    #[arg(long, conflicts_with = "kronecker", required_unless_present = "kronecker")]
    quiver: Option<PathBuf>,
    /// Use the Kronecker quiver with m arrows instead of a file
    #[arg(long)]
    kronecker: Option<u64>,
}

#[derive(Args, Debug)]
struct FArgs {
    #[command(flatten)]
    quiver: QuiverArgs,
    /// Classes of the constituents, e.g. `1,0 0,1`
    #[arg(long, num_args = 1.., required = true)]
    gammas: Vec<String>,
    /// Stability covector, e.g. `1,-1`
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    #[arg(long, default_value = "omega")]
    mode: String,
}

#[derive(Args, Debug)]
struct DtArgs {
    #[command(flatten)]
    quiver: QuiverArgs,
    /// Dimension vector, e.g. `2,1`
    #[arg(long)]
    gamma: String,
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    /// Attractor table; the acyclic default when omitted
    #[arg(long)]
    attractor: Option<PathBuf>,
    #[arg(long, default_value = "omega")]
    mode: String,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Reconstruct the consistent rank-2 diagram of the m-Kronecker pairing
    Rank2 {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long = "max-dim", default_value_t = 6)]
        max_dim: i64,
        #[arg(long)]
        attractor: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// One of the registered check kinds
    kind: String,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, default_value_t = 5)]
    trials: u32,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    m: i64,
    #[arg(long = "max-dim", default_value_t = 6)]
    max_dim: i64,
    #[arg(long = "max-arrows", default_value_t = 2)]
    max_arrows: u64,
}

/// Global settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: u32,
    pub cache: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn params(&self) -> SampleParams {
        SampleParams { seed: self.seed, budget: self.budget }
    }

    fn open_cache(&self) -> Result<Option<FCache>, CliError> {
        self.cache
            .as_ref()
            .map(|d| FCache::on_disk(d).map_err(|e| CliError::Input(format!("cache {}: {e}", d.display()))))
            .transpose()
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_quiver(a: &QuiverArgs) -> Result<Quiver, CliError> {
    match (&a.quiver, a.kronecker) {
        (_, Some(m)) => Ok(Quiver::kronecker(m)),
        (Some(p), None) => Ok(Quiver::parse(&read(p)?)?),
        (None, None) => Err(CliError::Input("one of --quiver or --kronecker is required".into())),
    }
}

fn load_table(p: &Option<PathBuf>) -> Result<AttractorTable, CliError> {
    match p {
        Some(p) => Ok(AttractorTable::parse(&read(p)?)?),
        None => Ok(AttractorTable::acyclic()),
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Internal(format!("write: {e}")))
}

fn kv(cfg: &RunConfig, key: &str, text_key: &str, value: &str) -> String {
    match cfg.format {
        Format::Text if text_key.is_empty() => value.to_string(),
        Format::Text => format!("{text_key} = {value}"),
        Format::Machine => format!("{key}={value}"),
    }
}

fn cmd_trees(r: usize, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    if !(1..=10).contains(&r) {
        return Err(CliError::Input(format!("r must be between 1 and 10, got {r}")));
    }
    let sep = if cfg.format == Format::Text { " " } else { "=" };
    emit(out, &format!("count{sep}{}", tree_count(r)))?;
    for t in enumerate_trees(full_mask(r)) {
        match cfg.format {
            Format::Text => emit(out, &t.to_string())?,
            Format::Machine => emit(out, &format!("tree={t}"))?,
        }
    }
    Ok(true)
}

fn cmd_f(a: &FArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let q = load_quiver(&a.quiver)?;
    let gammas: Vec<DimVec> = a.gammas.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let theta: Covector = a.theta.parse()?;
    let reg = StrategyRegistry::default();
    let strategy = reg.get(&a.mode).map_err(|e| CliError::Input(e.to_string()))?;
    let aux = build_aux(&q, &gammas, &theta)?;
    if !aux.alpha.eval_mask(aux.full()).is_zero() {
        return Err(CliError::Input(format!("theta {theta} is not on the wall of the total class")));
    }
    let compute = || flow_tree_scalar(&aux, strategy, &cfg.params());
    let f = match cfg.open_cache()? {
        Some(c) => c.get_or_compute(&aux, compute)?,
        None => compute()?,
    };
    emit(out, &kv(cfg, "F", "", &f.to_string()))?;
    Ok(true)
}

fn cmd_dt(a: &DtArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let q = load_quiver(&a.quiver)?;
    let gamma: DimVec = a.gamma.parse()?;
    let theta: Covector = a.theta.parse()?;
    let table = load_table(&a.attractor)?;
    let reg = StrategyRegistry::default();
    let strategy = reg.get(&a.mode).map_err(|e| CliError::Input(e.to_string()))?;
    let cache = cfg.open_cache()?;
    let ctx = DtContext { strategy, params: cfg.params(), cache: cache.as_ref() };
    let (bar, integral) = integer_dt(&q, &gamma, &theta, &table, &ctx)?;
    emit(out, &kv(cfg, "omega_bar", "Omega_bar", &bar.to_string()))?;
    match integral {
        Ok(v) => emit(out, &kv(cfg, "omega", "Omega", &v.to_string()))?,
        Err(e) => eprintln!("warning: {e}"),
    }
    Ok(true)
}

fn cmd_oracle(which: &OracleCmd, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let OracleCmd::Rank2 { m, max_dim, attractor } = which;
    if *max_dim < 1 {
        return Err(CliError::Input("--max-dim must be positive".into()));
    }
    let table = load_table(attractor)?;
    let diag = reconstruct_rank2(*m, &initial_from_table(&table, *max_dim), *max_dim);
    for r in &diag.rays {
        match cfg.format {
            Format::Text => emit(out, &format!("ray {},{} : {}", r.dir.0, r.dir.1, r.elt))?,
            Format::Machine => emit(out, &format!("ray={},{}\tvalue={}", r.dir.0, r.dir.1, r.elt))?,
        }
    }
    Ok(true)
}

fn cmd_check(a: &CheckArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let reg = CheckRegistry::default();
    let kind = reg.get(&a.kind).ok_or_else(|| {
        CliError::Input(format!("unknown check {:?} (known: {})", a.kind, reg.names().join(", ")))
    })?;
    let p = CheckParams { r: a.r, trials: a.trials, m: a.m, max_dim: a.max_dim, max_arrows: a.max_arrows };
    let outcome = kind.run(&p, cfg)?;
    let line = match (&outcome, cfg.format) {
        (CheckOutcome::Pass(d), Format::Text) => format!("PASS {} {d}", kind.name()),
        (CheckOutcome::Fail(l), Format::Text) => format!("FAIL {} {l}", kind.name()),
        (CheckOutcome::Pass(d), Format::Machine) => format!("check={}\tstatus=pass\t{d}", kind.name()),
        (CheckOutcome::Fail(l), Format::Machine) => format!("check={}\tstatus=fail\tlocus={l}", kind.name()),
    };
    emit(out, &line)?;
    Ok(matches!(outcome, CheckOutcome::Pass(_)))
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return 1;
        }
    }
    let cfg = RunConfig { seed: cli.seed, budget: cli.budget, cache: cli.cache.clone(), format: cli.format };
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match &cli.cmd {
        Command::Trees { r } => cmd_trees(*r, &cfg, &mut out),
        Command::F(a) => cmd_f(a, &cfg, &mut out),
        Command::Dt(a) => cmd_dt(a, &cfg, &mut out),
        Command::Oracle { which } => cmd_oracle(which, &cfg, &mut out),
        Command::Check(a) => cmd_check(a, &cfg, &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => 0,
        (Ok(false), Ok(())) => 1,
        (Ok(_), Err(e)) => {
            eprintln!("error: write: {e}");
            1
        }
        (Err(e), _) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}
