//! Command-line front end: argument parsing, validation, and dispatch to the
//! solver and its exporters.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use triangulene::edge::edge_basis;
use triangulene::export::{self, NamedState};
use triangulene::oracle::{chain_oracle, chain_reference, multiset_deviation};
use triangulene::spectrum::{analytic_spectrum_with_tolerance, in_sector, LEVEL_TOLERANCE};
use triangulene::states::{extend_state, periodic_basis, StateVector};
use triangulene::svg::render_states;
use triangulene::verify::{verify, Tolerances};
use triangulene::{Band, Branch, QuantumNumbers, StateLabel, TrianguleneLattice, ORACLE_MAX_N};

pub const EXIT_OK: u8 = 0;
pub const EXIT_OTHER: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solver(triangulene::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Solver(_) | CliError::Io { .. } => EXIT_OTHER,
        }
    }
}

impl From<triangulene::Error> for CliError {
    fn from(e: triangulene::Error) -> Self {
        use triangulene::Error as E;
        match e {
            E::Size(_) | E::Domain { .. } | E::Layer { .. } | E::OracleSize { .. } => CliError::Usage(e.to_string()),
            other => CliError::Solver(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BandArg {
    #[value(name = "plus", alias = "+")]
    Plus,
    #[value(name = "minus", alias = "-")]
    Minus,
}

impl From<BandArg> for Band {
    fn from(b: BandArg) -> Self {
        match b {
            BandArg::Plus => Band::Plus,
            BandArg::Minus => Band::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Site list and bonds of the billiard
    Lattice,
    /// Analytic spectrum with multiplicities and labels
    Spectrum,
    /// Periodic eigenstates (all of them, or those matching --q/--p/--band/--branch)
    States,
    /// The N-1 orthonormal zero-energy edge states
    Edges,
    /// Compare every analytic result against dense diagonalization
    Verify,
    /// A periodic state extended over a patch of the infinite sheet
    Tessellate,
    /// Spectrum of the open chain with --n sites
    Chain,
}

/// Exact spectrum and eigenstates of triangular graphene billiards.
#[derive(Debug, Parser)]
#[command(name = "triangulene", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Billiard size N (sites: (N-1)^2); chain length for `chain`
    #[arg(long, global = true)]
    pub n: Option<usize>,

    #[arg(long, global = true)]
    pub q: Option<i64>,

    #[arg(long, global = true)]
    pub p: Option<i64>,

    #[arg(long, global = true, value_enum)]
    pub band: Option<BandArg>,

    /// 1 or 2
    #[arg(long, global = true)]
    pub branch: Option<u8>,

    /// Edge-state layer
    #[arg(long, global = true)]
    pub l: Option<usize>,

    /// C3 representation of edge states: -1, 0 or 1
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub qrep: Option<i32>,

    /// Patch size in billiard cells per direction
    #[arg(long, global = true, default_value_t = 3)]
    pub supercell: usize,

    /// Level tolerance for `spectrum`, spectral tolerance for `verify`
    #[arg(long, global = true, env = "TRIANGULENE_TOL")]
    pub tol: Option<f64>,

    /// Output file; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub q: Option<i64>,
    pub p: Option<i64>,
    pub band: Option<Band>,
    pub branch: Option<Branch>,
    pub layer: Option<usize>,
    pub qrep: Option<i32>,
    pub supercell: usize,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let n = cli.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
        let min = if cli.command == Command::Chain { 1 } else { 2 };
        if n < min {
            return Err(CliError::Usage(format!("--n must be at least {min}, got {n}")));
        }
        if let Some(t) = cli.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {t}")));
            }
        }
        let branch = match cli.branch {
            None => None,
            Some(1) => Some(Branch::One),
            Some(2) => Some(Branch::Two),
            Some(b) => return Err(CliError::Usage(format!("--branch must be 1 or 2, got {b}"))),
        };
        if let Some(q) = cli.qrep {
            if !(-1..=1).contains(&q) {
                return Err(CliError::Usage(format!("--qrep must be -1, 0 or 1, got {q}")));
            }
        }
        if cli.supercell < 2 {
            return Err(CliError::Usage(format!("--supercell must be at least 2, got {}", cli.supercell)));
        }
        let format = cli.format.unwrap_or(match cli.command {
            Command::Spectrum | Command::Lattice | Command::Verify | Command::Chain => Format::Json,
            _ => Format::Csv,
        });
        Ok(RunConfig {
            command: cli.command,
            n,
            q: cli.q,
            p: cli.p,
            band: cli.band.map(Band::from),
            branch,
            layer: cli.l,
            qrep: cli.qrep,
            supercell: cli.supercell,
            tol: cli.tol,
            out: cli.out,
            format,
        })
    }
}

/// What a run produced. A failed verification still carries its report.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub text: String,
    pub exit_code: u8,
}

fn unsupported(cfg: &RunConfig) -> CliError {
    CliError::Usage(format!("format {:?} is not available for {:?}", cfg.format, cfg.command).to_lowercase())
}

fn named(states: &[StateVector]) -> Vec<NamedState> {
    states
        .iter()
        .map(|s| NamedState { label: s.label.to_string(), energy: s.energy, amplitudes: s.amplitudes.clone() })
        .collect()
}

fn emit_states(cfg: &RunConfig, lat: &TrianguleneLattice, states: &[NamedState]) -> String {
    match cfg.format {
        Format::Csv => export::states_csv(lat, states),
        Format::Json => export::states_json(lat, states),
        Format::Svg => render_states(lat, states),
    }
}

fn run_states(cfg: &RunConfig) -> Result<String, CliError> {
    if let (Some(q), Some(p)) = (cfg.q, cfg.p) {
        if !in_sector(q, p, cfg.n) {
            return Err(triangulene::Error::Domain { q, p, n: cfg.n }.into());
        }
        if q == p && cfg.branch == Some(Branch::One) {
            return Err(CliError::Usage(format!("branch 1 vanishes on the axis q = p = {q}")));
        }
    }
    let lat = TrianguleneLattice::build(cfg.n)?;
    let selected: Vec<StateVector> = periodic_basis(&lat)?
        .into_iter()
        .filter(|s| match s.label {
            StateLabel::Periodic(qn) => {
                cfg.q.is_none_or(|q| q == qn.q)
                    && cfg.p.is_none_or(|p| p == qn.p)
                    && cfg.band.is_none_or(|b| b == qn.band)
                    && cfg.branch.is_none_or(|b| b == qn.branch)
            }
            StateLabel::Edge(_) => false,
        })
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage("no periodic state matches the selection".into()));
    }
    Ok(emit_states(cfg, &lat, &named(&selected)))
}

fn run_edges(cfg: &RunConfig) -> Result<String, CliError> {
    let lat = TrianguleneLattice::build(cfg.n)?;
    let basis = edge_basis(&lat)?;
    if let Some(l) = cfg.layer {
        let layers = triangulene::layer_count(cfg.n);
        if l == 0 || l > layers {
            return Err(triangulene::Error::Layer { layer: l, layers }.into());
        }
    }
    // without a representation filter, svg shows the real orthonormal view
    if cfg.format == Format::Svg && cfg.qrep.is_none() {
        let real: Vec<NamedState> = basis
            .real_view()
            .into_iter()
            .filter(|s| cfg.layer.is_none_or(|l| l == s.layer))
            .map(|s| NamedState {
                label: s.name(),
                energy: 0.0,
                amplitudes: s.amplitudes.iter().map(|&x| x.into()).collect(),
            })
            .collect();
        return Ok(render_states(&lat, &real));
    }
    let selected: Vec<StateVector> = basis
        .states
        .into_iter()
        .filter(|s| match s.label {
            StateLabel::Edge(e) => cfg.layer.is_none_or(|l| l == e.layer) && cfg.qrep.is_none_or(|q| q == e.q),
            StateLabel::Periodic(_) => false,
        })
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage("no edge state matches the selection".into()));
    }
    let states: Vec<NamedState> = selected
        .iter()
        .map(|s| NamedState {
            label: match s.label {
                StateLabel::Edge(e) => e.to_string(),
                other => other.to_string(),
            },
            energy: 0.0,
            amplitudes: s.amplitudes.clone(),
        })
        .collect();
    Ok(emit_states(cfg, &lat, &states))
}

fn run_tessellate(cfg: &RunConfig) -> Result<String, CliError> {
    let (Some(q), Some(p)) = (cfg.q, cfg.p) else {
        return Err(CliError::Usage("tessellate needs --q and --p".into()));
    };
    let branch = cfg.branch.unwrap_or(if q == p { Branch::Two } else { Branch::One });
    let qn = QuantumNumbers::new(q, p, cfg.band.unwrap_or(Band::Plus), branch, cfg.n)?;
    let window = triangulene::Window::supercells(cfg.n, cfg.supercell);
    let field = extend_state(&qn, cfg.n, &window)?;
    match cfg.format {
        Format::Csv => Ok(export::field_csv(&field)),
        Format::Json => Ok(export::field_json(&field, &qn.to_string())),
        Format::Svg => Err(unsupported(cfg)),
    }
}

fn run_chain(cfg: &RunConfig) -> Result<String, CliError> {
    let chain = chain_reference(cfg.n)?;
    let oracle = chain_oracle(cfg.n)?;
    match cfg.format {
        Format::Csv => Ok(export::chain_csv(&chain, &oracle)),
        Format::Json => Ok(export::chain_json(&chain, &oracle, multiset_deviation(&chain.values, &oracle))),
        Format::Svg => Err(unsupported(cfg)),
    }
}

/// Executes one command and returns its output text and exit status.
pub fn run(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let ok = |text| Ok(RunOutput { text, exit_code: EXIT_OK });
    match cfg.command {
        Command::Lattice => {
            let lat = TrianguleneLattice::build(cfg.n)?;
            match cfg.format {
                Format::Json => ok(export::lattice_json(&lat)),
                Format::Csv => {
                    let mut out = String::from("index,sub,n1,n2,x,y\n");
                    for (i, (s, p)) in lat.sites().iter().zip(lat.positions()).enumerate() {
                        out.push_str(&format!(
                            "{i},{},{},{},{},{}\n",
                            s.sublattice.as_str(),
                            s.n1,
                            s.n2,
                            export::format_float(p[0]),
                            export::format_float(p[1])
                        ));
                    }
                    ok(out)
                }
                Format::Svg => {
                    let uniform = NamedState {
                        label: format!("N={}", cfg.n),
                        energy: 0.0,
                        amplitudes: vec![1.0.into(); lat.len()],
                    };
                    ok(render_states(&lat, &[uniform]))
                }
            }
        }
        Command::Spectrum => {
            let table = analytic_spectrum_with_tolerance(cfg.n, cfg.tol.unwrap_or(LEVEL_TOLERANCE))?;
            match cfg.format {
                Format::Json => ok(export::spectrum_json(&table)),
                Format::Csv => ok(export::spectrum_csv(cfg.n)),
                Format::Svg => Err(unsupported(cfg)),
            }
        }
        Command::States => ok(run_states(cfg)?),
        Command::Edges => ok(run_edges(cfg)?),
        Command::Verify => {
            if cfg.format != Format::Json {
                return Err(unsupported(cfg));
            }
            if cfg.n > ORACLE_MAX_N {
                return Err(CliError::Usage(format!(
                    "verify is limited to N <= {ORACLE_MAX_N} (dense diagonalization), got {}",
                    cfg.n
                )));
            }
            let tol = cfg.tol.map_or_else(Tolerances::default, Tolerances::with_spectral);
            let report = verify(cfg.n, &tol)?;
            let text = export::json_value(&report);
            let exit_code = if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok(RunOutput { text, exit_code })
        }
        Command::Tessellate => ok(run_tessellate(cfg)?),
        Command::Chain => ok(run_chain(cfg)?),
    }
}

/// Runs and writes the output to `--out` or standard output.
pub fn execute(cfg: &RunConfig) -> Result<u8, CliError> {
    let out = run(cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => print!("{}", out.text),
    }
    if out.exit_code == EXIT_VERIFY_FAILED {
        eprintln!("verification failed at N = {}", cfg.n);
    }
    Ok(out.exit_code)
}
