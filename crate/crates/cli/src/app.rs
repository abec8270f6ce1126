//! Command-line front end.
//!
//! Exit codes: `0` when every check passes, `1` when any check fails or errors, `2`
//! for usage errors and unreadable inputs.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use qspread_core::qis::{build_block_rep, quantum_extension, RepKind, Representation};
use qspread_core::qperm::{check_magic_unitary, permutation_rep};
use qspread_core::report::Param;
use qspread_core::{CheckReport, C64};

use crate::config::{Config, CONFIG_ENV};
use crate::format::{write_reports, RepDocument};
use crate::suites;

const EXIT_PASS: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qspread", version, about = "Exact and numerical checks for free independence and quantum distributional symmetries")]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ConfigArg {
    /// Suite configuration (JSON); built-in defaults when absent.
    #[arg(long, env = CONFIG_ENV, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

impl ConfigArg {
    fn load(&self) -> anyhow::Result<Config> {
        match &self.config {
            Some(path) => Config::load(path),
            None => Ok(Config::default()),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Non-crossing partitions.
    #[command(subcommand)]
    Nc(NcCommand),
    /// Quantum increasing sequences A_i(k, n).
    #[command(subcommand)]
    Qis(QisCommand),
    /// Quantum permutations A_s(n).
    #[command(subcommand)]
    Qperm(QpermCommand),
    /// Quantum exchangeability and spreadability.
    #[command(subcommand)]
    Inv(InvCommand),
    /// The Möbius-weighted state and the finite-n reconstruction.
    #[command(subcommand)]
    Wg(WgCommand),
    /// Batch runs.
    #[command(subcommand)]
    Suite(SuiteCommand),
    /// Write representation documents.
    #[command(subcommand)]
    Rep(RepCommand),
}

#[derive(Debug, Subcommand)]
pub enum NcCommand {
    /// Compare |NC(m')| with Catalan numbers for m' ≤ m.
    Enumerate {
        #[arg(long)]
        m: usize,
    },
    /// Möbius closure identities on NC(m) and μ(0, 1).
    Mobius {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum QisCommand {
    /// Defining relations. Without --rep or --theta every classical point of I(k, n) is checked exactly.
    Relations {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Representation document to check.
        #[arg(long, conflicts_with = "theta")]
        rep: Option<PathBuf>,
        /// Angle of the two-projection A_i(2, 4) family.
        #[arg(long)]
        theta: Option<f64>,
        /// Override the document's tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Extension to A_s(n). Without --rep or --theta every classical point of I(k, n) is checked exactly.
    Extend {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "theta")]
        rep: Option<PathBuf>,
        #[arg(long)]
        theta: Option<f64>,
        /// Tolerance of the magic-unitary check on the extension.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Also write the extended representation to this path.
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum QpermCommand {
    /// Magic-unitary relations of a representation document.
    Magic {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum InvCommand {
    /// Configured laws against A_s(n) representations, plus the negative control.
    Exchangeable(ConfigArg),
    /// Configured laws against A_i(k, n) representations, directly and by pullback.
    Spreadable(ConfigArg),
}

#[derive(Debug, Subcommand)]
pub enum WgCommand {
    /// ψ against the free projection oracle for all k' ≤ k, n' ≤ n, m ≤ mmax.
    Psi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mmax: usize,
        /// Also test the Gram matrix of words up to this length for positivity.
        #[arg(long)]
        gram: Option<usize>,
    },
    /// Unit identity and finite-n reconstruction.
    Reconstruct(ConfigArg),
}

#[derive(Debug, Subcommand)]
pub enum SuiteCommand {
    /// Every configured check.
    All(ConfigArg),
}

#[derive(Debug, Subcommand)]
pub enum RepCommand {
    /// Two-projection representation of A_i(2, 4), or its extension to A_s(4).
    TwoProjection {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        extend: bool,
    },
    /// A_i(k, kn) from k seeded projection-valued measures of size n on C^dim.
    Block {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        extend: bool,
    },
    /// Permutation matrix representation, e.g. `--pi 2,3,1`.
    Permutation {
        #[arg(long, value_delimiter = ',')]
        pi: Vec<usize>,
    },
}

enum Output {
    Reports(Vec<CheckReport>),
    Document(String),
}

type RepArg = (Representation<C64>, Vec<(&'static str, Param)>, u64);

fn rep_arg(k: usize, n: usize, rep: &Option<PathBuf>, theta: Option<f64>) -> anyhow::Result<Option<RepArg>> {
    if let Some(path) = rep {
        let doc = RepDocument::load(path)?;
        let r = doc.to_rep()?;
        if r.kind() != (RepKind::Increasing { k, n }) {
            bail!("{} does not hold an A_i({k}, {n}) representation", path.display());
        }
        let params = vec![("rep", Param::from(path.display().to_string()))];
        return Ok(Some((r, params, doc.seed.unwrap_or(0))));
    }
    if let Some(theta) = theta {
        if (k, n) != (2, 4) {
            bail!("--theta selects the A_i(2, 4) family; got k = {k}, n = {n}");
        }
        let params = vec![("family", Param::from("two_projection")), ("theta", theta.into())];
        return Ok(Some((suites::two_projection(theta, 1e-12)?, params, 0)));
    }
    Ok(None)
}

fn execute(cli: &Cli) -> anyhow::Result<Output> {
    let reports = match &cli.command {
        Command::Nc(NcCommand::Enumerate { m }) => vec![suites::nc_enumerate(*m)],
        Command::Nc(NcCommand::Mobius { m }) => vec![suites::nc_mobius(*m)],
        Command::Qis(QisCommand::Relations { k, n, rep, theta, tolerance }) => match rep_arg(*k, *n, rep, *theta)? {
            Some((r, params, seed)) => {
                let r = match tolerance {
                    Some(t) => r.with_tolerance(*t),
                    None => r,
                };
                vec![suites::relations_check(&r, &params, seed)]
            }
            None => vec![suites::classical_relations(&[(*k, *n)])],
        },
        Command::Qis(QisCommand::Extend { k, n, rep, theta, tolerance, save }) => match rep_arg(*k, *n, rep, *theta)? {
            Some((r, params, seed)) => {
                if let Some(path) = save {
                    let ext = quantum_extension(&r)?;
                    let doc = RepDocument::from_rep(&ext, None, Some(format!("extension of A_i({k}, {n})")));
                    std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n").with_context(|| format!("writing {}", path.display()))?;
                }
                vec![suites::extension_check(&r, &params, seed, *tolerance)]
            }
            None => vec![suites::classical_extension(&[(*k, *n)])],
        },
        Command::Qperm(QpermCommand::Magic { rep, tolerance }) => {
            let doc = RepDocument::load(rep)?;
            let mut r = doc.to_rep()?;
            if let Some(t) = tolerance {
                r = r.with_tolerance(*t);
            }
            let report = check_magic_unitary(&r).unwrap_or_else(|e| CheckReport::error("qperm.magic", e.to_string()));
            vec![report.with_param("rep", rep.display().to_string()).with_seed(doc.seed.unwrap_or(0))]
        }
        Command::Inv(InvCommand::Exchangeable(c)) => suites::exchangeable(&c.load()?),
        Command::Inv(InvCommand::Spreadable(c)) => suites::spreadable(&c.load()?),
        Command::Wg(WgCommand::Psi { k, n, mmax, gram }) => {
            let mut out = vec![suites::psi(*k, *n, *mmax)];
            if let Some(len) = gram {
                out.push(suites::gram(*k, *n, *len));
            }
            out
        }
        Command::Wg(WgCommand::Reconstruct(c)) => suites::reconstruct(&c.load()?),
        Command::Suite(SuiteCommand::All(c)) => suites::all(&c.load()?),
        Command::Rep(cmd) => return rep_document(cmd).map(Output::Document),
    };
    Ok(Output::Reports(reports))
}

fn rep_document(cmd: &RepCommand) -> anyhow::Result<String> {
    let doc = match cmd {
        RepCommand::TwoProjection { theta, extend } => {
            let mut r = suites::two_projection(*theta, 1e-12)?;
            if *extend {
                r = quantum_extension(&r)?.with_tolerance(1e-10);
            }
            RepDocument::from_rep(&r, None, Some(format!("two-projection family at theta = {theta}")))
        }
        RepCommand::Block { k, n, dim, seed, extend } => {
            let mut r = build_block_rep(*k, *n, *dim, *seed)?;
            if *extend {
                r = quantum_extension(&r)?.with_tolerance(1e-10);
            }
            RepDocument::from_rep(&r, Some(*seed), Some(format!("block representation k = {k}, n = {n}, dim = {dim}")))
        }
        RepCommand::Permutation { pi } => RepDocument::from_rep(&permutation_rep(pi)?, None, Some(format!("permutation {pi:?}"))),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn emit(out: &Option<PathBuf>, output: &Output) -> anyhow::Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    match output {
        Output::Reports(reports) => write_reports(&mut sink, reports)?,
        Output::Document(text) => {
            sink.write_all(text.as_bytes())?;
            sink.flush()?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = emit(&cli.out, &output) {
        eprintln!("error: {e:#}");
        return EXIT_USAGE;
    }
    match &output {
        Output::Reports(reports) if !suites::all_passed(reports) => EXIT_FAIL,
        _ => EXIT_PASS,
    }
}
