//! `axcheck`: enumerate models of axiom systems and report on their
//! metatheory.
//!
//! Exit status: 0 on success (whatever the verdicts), 2 for parse or type
//! errors, 3 when a type is too large for the quantifier cap, 4 for usage
//! errors, 1 otherwise.

mod config;
mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use axcheck_core::meta::{Analysis, Evidence, Judgment, ModelRef};
use axcheck_core::parser::{self, Elaborated};
use axcheck_core::{are_isomorphic, IsoMode, ModelAssignment, Universe};
use clap::{Args, Parser, Subcommand};

use config::{load_uni, Overrides, RunConfig};
use report::{ModelListing, Report, SystemId};

/// Bad flags, bad config, or indices out of range.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(name = "axcheck", version, about = "Finite model analysis of typed axiom systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the models of a system.
    Models(Common),
    /// Satisfiability, consistency, monomorphy, forkability, decidability,
    /// Hilbert completeness.
    Meta(Common),
    /// Look for an isomorphism between two models.
    Iso {
        #[command(flatten)]
        common: Common,
        /// Indices into the model list (as printed by `models`).
        #[arg(long, num_args = 2, value_names = ["I", "J"], conflicts_with_all = ["left", "right"])]
        pair: Option<Vec<usize>>,
        /// A model literal, one value per primitive sign separated by `;`.
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
    },
    /// Check forking at a formula, or search for one up to --bound nodes.
    Fork {
        #[command(flatten)]
        common: Common,
        /// Formula over the system's primitive signs.
        #[arg(long)]
        g: Option<String>,
    },
    /// Models, all judgments, and the forking search in one report.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// An `.axs` file holding one system.
    file: PathBuf,
    /// Number of individuals.
    #[arg(long)]
    n: Option<u32>,
    /// Isomorphism notion: tarski (whole domain) or carnap (occurring individuals).
    #[arg(long)]
    mode: Option<IsoMode>,
    /// Largest tuple space a quantified type may have.
    #[arg(long)]
    cap: Option<u64>,
    /// Size bound for formula search.
    #[arg(long)]
    bound: Option<usize>,
    /// Models to print.
    #[arg(long)]
    limit: Option<usize>,
    /// `key=value` defaults, overridden by flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Zero the timing field so output depends only on the inputs.
    #[arg(long)]
    deterministic: bool,
}

struct Loaded {
    elaborated: Elaborated,
    universe: Universe,
    config: RunConfig,
    id: SystemId,
    json: bool,
    deterministic: bool,
    started: Instant,
}

impl Loaded {
    fn analysis(&self) -> Analysis<'_> {
        Analysis::new(&self.universe, &self.elaborated.system, self.config.mode)
    }

    fn report(&self, command: &str, judgments: Vec<Judgment>) -> Report {
        Report {
            command: command.to_string(),
            config: self.config.clone(),
            system: self.id.clone(),
            judgments,
            models: None,
            gabel: None,
            timing_ms: if self.deterministic { 0 } else { self.started.elapsed().as_millis() as u64 },
        }
    }
}

fn load(common: &Common) -> Result<Loaded> {
    let started = Instant::now();
    let flags = Overrides {
        n: common.n,
        mode: common.mode,
        cap: common.cap,
        bound: common.bound,
        limit: common.limit,
        json: common.json.then_some(true),
        jobs: common.jobs,
    };
    let file = match &common.config {
        Some(path) => load_uni(path)?,
        None => Overrides::default(),
    };
    let merged = flags.over(file);
    let config = merged.resolve()?;
    if let Some(jobs) = merged.jobs {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let bytes = read(&common.file)?;
    let text = String::from_utf8_lossy(&bytes);
    let elaborated = parser::parse_elaborated(&text).with_context(|| format!("in {}", common.file.display()))?;
    let id = SystemId::new(elaborated.system.name(), &bytes);
    Ok(Loaded {
        universe: Universe::with_cap(config.n, config.cap),
        elaborated,
        config,
        id,
        json: merged.json.unwrap_or(false),
        deterministic: common.deterministic,
        started,
    })
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())).into())
}

fn meta_judgments(a: &Analysis<'_>, bound: usize) -> Result<Vec<Judgment>> {
    Ok(vec![
        a.satisfiable()?,
        a.carnap_inconsistent()?,
        a.monomorphic()?,
        a.forkable_semantic()?,
        a.decidable(bound)?,
        a.hilbert_complete()?,
    ])
}

fn listing(a: &Analysis<'_>, limit: usize) -> Result<ModelListing> {
    let ms = a.models()?;
    let sig = a.system.signature();
    Ok(ModelListing { count: ms.len(), shown: ms.iter().take(limit).map(|m| ModelRef::new(m, sig)).collect() })
}

fn pick_models(
    ld: &Loaded,
    pair: Option<&[usize]>,
    left: Option<&str>,
    right: Option<&str>,
) -> Result<(ModelAssignment, ModelAssignment)> {
    let sig = ld.elaborated.system.signature();
    match (pair, left, right) {
        (Some(&[i, j]), _, _) => {
            let a = ld.analysis();
            let ms = a.models()?;
            let get = |k: usize| {
                ms.models.get(k).cloned().ok_or_else(|| {
                    UsageError(format!("model index {k} out of range ({} models at n={})", ms.len(), ld.config.n))
                })
            };
            Ok((get(i)?, get(j)?))
        }
        (None, Some(l), Some(r)) => {
            let p = parser::parse_model(l, sig, ld.config.n).context("in --left")?;
            let q = parser::parse_model(r, sig, ld.config.n).context("in --right")?;
            Ok((p, q))
        }
        _ => Err(UsageError("iso needs --pair I J or both --left and --right".into()).into()),
    }
}

fn iso_judgment(ld: &Loaded, p: &ModelAssignment, q: &ModelAssignment) -> Result<Judgment> {
    let sig = ld.elaborated.system.signature();
    let found = are_isomorphic(&ld.universe, p, q, ld.config.mode)?;
    let pair = Evidence::Pair { left: ModelRef::new(p, sig), right: ModelRef::new(q, sig), correlator: found.clone() };
    let mut notes = vec![format!("over n={}, cap={}, mode={}", ld.config.n, ld.config.cap, ld.config.mode)];
    if found.is_none() {
        notes.push("no correlator carries the left model onto the right".into());
    }
    let iso = found.is_some();
    Ok(Judgment {
        property: "isomorphic".into(),
        absolute: iso,
        witness: iso.then(|| pair.clone()),
        counterexample: (!iso).then_some(pair),
        notes,
    })
}

fn run(cli: Cli) -> Result<(Report, bool)> {
    let (report, ld) = match &cli.command {
        Command::Models(c) => {
            let ld = load(c)?;
            let models = listing(&ld.analysis(), ld.config.limit)?;
            let mut r = ld.report("models", Vec::new());
            r.models = Some(models);
            (r, ld)
        }
        Command::Meta(c) => {
            let ld = load(c)?;
            let a = ld.analysis();
            let judgments = meta_judgments(&a, ld.config.bound)?;
            let gabel = a.gabel()?;
            let mut r = ld.report("meta", judgments);
            r.gabel = Some(gabel);
            (r, ld)
        }
        Command::Iso { common, pair, left, right } => {
            let ld = load(common)?;
            let (p, q) = pick_models(&ld, pair.as_deref(), left.as_deref(), right.as_deref())?;
            let j = iso_judgment(&ld, &p, &q)?;
            (ld.report("iso", vec![j]), ld)
        }
        Command::Fork { common, g } => {
            let ld = load(common)?;
            let a = ld.analysis();
            let j = match g {
                Some(text) => {
                    let g = ld.elaborated.parse_formula(text).context("in --g")?;
                    a.forkable_at(&g)?
                }
                None => a.forkable_syntactic(ld.config.bound)?,
            };
            (ld.report("fork", vec![j]), ld)
        }
        Command::Report(c) => {
            let ld = load(c)?;
            let a = ld.analysis();
            let models = listing(&a, ld.config.limit)?;
            let mut judgments = meta_judgments(&a, ld.config.bound)?;
            judgments.push(a.forkable_syntactic(ld.config.bound)?);
            let gabel = a.gabel()?;
            let mut r = ld.report("report", judgments);
            r.models = Some(models);
            r.gabel = Some(gabel);
            (r, ld)
        }
    };
    Ok((report, ld.json))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use axcheck_core::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return 4;
    }
    if err.downcast_ref::<axcheck_core::ParseError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(E::Parse(_) | E::Type(_) | E::UnknownSugar(_) | E::SignatureMismatch(_) | E::LiteralOutOfRange { .. }) => {
            2
        }
        Some(E::CapExceeded { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((report, json)) => {
            print!("{}", if json { report.to_json() } else { report.to_text() });
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
