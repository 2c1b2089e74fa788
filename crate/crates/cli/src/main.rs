use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use reacproc::batch::{process_with_tables, BatchError, RunConfig, RunSummary};
use reacproc::conservation::{Law, Relation, UnknownRelation};
use reacproc::tables::{Component, UnknownLaw};
use reacproc::OrderingMode;

/// Check particle reaction statements against conservation laws and reduce
/// them to canonical form.
///
/// Results go to rp-accept.txt, rp-accept-s.txt, rp-reject.txt,
/// rp-reject-s.txt, rp-unknown.txt and rp-log.txt in the output directory.
#[derive(Debug, Parser)]
#[command(name = "reacproc", version)]
struct Args {
    /// Input files: `;`-terminated statements, `\` continues a line.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Synonym dictionary (defaults to the bundled dict-syn.txt).
    #[arg(long, value_name = "PATH")]
    dict: Option<PathBuf>,

    /// Hadronic property table `name q3 b3 S C B T`.
    #[arg(long, value_name = "PATH")]
    props: Option<PathBuf>,

    /// Lepton number table `name Le Lmu Ltau`.
    #[arg(long, value_name = "PATH")]
    leptons: Option<PathBuf>,

    /// Name ordering used when sorting.
    #[arg(long, default_value = "dict", value_parser = ["lex", "dict"])]
    order: String,

    /// Comma-separated laws to check: charge, baryon, S, C, B, T, Le, Lmu, Ltau.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    laws: Option<Vec<String>>,

    /// Relation for one law, `LAW=eq|le|ge` (le: initial <= final). Repeatable.
    #[arg(long, value_name = "LAW=REL")]
    relation: Vec<String>,

    /// Directory receiving the output files.
    #[arg(long, default_value = ".", value_name = "PATH")]
    outdir: PathBuf,

    /// Exit with status 1 when any statement is not accepted.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Law(#[from] UnknownLaw),
    #[error(transparent)]
    Relation(#[from] UnknownRelation),
    #[error("--relation expects LAW=REL, got `{0}`")]
    RelationSyntax(String),
    #[error("--relation names `{0}`, which is not among the checked laws")]
    RelationForDisabledLaw(String),
    #[error(transparent)]
    Batch(#[from] BatchError),
}

fn build_laws(args: &Args) -> Result<Vec<Law>, CliError> {
    let mut laws = match &args.laws {
        Some(names) => names
            .iter()
            .map(|n| n.trim())
            .filter(|n| !n.is_empty())
            .map(|n| Ok(Law::new(n.parse::<Component>()?, Relation::Equal)))
            .collect::<Result<Vec<_>, CliError>>()?,
        None => Law::defaults(),
    };
    for spec in &args.relation {
        let (name, rel) = spec
            .split_once('=')
            .ok_or_else(|| CliError::RelationSyntax(spec.clone()))?;
        let component: Component = name.trim().parse()?;
        let relation: Relation = rel.trim().parse()?;
        let law = laws
            .iter_mut()
            .find(|l| l.component == component)
            .ok_or_else(|| CliError::RelationForDisabledLaw(name.to_string()))?;
        law.relation = relation;
    }
    Ok(laws)
}

fn run(args: &Args) -> Result<RunSummary, CliError> {
    let mode: OrderingMode = args.order.parse().expect("validated by clap");
    let cfg = RunConfig {
        inputs: args.inputs.clone(),
        dictionary: args.dict.clone(),
        particles: args.props.clone(),
        leptons: args.leptons.clone(),
        mode,
        laws: build_laws(args)?,
        outdir: args.outdir.clone(),
    };
    let tables = cfg.load_tables()?;
    for warning in tables.properties.warnings() {
        eprintln!("warning: {warning}");
    }
    Ok(process_with_tables(&cfg, tables)?)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(summary) => {
            println!(
                "{} statements: {} accepted, {} rejected, {} unknown, {} unparsable",
                summary.total(),
                summary.accepted,
                summary.rejected,
                summary.unknown,
                summary.parse_failed
            );
            for (law, n) in &summary.law_violations {
                println!("  {law}: {n} rejected");
            }
            if args.strict && !summary.all_accepted() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("reacproc: {err}");
            ExitCode::from(2)
        }
    }
}
