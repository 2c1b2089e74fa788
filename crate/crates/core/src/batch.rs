//! Batch processing of statement files.
//!
//! Input is read line by line. A line whose last non-blank character is `\`
//! continues on the next line. Every `;` ends a statement. Each statement is
//! parsed, canonicalized and checked, then routed to one of the output files
//! in [`OUTPUT_FILES`] inside the output directory.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::canon::{canonicalize, OrderingMode};
use crate::conservation::{check_all_laws, Law, Status, Verdict};
use crate::parser::{parse_reaction, ParseError};
use crate::render::render_reaction;
use crate::tables::{
    Dictionary, PropertyTable, TableError, Tables, BUNDLED_LEPTONS, BUNDLED_PARTICLES,
};

pub const ACCEPT_FILE: &str = "rp-accept.txt";
pub const ACCEPT_SORTED_FILE: &str = "rp-accept-s.txt";
pub const REJECT_FILE: &str = "rp-reject.txt";
pub const REJECT_SORTED_FILE: &str = "rp-reject-s.txt";
pub const UNKNOWN_FILE: &str = "rp-unknown.txt";
pub const LOG_FILE: &str = "rp-log.txt";

pub const OUTPUT_FILES: [&str; 6] = [
    ACCEPT_FILE,
    ACCEPT_SORTED_FILE,
    REJECT_FILE,
    REJECT_SORTED_FILE,
    UNKNOWN_FILE,
    LOG_FILE,
];

/// One statement as assembled from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    /// Statement text with continuations joined, trimmed, `;` included when
    /// present.
    pub text: String,
    /// 1-based physical line where the statement's logical line starts.
    pub first_line: usize,
    /// 1-based physical line where it ends.
    pub last_line: usize,
    /// False for trailing text that never reached a `;`.
    pub terminated: bool,
}

/// Splits input into statements, honouring `\` continuations.
///
/// Text left after the last `;` of a logical line is returned as an
/// unterminated statement.
pub fn assemble_statements(text: &str) -> Vec<Statement> {
    let mut out = Vec::new();
    let mut logical = String::new();
    let mut first_line = 1;
    let mut pending = false;
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        if !pending {
            first_line = number;
            logical.clear();
        }
        let trimmed = line.trim_end();
        if let Some(head) = trimmed.strip_suffix('\\') {
            logical.push_str(head);
            logical.push(' ');
            pending = true;
            continue;
        }
        logical.push_str(line);
        pending = false;
        split_logical_line(&logical, first_line, number, &mut out);
    }
    if pending {
        let last = text.lines().count();
        split_logical_line(&logical, first_line, last, &mut out);
    }
    out
}

fn split_logical_line(line: &str, first_line: usize, last_line: usize, out: &mut Vec<Statement>) {
    let mut rest = line;
    while let Some(end) = rest.find(';') {
        out.push(Statement {
            text: rest[..=end].trim().to_string(),
            first_line,
            last_line,
            terminated: true,
        });
        rest = &rest[end + 1..];
    }
    let tail = rest.trim();
    if !tail.is_empty() {
        out.push(Statement {
            text: tail.to_string(),
            first_line,
            last_line,
            terminated: false,
        });
    }
}

/// Result of running one statement through the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Checked { canonical: String, verdict: Verdict },
    Unparsed(ParseError),
    Incomplete,
}

impl Outcome {
    pub fn log_status(&self) -> &'static str {
        match self {
            Outcome::Checked { verdict, .. } => match verdict.status {
                Status::Accept => "ACCEPT",
                Status::Reject => "REJECT",
                Status::Unknown => "UNKNOWN",
            },
            Outcome::Unparsed(_) | Outcome::Incomplete => "PARSE_ERROR",
        }
    }

    fn reason(&self) -> String {
        match self {
            Outcome::Checked { canonical, verdict } => match verdict.status {
                Status::Accept => format!("all laws hold | canonical: {canonical}"),
                Status::Reject => {
                    let details: Vec<String> =
                        verdict.violations.iter().map(|v| v.to_string()).collect();
                    format!("{} | canonical: {canonical}", details.join("; "))
                }
                Status::Unknown => format!(
                    "unknown particle `{}` | canonical: {canonical}",
                    verdict.unknown_names.join("`, `")
                ),
            },
            Outcome::Unparsed(err) => format!("syntax error: {err}"),
            Outcome::Incomplete => {
                "syntax error: statement is missing its `;` terminator".to_string()
            }
        }
    }
}

/// Parsing, canonicalization and checking with fixed tables and laws.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub tables: Tables,
    pub mode: OrderingMode,
    pub laws: Vec<Law>,
}

impl Pipeline {
    pub fn new(tables: Tables, mode: OrderingMode, laws: Vec<Law>) -> Pipeline {
        Pipeline { tables, mode, laws }
    }

    pub fn process(&self, statement: &Statement) -> Outcome {
        if !statement.terminated {
            return Outcome::Incomplete;
        }
        match parse_reaction(&statement.text) {
            Ok(reaction) => {
                let canonical = canonicalize(&reaction, self.mode, &self.tables.dictionary);
                let verdict = check_all_laws(&canonical, &self.laws, &self.tables.properties);
                Outcome::Checked {
                    canonical: render_reaction(&canonical),
                    verdict,
                }
            }
            Err(err) => Outcome::Unparsed(err),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    /// `None` selects the bundled table.
    pub dictionary: Option<PathBuf>,
    pub particles: Option<PathBuf>,
    pub leptons: Option<PathBuf>,
    pub mode: OrderingMode,
    pub laws: Vec<Law>,
    pub outdir: PathBuf,
}

impl RunConfig {
    pub fn new(inputs: Vec<PathBuf>, outdir: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            inputs,
            dictionary: None,
            particles: None,
            leptons: None,
            mode: OrderingMode::default(),
            laws: Law::defaults(),
            outdir: outdir.into(),
        }
    }

    pub fn load_tables(&self) -> Result<Tables, BatchError> {
        let dictionary = match &self.dictionary {
            Some(path) => {
                Dictionary::parse(&read(path)?).map_err(|e| BatchError::table(path, e))?
            }
            None => Dictionary::bundled(),
        };
        let props = match &self.particles {
            Some(path) => read(path)?,
            None => BUNDLED_PARTICLES.to_string(),
        };
        let leptons = match &self.leptons {
            Some(path) => read(path)?,
            None => BUNDLED_LEPTONS.to_string(),
        };
        let source = self
            .particles
            .as_ref()
            .or(self.leptons.as_ref())
            .cloned()
            .unwrap_or_else(|| PathBuf::from("<bundled>"));
        let properties = PropertyTable::parse(&props, &leptons, &dictionary)
            .map_err(|e| BatchError::table(&source, e))?;
        Ok(Tables {
            dictionary,
            properties,
        })
    }
}

fn read(path: &Path) -> Result<String, BatchError> {
    fs::read_to_string(path).map_err(|source| BatchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Table { path: PathBuf, source: TableError },
    #[error("no input files")]
    NoInputs,
}

impl BatchError {
    fn table(path: &Path, source: TableError) -> BatchError {
        BatchError::Table {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub accepted: usize,
    pub rejected: usize,
    pub unknown: usize,
    pub parse_failed: usize,
    /// Number of rejected statements violating each law.
    pub law_violations: BTreeMap<String, usize>,
}

impl RunSummary {
    pub fn total(&self) -> usize {
        self.accepted + self.rejected + self.unknown + self.parse_failed
    }

    pub fn all_accepted(&self) -> bool {
        self.total() == self.accepted
    }
}

struct Outputs {
    dir: PathBuf,
    files: Vec<BufWriter<File>>,
}

impl Outputs {
    fn create(dir: &Path) -> Result<Outputs, BatchError> {
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| BatchError::Io { path, source }
        };
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let mut files = Vec::with_capacity(OUTPUT_FILES.len());
        for name in OUTPUT_FILES {
            let path = dir.join(name);
            files.push(BufWriter::new(File::create(&path).map_err(io_err(&path))?));
        }
        Ok(Outputs {
            dir: dir.to_path_buf(),
            files,
        })
    }

    fn line(&mut self, name: &str, text: &str) -> Result<(), BatchError> {
        let i = OUTPUT_FILES
            .iter()
            .position(|&f| f == name)
            .expect("known output file");
        writeln!(self.files[i], "{text}").map_err(|source| BatchError::Io {
            path: self.dir.join(name),
            source,
        })
    }

    fn finish(self) -> Result<(), BatchError> {
        for (mut file, name) in self.files.into_iter().zip(OUTPUT_FILES) {
            file.flush().map_err(|source| BatchError::Io {
                path: self.dir.join(name),
                source,
            })?;
        }
        Ok(())
    }
}

fn log_field(text: &str) -> String {
    text.replace(['\t', '\n', '\r'], " ")
}

/// Processes every input file in order and writes the six output files.
/// Output files are truncated first.
pub fn process_files(cfg: &RunConfig) -> Result<RunSummary, BatchError> {
    if cfg.inputs.is_empty() {
        return Err(BatchError::NoInputs);
    }
    let tables = cfg.load_tables()?;
    process_with_tables(cfg, tables)
}

/// Like [`process_files`], with tables already loaded. The table paths in
/// `cfg` are ignored.
pub fn process_with_tables(cfg: &RunConfig, tables: Tables) -> Result<RunSummary, BatchError> {
    if cfg.inputs.is_empty() {
        return Err(BatchError::NoInputs);
    }
    let pipeline = Pipeline::new(tables, cfg.mode, cfg.laws.clone());
    let mut outputs = Outputs::create(&cfg.outdir)?;
    let mut summary = RunSummary::default();
    for path in &cfg.inputs {
        let text = read(path)?;
        for statement in assemble_statements(&text) {
            let outcome = pipeline.process(&statement);
            route(&statement, &outcome, &mut outputs, &mut summary)?;
        }
    }
    outputs.finish()?;
    Ok(summary)
}

fn route(
    statement: &Statement,
    outcome: &Outcome,
    out: &mut Outputs,
    summary: &mut RunSummary,
) -> Result<(), BatchError> {
    let original = log_field(&statement.text);
    match outcome {
        Outcome::Checked { canonical, verdict } => match verdict.status {
            Status::Accept => {
                summary.accepted += 1;
                out.line(ACCEPT_FILE, &original)?;
                out.line(ACCEPT_SORTED_FILE, canonical)?;
            }
            Status::Reject => {
                summary.rejected += 1;
                for law in verdict.violated_laws() {
                    *summary.law_violations.entry(law.to_string()).or_default() += 1;
                }
                out.line(REJECT_FILE, &original)?;
                out.line(REJECT_SORTED_FILE, canonical)?;
            }
            Status::Unknown => {
                summary.unknown += 1;
                out.line(UNKNOWN_FILE, &original)?;
            }
        },
        Outcome::Unparsed(_) | Outcome::Incomplete => {
            summary.parse_failed += 1;
            out.line(UNKNOWN_FILE, &original)?;
        }
    }
    let entry = format!(
        "{}\t{}\t{}",
        outcome.log_status(),
        log_field(&outcome.reason()),
        original
    );
    out.line(LOG_FILE, &entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(stmts: &[Statement]) -> Vec<&str> {
        stmts.iter().map(|s| s.text.as_str()).collect()
    }

    #[test]
    fn continuation_joins_lines() {
        let stmts = assemble_statements("E+ E- --> \\\nMU+ MU- ;");
        assert_eq!(texts(&stmts), ["E+ E- -->  MU+ MU- ;"]);
        assert_eq!((stmts[0].first_line, stmts[0].last_line), (1, 2));
        assert!(stmts[0].terminated);
    }

    #[test]
    fn continuation_ignores_trailing_blanks() {
        let stmts = assemble_statements("A --> \\  \t\r\nB ;\r\n");
        assert_eq!(texts(&stmts), ["A -->  B ;"]);
    }

    #[test]
    fn empty_stream() {
        assert!(assemble_statements("").is_empty());
        assert!(assemble_statements("\n   \n").is_empty());
    }

    #[test]
    fn several_statements_per_line() {
        let stmts = assemble_statements("A --> B ; C --> D ;");
        assert_eq!(texts(&stmts), ["A --> B ;", "C --> D ;"]);
    }

    #[test]
    fn unterminated_text_is_reported() {
        let stmts = assemble_statements("A --> B ; C -->\nD --> E ;\nF");
        assert_eq!(texts(&stmts), ["A --> B ;", "C -->", "D --> E ;", "F"]);
        let terminated: Vec<_> = stmts.iter().map(|s| s.terminated).collect();
        assert_eq!(terminated, [true, false, true, false]);
        assert_eq!(stmts[3].first_line, 3);
    }

    #[test]
    fn continuation_at_end_of_input() {
        let stmts = assemble_statements("A --> B \\");
        assert_eq!(texts(&stmts), ["A --> B"]);
        assert!(!stmts[0].terminated);
    }

    #[test]
    fn pipeline_outcomes() {
        let pipeline = Pipeline::new(Tables::bundled(), OrderingMode::Dict, Law::defaults());
        let stmt = |t: &str| Statement {
            text: t.into(),
            first_line: 1,
            last_line: 1,
            terminated: true,
        };
        let accept = pipeline.process(&stmt("E+ E- --> MU- MU+ ;"));
        assert_eq!(accept.log_status(), "ACCEPT");
        match &accept {
            Outcome::Checked { canonical, .. } => assert_eq!(canonical, "e+ e- --> mu+ mu- ;"),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            pipeline.process(&stmt("e- --> gamma gamma ;")).log_status(),
            "REJECT"
        );
        assert_eq!(
            pipeline.process(&stmt("e+ e- --> XYZZY ;")).log_status(),
            "UNKNOWN"
        );
        assert_eq!(
            pipeline.process(&stmt("e+ e- mu+ ;")).log_status(),
            "PARSE_ERROR"
        );
        let mut open = stmt("e+ -->");
        open.terminated = false;
        assert_eq!(pipeline.process(&open), Outcome::Incomplete);
    }

    #[test]
    fn log_fields_have_no_tabs() {
        assert_eq!(log_field("a\tb\nc"), "a b c");
    }
}
