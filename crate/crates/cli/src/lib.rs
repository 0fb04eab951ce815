//! The `sck` command line: load `.sck` files, check them, saturate them,
//! and ask questions of the result.
//!
//! Exit codes: 0 success, 1 obligation warnings under
//! `--strict-obligations`, 2 parse, sort or evaluation errors, 3 usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sck_core::engine::{
    explain, harvest, query, saturate, EngineError, HarvestLevel, QueryMode, SaturationOptions, DEFAULT_FACT_CAP,
};
use sck_core::model::{KnowledgeBase, SortMode};
use sck_core::parser::{parse_fact, parse_query, serialize, statements_to_kb, DocumentParser};
use sck_core::rules::{catalog, export_records, obligations, Severity};
use sck_core::validate::{check_obligations, check_sorts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_WARNINGS: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sck", version, about = "Sorted knowledge base of social contexts, roles and players")]
struct Cli {
    /// How undeclared or ill-sorted arguments are treated.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Strict)]
    mode: Mode,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Upper bound on stored facts during saturation.
    #[arg(long, global = true, env = "SCK_FACT_CAP")]
    fact_cap: Option<usize>,

    /// Exit with status 1 when `check` reports obligation warnings.
    #[arg(long, global = true)]
    strict_obligations: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse, check sorts, saturate and report unmet obligations.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compute the fixpoint and report how many facts were derived.
    Saturate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Write the saturated knowledge base here as `.sck` text.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Match a pattern such as `play(Lucy, ?r, u, ?t)` against the fixpoint.
    Query {
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
        pattern: String,
        /// Let play/coPlay answer for any subinterval of a stored interval.
        #[arg(long = "virtual")]
        virtual_mode: bool,
    },
    /// Print the derivation tree of a fact in the fixpoint.
    Explain {
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
        fact: String,
    },
    /// Collect the intrinsic information of a target at one level.
    Harvest {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// One of rc, corc, role, cor, context.
        #[arg(long)]
        level: HarvestLevel,
        /// Comma-separated target names, e.g. `teacher,School`.
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<String>,
    },
    /// Print the knowledge base as canonical `.sck` text.
    Export {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Saturate first and include derived facts.
        #[arg(long)]
        with_derived: bool,
    },
    /// Inspect the rule catalog.
    Rules {
        #[command(subcommand)]
        action: RulesAction,
    },
}

#[derive(Debug, Subcommand)]
enum RulesAction {
    /// Dump every rule and obligation with its axiom reference.
    Export,
}

/// A failed run: the exit code, after messages have gone to the error stream.
struct Exit(i32);

type Outcome = Result<i32, Exit>;

struct Session<'a> {
    mode: SortMode,
    format: Format,
    fact_cap: usize,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Session<'_> {
    fn fail(&mut self, code: i32, message: impl std::fmt::Display) -> Exit {
        let _ = writeln!(self.err, "sck: {message}");
        Exit(code)
    }

    fn emit(&mut self, text: &str) -> Outcome {
        self.out.write_all(text.as_bytes()).map_err(|e| self.fail(EXIT_USAGE, format!("writing output: {e}")))?;
        Ok(EXIT_OK)
    }

    fn emit_json(&mut self, value: &impl serde::Serialize) -> Outcome {
        let text = serde_json::to_string_pretty(value).expect("JSON encoding");
        self.emit(&format!("{text}\n"))
    }

    fn load(&mut self, files: &[PathBuf]) -> Result<KnowledgeBase, Exit> {
        let mut parser = DocumentParser::new(self.mode);
        let mut statements = Vec::new();
        let mut failed = false;
        for path in files {
            let text = fs::read_to_string(path)
                .map_err(|e| self.fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
            let parsed = parser.parse(&text, Some(&path.display().to_string()));
            for error in &parsed.errors {
                let _ = writeln!(self.err, "{error}");
                failed = true;
            }
            statements.extend(parsed.statements);
        }
        if failed {
            return Err(Exit(EXIT_INVALID));
        }
        statements_to_kb(&statements, self.mode).map_err(|errors| {
            for error in errors {
                let _ = writeln!(self.err, "{error}");
            }
            Exit(EXIT_INVALID)
        })
    }

    fn saturated(&mut self, files: &[PathBuf]) -> Result<(KnowledgeBase, sck_core::engine::SaturationStats), Exit> {
        let mut kb = self.load(files)?;
        let options = SaturationOptions { fact_cap: self.fact_cap, ..SaturationOptions::default() };
        let stats = saturate(&mut kb, &options).map_err(|e| self.engine_failure(e))?;
        Ok((kb, stats))
    }

    fn engine_failure(&mut self, error: EngineError) -> Exit {
        let code = match error {
            EngineError::TargetArity { .. } => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        self.fail(code, error)
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            return if informational {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            };
        }
    };
    let mut session = Session {
        mode: match cli.mode {
            Mode::Strict => SortMode::Strict,
            Mode::Lenient => SortMode::Lenient,
        },
        format: cli.format,
        fact_cap: cli.fact_cap.unwrap_or(DEFAULT_FACT_CAP),
        out,
        err,
    };
    let outcome = match cli.command {
        Command::Check { files } => check(&mut session, &files, cli.strict_obligations),
        Command::Saturate { files, out } => saturate_cmd(&mut session, &files, out.as_deref()),
        Command::Query { files, pattern, virtual_mode } => query_cmd(&mut session, &files, &pattern, virtual_mode),
        Command::Explain { files, fact } => explain_cmd(&mut session, &files, &fact),
        Command::Harvest { files, level, target } => harvest_cmd(&mut session, &files, level, &target),
        Command::Export { files, with_derived } => export_cmd(&mut session, &files, with_derived),
        Command::Rules { action: RulesAction::Export } => rules_export(&mut session),
    };
    outcome.unwrap_or_else(|Exit(code)| code)
}

fn check(s: &mut Session<'_>, files: &[PathBuf], strict_obligations: bool) -> Outcome {
    let (kb, _) = s.saturated(files)?;
    let mut violations = check_sorts(&kb);
    violations.extend(check_obligations(&kb));
    let errors = violations.iter().filter(|v| v.severity() == Severity::Error).count();
    let warnings = violations.len() - errors;
    match s.format {
        Format::Json => s.emit_json(&violations)?,
        Format::Text => {
            let mut text: String = violations.iter().map(|v| format!("{v}\n")).collect();
            text.push_str(&format!("{errors} errors, {warnings} warnings\n"));
            s.emit(&text)?
        }
    };
    Ok(if errors > 0 {
        EXIT_INVALID
    } else if warnings > 0 && strict_obligations {
        EXIT_WARNINGS
    } else {
        EXIT_OK
    })
}

fn saturate_cmd(s: &mut Session<'_>, files: &[PathBuf], out: Option<&Path>) -> Outcome {
    let (kb, stats) = s.saturated(files)?;
    if let Some(path) = out {
        fs::write(path, serialize(&kb, true))
            .map_err(|e| s.fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))?;
    }
    match s.format {
        Format::Json => s.emit_json(&stats),
        Format::Text => s.emit(&format!("{} derived\n", stats.facts_derived)),
    }
}

fn query_cmd(s: &mut Session<'_>, files: &[PathBuf], pattern: &str, virtual_mode: bool) -> Outcome {
    let pattern = parse_query(pattern).map_err(|e| s.fail(EXIT_INVALID, format!("pattern {e}")))?;
    let (kb, _) = s.saturated(files)?;
    let mode = if virtual_mode { QueryMode::Virtual } else { QueryMode::Stored };
    let answers = query(&kb, &pattern, mode).map_err(|e| s.engine_failure(e))?;
    match s.format {
        Format::Json => {
            let rows: Vec<Value> = answers
                .iter()
                .map(|a| Value::Object(a.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect()))
                .collect();
            s.emit_json(&rows)
        }
        Format::Text => {
            let text = match answers.as_slice() {
                [] => "no answers\n".to_string(),
                [only] if only.is_empty() => "true\n".to_string(),
                _ => answers
                    .iter()
                    .map(|a| {
                        let bindings: Vec<String> = a.iter().map(|(k, v)| format!("?{k} = {v}")).collect();
                        format!("{}\n", bindings.join(", "))
                    })
                    .collect(),
            };
            s.emit(&text)
        }
    }
}

fn explain_cmd(s: &mut Session<'_>, files: &[PathBuf], fact: &str) -> Outcome {
    let fact = parse_fact(fact).map_err(|e| s.fail(EXIT_INVALID, format!("fact {e}")))?;
    let (kb, _) = s.saturated(files)?;
    let tree = explain(&kb, &fact).map_err(|e| s.engine_failure(e))?;
    match s.format {
        Format::Json => s.emit_json(&tree.to_json()),
        Format::Text => s.emit(&tree.render()),
    }
}

fn harvest_cmd(s: &mut Session<'_>, files: &[PathBuf], level: HarvestLevel, target: &[String]) -> Outcome {
    let (kb, _) = s.saturated(files)?;
    let target: Vec<&str> = target.iter().map(String::as_str).collect();
    let report = harvest(&kb, level, &target).map_err(|e| s.engine_failure(e))?;
    match s.format {
        Format::Json => s.emit_json(&report),
        Format::Text => s.emit(&report.render()),
    }
}

fn export_cmd(s: &mut Session<'_>, files: &[PathBuf], with_derived: bool) -> Outcome {
    let kb = if with_derived { s.saturated(files)?.0 } else { s.load(files)? };
    s.emit(&serialize(&kb, with_derived))
}

fn rules_export(s: &mut Session<'_>) -> Outcome {
    match s.format {
        Format::Json => s.emit_json(&json!({ "rules": export_records(), "obligations": obligations() })),
        Format::Text => {
            let mut text: String = catalog().iter().map(|r| format!("{r}\n")).collect();
            for o in obligations() {
                text.push_str(&format!("{} [{}] {} => exists {}\n", o.id, o.axiom_ref, o.scope, o.witness));
            }
            s.emit(&text)
        }
    }
}
