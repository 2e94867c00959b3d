//! Command-line front end.
//!
//! Exit codes: 0 success, definable or agreement; 1 not definable,
//! counterexample or witness pair; 2 usage or parse error; 3 invalid
//! automaton; 4 resource bound exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{
    analyze, decide_definable, AlgebraDump, AlgebraError, DecideOptions, Kind, SemigroupAutomaton,
};
use crate::compile::{compile_forest_formula, CompileError};
use crate::logic::{ef_game_winner, eval_nodes, forest_accepts, ForestFormula, Formula};
use crate::oracle::{bounded_indefinability_search, cross_check, CrossCheck};
use crate::terms::{Alphabet, Forest, MaybeEmptyForest};

#[derive(Debug, Parser)]
#[command(
    name = "forestdef",
    version,
    about = "Definability of forest languages in EF + F⁻¹"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether an automaton's language is definable.
    Decide {
        #[arg(long)]
        automaton: PathBuf,
        /// Add a pair of forests separated by the failed identity.
        #[arg(long)]
        witnesses: bool,
        #[arg(long, default_value_t = 1)]
        pump: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate a formula on a forest.
    Eval {
        /// Forest formula, or a node formula read as `E(φ)`. STR or @PATH.
        #[arg(long)]
        formula: String,
        #[arg(long)]
        input: String,
        /// Print the nodes where a node formula holds.
        #[arg(long)]
        nodes: bool,
    },
    /// Compile a forest formula into an automaton document.
    Compile {
        #[arg(long)]
        formula: String,
        /// Comma-separated leaf labels.
        #[arg(long, value_delimiter = ',', required = true)]
        leaf_labels: Vec<String>,
        /// Comma-separated inner labels.
        #[arg(long, value_delimiter = ',', required = true)]
        inner_labels: Vec<String>,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Write the syntactic forest algebra of an automaton.
    Algebra {
        #[arg(long)]
        automaton: PathBuf,
        /// Include the relation ⊣.
        #[arg(long)]
        dashv: bool,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Solve the Ehrenfeucht–Fraïssé game on two forests.
    Game {
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Compare a formula with an automaton on all small forests.
    CrossCheck {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_nodes: usize,
    },
    /// Look for a game-equivalent pair straddling the language.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    automaton: PathBuf,
    #[arg(long)]
    rounds: usize,
    #[arg(long, default_value_t = 4)]
    max_nodes: usize,
}

/// Failure with its exit code.
struct Fail(i32, String);

impl From<AlgebraError> for Fail {
    fn from(e: AlgebraError) -> Self {
        let code = match e {
            AlgebraError::ResourceBound(_) => 4,
            AlgebraError::UnknownLabel(_) | AlgebraError::KindViolation(_) => 2,
            _ => 3,
        };
        Fail(code, e.to_string())
    }
}

impl From<CompileError> for Fail {
    fn from(e: CompileError) -> Self {
        let code = match e {
            CompileError::Unstable(_) => 3,
            _ => 4,
        };
        Fail(code, e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Fail {
    Fail(2, e.to_string())
}

/// `@path` reads the file, anything else is taken literally.
fn text_arg(s: &str) -> Result<String, Fail> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| t.trim().to_string())
            .map_err(|e| usage(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn load(path: &PathBuf) -> Result<SemigroupAutomaton, Fail> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(SemigroupAutomaton::from_json(&text)?)
}

fn forest_formula(text: &str) -> Result<ForestFormula, Fail> {
    ForestFormula::parse(text).or_else(|e| {
        Formula::parse(text)
            .map(ForestFormula::exists)
            .map_err(|_| usage(format!("formula: {e}")))
    })
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(usage),
    }
}

fn json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serialisable")
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Fail> {
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(usage);
    match cmd {
        Command::Decide {
            automaton,
            witnesses,
            pump,
            json: as_json,
            jobs,
        } => {
            let aut = load(&automaton)?;
            let opts = DecideOptions {
                witnesses,
                pump,
                jobs: jobs.max(1),
                ..Default::default()
            };
            let verdict = decide_definable(&aut, &opts)?;
            w(
                out,
                if as_json {
                    json(&verdict)
                } else {
                    verdict.to_string()
                },
            )?;
            Ok(if verdict.is_definable() { 0 } else { 1 })
        }
        Command::Eval {
            formula,
            input,
            nodes,
        } => {
            let text = text_arg(&formula)?;
            let forest =
                Forest::parse(&text_arg(&input)?).map_err(|e| usage(format!("input: {e}")))?;
            if nodes {
                let phi = Formula::parse(&text).map_err(|e| usage(format!("formula: {e}")))?;
                let ids: Vec<String> = eval_nodes(&phi, &forest)
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                w(out, format!("{{{}}}", ids.join(",")))?;
            } else {
                let psi = forest_formula(&text)?;
                w(
                    out,
                    if forest_accepts(&psi, &forest) {
                        "accept"
                    } else {
                        "reject"
                    }
                    .into(),
                )?;
            }
            Ok(0)
        }
        Command::Compile {
            formula,
            leaf_labels,
            inner_labels,
            output,
        } => {
            let psi = forest_formula(&text_arg(&formula)?)?;
            let alphabet = Alphabet::new(leaf_labels, inner_labels).map_err(usage)?;
            let aut = compile_forest_formula(&psi, &alphabet)?;
            emit(out, output.as_ref(), &aut.to_json())?;
            Ok(0)
        }
        Command::Algebra {
            automaton,
            dashv,
            output,
        } => {
            let aut = load(&automaton)?;
            let opts = DecideOptions::default();
            let dump = |a: &SemigroupAutomaton| -> Result<AlgebraDump, Fail> {
                let an = analyze(a, &opts)?;
                Ok(AlgebraDump::new(
                    &a.name,
                    &an.morphism,
                    dashv.then_some(&an.dashv),
                ))
            };
            let text = match aut.kind {
                Kind::Forest => json(&dump(&aut)?),
                Kind::Tree => {
                    let mut per_label = BTreeMap::new();
                    for (b, sub) in aut.tree_sub_automata() {
                        per_label.insert(b, dump(&sub)?);
                    }
                    json(&per_label)
                }
            };
            emit(out, output.as_ref(), &text)?;
            Ok(0)
        }
        Command::Game {
            rounds,
            left,
            right,
        } => {
            let l = MaybeEmptyForest::parse(&text_arg(&left)?)
                .map_err(|e| usage(format!("left: {e}")))?;
            let r = MaybeEmptyForest::parse(&text_arg(&right)?)
                .map_err(|e| usage(format!("right: {e}")))?;
            let winner = ef_game_winner(rounds, &l, &r, None).map_err(usage)?;
            w(out, winner.to_string())?;
            Ok(0)
        }
        Command::Oracle(OracleCommand::CrossCheck {
            formula,
            automaton,
            max_nodes,
        }) => {
            let psi = forest_formula(&text_arg(&formula)?)?;
            let aut = load(&automaton)?;
            match cross_check(&psi, &aut, max_nodes)? {
                CrossCheck::Agree { checked } => {
                    w(
                        out,
                        format!("agree ({checked} forests up to {max_nodes} nodes)"),
                    )?;
                    Ok(0)
                }
                CrossCheck::Counterexample {
                    forest,
                    expected,
                    automaton,
                } => {
                    w(
                        out,
                        format!(
                            "counterexample {forest}: formula {expected}, automaton {automaton}"
                        ),
                    )?;
                    Ok(1)
                }
            }
        }
        Command::Oracle(OracleCommand::Search(args)) => {
            let aut = load(&args.automaton)?;
            match bounded_indefinability_search(&aut, args.rounds, args.max_nodes)? {
                Some((s0, s1)) => {
                    w(
                        out,
                        format!(
                            "witness pair: {s0} (in L) and {s1} (not in L), Duplicator wins {} rounds",
                            args.rounds
                        ),
                    )?;
                    Ok(1)
                }
                None => {
                    w(
                        out,
                        format!(
                            "no witness found up to bounds ({} rounds, {} nodes)",
                            args.rounds, args.max_nodes
                        ),
                    )?;
                    Ok(0)
                }
            }
        }
    }
}

/// Parse `args` (program name first) and run, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
