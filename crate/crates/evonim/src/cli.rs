//! Command-line front end.
//!
//! One subcommand per library capability: exact solving (`grundy`, `options`,
//! `sequence`), dataset export (`dataset`), formula search (`evolve`, `eval`)
//! and the verification suite (`verify`). The data stream (stdout) always carries a
//! single machine-parseable value or CSV/JSON document; diagnostics go to
//! stderr. Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! usage or runtime errors.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::evolve::{self, Dataset, EvolutionConfig, FitnessMetric};
use crate::formula;
use crate::games::{Position, Ruleset};
use crate::solver::{SequenceFamily, Solver};
use crate::verify::{self, CheckResult, VerifyBounds};

// ---------------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(name = "evonim", version, about = "Grundy-value solver and formula evolution for entropy games")]
struct Cli {
    /// Worker threads for parallel evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Grundy value of a position.
    Grundy(PositionArgs),
    /// Print the positions reachable in one move, one literal per line.
    Options(PositionArgs),
    /// Tabulate a Grundy sequence for n = 1..=max as CSV.
    Sequence {
        /// Ruleset: ga1, ga2, cm, kayles or arc-kayles.
        #[arg(long)]
        ruleset: Ruleset,
        /// Position family: single-heap or extreme-cm.
        #[arg(long)]
        family: SequenceFamily,
        /// Largest instance size to tabulate.
        #[arg(long)]
        max: u32,
    },
    /// Solve a family of heap positions exhaustively and emit a CSV dataset.
    Dataset {
        /// Ruleset: ga1, ga2 or kayles.
        #[arg(long)]
        ruleset: Ruleset,
        /// Exact number of heaps per row.
        #[arg(long)]
        heaps: usize,
        /// Largest heap size to enumerate.
        #[arg(long)]
        max_size: u32,
        /// Prepend the heap count as an extra input column.
        #[arg(long)]
        count_primed: bool,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a formula against a dataset and print the best one found.
    Evolve {
        /// Dataset CSV produced by `dataset`.
        #[arg(long)]
        dataset: PathBuf,
        /// JSON config mirroring the engine parameters; omitted fields default.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Random seed (overrides the config file).
        #[arg(long)]
        seed: Option<u64>,
        /// Write the full run report as JSON to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Score a formula against a dataset under both fitness metrics.
    Eval {
        /// Formula text, e.g. "MOD(SUB(h,1),3)".
        #[arg(long)]
        formula: String,
        /// Dataset CSV naming the variables the formula may use.
        #[arg(long)]
        dataset: PathBuf,
    },
    /// Run the verification suite and emit a JSON results document.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct PositionArgs {
    /// Ruleset: ga1, ga2, cm, kayles or arc-kayles.
    #[arg(long)]
    ruleset: Ruleset,
    /// Position literal, e.g. "3,3,2", "0110", "11/00" or "a-b,b-c".
    #[arg(long)]
    position: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Run a single check: ga1-kayles, kayles-period, ga2-formula,
    /// cm-extremes, cm-graph or known-formulas.
    #[arg(long)]
    check: Option<String>,

    /// Largest single heap for the ga1-kayles check.
    #[arg(long)]
    ga1_max_n: Option<u32>,
    /// Longest bit string cross-checked against its heap form.
    #[arg(long)]
    ga1_max_bits: Option<u8>,
    /// Length of the octal sequence used for period detection.
    #[arg(long)]
    kayles_max_n: Option<u32>,
    /// Largest multiset width for the ga2-formula check.
    #[arg(long)]
    ga2_max_heaps: Option<usize>,
    /// Largest heap size for the ga2-formula check.
    #[arg(long)]
    ga2_max_size: Option<u32>,
    /// Longest bit string for the ga2-formula check.
    #[arg(long)]
    ga2_max_bits: Option<u8>,
    /// Largest string length for the cm-extremes check.
    #[arg(long)]
    cm_max_n: Option<u8>,
    /// Largest string length for sampled cm-graph instances.
    #[arg(long)]
    cm_graph_max_n: Option<u8>,
    /// Number of sampled cm-graph instances.
    #[arg(long)]
    cm_graph_samples: Option<usize>,
    /// Seed for the sampled check.
    #[arg(long)]
    seed: Option<u64>,
}

impl VerifyArgs {
    fn bounds(&self) -> VerifyBounds {
        let mut bounds = VerifyBounds::default();
        if let Some(v) = self.ga1_max_n {
            bounds.ga1_max_n = v;
        }
        if let Some(v) = self.ga1_max_bits {
            bounds.ga1_max_bits = v;
        }
        if let Some(v) = self.kayles_max_n {
            bounds.kayles_max_n = v;
        }
        if let Some(v) = self.ga2_max_heaps {
            bounds.ga2_max_heaps = v;
        }
        if let Some(v) = self.ga2_max_size {
            bounds.ga2_max_size = v;
        }
        if let Some(v) = self.ga2_max_bits {
            bounds.ga2_max_bits = v;
        }
        if let Some(v) = self.cm_max_n {
            bounds.cm_max_n = v;
        }
        if let Some(v) = self.cm_graph_max_n {
            bounds.cm_graph_max_n = v;
        }
        if let Some(v) = self.cm_graph_samples {
            bounds.cm_graph_samples = v;
        }
        if let Some(v) = self.seed {
            bounds.seed = v;
        }
        bounds
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Parses `args` (including the program name) and runs the selected command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests land here too; they exit 0.
            let _ = err.print();
            return err.exit_code();
        }
    };
    if let Some(threads) = cli.threads {
        // Ignore the error: the global pool may already exist in-process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Grundy(args) => {
            let position = Position::parse(&args.position, args.ruleset)?;
            let value = Solver::new().grundy(&position, args.ruleset)?;
            println!("{value}");
        }
        Command::Options(args) => {
            let position = Position::parse(&args.position, args.ruleset)?;
            for option in position.options(args.ruleset)? {
                println!("{option}");
            }
        }
        Command::Sequence { ruleset, family, max } => {
            let values = Solver::new().sequence(ruleset, family, max)?;
            let mut out = String::from("n,grundy\n");
            for (i, value) in values.iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, value));
            }
            print!("{out}");
        }
        Command::Dataset { ruleset, heaps, max_size, count_primed, out } => {
            let solver = Solver::new();
            let data = evolve::generate_dataset(&solver, ruleset, heaps, max_size, count_primed)?;
            let csv = data.to_csv_string();
            match out {
                Some(path) => {
                    fs::write(&path, csv)
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("wrote {} rows to {}", data.len(), path.display());
                }
                None => print!("{csv}"),
            }
        }
        Command::Evolve { dataset, config, seed, report } => {
            let data = read_dataset(&dataset)?;
            let mut config = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str::<EvolutionConfig>(&text)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                None => EvolutionConfig::default(),
            };
            if let Some(seed) = seed {
                config.seed = seed;
            }
            let outcome = evolve::run(&config, &data)?;
            eprintln!(
                "seed {}: best fitness {} (size {}) after {} generations, {} evaluations, {} ms [{:?}]",
                outcome.seed,
                outcome.best_fitness,
                outcome.best_size,
                outcome.generations.len(),
                outcome.evaluations,
                outcome.wall_time_ms.unwrap_or(0),
                outcome.termination,
            );
            if let Some(path) = report {
                // Wall time is the one non-reproducible field; the stored
                // report stays byte-identical across thread counts and hosts.
                let mut stored = outcome.clone();
                stored.wall_time_ms = None;
                let json = serde_json::to_string_pretty(&stored)?;
                fs::write(&path, json + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
                eprintln!("wrote report to {}", path.display());
            }
            println!("{}", outcome.best_formula);
        }
        Command::Eval { formula, dataset } => {
            let data = read_dataset(&dataset)?;
            let expr = formula::parse(&formula, data.vars())
                .with_context(|| format!("parsing formula {formula:?}"))?;
            let penalty = EvolutionConfig::default().overflow_penalty;
            let mut out = String::from("metric,fitness\n");
            for metric in [FitnessMetric::AbsDiff, FitnessMetric::NimDist] {
                let score = evolve::fitness(&expr, &data, metric, 0, penalty)?;
                out.push_str(&format!("{metric},{score}\n"));
            }
            print!("{out}");
        }
        Command::Verify(args) => {
            let bounds = args.bounds();
            let results = match args.check.as_deref() {
                Some(name) => vec![run_named_check(name, &bounds)?],
                None => verify::run_all(&bounds),
            };
            println!("{}", serde_json::to_string_pretty(&results)?);
            let mut failures = 0;
            for result in &results {
                if result.passed {
                    eprintln!("{}: pass ({})", result.name, result.bounds);
                } else {
                    failures += 1;
                    eprintln!("{}: FAIL ({})", result.name, result.bounds);
                    if let Some(witness) = &result.counterexample {
                        eprintln!(
                            "  at {}: expected {}, got {}",
                            witness.position, witness.expected, witness.actual
                        );
                    }
                }
            }
            if failures > 0 {
                eprintln!("{failures} of {} checks failed", results.len());
                return Ok(1);
            }
            eprintln!("all {} checks passed", results.len());
        }
    }
    Ok(0)
}

fn read_dataset(path: &PathBuf) -> Result<Dataset> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Dataset::from_csv_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run_named_check(name: &str, bounds: &VerifyBounds) -> Result<CheckResult> {
    Ok(match name {
        "ga1-kayles" => verify::check_ga1_kayles(bounds),
        "kayles-period" => verify::check_kayles_period(bounds),
        "ga2-formula" => verify::check_ga2_formula(bounds),
        "cm-extremes" => verify::check_cm_extremes(bounds),
        "cm-graph" => verify::check_cm_graph(bounds),
        "known-formulas" => verify::check_known_formulas(),
        other => bail!(
            "unknown check {other:?} (expected ga1-kayles, kayles-period, ga2-formula, \
             cm-extremes, cm-graph or known-formulas)"
        ),
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn solve_commands_exit_cleanly() {
        assert_eq!(run(["evonim", "grundy", "--ruleset", "ga2", "--position", "3,3,2"]), 0);
        assert_eq!(run(["evonim", "options", "--ruleset", "kayles", "--position", "3"]), 0);
        assert_eq!(
            run(["evonim", "sequence", "--ruleset", "ga1", "--family", "single-heap", "--max", "6"]),
            0
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["evonim"]), 2);
        assert_eq!(run(["evonim", "no-such-command"]), 2);
        assert_eq!(run(["evonim", "grundy", "--ruleset", "nope", "--position", "3"]), 2);
        assert_eq!(run(["evonim", "sequence", "--ruleset", "ga1", "--family", "single-heap"]), 2);
    }

    #[test]
    fn runtime_errors_exit_two() {
        // Malformed literal for the ruleset.
        assert_eq!(run(["evonim", "grundy", "--ruleset", "cm", "--position", "101"]), 2);
        // Unreadable file.
        assert_eq!(run(["evonim", "evolve", "--dataset", "/no/such/file.csv"]), 2);
        // Unknown check name.
        assert_eq!(run(["evonim", "verify", "--check", "nope"]), 2);
    }

    #[test]
    fn single_check_runs_at_small_bounds() {
        assert_eq!(
            run(["evonim", "verify", "--check", "cm-extremes", "--cm-max-n", "6"]),
            0
        );
    }
}
