//! Batch front end: generate model files, tabulate them, dump Hankel minors,
//! extract realizations and run the membership and lifting checks.
//!
//! Exit codes: 0 on success or a passing check, 1 on a failing check, 2 on
//! any input error. Reports go to stdout as JSON (CSV for `hankel`); `-o`
//! writes them atomically instead.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use strfn::io as formats;
use strfn::{
    build_partial_hankel, check_lift_finite, check_lift_hmm, check_markov_invariants,
    check_membership_gnd, eval_lifted_polynomial, extract_realization, probe_conjecture, slc_probe,
    Alphabet, ArithmeticMode, Error, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(
    name = "strfn",
    version,
    about = "Hankel rank tests, realization extraction and model membership checks \
             for string-indexed probability tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Arithmetic for parsing and every computation
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Rational)]
    mode: ModeArg,

    /// Zero-test tolerance (float mode only)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Write the output here (atomically) instead of stdout
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenModel {
    Hmm,
    Markov,
    Trace,
    Realization,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftModelArg {
    Gnd,
    Hmm,
}

#[derive(Args)]
struct InputArg {
    /// Distribution file (JSON); stdin when omitted or `-`
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded model or table file
    Gen {
        #[arg(long, value_enum)]
        model: GenModel,
        /// Symbol count (digits) or a comma-separated symbol list
        #[arg(long, default_value = "2")]
        alphabet: String,
        #[arg(long)]
        seed: u64,
        /// Hidden state count (hmm)
        #[arg(long)]
        states: Option<usize>,
        /// Matrix order (trace)
        #[arg(long)]
        order: Option<usize>,
        /// Dimension (realization)
        #[arg(long = "d")]
        dim: Option<usize>,
        /// Constrain the generated realization to be marginal-consistent
        #[arg(long)]
        gussf: bool,
        /// Word length (table)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Tabulate a model file over all words of length n
    Tabulate {
        /// Model file: hmm, markov, trace (tagged) or a realization
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Print a Hankel minor as CSV (rows = suffixes, columns = prefixes)
    Hankel {
        #[command(flatten)]
        input: InputArg,
        /// Row budget: suffix words up to this length
        #[arg(long)]
        rows: usize,
        /// Column budget: prefix words up to this length
        #[arg(long)]
        cols: usize,
    },
    /// Rank report of a Hankel minor
    Rank {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Extract a quasi-realization from a table satisfying the rank conditions
    Realize {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "d")]
        dim: usize,
    },
    /// Membership check for the dimension-d model (exit 1 on failure)
    CheckGnd {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "d")]
        dim: usize,
        /// Witness cap
        #[arg(long, default_value_t = strfn::invariants::DEFAULT_WITNESS_LIMIT)]
        limit: usize,
        /// Also scan all budget-wide minors against condition (b)
        #[arg(long)]
        probe_conjecture: bool,
    },
    /// Markov determinant scan (exit 1 when a witness exists)
    CheckMarkov {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = strfn::invariants::DEFAULT_WITNESS_LIMIT)]
        limit: usize,
    },
    /// Lifting biconditional report over a Σ^{n+1} table
    LiftCheck {
        #[arg(long, value_enum)]
        model: LiftModelArg,
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "d")]
        dim: usize,
        /// Optional HMM parameter file certifying membership constructively
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Uniqueness probe: agreement on short words must extend to the horizon
    SlcProbe {
        #[arg(long = "gen-a")]
        gen_a: PathBuf,
        #[arg(long = "gen-b")]
        gen_b: PathBuf,
        #[arg(long = "d")]
        dim: usize,
        #[arg(long)]
        horizon: usize,
    },
    /// Evaluate the lifted conditions of a length-n polynomial on a Σ^{n+1} table
    LiftPoly {
        /// Polynomial file in variables indexed by words of length n
        #[arg(long)]
        poly: PathBuf,
        #[command(flatten)]
        input: InputArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let mode = match cli.mode {
        ModeArg::Rational => ArithmeticMode::Exact,
        ModeArg::Float => ArithmeticMode::Float {
            tol: cli.tol.unwrap_or(DEFAULT_TOL),
        },
    };
    if cli.mode == ModeArg::Rational && cli.tol.is_some() {
        return Err("--tol only applies to --mode float".into());
    }
    let output = cli.output.as_deref();

    match cli.command {
        Command::Gen {
            model,
            alphabet,
            seed,
            states,
            order,
            dim,
            gussf,
            n,
        } => {
            let alphabet = parse_alphabet(&alphabet)?;
            let value = match model {
                GenModel::Hmm => {
                    let states = states.ok_or("--states is required for --model hmm")?;
                    formats::hmm_to_json(&strfn::random_hmm(states, &alphabet, seed))
                }
                GenModel::Markov => formats::markov_to_json(&strfn::random_markov(&alphabet, seed)),
                GenModel::Trace => {
                    let order = order.ok_or("--order is required for --model trace")?;
                    formats::trace_to_json(&strfn::random_trace(order, &alphabet, seed))
                }
                GenModel::Realization => {
                    let dim = dim.ok_or("--d is required for --model realization")?;
                    formats::realization_to_json(&strfn::random_realization(
                        dim, &alphabet, seed, gussf,
                    ))
                }
                GenModel::Table => {
                    let n = n.ok_or("--n is required for --model table")?;
                    formats::distribution_to_json(&strfn::random_table(&alphabet, n, seed))
                }
            };
            emit_json(output, &value)?;
            Ok(0)
        }

        Command::Tabulate { model, n } => {
            let (text, name) = read_file(&model)?;
            let parsed = formats::parse_model(&text, mode).map_err(|e| in_file(&name, e))?;
            let table = parsed.to_table(n).map_err(|e| in_file(&name, e))?;
            emit_json(output, &formats::distribution_to_json(&table))?;
            Ok(0)
        }

        Command::Hankel { input, rows, cols } => {
            let table = load_table(&input, mode)?;
            let minor = build_partial_hankel(&table, rows, cols).map_err(|e| e.to_string())?;
            emit(output, &formats::hankel_to_csv(&minor, table.alphabet()))?;
            Ok(0)
        }

        Command::Rank { input, rows, cols } => {
            let table = load_table(&input, mode)?;
            let minor = build_partial_hankel(&table, rows, cols).map_err(|e| e.to_string())?;
            let report = minor.rank_report();
            emit_json(
                output,
                &formats::rank_report_json(&report, table.alphabet()),
            )?;
            Ok(0)
        }

        Command::Realize { input, dim } => {
            let table = load_table(&input, mode)?;
            match extract_realization(&table, dim) {
                Ok(realization) => {
                    emit_json(output, &formats::realization_to_json(&realization))?;
                    Ok(0)
                }
                Err(e @ (Error::ConditionAViolated { .. } | Error::ConditionBViolated { .. })) => {
                    // a failed check, not an input error
                    emit_json(output, &serde_json::json!({ "error": e.to_string() }))?;
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }

        Command::CheckGnd {
            input,
            dim,
            limit,
            probe_conjecture: probe,
        } => {
            let table = load_table(&input, mode)?;
            let report = check_membership_gnd(&table, dim, limit).map_err(|e| e.to_string())?;
            let mut value = formats::membership_report_json(&report, table.alphabet());
            if probe {
                let p = probe_conjecture(&table, dim).map_err(|e| e.to_string())?;
                value["conjecture_probe"] = formats::conjecture_probe_json(&p);
            }
            emit_json(output, &value)?;
            Ok(u8::from(!report.passed))
        }

        Command::CheckMarkov { input, limit } => {
            let table = load_table(&input, mode)?;
            let report = check_markov_invariants(&table, limit);
            emit_json(
                output,
                &formats::membership_report_json(&report, table.alphabet()),
            )?;
            Ok(u8::from(!report.passed))
        }

        Command::LiftCheck {
            model,
            input,
            dim,
            params,
        } => {
            let table = load_table(&input, mode)?;
            let report = match model {
                LiftModelArg::Gnd => {
                    if params.is_some() {
                        return Err("--params only applies to --model hmm".into());
                    }
                    check_lift_finite(&table, dim).map_err(|e| e.to_string())?
                }
                LiftModelArg::Hmm => {
                    let supplied = match params {
                        None => None,
                        Some(path) => {
                            let (text, name) = read_file(&path)?;
                            match formats::parse_model(&text, mode)
                                .map_err(|e| in_file(&name, e))?
                            {
                                formats::ModelFile::Hmm(h) => Some(h),
                                _ => return Err(format!("{name}: expected an hmm model file")),
                            }
                        }
                    };
                    check_lift_hmm(&table, dim, supplied.as_ref()).map_err(|e| e.to_string())?
                }
            };
            emit_json(output, &formats::lift_report_json(&report))?;
            Ok(u8::from(!report.equivalence_holds))
        }

        Command::SlcProbe {
            gen_a,
            gen_b,
            dim,
            horizon,
        } => {
            let a = load_realization(&gen_a, mode)?;
            let b = load_realization(&gen_b, mode)?;
            let outcome = slc_probe(&a, &b, dim, horizon).map_err(|e| e.to_string())?;
            emit_json(output, &formats::slc_outcome_json(&outcome, a.alphabet()))?;
            Ok(u8::from(!outcome.holds))
        }

        Command::LiftPoly { poly, input } => {
            let (text, name) = read_file(&poly)?;
            let polynomial =
                formats::parse_polynomial(&text, mode).map_err(|e| in_file(&name, e))?;
            let table = load_table(&input, mode)?;
            let values = eval_lifted_polynomial(&polynomial, &table).map_err(|e| e.to_string())?;
            emit_json(
                output,
                &formats::lifted_polynomial_json(&values, table.alphabet()),
            )?;
            Ok(0)
        }
    }
}

/// `--alphabet 3` gives digit symbols; `--alphabet a,b,c` names them.
fn parse_alphabet(spec: &str) -> Result<Alphabet, String> {
    let result = if spec.contains(',') {
        Alphabet::new(spec.split(',').map(str::trim).map(String::from).collect())
    } else if let Ok(k) = spec.parse::<usize>() {
        Alphabet::of_size(k)
    } else {
        Alphabet::new(vec![spec.to_string()])
    };
    result.map_err(|e| e.to_string())
}

fn read_file(path: &Path) -> Result<(String, String), String> {
    let name = path.display().to_string();
    if name == "-" {
        return read_stdin();
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{name}: {e}"))?;
    Ok((text, name))
}

fn read_stdin() -> Result<(String, String), String> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| format!("stdin: {e}"))?;
    Ok((text, "stdin".to_string()))
}

fn read_input(input: &InputArg) -> Result<(String, String), String> {
    match &input.input {
        Some(path) => read_file(path),
        None => read_stdin(),
    }
}

fn in_file(name: &str, e: Error) -> String {
    format!("{name}: {e}")
}

fn load_table(input: &InputArg, mode: ArithmeticMode) -> Result<strfn::DistributionTable, String> {
    let (text, name) = read_input(input)?;
    formats::parse_distribution(&text, mode).map_err(|e| in_file(&name, e))
}

fn load_realization(path: &Path, mode: ArithmeticMode) -> Result<strfn::QuasiRealization, String> {
    let (text, name) = read_file(path)?;
    formats::parse_realization(&text, mode).map_err(|e| in_file(&name, e))
}

fn emit_json(output: Option<&Path>, value: &Value) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    emit(output, &text)
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), String> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            // write-then-rename keeps partially written reports invisible
            let tmp = path.with_file_name(format!(
                "{}.tmp",
                path.file_name().and_then(|n| n.to_str()).unwrap_or("out")
            ));
            std::fs::write(&tmp, content).map_err(|e| format!("{}: {e}", tmp.display()))?;
            std::fs::rename(&tmp, path).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}
