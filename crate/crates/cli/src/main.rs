// SPDX-License-Identifier: Apache-2.0

//! `cliffsim`: classify, simulate and transform extended Clifford circuits.
//!
//! Exit codes: 0 on success, 1 when the requested task has no efficient
//! engine (or otherwise fails on valid input), 2 for usage, I/O and parse
//! errors.

mod bench;
mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cliffsim::circuit::{parse_circuit, render_circuit};
use cliffsim::classify::{engines, Engine, SimMode, TaskClass};
use cliffsim::oracle::{run_distribution, run_postselected};
use cliffsim::reductions::{parse_dimacs, s_gadget_rewrite, sharp_sat_circuit, GadgetMode};
use cliffsim::strong::{marginal, strong_out1_prod};
use cliffsim::weak::{BitSource, Sampler};
use cliffsim::{BitString, CircuitProgram, Error, Input};

use format::{format_float, output_strings};

#[derive(Parser)]
#[command(name = "cliffsim", version, about = "Classical simulation of extended Clifford circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the task class of a circuit and its weak/strong complexity.
    Classify { file: PathBuf },
    /// Run a simulation engine.
    Simulate {
        #[command(subcommand)]
        mode: SimulateCommand,
    },
    /// Circuit constructions from other problems.
    Reduce {
        #[command(subcommand)]
        kind: ReduceCommand,
    },
    /// Circuit rewrites.
    Gadget {
        #[command(subcommand)]
        kind: GadgetCommand,
    },
    /// Time the exact marginal engine on random circuits; prints JSON lines.
    Bench(bench::BenchArgs),
}

#[derive(Subcommand)]
enum SimulateCommand {
    /// Exact output probabilities.
    Strong {
        file: PathBuf,
        /// Output bits, one per output line in increasing line order; without
        /// it the whole distribution is printed.
        #[arg(long)]
        query: Option<String>,
        /// Use the dense simulator regardless of class.
        #[arg(long)]
        force_oracle: bool,
    },
    /// Samples of the output lines.
    Sample {
        file: PathBuf,
        #[arg(long)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print intermediate measurement outcomes.
        #[arg(long)]
        show_intermediate: bool,
        #[arg(long)]
        force_oracle: bool,
    },
    /// Dense state-vector simulation (width at most 16).
    Oracle {
        file: PathBuf,
        /// Condition on `line=bit` pairs, 1-indexed, comma separated.
        #[arg(long, value_delimiter = ',')]
        postselect: Vec<String>,
        /// Line whose conditional probability of 1 is printed.
        #[arg(long)]
        target: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// DIMACS CNF to a circuit whose output reads 1 with probability #f/2^n.
    Cnf2circuit {
        #[arg(long)]
        dimacs: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Replace every S gate by a |pi/4> ancilla, CX and measurement.
    InjectS {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(short, long, conflicts_with = "in_place")]
        output: Option<PathBuf>,
        #[arg(long)]
        in_place: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Adaptive,
    Postselect,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Formula(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Classify { file } => classify(&load(&file)?),
        Command::Simulate { mode } => match mode {
            SimulateCommand::Strong {
                file,
                query,
                force_oracle,
            } => strong(&load(&file)?, query.as_deref(), force_oracle),
            SimulateCommand::Sample {
                file,
                shots,
                seed,
                show_intermediate,
                force_oracle,
            } => sample(&load(&file)?, shots, seed, show_intermediate, force_oracle),
            SimulateCommand::Oracle {
                file,
                postselect,
                target,
            } => oracle(&load(&file)?, &postselect, target),
        },
        Command::Reduce {
            kind: ReduceCommand::Cnf2circuit { dimacs, output },
        } => {
            let f = parse_dimacs(&read(&dimacs)?)?;
            let c = sharp_sat_circuit(&f)?;
            let header = format!(
                "# {} variables, {} clauses; output reads 1 with probability #f/2^{}\n",
                f.num_vars(),
                f.clauses().len(),
                f.num_vars()
            );
            emit(output.as_deref(), &(header + &render_circuit(&c)))
        }
        Command::Gadget {
            kind:
                GadgetCommand::InjectS {
                    file,
                    mode,
                    output,
                    in_place,
                },
        } => {
            let c = load(&file)?;
            let mode = match mode {
                ModeArg::Adaptive => GadgetMode::Adaptive,
                ModeArg::Postselect => GadgetMode::Postselect,
            };
            let report = s_gadget_rewrite(&c, mode)?;
            let lines: Vec<String> = report.ancilla_lines.iter().map(|l| (l + 1).to_string()).collect();
            let text = format!("# ancilla lines: {}\n{}", lines.join(" "), render_circuit(&report.rewritten));
            let target = if in_place { Some(file.as_path()) } else { output.as_deref() };
            emit(target, &text)
        }
        Command::Bench(args) => bench::run(&args).map_err(Failure::from),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> CliResult<CircuitProgram> {
    parse_circuit(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn classify(c: &CircuitProgram) -> CliResult {
    let class = TaskClass::of(c);
    println!("class: {class}");
    println!("clifford: {}", if c.is_clifford_only() { "yes" } else { "no (contains S)" });
    for mode in [SimMode::Weak, SimMode::Strong] {
        let names: Vec<String> = engines(class, mode).iter().map(Engine::to_string).collect();
        println!("{mode}: {}; engines: {}", class.cell(mode), names.join(", "));
    }
    Ok(())
}

/// Refuses unless the class is efficient for `mode`, the gates are
/// Clifford, or the oracle is forced.
fn check_efficient(c: &CircuitProgram, mode: SimMode, force_oracle: bool) -> CliResult<bool> {
    if force_oracle {
        return Ok(false);
    }
    let class = TaskClass::of(c);
    let cell = class.cell(mode);
    if !cell.complexity.is_efficient() {
        return Err(Error::Refused(cliffsim::Refusal { class, mode, cell }).into());
    }
    if !c.is_clifford_only() {
        return Err(Failure {
            code: 1,
            message: format!(
                "circuit contains the non-Clifford gate S; no efficient engine exists. \
                 Use the dense oracle (--force-oracle) for circuits of width at most {}",
                cliffsim::oracle::MAX_WIDTH
            ),
        });
    }
    Ok(true)
}

fn parse_bits(text: &str, len: usize) -> CliResult<BitString> {
    let y: BitString = text
        .parse()
        .map_err(|_| Failure::usage(format!("invalid bitstring `{text}`")))?;
    if y.len() != len {
        return Err(Failure::usage(format!(
            "query has {} bits, circuit has {len} output lines",
            y.len()
        )));
    }
    Ok(y)
}

/// Largest output count for which the full distribution is printed.
const MAX_LISTED_OUTPUTS: usize = 16;

fn strong(c: &CircuitProgram, query: Option<&str>, force_oracle: bool) -> CliResult {
    let m = c.output_lines().len();
    let queries: Vec<BitString> = match query {
        Some(q) => vec![parse_bits(q, m)?],
        None if m > MAX_LISTED_OUTPUTS => {
            return Err(Failure::usage(format!(
                "{m} output lines; pass --query to ask for one outcome"
            )))
        }
        None => output_strings(m).collect(),
    };
    if !check_efficient(c, SimMode::Strong, force_oracle)? {
        let d = run_distribution(c)?;
        for y in &queries {
            println!("{y} {}", format_float(d.prob(y)));
        }
        return Ok(());
    }
    match c.input() {
        Input::Basis(_) => {
            for y in &queries {
                println!("{y} {}", marginal(c, c.output_lines(), y)?);
            }
        }
        Input::Product(_) => {
            let line = c.output_lines()[0];
            for y in &queries {
                println!("{y} {}", format_float(strong_out1_prod(c, line, y.get(0))?));
            }
        }
    }
    Ok(())
}

fn sample(c: &CircuitProgram, shots: u64, seed: u64, show_intermediate: bool, force_oracle: bool) -> CliResult {
    let m = c.output_lines().len();
    let mut counts = std::collections::BTreeMap::new();
    if check_efficient(c, SimMode::Weak, force_oracle)? {
        for s in Sampler::new(c)?.sample_many(seed, shots)? {
            if show_intermediate {
                let mids: String = s.intermediate.iter().map(|&b| if b { '1' } else { '0' }).collect();
                println!("{} intermediate={mids}", s.output);
            } else {
                println!("{}", s.output);
            }
            *counts.entry(s.output.to_string()).or_insert(0u64) += 1;
        }
    } else {
        let d = run_distribution(c)?;
        for shot in 0..shots {
            let mut source = BitSource::new(seed, shot);
            let u = source.bits(53) as f64 * 2f64.powi(-53);
            let mut acc = 0.0;
            let mut pick = BitString::zeros(m);
            for (y, p) in d.iter() {
                pick = y;
                acc += p;
                if u < acc {
                    break;
                }
            }
            println!("{pick}");
            *counts.entry(pick.to_string()).or_insert(0u64) += 1;
        }
    }
    println!("# frequencies over {shots} shots (seed {seed})");
    for (y, n) in counts {
        println!("# {y} {n} {}", format_float(n as f64 / shots as f64));
    }
    Ok(())
}

fn parse_postselect(items: &[String], width: usize) -> CliResult<Vec<(usize, bool)>> {
    items
        .iter()
        .map(|item| {
            let bad = || Failure::usage(format!("invalid postselection `{item}`, expected line=bit"));
            let (l, b) = item.split_once('=').ok_or_else(bad)?;
            let line: usize = l.trim().parse().map_err(|_| bad())?;
            if line == 0 || line > width {
                return Err(Failure::usage(format!("line {line} outside 1..={width}")));
            }
            let bit = match b.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(bad()),
            };
            Ok((line - 1, bit))
        })
        .collect()
}

fn oracle(c: &CircuitProgram, postselect: &[String], target: Option<usize>) -> CliResult {
    let post = parse_postselect(postselect, c.width())?;
    match target {
        Some(t) => {
            if t == 0 || t > c.width() {
                return Err(Failure::usage(format!("target line {t} outside 1..={}", c.width())));
            }
            let p = run_postselected(c, &post, (t - 1, true))?;
            println!("{}", format_float(p));
        }
        None if !post.is_empty() => return Err(Failure::usage("--postselect needs --target")),
        None => {
            let d = run_distribution(c)?;
            for y in output_strings(c.output_lines().len()) {
                println!("{y} {}", format_float(d.prob(&y)));
            }
        }
    }
    Ok(())
}
