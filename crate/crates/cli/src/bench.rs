// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use clap::Args;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use cliffsim::generate::{random_bits, random_clifford_gates};
use cliffsim::strong::strong_bits_marginal;
use cliffsim::{BitString, CircuitProgram, Input, Operation, Result};

#[derive(Args)]
pub struct BenchArgs {
    /// Circuit width.
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Gate count.
    #[arg(long, default_value_t = 1000)]
    gates: usize,
    /// Number of queried output lines; defaults to `n`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run n = 128, 256, 512, 1024 with 100·n gates and m = n, then report
    /// the log-log slope of time against n.
    #[arg(long)]
    scaling: bool,
}

#[derive(Serialize)]
struct Run {
    suite: &'static str,
    n: usize,
    gates: usize,
    m: usize,
    seconds: f64,
    /// Single-gate Pauli conjugations performed (`m·gates`).
    conjugations: u64,
    conjugations_per_second: f64,
    probability: String,
}

#[derive(Serialize)]
struct Scaling {
    suite: &'static str,
    sizes: Vec<usize>,
    seconds: Vec<f64>,
    log_log_slope: f64,
}

/// Times one exact marginal on a random circuit with random basis input.
pub fn time_marginal(n: usize, gates: usize, m: usize, seed: u64) -> Result<(f64, String)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let ops: Vec<Operation> = random_clifford_gates(&mut rng, n, gates)
        .into_iter()
        .map(Operation::from)
        .collect();
    let x = random_bits(&mut rng, n);
    let lines: Vec<usize> = (0..m).collect();
    let c = CircuitProgram::new(n, ops, Input::Basis(x.clone()), lines.clone())?;
    let start = Instant::now();
    let p = strong_bits_marginal(&c, &x, &lines, &BitString::zeros(m))?;
    Ok((start.elapsed().as_secs_f64(), p.to_string()))
}

/// Least-squares slope of `log t` against `log n`.
pub fn log_log_slope(ns: &[usize], ts: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = ts.iter().map(|&t| t.max(1e-9).ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn report(suite: &'static str, n: usize, gates: usize, m: usize, seed: u64) -> Result<f64> {
    let (seconds, probability) = time_marginal(n, gates, m, seed)?;
    let conjugations = (m * gates) as u64;
    let run = Run {
        suite,
        n,
        gates,
        m,
        seconds,
        conjugations,
        conjugations_per_second: conjugations as f64 / seconds.max(1e-9),
        probability,
    };
    println!("{}", serde_json::to_string(&run).expect("plain struct"));
    Ok(seconds)
}

pub fn run(args: &BenchArgs) -> Result<()> {
    if !args.scaling {
        report("single", args.n, args.gates, args.m.unwrap_or(args.n), args.seed)?;
        return Ok(());
    }
    let sizes = vec![128, 256, 512, 1024];
    let seconds = sizes
        .iter()
        .map(|&n| report("scaling", n, 100 * n, n, args.seed))
        .collect::<Result<Vec<_>>>()?;
    let summary = Scaling {
        suite: "scaling-summary",
        log_log_slope: log_log_slope(&sizes, &seconds),
        sizes,
        seconds,
    };
    println!("{}", serde_json::to_string(&summary).expect("plain struct"));
    Ok(())
}
