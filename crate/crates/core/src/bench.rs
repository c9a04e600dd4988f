//! Seeded comparison of the exact, FPTAS and greedy solvers, written as CSV.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{PkpError, Result};
use crate::exact::solve_exact_dp;
use crate::fptas::solve_fptas;
use crate::generate::{gen_random, RandomParams};
use crate::greedy::solve_greedy;
use crate::instance::{enforce_assumptions, Instance, Solution};
use crate::numerics::Rational;
use crate::product::BigProduct;
use crate::report::exact_ratio;

pub const BENCH_MAX_N: usize = 40;

pub const CSV_HEADER: [&str; 10] = [
    "n", "eps", "seed", "z_exact", "z_fptas", "z_greedy", "ratio_fptas", "ratio_greedy", "t_exact_ms", "t_fptas_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub eps: String,
    pub seed: u64,
    pub z_exact: BigProduct,
    pub z_fptas: BigProduct,
    pub z_greedy: BigProduct,
    /// Exact reduced fraction; empty when `z_exact` is 0.
    pub ratio_fptas: String,
    pub ratio_greedy: String,
    pub t_exact_ms: f64,
    pub t_fptas_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub eps_list: Vec<Rational>,
    pub seeds: u64,
}

/// Instance used for bench cell `(n, seed)`: `|p| ≤ 9`, `1 ≤ w ≤ 15`, and a
/// capacity of roughly a third of the total weight.
pub fn bench_instance(n: usize, seed: u64) -> Result<Instance> {
    let params = RandomParams {
        n,
        profit: (1, 9),
        weight: (1, 15),
        capacity: (8 * n as i64 / 3).max(15),
        neg_fraction: 0.5,
        seed,
    };
    gen_random(&params)
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, (start.elapsed().as_secs_f64() * 1e6).round() / 1e3))
}

fn bench_cell(n: usize, seed: u64, eps_list: &[Rational]) -> Result<Vec<BenchRow>> {
    let raw = bench_instance(n, seed)?;
    let pre = enforce_assumptions(&raw)?;
    let inst = &pre.instance;
    let lifted = |s: &Solution| pre.lift(&raw, s).map(|s| s.value);
    let (z_exact, t_exact_ms) = timed(|| {
        if inst.is_empty() {
            Ok(Solution::empty())
        } else {
            solve_exact_dp(inst)
        }
    })?;
    let z_exact = lifted(&z_exact)?;
    let z_greedy = lifted(&solve_greedy(inst)?.0)?;
    eps_list
        .iter()
        .map(|&eps| {
            let (z_fptas, t_fptas_ms) = timed(|| {
                if inst.is_empty() {
                    Ok(Solution::empty())
                } else {
                    solve_fptas(inst, eps)
                }
            })?;
            let z_fptas = lifted(&z_fptas)?;
            Ok(BenchRow {
                n,
                eps: eps.to_string(),
                seed,
                ratio_fptas: exact_ratio(&z_fptas, &z_exact).unwrap_or_default(),
                ratio_greedy: exact_ratio(&z_greedy, &z_exact).unwrap_or_default(),
                z_exact: z_exact.clone(),
                z_fptas,
                z_greedy: z_greedy.clone(),
                t_exact_ms,
                t_fptas_ms,
            })
        })
        .collect()
}

/// Runs every `(n, seed)` cell in parallel; rows come back in
/// `(n, seed, eps)` order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if let Some(&n) = cfg.n_list.iter().find(|&&n| n > BENCH_MAX_N) {
        return Err(PkpError::TooLarge { n, limit: BENCH_MAX_N });
    }
    if let Some(e) = cfg.eps_list.iter().find(|e| !e.is_proper_fraction()) {
        return Err(PkpError::EpsOutOfRange(e.to_string()));
    }
    let cells: Vec<(usize, u64)> = cfg
        .n_list
        .iter()
        .flat_map(|&n| (0..cfg.seeds).map(move |s| (n, s)))
        .collect();
    let rows: Vec<Vec<BenchRow>> = cells
        .par_iter()
        .map(|&(n, seed)| bench_cell(n, seed, &cfg.eps_list))
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let io_err = |e: csv::Error| PkpError::InvalidParams(format!("csv output: {e}"));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER).map_err(io_err)?;
    for row in rows {
        w.serialize(row).map_err(io_err)?;
    }
    w.flush().map_err(|e| PkpError::InvalidParams(format!("csv output: {e}")))?;
    Ok(())
}
