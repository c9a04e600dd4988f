mod common;

use std::process::ExitCode;
use std::time::Instant;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigUint;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_value, desk, eps, within_eps};
use pkp_core::exact::solve_exact_dp;
use pkp_core::fptas::{run_fptas, scale_profits};
use pkp_core::generate::gen_example1;
use pkp_core::greedy::{solve_greedy, verify_bounds};
use pkp_core::numerics::floor_scaled_log2_u64;
use pkp_core::reduction::{verify_correspondence, PppInstance};
use pkp_core::{enforce_assumptions, BigProduct, Instance, Rational};

const INSTANCES: usize = 500;
const REF_PRECISION: usize = 256;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    match failures.first() {
        None => Outcome { pass: true, detail: summary },
        Some(first) => Outcome {
            pass: false,
            detail: format!("{summary}; {} violation(s), first: {first}", failures.len()),
        },
    }
}

/// The first 500 nonempty preprocessed desk instances (`n ≤ 12`).
fn corpus() -> Vec<(u64, Instance)> {
    (0u64..)
        .map(|seed| (seed, desk(seed, 12)))
        .filter(|(_, inst)| !inst.is_empty())
        .take(INSTANCES)
        .collect()
}

fn oracle_equivalence(corpus: &[(u64, Instance)], optima: &[BigProduct]) -> Outcome {
    let failures: Vec<String> = corpus
        .iter()
        .zip(optima)
        .filter_map(|((seed, inst), opt)| {
            let dp = solve_exact_dp(inst).unwrap().value;
            (dp != *opt).then(|| format!("seed {seed}: dp {dp} vs brute force {opt}"))
        })
        .collect();
    outcome(&failures, format!("{} instances", corpus.len()))
}

fn fptas_guarantee(corpus: &[(u64, Instance)], optima: &[BigProduct]) -> Outcome {
    let mut failures = Vec::new();
    for e in [eps(1, 2), eps(1, 10), eps(1, 100)] {
        for ((seed, inst), opt) in corpus.iter().zip(optima) {
            let sol = solve_fptas_checked(inst, e);
            if !within_eps(&sol, opt, e) {
                failures.push(format!("seed {seed} eps {e}: {sol} < (1-eps)*{opt}"));
            }
        }
    }
    outcome(&failures, format!("{} runs", 3 * corpus.len()))
}

fn solve_fptas_checked(inst: &Instance, e: Rational) -> BigProduct {
    let sol = run_fptas(inst, e).unwrap().solution;
    assert!(inst.is_feasible(&sol.indices).unwrap());
    assert_eq!(inst.evaluate(&sol.indices).unwrap(), sol.value);
    sol.value
}

fn fptas_scaling(corpus: &[(u64, Instance)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (seed, inst) in corpus.iter().filter(|(_, inst)| inst.p_max() >= 2) {
        for den in [2u64, 10, 100] {
            let run = run_fptas(inst, eps(1, den)).unwrap();
            let (scaled, tables) = (run.scaled.unwrap(), run.tables.unwrap());
            let expected = inst.len() * scaled.p_tilde_max as usize + 1;
            if tables.len() != expected {
                failures.push(format!("seed {seed} eps 1/{den}: table {} vs {expected}", tables.len()));
            }
            let halved = scale_profits(inst, eps(1, 2 * den)).unwrap().p_tilde_max;
            let twice = 2 * scaled.p_tilde_max;
            if halved + 1 < twice || halved > twice + 1 {
                failures.push(format!("seed {seed} eps 1/{den}: p~max {} -> {halved}", scaled.p_tilde_max));
            }
            checked += 1;
        }
    }
    outcome(&failures, format!("{checked} (instance, eps) pairs"))
}

fn greedy_bounds(corpus: &[(u64, Instance)], optima: &[BigProduct]) -> Outcome {
    let mut failures = Vec::new();
    for ((seed, inst), opt) in corpus.iter().zip(optima) {
        let zh = solve_greedy(inst).unwrap().0.value;
        if !verify_bounds(inst, &zh, opt) {
            failures.push(format!("seed {seed}: zH {zh}, z* {opt}, p_max {}", inst.p_max()));
        }
    }
    for m in [10u64, 100, 1000] {
        let inst = enforce_assumptions(&gen_example1(m).unwrap()).unwrap().instance;
        let zh = solve_greedy(&inst).unwrap().0.value;
        let zs = solve_exact_dp(&inst).unwrap().value;
        if !verify_bounds(&inst, &zh, &zs) {
            failures.push(format!("example M={m}: zH {zh}, z* {zs}"));
        }
    }
    outcome(&failures, format!("{} instances", corpus.len() + 3))
}

fn example1() -> Outcome {
    let mut failures = Vec::new();
    for m in [10i64, 100, 1000] {
        let inst = enforce_assumptions(&gen_example1(m as u64).unwrap()).unwrap().instance;
        let zh = solve_greedy(&inst).unwrap().0.value;
        let opt = solve_exact_dp(&inst).unwrap();
        if zh != BigProduct::from(2 * (m + 2)) {
            failures.push(format!("M={m}: greedy {zh}, expected {}", 2 * (m + 2)));
        }
        if opt.value != BigProduct::from(m * m * m) {
            let profits: Vec<i64> = opt.indices.iter().map(|&j| inst.profit(j)).collect();
            failures.push(format!(
                "M={m}: exact {} (profits {profits:?}), expected M^3 = {}",
                opt.value,
                m * m * m
            ));
        }
    }
    outcome(&failures, "M in {10, 100, 1000}".into())
}

/// Seeded product-partition sample: `2 ≤ n ≤ 8`, entries in `2..=9`, with a
/// perfect-square product of at most 10⁴.
fn ppp_sample(index: u64) -> PppInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + index);
    loop {
        let n = rng.gen_range(2..=8);
        let a: Vec<u64> = (0..n).map(|_| rng.gen_range(2..=9)).collect();
        if a.iter().product::<u64>() > 10_000 {
            continue;
        }
        let ppp = PppInstance::new(a).unwrap();
        if ppp.target().unwrap().is_some() {
            return ppp;
        }
    }
}

fn reduction_correspondence() -> Outcome {
    let mut failures = Vec::new();
    let mut yes = 0;
    for i in 0..200 {
        let ppp = ppp_sample(i);
        let report = verify_correspondence(&ppp, 10).unwrap();
        yes += usize::from(report.ppp_yes());
        if !report.holds() {
            failures.push(format!("sample {i} {:?}: {report:?}", ppp.values()));
        }
    }
    outcome(&failures, format!("200 samples, {yes} yes-instances"))
}

/// `⌊c·log₂x⌋` by the power-comparison definition.
fn by_definition(x: u64, c: Rational) -> u64 {
    let power = BigUint::from(x).pow(c.num() as u32);
    let mut m = (power.bits() - 1) / c.den();
    while BigUint::from(1u8) << ((m + 1) * c.den()) <= power {
        m += 1;
    }
    m
}

fn log_kernel() -> Outcome {
    let rm = RoundingMode::ToEven;
    let p = REF_PRECISION;
    let mut cc = Consts::new().unwrap();
    let margin = BigFloat::from_f64(1e-6, p);
    let one = BigFloat::from_u64(1, p);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let (mut random_cases, mut skipped) = (0, 0);
    while random_cases < 10_000 {
        let x = rng.gen_range(1..=1_000_000u64);
        let c = Rational::new(rng.gen_range(1..=1000), rng.gen_range(1..=1000)).unwrap();
        let reference = BigFloat::from_u64(x, p)
            .log2(p, rm, &mut cc)
            .mul(&BigFloat::from_u64(c.num(), p), p, rm)
            .div(&BigFloat::from_u64(c.den(), p), p, rm);
        let frac = reference.fract();
        let near_integer = x == 1
            || frac.cmp(&margin).is_some_and(|o| o < 0)
            || one.sub(&frac, p, rm).cmp(&margin).is_some_and(|o| o < 0);
        if near_integer {
            skipped += 1;
            continue;
        }
        random_cases += 1;
        let got = floor_scaled_log2_u64(x, c).unwrap();
        let lo = BigFloat::from_u64(got, p);
        let hi = BigFloat::from_u64(got + 1, p);
        let inside = lo.cmp(&reference).is_some_and(|o| o <= 0) && reference.cmp(&hi).is_some_and(|o| o < 0);
        if !inside {
            failures.push(format!("x={x} c={c}: got {got}, reference {reference}"));
        }
    }

    let mut boundary_cases = 0;
    for k in 1..=34u64 {
        let c = Rational::new(1 + (k * 37) % 1000, 1 + (k * 91) % 1000).unwrap();
        for x in [(1u64 << k) - 1, 1 << k, (1 << k) + 1] {
            if boundary_cases == 100 {
                break;
            }
            boundary_cases += 1;
            let got = floor_scaled_log2_u64(x, c).unwrap();
            let want = by_definition(x, c);
            if got != want {
                failures.push(format!("x={x} c={c}: got {got}, definition {want}"));
            }
        }
    }
    outcome(
        &failures,
        format!("{random_cases} random ({skipped} near-integer skipped), {boundary_cases} boundary cases"),
    )
}

fn log_inequality_sweeps() -> Outcome {
    let ln2 = std::f64::consts::LN_2;
    let mut failures = Vec::new();
    for x in 1..=1_000_000u64 {
        let xf = x as f64;
        let gap = (1.0 / xf).ln_1p() / ln2;
        if gap < 1.0 / (xf + 1.0) {
            failures.push(format!("x={x}: log2(x+1)-log2(x) = {gap}"));
        }
    }
    let steps = 1_000_000u64;
    for i in 1..steps {
        let e = i as f64 / steps as f64;
        if e > -(-e).ln_1p() / ln2 {
            failures.push(format!("eps={e}"));
        }
    }
    outcome(&failures, format!("x in 1..=10^6, eps grid of {} points", steps - 1))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let optima: Vec<BigProduct> = corpus.iter().map(|(_, inst)| brute_value(inst)).collect();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus, &optima))),
        ("fptas guarantee", Box::new(|| fptas_guarantee(&corpus, &optima))),
        ("fptas scaling", Box::new(|| fptas_scaling(&corpus))),
        ("greedy bounds", Box::new(|| greedy_bounds(&corpus, &optima))),
        ("greedy worst-case family", Box::new(example1)),
        ("reduction correspondence", Box::new(reduction_correspondence)),
        ("exact log kernel", Box::new(log_kernel)),
        ("log inequality sweeps", Box::new(log_inequality_sweeps)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let Outcome { pass, detail } = check();
        failed += usize::from(!pass);
        println!(
            "criterion {} {name}: {} ({detail}) [{:.2}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed [{:.2}s]",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
