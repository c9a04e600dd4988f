//! Solver dispatch on raw instances and the machine-readable run report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{PkpError, Result};
use crate::exact::{solve_brute_force, solve_exact_dp, DEFAULT_BRUTE_FORCE_LIMIT};
use crate::fptas::solve_fptas;
use crate::greedy::{solve_greedy, GreedyTrace};
use crate::instance::{enforce_assumptions, Instance, Preprocessed, Solution};
use crate::io::to_json;
use crate::numerics::Rational;
use crate::product::BigProduct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Exact,
    Fptas,
    Greedy,
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Exact, Algorithm::Fptas, Algorithm::Greedy, Algorithm::Brute];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Fptas => "fptas",
            Algorithm::Greedy => "greedy",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = PkpError;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| PkpError::InvalidParams(format!("unknown algorithm {s:?}")))
    }
}

/// Hex SHA-256 of the canonical JSON encoding.
pub fn instance_digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(to_json(inst).as_bytes()))
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    /// Solution in terms of the raw instance, forced items included.
    pub solution: Solution,
    pub preprocessed: Preprocessed,
    pub trace: Option<GreedyTrace>,
    pub elapsed_ms: f64,
}

/// Preprocesses `raw`, runs `algo` and lifts the result back onto `raw`.
/// `eps` must be given for the FPTAS and only for it.
pub fn solve_raw(raw: &Instance, algo: Algorithm, eps: Option<Rational>) -> Result<SolveOutcome> {
    match (algo, eps) {
        (Algorithm::Fptas, None) => {
            return Err(PkpError::InvalidParams("--eps is required for fptas".into()))
        }
        (Algorithm::Fptas, Some(_)) | (_, None) => {}
        (_, Some(_)) => {
            return Err(PkpError::InvalidParams(format!("--eps only applies to fptas, not {algo}")))
        }
    }
    if let Some(e) = eps {
        if !e.is_proper_fraction() {
            return Err(PkpError::EpsOutOfRange(e.to_string()));
        }
    }
    let pre = enforce_assumptions(raw)?;
    let inst = &pre.instance;
    let start = Instant::now();
    let mut trace = None;
    let sol = if inst.is_empty() {
        Solution::empty()
    } else {
        match algo {
            Algorithm::Exact => solve_exact_dp(inst)?,
            Algorithm::Brute => solve_brute_force(inst, DEFAULT_BRUTE_FORCE_LIMIT)?,
            Algorithm::Fptas => solve_fptas(inst, eps.expect("checked above"))?,
            Algorithm::Greedy => {
                let (s, t) = solve_greedy(inst)?;
                trace = Some(t);
                s
            }
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let solution = pre.lift(raw, &sol)?;
    Ok(SolveOutcome { solution, preprocessed: pre, trace, elapsed_ms })
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub instance_digest: String,
    pub value: BigProduct,
    pub indices: Vec<usize>,
    pub forced_items: Vec<usize>,
    pub removed_items: Vec<usize>,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `value / reference` as an exact reduced fraction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<GreedyTrace>,
}

impl RunReport {
    /// Builds the report after re-checking the value and feasibility against
    /// `raw`.
    pub fn new(raw: &Instance, algo: Algorithm, eps: Option<Rational>, outcome: &SolveOutcome) -> Result<Self> {
        let sol = &outcome.solution;
        let recomputed = raw.evaluate(&sol.indices)?;
        if recomputed != sol.value || !raw.is_feasible(&sol.indices)? {
            return Err(PkpError::InvalidParams(format!(
                "internal error: reported value {} does not re-validate (got {recomputed})",
                sol.value
            )));
        }
        Ok(RunReport {
            algorithm: algo,
            instance_digest: instance_digest(raw),
            value: sol.value.clone(),
            indices: sol.indices.clone(),
            forced_items: sol.forced_items.clone(),
            removed_items: outcome.preprocessed.removed.clone(),
            wall_time_ms: outcome.elapsed_ms,
            eps: eps.map(|e| e.to_string()),
            seed: None,
            ratio: None,
            trace: outcome.trace.clone(),
        })
    }

    pub fn with_reference(mut self, reference: &BigProduct) -> Self {
        self.ratio = exact_ratio(&self.value, reference);
        self
    }

    pub fn to_text(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|j| j.to_string()).collect();
        let mut s = format!(
            "algorithm: {}\nvalue: {}\nitems: {}\ntime_ms: {:.3}\n",
            self.algorithm,
            self.value,
            idx.join(" "),
            self.wall_time_ms
        );
        if let Some(e) = &self.eps {
            s.push_str(&format!("eps: {e}\n"));
        }
        if let Some(r) = &self.ratio {
            s.push_str(&format!("ratio: {r}\n"));
        }
        if let Some(t) = &self.trace {
            s.push_str(&format!("trace: {}\n", serde_json::to_string(t).expect("trace serialization")));
        }
        s
    }
}

/// `value / reference` in lowest terms, `None` if the reference is not positive.
pub fn exact_ratio(value: &BigProduct, reference: &BigProduct) -> Option<String> {
    if !reference.is_positive() {
        return None;
    }
    let r = num_rational::BigRational::new(value.as_bigint().clone(), reference.as_bigint().clone());
    Some(r.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_example1;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("dp".parse::<Algorithm>().is_err());
    }

    #[test]
    fn eps_only_with_fptas() {
        let raw = gen_example1(10).unwrap();
        let half = Some(Rational::new(1, 2).unwrap());
        assert!(solve_raw(&raw, Algorithm::Fptas, None).is_err());
        assert!(solve_raw(&raw, Algorithm::Exact, half).is_err());
        assert!(matches!(
            solve_raw(&raw, Algorithm::Fptas, Some(Rational::integer(2).unwrap())),
            Err(PkpError::EpsOutOfRange(_))
        ));
    }

    #[test]
    fn example1_reports() {
        let raw = gen_example1(10).unwrap();
        let exact = solve_raw(&raw, Algorithm::Exact, None).unwrap();
        let rep = RunReport::new(&raw, Algorithm::Exact, None, &exact).unwrap();
        assert_eq!(rep.value.to_string(), "1200");
        let greedy = solve_raw(&raw, Algorithm::Greedy, None).unwrap();
        let rep = RunReport::new(&raw, Algorithm::Greedy, None, &greedy)
            .unwrap()
            .with_reference(&exact.solution.value);
        assert_eq!(rep.value.to_string(), "24");
        assert_eq!(rep.ratio.as_deref(), Some("1/50"));
        assert!(rep.trace.is_some());
    }

    #[test]
    fn empty_instance_with_forced_item() {
        let raw = Instance::from_pairs(&[(3, 0), (0, 1)], 2).unwrap();
        for algo in Algorithm::ALL {
            let eps = (algo == Algorithm::Fptas).then(|| Rational::new(1, 2).unwrap());
            let out = solve_raw(&raw, algo, eps).unwrap();
            assert_eq!(out.solution.indices, vec![0]);
            assert_eq!(out.solution.value, BigProduct::from(3));
            assert_eq!(out.preprocessed.removed, vec![1]);
        }
    }

    #[test]
    fn digest_is_stable() {
        let a = instance_digest(&gen_example1(10).unwrap());
        assert_eq!(a.len(), 64);
        assert_eq!(a, instance_digest(&gen_example1(10).unwrap()));
        assert_ne!(a, instance_digest(&gen_example1(11).unwrap()));
    }
}
