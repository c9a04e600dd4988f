//! Product Greedy: rate-ordered greedy fill with parity repair, compared
//! against the best fitting negative pair and the best positive singleton.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::instance::{Instance, Solution};
use crate::numerics::compare_profit_rate;
use crate::product::BigProduct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyChoice {
    Greedy,
    NegativePair,
    Single,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    pub order: Vec<usize>,
    /// First item in `order` that did not fit when reached.
    pub split_item: Option<usize>,
    /// Greedy set before parity repair.
    pub filled: Vec<usize>,
    /// Negative item dropped to restore even parity.
    pub removed_negative: Option<usize>,
    pub candidate_s: Vec<usize>,
    pub candidate_pair: Option<(usize, usize)>,
    pub candidate_single: Option<usize>,
    pub chosen: GreedyChoice,
}

/// Items sorted by nonincreasing `|p|^(1/w)`, zero weights first, ties by index.
pub fn greedy_order(inst: &Instance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by(|&a, &b| {
        compare_profit_rate(inst.profit(b), inst.weight(b), inst.profit(a), inst.weight(a))
            .then(a.cmp(&b))
    });
    order
}

/// Feasible pair of negative items with the largest product; ties go to the
/// lexicographically smallest index pair.
pub fn best_negative_pair(inst: &Instance) -> Option<(usize, usize)> {
    let negs = inst.negative_items();
    let cap = inst.capacity_u64();
    let mut best: Option<((usize, usize), i128)> = None;
    for (a, &i) in negs.iter().enumerate() {
        for &k in &negs[a + 1..] {
            if inst.weight(i) + inst.weight(k) > cap {
                continue;
            }
            let prod = i128::from(inst.profit(i)) * i128::from(inst.profit(k));
            if best.is_none_or(|(_, v)| prod > v) {
                best = Some(((i, k), prod));
            }
        }
    }
    best.map(|(pair, _)| pair)
}

pub fn solve_greedy(inst: &Instance) -> Result<(Solution, GreedyTrace)> {
    inst.require_preprocessed()?;
    let order = greedy_order(inst);

    let mut remaining = inst.capacity_u64();
    let mut split_item = None;
    let mut filled = Vec::new();
    for &j in &order {
        let w = inst.weight(j);
        if w <= remaining {
            remaining -= w;
            filled.push(j);
        } else if split_item.is_none() {
            split_item = Some(j);
        }
    }

    let mut candidate_s = filled.clone();
    let negatives_in_s: Vec<usize> = candidate_s.iter().copied().filter(|&j| inst.profit(j) < 0).collect();
    let removed_negative = if negatives_in_s.len() % 2 == 1 {
        negatives_in_s
            .iter()
            .copied()
            .min_by_key(|&j| (inst.profit(j).unsigned_abs(), j))
    } else {
        None
    };
    if let Some(r) = removed_negative {
        candidate_s.retain(|&j| j != r);
    }
    candidate_s.sort_unstable();

    let candidate_pair = best_negative_pair(inst);
    let candidate_single = inst
        .positive_items()
        .into_iter()
        .max_by(|&a, &b| inst.profit(a).cmp(&inst.profit(b)).then(b.cmp(&a)));

    let mut best: (GreedyChoice, Vec<usize>, BigProduct) = (GreedyChoice::Empty, Vec::new(), BigProduct::zero());
    let mut consider = |choice: GreedyChoice, set: Vec<usize>| -> Result<()> {
        let v = inst.evaluate(&set)?;
        if v.is_positive() && v > best.2 {
            best = (choice, set, v);
        }
        Ok(())
    };
    consider(GreedyChoice::Greedy, candidate_s.clone())?;
    if let Some((a, b)) = candidate_pair {
        consider(GreedyChoice::NegativePair, vec![a, b])?;
    }
    if let Some(j) = candidate_single {
        consider(GreedyChoice::Single, vec![j])?;
    }

    let (chosen, set, _) = best;
    let solution = inst.solution(set)?;
    let trace = GreedyTrace {
        order,
        split_item,
        filled,
        removed_negative,
        candidate_s,
        candidate_pair,
        candidate_single,
        chosen,
    };
    Ok((solution, trace))
}

/// Checks both worst-case guarantees of Product Greedy on `inst`.
pub fn verify_bounds(inst: &Instance, greedy_value: &BigProduct, optimal_value: &BigProduct) -> bool {
    bounds_hold(inst.p_max(), greedy_value, optimal_value)
}

/// `(z^H)³ ≥ z*` and `z^H · p_max² ≥ z*`, in integers.
pub fn bounds_hold(p_max: u64, greedy_value: &BigProduct, optimal_value: &BigProduct) -> bool {
    let zh = greedy_value.as_bigint();
    let zs = optimal_value.as_bigint();
    let cube = zh * zh * zh;
    let pm = BigInt::from(p_max);
    let scaled = zh * &pm * &pm;
    cube.cmp(zs) != Ordering::Less && scaled.cmp(zs) != Ordering::Less
}
