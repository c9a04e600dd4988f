//! Exact solvers: dynamic programming over weights and exhaustive enumeration.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{PkpError, Result};
use crate::instance::{Instance, Solution};

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 20;

const TAKE_POS: u8 = 1;
const TAKE_NEG: u8 = 2;

/// One DP row: for every exact total weight, the largest positive and the
/// most negative product reachable.
#[derive(Debug, Clone)]
pub struct WeightDpRow {
    pub best_pos: Vec<Option<BigInt>>,
    pub best_neg: Vec<Option<BigInt>>,
    /// `best_pos[0]` still holds the empty set's identity product.
    pos0_is_empty: bool,
}

impl WeightDpRow {
    fn new(capacity: usize) -> Self {
        let mut best_pos = vec![None; capacity + 1];
        best_pos[0] = Some(BigInt::one());
        WeightDpRow { best_pos, best_neg: vec![None; capacity + 1], pos0_is_empty: true }
    }
}

/// Optimal solution by dynamic programming over total weight in `O(nC)` cell
/// updates with exact products.
///
/// A positive item extends positive cells to positive cells and negative to
/// negative; a negative item swaps the two. Keeping the extreme value of each
/// sign per weight is enough since multiplying by a fixed factor preserves
/// order among values of equal sign.
#[allow(clippy::needless_range_loop)]
pub fn solve_exact_dp(inst: &Instance) -> Result<Solution> {
    inst.require_preprocessed()?;
    let cap = usize::try_from(inst.capacity()).map_err(|_| PkpError::Overflow("capacity"))?;
    let n = inst.len();
    let mut row = WeightDpRow::new(cap);
    // take[j][w] records whether item j was used to reach (w, sign) after step j.
    let mut take: Vec<Vec<u8>> = Vec::with_capacity(n);

    for j in 0..n {
        let p = inst.profit(j);
        let wj = inst.weight(j) as usize;
        let mut next = row.clone();
        let mut flags = vec![0u8; cap + 1];
        for w in wj..=cap {
            let src = w - wj;
            let (from_pos, from_neg) = if p > 0 {
                (&row.best_pos[src], &row.best_neg[src])
            } else {
                (&row.best_neg[src], &row.best_pos[src])
            };
            if let Some(v) = from_pos {
                let cand = v * p;
                let better = match &next.best_pos[w] {
                    None => true,
                    Some(cur) => cand > *cur || (w == 0 && next.pos0_is_empty && cand == *cur),
                };
                if better {
                    next.best_pos[w] = Some(cand);
                    flags[w] |= TAKE_POS;
                    if w == 0 {
                        next.pos0_is_empty = false;
                    }
                }
            }
            if let Some(v) = from_neg {
                let cand = v * p;
                let better = match &next.best_neg[w] {
                    None => true,
                    Some(cur) => cand < *cur,
                };
                if better {
                    next.best_neg[w] = Some(cand);
                    flags[w] |= TAKE_NEG;
                }
            }
        }
        take.push(flags);
        row = next;
    }

    // Best positive cell; among equal values a nonempty set beats the empty one.
    let mut best: Option<(usize, &BigInt)> = None;
    for (w, cell) in row.best_pos.iter().enumerate() {
        let Some(v) = cell else { continue };
        let empty = w == 0 && row.pos0_is_empty;
        let replace = match best {
            None => true,
            Some((bw, bv)) => {
                let best_empty = bw == 0 && row.pos0_is_empty;
                v > bv || (v == bv && best_empty && !empty)
            }
        };
        if replace {
            best = Some((w, v));
        }
    }
    let Some((mut w, _)) = best else {
        return Ok(Solution::empty());
    };

    let mut positive = true;
    let mut chosen = Vec::new();
    for j in (0..n).rev() {
        let flag = if positive { TAKE_POS } else { TAKE_NEG };
        if take[j][w] & flag != 0 {
            chosen.push(j);
            w -= inst.weight(j) as usize;
            if inst.profit(j) < 0 {
                positive = !positive;
            }
        }
    }
    debug_assert!(w == 0 && positive);
    inst.solution(chosen)
}

/// Enumerates every feasible subset. Ties go to the lexicographically
/// smallest index set; the empty set (value 0) wins unless something
/// strictly positive exists.
///
/// Works on raw instances too, as long as weights are nonnegative.
pub fn solve_brute_force(inst: &Instance, limit: usize) -> Result<Solution> {
    let n = inst.len();
    if n > limit {
        return Err(PkpError::TooLarge { n, limit });
    }
    if let Some(j) = inst.items().iter().position(|it| it.weight < 0) {
        return Err(PkpError::NegativeWeight(j));
    }
    let mut search = Enumeration {
        inst,
        cap: inst.capacity_u64(),
        chosen: Vec::with_capacity(n),
        best_value: BigInt::from(0),
        best_set: Vec::new(),
    };
    search.visit(0, 0, &BigInt::one());
    inst.solution(search.best_set)
}

struct Enumeration<'a> {
    inst: &'a Instance,
    cap: u64,
    chosen: Vec<usize>,
    best_value: BigInt,
    best_set: Vec<usize>,
}

impl Enumeration<'_> {
    // Subsets are visited in lexicographic order, so only strict improvements
    // replace the incumbent.
    fn visit(&mut self, start: usize, weight: u64, product: &BigInt) {
        if !self.chosen.is_empty() && *product > self.best_value {
            self.best_value = product.clone();
            self.best_set = self.chosen.clone();
        }
        for k in start..self.inst.len() {
            let w = weight + self.inst.weight(k);
            if w <= self.cap {
                self.chosen.push(k);
                self.visit(k + 1, w, &(product * self.inst.profit(k)));
                self.chosen.pop();
            }
        }
    }
}
