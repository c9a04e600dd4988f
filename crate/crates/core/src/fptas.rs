//! (1−ε)-approximation by dynamic programming over scaled logarithmic
//! profits, tracking the parity of negative items.
//!
//! Each profit is replaced by `p̃_j = ⌊log₂|p_j| / K⌋` with `K = ε/n²`. Two
//! arrays indexed by scaled-profit sum hold the minimum weight of a subset
//! with that sum and an even (`plus`) or odd (`minus`) number of negative
//! items. The answer is the largest sum whose even cell fits the capacity.

use std::collections::{BTreeMap, HashMap};

use crate::error::{PkpError, Result};
use crate::instance::{Instance, Solution};
use crate::numerics::{floor_scaled_log2_u64, Rational};

const TAKE_EVEN: u8 = 1;
const TAKE_ODD: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    fn flag(self) -> u8 {
        match self {
            Parity::Even => TAKE_EVEN,
            Parity::Odd => TAKE_ODD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledInstance {
    pub eps: Rational,
    /// `K = ε/n²`.
    pub k: Rational,
    pub scaled_profits: Vec<u64>,
    pub p_tilde_max: u64,
}

impl ScaledInstance {
    pub fn table_len(&self) -> usize {
        dp_table_size(self.scaled_profits.len(), self.p_tilde_max)
    }
}

/// Array length `n·p̃_max + 1` of the scaled-profit tables.
pub fn dp_table_size(n: usize, p_tilde_max: u64) -> usize {
    n * p_tilde_max as usize + 1
}

fn check_eps(eps: Rational) -> Result<()> {
    if eps.is_proper_fraction() {
        Ok(())
    } else {
        Err(PkpError::EpsOutOfRange(eps.to_string()))
    }
}

pub fn scale_profits(inst: &Instance, eps: Rational) -> Result<ScaledInstance> {
    inst.require_preprocessed()?;
    check_eps(eps)?;
    if inst.is_empty() {
        return Err(PkpError::EmptyInstance);
    }
    let n = inst.len() as u64;
    let n2 = n.checked_mul(n).ok_or(PkpError::Overflow("n squared"))?;
    let k = eps.div_int(n2)?;
    let c = k.recip();
    let scaled_profits = inst
        .items()
        .iter()
        .map(|it| floor_scaled_log2_u64(it.profit.unsigned_abs(), c))
        .collect::<Result<Vec<_>>>()?;
    let p_tilde_max = floor_scaled_log2_u64(inst.p_max(), c)?;
    Ok(ScaledInstance { eps, k, scaled_profits, p_tilde_max })
}

/// Tables with more cells than this are stored sparsely, keyed by the
/// reachable scaled sums only.
pub const DENSE_TABLE_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableLayout {
    Dense,
    Sparse,
}

impl TableLayout {
    pub fn for_len(len: usize) -> Self {
        if len > DENSE_TABLE_LIMIT {
            TableLayout::Sparse
        } else {
            TableLayout::Dense
        }
    }
}

#[derive(Debug, Clone)]
enum Cells {
    Dense {
        plus: Vec<Option<u64>>,
        minus: Vec<Option<u64>>,
        // take[j][q]: item j was added to reach sum q (bit per parity) at step j.
        take: Vec<Vec<u8>>,
    },
    Sparse {
        cells: BTreeMap<usize, [Option<u64>; 2]>,
        take: Vec<HashMap<usize, u8>>,
    },
}

/// Minimum-weight tables after all items, with per-item decisions kept for
/// reconstruction. Both layouts hold the same cells; the sparse one omits
/// unreachable sums.
#[derive(Debug, Clone)]
pub struct ParityDpTables {
    len: usize,
    cells: Cells,
    scaled: Vec<u64>,
    negative: Vec<bool>,
}

fn improve(slot: &mut Option<u64>, cand: Option<u64>) -> bool {
    match cand {
        Some(c) if slot.is_none_or(|cur| c < cur) => {
            *slot = Some(c);
            true
        }
        _ => false,
    }
}

impl ParityDpTables {
    pub fn build(inst: &Instance, scaled: &ScaledInstance) -> Self {
        Self::build_with_layout(inst, scaled, TableLayout::for_len(scaled.table_len()))
    }

    pub fn build_with_layout(inst: &Instance, scaled: &ScaledInstance, layout: TableLayout) -> Self {
        let len = scaled.table_len();
        let items: Vec<(usize, u64, bool)> = scaled
            .scaled_profits
            .iter()
            .enumerate()
            .map(|(j, &pt)| (pt as usize, inst.weight(j), inst.profit(j) < 0))
            .collect();
        let cells = match layout {
            TableLayout::Dense => Self::build_dense(len, &items),
            TableLayout::Sparse => Self::build_sparse(&items),
        };
        ParityDpTables {
            len,
            cells,
            scaled: scaled.scaled_profits.clone(),
            negative: items.iter().map(|&(_, _, neg)| neg).collect(),
        }
    }

    fn build_dense(len: usize, items: &[(usize, u64, bool)]) -> Cells {
        let mut plus: Vec<Option<u64>> = vec![None; len];
        let mut minus: Vec<Option<u64>> = vec![None; len];
        plus[0] = Some(0);
        let mut take = Vec::with_capacity(items.len());
        let mut reach = 0usize;
        for &(pt, w, negative) in items {
            let mut flags = vec![0u8; len];
            let (old_plus, old_minus) = (plus.clone(), minus.clone());
            reach += pt;
            for q in pt..=reach {
                let src = q - pt;
                let (to_plus, to_minus) = if negative {
                    (old_minus[src], old_plus[src])
                } else {
                    (old_plus[src], old_minus[src])
                };
                if improve(&mut plus[q], to_plus.map(|v| v + w)) {
                    flags[q] |= TAKE_EVEN;
                }
                if improve(&mut minus[q], to_minus.map(|v| v + w)) {
                    flags[q] |= TAKE_ODD;
                }
            }
            take.push(flags);
        }
        Cells::Dense { plus, minus, take }
    }

    fn build_sparse(items: &[(usize, u64, bool)]) -> Cells {
        let mut cells: BTreeMap<usize, [Option<u64>; 2]> = BTreeMap::new();
        cells.insert(0, [Some(0), None]);
        let mut take = Vec::with_capacity(items.len());
        for &(pt, w, negative) in items {
            let mut flags = HashMap::new();
            let old = cells.clone();
            for (&src, &[src_plus, src_minus]) in &old {
                let (to_plus, to_minus) = if negative { (src_minus, src_plus) } else { (src_plus, src_minus) };
                let q = src + pt;
                let cell = cells.entry(q).or_insert([None, None]);
                let mut flag = 0u8;
                if improve(&mut cell[0], to_plus.map(|v| v + w)) {
                    flag |= TAKE_EVEN;
                }
                if improve(&mut cell[1], to_minus.map(|v| v + w)) {
                    flag |= TAKE_ODD;
                }
                if flag != 0 {
                    *flags.entry(q).or_insert(0) |= flag;
                }
            }
            take.push(flags);
        }
        Cells::Sparse { cells, take }
    }

    pub fn layout(&self) -> TableLayout {
        match self.cells {
            Cells::Dense { .. } => TableLayout::Dense,
            Cells::Sparse { .. } => TableLayout::Sparse,
        }
    }

    /// Logical table length `n·p̃_max + 1`, independent of the layout.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn cell(&self, q: usize, parity: Parity) -> Option<u64> {
        let idx = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        match &self.cells {
            Cells::Dense { plus, minus, .. } => [plus, minus][idx].get(q).copied().flatten(),
            Cells::Sparse { cells, .. } => cells.get(&q).and_then(|c| c[idx]),
        }
    }

    /// Scaled sums with at least one finite cell, ascending.
    pub fn reachable(&self) -> Vec<usize> {
        match &self.cells {
            Cells::Dense { plus, minus, .. } => {
                (0..self.len).filter(|&q| plus[q].is_some() || minus[q].is_some()).collect()
            }
            Cells::Sparse { cells, .. } => cells.keys().copied().collect(),
        }
    }

    fn took(&self, j: usize, q: usize, parity: Parity) -> bool {
        let flags = match &self.cells {
            Cells::Dense { take, .. } => take[j][q],
            Cells::Sparse { take, .. } => take[j].get(&q).copied().unwrap_or(0),
        };
        flags & parity.flag() != 0
    }

    /// Items behind a finite cell, sorted ascending.
    pub fn backtrack(&self, q: usize, parity: Parity) -> Option<Vec<usize>> {
        self.cell(q, parity)?;
        let mut q = q;
        let mut parity = parity;
        let mut chosen = Vec::new();
        for j in (0..self.scaled.len()).rev() {
            if self.took(j, q, parity) {
                chosen.push(j);
                q -= self.scaled[j] as usize;
                if self.negative[j] {
                    parity = parity.flip();
                }
            }
        }
        debug_assert!(q == 0 && parity == Parity::Even);
        chosen.reverse();
        Some(chosen)
    }

    /// Largest scaled sum whose even-parity cell fits in `capacity`.
    pub fn best_even(&self, capacity: u64) -> usize {
        self.reachable()
            .into_iter()
            .rev()
            .find(|&q| self.cell(q, Parity::Even).is_some_and(|w| w <= capacity))
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct FptasRun {
    pub solution: Solution,
    /// `None` when every `|p_j| = 1` and the trivial case applied.
    pub scaled: Option<ScaledInstance>,
    pub tables: Option<ParityDpTables>,
}

pub fn solve_fptas(inst: &Instance, eps: Rational) -> Result<Solution> {
    Ok(run_fptas(inst, eps)?.solution)
}

pub fn run_fptas(inst: &Instance, eps: Rational) -> Result<FptasRun> {
    inst.require_preprocessed()?;
    check_eps(eps)?;
    if inst.is_empty() {
        return Err(PkpError::EmptyInstance);
    }
    if inst.p_max() < 2 {
        return Ok(FptasRun { solution: unit_profit_solution(inst)?, scaled: None, tables: None });
    }
    let scaled = scale_profits(inst, eps)?;
    let tables = ParityDpTables::build(inst, &scaled);
    let q = tables.best_even(inst.capacity_u64());
    let chosen = tables.backtrack(q, Parity::Even).unwrap_or_default();
    let solution = inst.solution(chosen)?;
    Ok(FptasRun { solution, scaled: Some(scaled), tables: Some(tables) })
}

/// All profits are ±1, so the optimum is 1 whenever any positive item or any
/// fitting negative pair exists.
fn unit_profit_solution(inst: &Instance) -> Result<Solution> {
    if let Some(j) = (0..inst.len()).find(|&j| inst.profit(j) > 0) {
        return inst.solution(vec![j]);
    }
    let negs = inst.negative_items();
    let cap = inst.capacity_u64();
    for (a, &i) in negs.iter().enumerate() {
        for &k in &negs[a + 1..] {
            if inst.weight(i) + inst.weight(k) <= cap {
                return inst.solution(vec![i, k]);
            }
        }
    }
    Ok(Solution::empty())
}
