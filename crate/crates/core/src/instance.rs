//! Instance and solution data model plus the preprocessing that removes
//! items which can never appear in a positive-valued solution.

use serde::{Deserialize, Serialize};

use crate::error::{PkpError, Result};
use crate::product::BigProduct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Item {
    pub profit: i64,
    pub weight: i64,
}

impl Item {
    pub fn new(profit: i64, weight: i64) -> Self {
        Item { profit, weight }
    }

    pub fn is_negative(&self) -> bool {
        self.profit < 0
    }

    /// Weight as an unsigned quantity. Only meaningful once weights have been
    /// validated as nonnegative.
    pub fn weight_u64(&self) -> u64 {
        self.weight.max(0) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    items: Vec<Item>,
    capacity: i64,
    preprocessed: bool,
}

impl Instance {
    /// Raw instance. Only the capacity is validated here; item checks happen
    /// in [`enforce_assumptions`].
    pub fn new(items: Vec<Item>, capacity: i64) -> Result<Self> {
        if capacity < 1 {
            return Err(PkpError::NonPositiveCapacity);
        }
        Ok(Instance { items, capacity, preprocessed: false })
    }

    pub fn from_pairs(pairs: &[(i64, i64)], capacity: i64) -> Result<Self> {
        Instance::new(pairs.iter().map(|&(p, w)| Item::new(p, w)).collect(), capacity)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> i64 {
        self.capacity
    }

    pub fn capacity_u64(&self) -> u64 {
        self.capacity as u64
    }

    pub fn is_preprocessed(&self) -> bool {
        self.preprocessed
    }

    pub fn require_preprocessed(&self) -> Result<()> {
        if self.preprocessed {
            Ok(())
        } else {
            Err(PkpError::NotPreprocessed)
        }
    }

    pub fn profit(&self, j: usize) -> i64 {
        self.items[j].profit
    }

    pub fn weight(&self, j: usize) -> u64 {
        self.items[j].weight_u64()
    }

    /// Indices with positive profit (N⁺).
    pub fn positive_items(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.items[j].profit > 0).collect()
    }

    /// Indices with negative profit (N⁻).
    pub fn negative_items(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.items[j].profit < 0).collect()
    }

    /// Largest absolute profit, 0 for an empty instance.
    pub fn p_max(&self) -> u64 {
        self.items.iter().map(|it| it.profit.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn p_max_positive(&self) -> Option<u64> {
        self.items.iter().filter(|it| it.profit > 0).map(|it| it.profit as u64).max()
    }

    pub fn p_max_negative(&self) -> Option<u64> {
        self.items.iter().filter(|it| it.profit < 0).map(|it| it.profit.unsigned_abs()).max()
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&j| j >= self.len()) {
            Some(&index) => Err(PkpError::IndexOutOfRange { index, len: self.len() }),
            None => Ok(()),
        }
    }

    /// Exact product of the selected profits; the empty set is worth 0.
    /// Capacity is not checked.
    pub fn evaluate(&self, indices: &[usize]) -> Result<BigProduct> {
        self.check_indices(indices)?;
        if indices.is_empty() {
            return Ok(BigProduct::zero());
        }
        Ok(BigProduct::product_of(indices.iter().map(|&j| self.items[j].profit)))
    }

    pub fn total_weight(&self, indices: &[usize]) -> Result<i128> {
        self.check_indices(indices)?;
        Ok(indices.iter().map(|&j| i128::from(self.items[j].weight)).sum())
    }

    pub fn is_feasible(&self, indices: &[usize]) -> Result<bool> {
        Ok(self.total_weight(indices)? <= i128::from(self.capacity))
    }

    /// Builds the solution record for `indices`, computing the value exactly.
    pub fn solution(&self, mut indices: Vec<usize>) -> Result<Solution> {
        indices.sort_unstable();
        indices.dedup();
        let value = self.evaluate(&indices)?;
        Ok(Solution { indices, value, forced_items: Vec::new() })
    }
}

/// A subset of items with its exact objective value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    /// Sorted item indices, including any forced items.
    pub indices: Vec<usize>,
    pub value: BigProduct,
    /// Zero-weight positive items packed by preprocessing; a subset of `indices`.
    #[serde(default)]
    pub forced_items: Vec<usize>,
}

impl Solution {
    pub fn empty() -> Self {
        Solution { indices: Vec::new(), value: BigProduct::zero(), forced_items: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn negative_count(&self, inst: &Instance) -> usize {
        self.indices.iter().filter(|&&j| inst.profit(j) < 0).count()
    }
}

/// Outcome of [`enforce_assumptions`]. All index sets refer to the input
/// instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub instance: Instance,
    /// Zero-weight positive-profit items, always packed.
    pub forced: Vec<usize>,
    pub removed: Vec<usize>,
    /// `remap[k]` is the input index of preprocessed item `k`.
    pub remap: Vec<usize>,
}

impl Preprocessed {
    /// Maps a solution of the preprocessed instance back onto the input
    /// instance and packs the forced items alongside it.
    pub fn lift(&self, raw: &Instance, sol: &Solution) -> Result<Solution> {
        let mut indices: Vec<usize> = sol
            .indices
            .iter()
            .map(|&k| {
                self.remap
                    .get(k)
                    .copied()
                    .ok_or(PkpError::IndexOutOfRange { index: k, len: self.remap.len() })
            })
            .collect::<Result<_>>()?;
        indices.extend_from_slice(&self.forced);
        let mut lifted = raw.solution(indices)?;
        lifted.forced_items = self.forced.clone();
        Ok(lifted)
    }

    pub fn forced_product(&self, raw: &Instance) -> BigProduct {
        BigProduct::product_of(self.forced.iter().map(|&j| raw.profit(j)))
    }
}

/// Drops useless items and extracts zero-weight positive items.
///
/// Removes items with zero profit, items heavier than the capacity, and every
/// negative item that has no negative partner fitting alongside it (repeated
/// until nothing changes). Negative weights are rejected rather than
/// normalized.
pub fn enforce_assumptions(raw: &Instance) -> Result<Preprocessed> {
    if raw.capacity < 1 {
        return Err(PkpError::NonPositiveCapacity);
    }
    if let Some(j) = raw.items.iter().position(|it| it.weight < 0) {
        return Err(PkpError::NegativeWeight(j));
    }
    let cap = raw.capacity;
    let mut forced = Vec::new();
    let mut removed = Vec::new();
    let mut kept = Vec::new();
    for (j, it) in raw.items.iter().enumerate() {
        if it.profit == 0 || it.weight > cap {
            removed.push(j);
        } else if it.weight == 0 && it.profit > 0 {
            forced.push(j);
        } else {
            kept.push(j);
        }
    }

    loop {
        let mut negs: Vec<usize> = kept.iter().copied().filter(|&j| raw.items[j].profit < 0).collect();
        negs.sort_by_key(|&j| (raw.items[j].weight, j));
        let lightest = negs.first().copied();
        let second = negs.get(1).copied();
        let lonely: Vec<usize> = negs
            .iter()
            .copied()
            .filter(|&j| {
                let partner = if Some(j) == lightest { second } else { lightest };
                match partner {
                    Some(k) => raw.items[j].weight + raw.items[k].weight > cap,
                    None => true,
                }
            })
            .collect();
        if lonely.is_empty() {
            break;
        }
        kept.retain(|j| !lonely.contains(j));
        removed.extend(lonely);
    }
    removed.sort_unstable();

    let items = kept.iter().map(|&j| raw.items[j]).collect();
    Ok(Preprocessed {
        instance: Instance { items, capacity: cap, preprocessed: true },
        forced,
        removed,
        remap: kept,
    })
}

/// Marks an instance as preprocessed without running the checks. Only for
/// feeding deliberately raw data to solvers that tolerate it.
#[doc(hidden)]
pub fn assume_preprocessed(mut inst: Instance) -> Instance {
    inst.preprocessed = true;
    inst
}
