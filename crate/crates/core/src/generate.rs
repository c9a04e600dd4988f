use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PkpError, Result};
use crate::instance::{Instance, Item};

/// The seven-item instance on which Product Greedy performs badly:
/// profits `(2, M+2, −(M+1), M, M, M, −1)`, weights `(1, M, …, M)`, `C = 3M`.
pub fn gen_example1(m: u64) -> Result<Instance> {
    if m < 3 {
        return Err(PkpError::MTooSmall(m));
    }
    let big = i64::try_from(m)
        .ok()
        .filter(|&v| v <= i64::MAX / 3 - 2)
        .ok_or(PkpError::Overflow("example parameter"))?;
    let items = vec![
        Item::new(2, 1),
        Item::new(big + 2, big),
        Item::new(-(big + 1), big),
        Item::new(big, big),
        Item::new(big, big),
        Item::new(big, big),
        Item::new(-1, big),
    ];
    Instance::new(items, 3 * big)
}

/// Parameters for [`gen_random`]. Ranges are inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n: usize,
    /// Range of `|p_j|`; must not contain 0.
    pub profit: (i64, i64),
    pub weight: (i64, i64),
    pub capacity: i64,
    pub neg_fraction: f64,
    pub seed: u64,
}

impl RandomParams {
    /// Small instances in the range used throughout the test suites:
    /// `n ≤ max_n`, `|p| ≤ 9`, `w ≤ 15`, `C ≤ 30`.
    pub fn desk(seed: u64, max_n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        RandomParams {
            n: rng.gen_range(1..=max_n.max(1)),
            profit: (1, 9),
            weight: (0, 15),
            capacity: rng.gen_range(1..=30),
            neg_fraction: 0.5,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let (plo, phi) = self.profit;
        let (wlo, whi) = self.weight;
        if plo < 1 || phi < plo {
            return Err(PkpError::InvalidRange(format!("profit magnitude range {plo}..={phi}")));
        }
        if wlo < 0 || whi < wlo {
            return Err(PkpError::InvalidRange(format!("weight range {wlo}..={whi}")));
        }
        if self.capacity < 1 {
            return Err(PkpError::InvalidRange(format!("capacity {}", self.capacity)));
        }
        if !(0.0..=1.0).contains(&self.neg_fraction) {
            return Err(PkpError::InvalidRange(format!("negative fraction {}", self.neg_fraction)));
        }
        Ok(())
    }
}

/// Seeded random raw instance (not preprocessed).
pub fn gen_random(params: &RandomParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let items = (0..params.n)
        .map(|_| {
            let mag = rng.gen_range(params.profit.0..=params.profit.1);
            let negative = rng.gen_bool(params.neg_fraction);
            let weight = rng.gen_range(params.weight.0..=params.weight.1);
            Item::new(if negative { -mag } else { mag }, weight)
        })
        .collect();
    Instance::new(items, params.capacity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_layout() {
        let inst = gen_example1(10).unwrap();
        let profits: Vec<i64> = inst.items().iter().map(|i| i.profit).collect();
        let weights: Vec<i64> = inst.items().iter().map(|i| i.weight).collect();
        assert_eq!(profits, vec![2, 12, -11, 10, 10, 10, -1]);
        assert_eq!(weights, vec![1, 10, 10, 10, 10, 10, 10]);
        assert_eq!(inst.capacity(), 30);
        assert_eq!(gen_example1(2), Err(PkpError::MTooSmall(2)));
    }

    #[test]
    fn random_is_deterministic() {
        let p = RandomParams { n: 0, ..RandomParams::desk(1, 12) };
        assert!(gen_random(&p).unwrap().is_empty());
        let p = RandomParams::desk(42, 12);
        assert_eq!(gen_random(&p).unwrap(), gen_random(&p).unwrap());
        let q = RandomParams { seed: 43, ..p.clone() };
        assert_ne!(gen_random(&p).unwrap(), gen_random(&q).unwrap());
    }

    #[test]
    fn random_respects_ranges() {
        let p = RandomParams {
            n: 200,
            profit: (3, 5),
            weight: (2, 4),
            capacity: 10,
            neg_fraction: 0.0,
            seed: 9,
        };
        let inst = gen_random(&p).unwrap();
        assert!(inst.items().iter().all(|it| (3..=5).contains(&it.profit) && (2..=4).contains(&it.weight)));
        let all_neg = gen_random(&RandomParams { neg_fraction: 1.0, ..p.clone() }).unwrap();
        assert!(all_neg.items().iter().all(|it| it.profit < 0));
    }

    #[test]
    fn random_rejects_bad_ranges() {
        let base = RandomParams::desk(0, 5);
        for bad in [
            RandomParams { profit: (0, 4), ..base.clone() },
            RandomParams { profit: (5, 4), ..base.clone() },
            RandomParams { weight: (-1, 4), ..base.clone() },
            RandomParams { capacity: 0, ..base.clone() },
            RandomParams { neg_fraction: 1.5, ..base.clone() },
        ] {
            assert!(matches!(gen_random(&bad), Err(PkpError::InvalidRange(_))));
        }
    }
}
