//! Product Partition → PKP reduction with exactly rounded weights and
//! capacity, and a brute-force check that yes/no answers correspond.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{PkpError, Result};
use crate::exact::solve_brute_force;
use crate::instance::{enforce_assumptions, Instance, Item};
use crate::numerics::{ceil_scaled_log2_sum, floor_scaled_log2, integer_sqrt_exact, Rational};
use crate::product::BigProduct;

pub const DEFAULT_VERIFY_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PppInstance {
    a: Vec<u64>,
}

impl PppInstance {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.contains(&0) {
            return Err(PkpError::NonPositiveInput);
        }
        Ok(PppInstance { a })
    }

    pub fn values(&self) -> &[u64] {
        &self.a
    }

    /// Drops entries equal to 1; they fit on either side of any partition.
    pub fn normalized(&self) -> PppInstance {
        PppInstance { a: self.a.iter().copied().filter(|&v| v != 1).collect() }
    }

    pub fn product(&self) -> BigUint {
        self.a.iter().map(|&v| BigUint::from(v)).product()
    }

    /// `√∏a`, or `None` if the product is not a perfect square (in which case
    /// no equal-product split exists).
    pub fn target(&self) -> Result<Option<BigUint>> {
        integer_sqrt_exact(&self.product())
    }

    /// Some subset whose product equals the complement's, by enumeration.
    pub fn solve_brute_force(&self, limit: usize) -> Result<Option<Vec<usize>>> {
        let n = self.a.len();
        if n > limit {
            return Err(PkpError::TooLarge { n, limit });
        }
        let Some(target) = self.target()? else {
            return Ok(None);
        };
        Ok((0u64..1 << n).find_map(|mask| {
            let prod: BigUint = subset_product(&self.a, mask);
            (prod == target).then(|| (0..n).filter(|&j| mask >> j & 1 == 1).collect())
        }))
    }
}

fn subset_product(a: &[u64], mask: u64) -> BigUint {
    a.iter()
        .enumerate()
        .filter(|&(j, _)| mask >> j & 1 == 1)
        .map(|(_, &v)| BigUint::from(v))
        .product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub pkp: Instance,
    pub m: u64,
    pub target: BigUint,
    /// `⌊M·log₂a_j⌋` per normalized entry; equal to the item weights.
    pub weights: Vec<u64>,
    pub capacity: u64,
    /// Entries after dropping 1s; item `j` of `pkp` corresponds to `normalized[j]`.
    pub normalized: Vec<u64>,
}

/// Builds the PKP instance: profit `a_j`, weight `⌊M·log₂a_j⌋`, capacity
/// `⌈(M/2)·Σlog₂a_j⌉` with `M = (n+2)(√∏a + 1)`.
pub fn reduce_ppp_to_pkp(ppp: &PppInstance) -> Result<ReductionOutput> {
    let norm = ppp.normalized();
    if norm.a.is_empty() {
        return Err(PkpError::EmptyAfterNormalization);
    }
    let target = norm
        .target()?
        .ok_or_else(|| PkpError::NotPerfectSquare(norm.product().to_string()))?;
    let n = norm.a.len() as u64;
    let m = (&target + 1u32) * (n + 2);
    let m = m.to_u64().ok_or(PkpError::Overflow("reduction multiplier M"))?;

    let scale = Rational::integer(m)?;
    let weights = norm
        .a
        .iter()
        .map(|&v| floor_scaled_log2(&BigUint::from(v), scale))
        .collect::<Result<Vec<u64>>>()?;
    let xs: Vec<BigUint> = norm.a.iter().map(|&v| BigUint::from(v)).collect();
    let capacity = ceil_scaled_log2_sum(&xs, Rational::new(m, 2)?)?;

    let to_i64 = |v: u64, what| i64::try_from(v).map_err(|_| PkpError::Overflow(what));
    let items = norm
        .a
        .iter()
        .zip(&weights)
        .map(|(&a, &w)| Ok(Item::new(to_i64(a, "profit")?, to_i64(w, "weight")?)))
        .collect::<Result<Vec<_>>>()?;
    let pkp = Instance::new(items, to_i64(capacity, "capacity")?)?;
    Ok(ReductionOutput { pkp, m, target, weights, capacity, normalized: norm.a })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub normalized: Vec<u64>,
    pub target: String,
    pub m: u64,
    pub capacity: u64,
    /// Equal-product subset (indices into `normalized`), if any.
    pub ppp_witness: Option<Vec<usize>>,
    pub pkp_optimum: BigProduct,
    pub pkp_optimal_set: Vec<usize>,
    /// Every equal-product subset fits the capacity.
    pub forward_ok: bool,
    /// Every subset with product at least `target + 1` weighs at least `C + 1`.
    pub infeasibility_ok: bool,
    /// PPP yes ⇔ PKP optimum ≥ target.
    pub equivalence_ok: bool,
    /// On yes-instances the PKP optimum equals the target.
    pub equality_ok: bool,
}

impl CorrespondenceReport {
    pub fn ppp_yes(&self) -> bool {
        self.ppp_witness.is_some()
    }

    pub fn holds(&self) -> bool {
        self.forward_ok && self.infeasibility_ok && self.equivalence_ok && self.equality_ok
    }
}

/// Solves both sides by enumeration and checks they agree.
pub fn verify_correspondence(ppp: &PppInstance, limit: usize) -> Result<CorrespondenceReport> {
    let norm = ppp.normalized();
    let n = norm.a.len();
    if n > limit {
        return Err(PkpError::TooLarge { n, limit });
    }
    let red = reduce_ppp_to_pkp(ppp)?;
    let witness = norm.solve_brute_force(limit)?;

    let pre = enforce_assumptions(&red.pkp)?;
    let opt = solve_brute_force(&pre.instance, limit)?;
    let opt = pre.lift(&red.pkp, &opt)?;

    let target_big = BigProduct::from(num_bigint::BigInt::from(red.target.clone()));
    let above = &red.target + BigUint::one();
    let mut forward_ok = true;
    let mut infeasibility_ok = true;
    for mask in 0u64..1 << n {
        let prod = subset_product(&norm.a, mask);
        let weight: u64 = (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| red.weights[j]).sum();
        if prod == red.target && weight > red.capacity {
            forward_ok = false;
        }
        if prod >= above && weight < red.capacity + 1 {
            infeasibility_ok = false;
        }
    }

    let pkp_reaches = opt.value >= target_big;
    let equivalence_ok = witness.is_some() == pkp_reaches;
    let equality_ok = witness.is_none() || opt.value == target_big;
    Ok(CorrespondenceReport {
        normalized: norm.a,
        target: red.target.to_string(),
        m: red.m,
        capacity: red.capacity,
        ppp_witness: witness,
        pkp_optimum: opt.value,
        pkp_optimal_set: opt.indices,
        forward_ok,
        infeasibility_ok,
        equivalence_ok,
        equality_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ppp(a: &[u64]) -> PppInstance {
        PppInstance::new(a.to_vec()).unwrap()
    }

    #[test]
    fn two_twos() {
        let r = reduce_ppp_to_pkp(&ppp(&[2, 2])).unwrap();
        assert_eq!(r.target, BigUint::from(2u8));
        assert_eq!(r.m, 12);
        assert_eq!(r.weights, vec![12, 12]);
        assert_eq!(r.capacity, 12);
    }

    #[test]
    fn four_two_two() {
        let r = reduce_ppp_to_pkp(&ppp(&[4, 2, 2])).unwrap();
        assert_eq!(r.target, BigUint::from(4u8));
        assert_eq!(r.m, 25);
        assert_eq!(r.weights, vec![50, 25, 25]);
        assert_eq!(r.capacity, 50);
        assert_eq!(r.pkp.capacity(), 50);
        assert_eq!(r.pkp.items()[0], Item::new(4, 50));
    }

    #[test]
    fn three_three() {
        // 2^25 <= 3^16 = 43046721 < 2^26
        let r = reduce_ppp_to_pkp(&ppp(&[3, 3])).unwrap();
        assert_eq!(r.m, 16);
        assert_eq!(r.weights, vec![25, 25]);
        assert_eq!(r.capacity, 26);
    }

    #[test]
    fn rejects_non_square_and_trivial() {
        assert_eq!(
            reduce_ppp_to_pkp(&ppp(&[2, 3])),
            Err(PkpError::NotPerfectSquare("6".into()))
        );
        assert_eq!(reduce_ppp_to_pkp(&ppp(&[1, 1])), Err(PkpError::EmptyAfterNormalization));
        assert!(PppInstance::new(vec![2, 0]).is_err());
    }

    #[test]
    fn ones_are_stripped() {
        let with = reduce_ppp_to_pkp(&ppp(&[1, 4, 1, 2, 2])).unwrap();
        let without = reduce_ppp_to_pkp(&ppp(&[4, 2, 2])).unwrap();
        assert_eq!(with, without);
    }

    #[test]
    fn correspondence_examples() {
        for (a, opt) in [(&[2u64, 2][..], 2), (&[4, 2, 2], 4), (&[9, 3, 3], 9), (&[4, 4, 2, 2], 8)] {
            let rep = verify_correspondence(&ppp(a), DEFAULT_VERIFY_LIMIT).unwrap();
            assert!(rep.ppp_yes(), "{a:?}");
            assert_eq!(rep.pkp_optimum, BigProduct::from(opt), "{a:?}");
            assert!(rep.holds(), "{rep:?}");
        }
    }

    #[test]
    fn correspondence_no_instance() {
        // 2·8 = 16 is a square but no subset multiplies to 4.
        let rep = verify_correspondence(&ppp(&[2, 8]), DEFAULT_VERIFY_LIMIT).unwrap();
        assert!(!rep.ppp_yes());
        assert!(rep.pkp_optimum < BigProduct::from(4));
        assert!(rep.holds());
    }

    #[test]
    fn verify_limits() {
        let a = ppp(&[2; 12]);
        assert!(matches!(verify_correspondence(&a, 10), Err(PkpError::TooLarge { n: 12, limit: 10 })));
        assert!(matches!(verify_correspondence(&ppp(&[2, 3]), 10), Err(PkpError::NotPerfectSquare(_))));
    }
}
