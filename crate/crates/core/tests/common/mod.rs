#![allow(dead_code)]

use num_bigint::BigInt;
use pkp_core::exact::{solve_brute_force, DEFAULT_BRUTE_FORCE_LIMIT};
use pkp_core::generate::{gen_random, RandomParams};
use pkp_core::{enforce_assumptions, BigProduct, Instance, Rational};

pub fn desk_raw(seed: u64, max_n: usize) -> Instance {
    gen_random(&RandomParams::desk(seed, max_n)).unwrap()
}

/// Preprocessed desk instance for `seed`.
pub fn desk(seed: u64, max_n: usize) -> Instance {
    enforce_assumptions(&desk_raw(seed, max_n)).unwrap().instance
}

pub fn brute_value(inst: &Instance) -> BigProduct {
    solve_brute_force(inst, DEFAULT_BRUTE_FORCE_LIMIT).unwrap().value
}

/// `value ≥ (1−ε)·reference` in exact integer arithmetic.
pub fn within_eps(value: &BigProduct, reference: &BigProduct, eps: Rational) -> bool {
    let lhs = value.as_bigint() * BigInt::from(eps.den());
    let rhs = reference.as_bigint() * BigInt::from(eps.den() - eps.num());
    lhs >= rhs
}

pub fn eps(num: u64, den: u64) -> Rational {
    Rational::new(num, den).unwrap()
}
