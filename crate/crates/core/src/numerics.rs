//! Exact integer kernels for every quantity that involves a base-2 logarithm.
//!
//! Nothing here touches floating point. `⌊a·log₂x⌋` equals `bitlen(x^a) − 1`,
//! and the power is evaluated by square-and-multiply on truncated mantissas
//! that bracket the true value from below and above. When both brackets land
//! in the same binade the answer is exact; otherwise the working precision is
//! doubled. Once the precision reaches the full width of `x^a` no truncation
//! happens at all, so the loop always terminates with the exact answer (or a
//! [`PkpError::BitBudgetExceeded`] error first).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{PkpError, Result};

/// Default cap on the working precision of the power kernel, in bits.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 24;

const START_PRECISION: u64 = 128;

/// Positive rational `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(PkpError::NonPositiveInput);
        }
        let g = num.gcd(&den);
        Ok(Rational { num: num / g, den: den / g })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Rational::new(n, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn recip(&self) -> Self {
        Rational { num: self.den, den: self.num }
    }

    pub fn mul_int(&self, k: u64) -> Result<Self> {
        let num = self.num.checked_mul(k).ok_or(PkpError::Overflow("rational numerator"))?;
        Rational::new(num, self.den)
    }

    pub fn div_int(&self, k: u64) -> Result<Self> {
        let den = self.den.checked_mul(k).ok_or(PkpError::Overflow("rational denominator"))?;
        Rational::new(self.num, den)
    }

    /// True iff `0 < self < 1`.
    pub fn is_proper_fraction(&self) -> bool {
        self.num < self.den
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den)).cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `num/den`, an integer, or a plain decimal literal such as `0.125`
/// (parsed exactly, `0.1` is `1/10`).
impl FromStr for Rational {
    type Err = PkpError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || PkpError::Parse(format!("not a positive rational: {s:?}"));
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if let Some((n, d)) = s.split_once('/') {
            let (n, d) = (n.trim(), d.trim());
            if !digits(n) || !digits(d) {
                return Err(bad());
            }
            let n = n.parse().map_err(|_| bad())?;
            let d = d.parse().map_err(|_| bad())?;
            return Rational::new(n, d).map_err(|_| bad());
        }
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if !(digits(int_part) || (int_part.is_empty() && digits(frac_part))) {
            return Err(bad());
        }
        if !frac_part.is_empty() && !digits(frac_part) {
            return Err(bad());
        }
        if frac_part.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let int_val: u64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Rational::new(num, den).map_err(|_| bad())
    }
}

/// `m · 2^e` with `m` kept to a bounded number of bits.
#[derive(Clone)]
struct Scaled {
    mant: BigUint,
    exp: u64,
}

impl Scaled {
    fn one() -> Self {
        Scaled { mant: BigUint::one(), exp: 0 }
    }

    fn floor_log2(&self) -> u64 {
        self.mant.bits() - 1 + self.exp
    }

    fn truncate(mut self, precision: u64, round_up: bool) -> Self {
        let bits = self.mant.bits();
        if bits > precision {
            let shift = bits - precision;
            let inexact = self.mant.trailing_zeros().unwrap_or(0) < shift;
            self.mant >>= shift as usize;
            if round_up && inexact {
                self.mant += 1u32;
            }
            self.exp += shift;
        }
        self
    }

    fn mul(&self, other: &Scaled, precision: u64, round_up: bool) -> Self {
        Scaled {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .truncate(precision, round_up)
    }
}

/// Lower and upper brackets of `⌊log₂(x^a)⌋` at the given mantissa precision.
fn bracket_floor_log2_pow(x: &BigUint, a: u64, precision: u64) -> (u64, u64) {
    let base = Scaled { mant: x.clone(), exp: 0 };
    let base_lo = base.clone().truncate(precision, false);
    let base_hi = base.truncate(precision, true);
    let mut lo = Scaled::one();
    let mut hi = Scaled::one();
    for bit in (0..64 - a.leading_zeros()).rev() {
        lo = lo.mul(&lo, precision, false);
        hi = hi.mul(&hi, precision, true);
        if (a >> bit) & 1 == 1 {
            lo = lo.mul(&base_lo, precision, false);
            hi = hi.mul(&base_hi, precision, true);
        }
    }
    (lo.floor_log2(), hi.floor_log2())
}

/// `⌊a·log₂x⌋`, exactly.
pub fn floor_log2_pow(x: &BigUint, a: u64, budget: u64) -> Result<u64> {
    if x.is_zero() {
        return Err(PkpError::NonPositiveInput);
    }
    if a == 0 || x.is_one() {
        return Ok(0);
    }
    let top = x.bits() - 1;
    if x.count_ones() == 1 {
        return top.checked_mul(a).ok_or(PkpError::Overflow("scaled logarithm"));
    }
    // x^a has at most this many bits; at that precision nothing is truncated.
    let full = x
        .bits()
        .checked_mul(a)
        .ok_or(PkpError::Overflow("power width"))?;
    let mut precision = START_PRECISION.max(2 * u64::from(64 - a.leading_zeros()) + 64);
    loop {
        let p = precision.min(full);
        if p > budget {
            return Err(PkpError::BitBudgetExceeded { needed: p, budget });
        }
        let (lo, hi) = bracket_floor_log2_pow(x, a, p);
        if lo == hi {
            return Ok(lo);
        }
        debug_assert!(p < full, "untruncated power must give equal brackets");
        precision = precision.saturating_mul(2);
    }
}

/// `⌊c·log₂x⌋` for `x ≥ 1`: the largest `m` with `2^(m·c.den) ≤ x^(c.num)`.
pub fn floor_scaled_log2(x: &BigUint, c: Rational) -> Result<u64> {
    floor_scaled_log2_with_budget(x, c, DEFAULT_BIT_BUDGET)
}

pub fn floor_scaled_log2_with_budget(x: &BigUint, c: Rational, budget: u64) -> Result<u64> {
    // ⌊y/d⌋ = ⌊⌊y⌋/d⌋ for integer d > 0.
    Ok(floor_log2_pow(x, c.num, budget)? / c.den)
}

/// Convenience wrapper for machine-sized inputs.
pub fn floor_scaled_log2_u64(x: u64, c: Rational) -> Result<u64> {
    floor_scaled_log2(&BigUint::from(x), c)
}

/// `⌈c·log₂(∏ xs)⌉`: the smallest `m` with `2^(m·c.den) ≥ (∏ xs)^(c.num)`.
pub fn ceil_scaled_log2_sum(xs: &[BigUint], c: Rational) -> Result<u64> {
    ceil_scaled_log2_sum_with_budget(xs, c, DEFAULT_BIT_BUDGET)
}

pub fn ceil_scaled_log2_sum_with_budget(xs: &[BigUint], c: Rational, budget: u64) -> Result<u64> {
    if xs.iter().any(Zero::is_zero) {
        return Err(PkpError::NonPositiveInput);
    }
    let product: BigUint = xs.iter().product();
    let floor = floor_scaled_log2_with_budget(&product, c, budget)?;
    // (∏xs)^num = 2^(m·den) can only hold when the product is a power of two
    // 2^t with num·t = m·den.
    let exact = product.count_ones() == 1 && {
        let t = u128::from(product.bits() - 1);
        (t * u128::from(c.num)) % u128::from(c.den) == 0
    };
    Ok(if exact { floor } else { floor + 1 })
}

/// `Some(r)` iff `r² = x`, found by binary search over `[1, x]`.
pub fn integer_sqrt_exact(x: &BigUint) -> Result<Option<BigUint>> {
    if x.is_zero() {
        return Err(PkpError::NonPositiveInput);
    }
    let mut lo = BigUint::one();
    let mut hi = x.clone();
    while lo <= hi {
        let mid: BigUint = (&lo + &hi) >> 1usize;
        match (&mid * &mid).cmp(x) {
            Ordering::Equal => return Ok(Some(mid)),
            Ordering::Less => lo = mid + 1u32,
            Ordering::Greater => hi = mid - 1u32,
        }
    }
    Ok(None)
}

/// Compares the rates `|p_i|^(1/w_i)` and `|p_j|^(1/w_j)`.
///
/// `Greater` means item `i` has the higher rate and sorts first. Zero-weight
/// items beat every positive-weight item and are ranked among themselves by
/// `|p|`. Exact ties come back as `Equal`; callers break them by index.
pub fn compare_profit_rate(p_i: i64, w_i: u64, p_j: i64, w_j: u64) -> Ordering {
    let (a_i, a_j) = (p_i.unsigned_abs(), p_j.unsigned_abs());
    match (w_i, w_j) {
        (0, 0) => a_i.cmp(&a_j),
        (0, _) => Ordering::Greater,
        (_, 0) => Ordering::Less,
        _ => {
            if a_i <= 1 || a_j <= 1 {
                // rate 1 is the minimum attainable
                return a_i.min(2).cmp(&a_j.min(2));
            }
            // t ↦ t^(1/g) is increasing, so common factors of the exponents drop out.
            let g = w_i.gcd(&w_j);
            let (e_i, e_j) = (w_j / g, w_i / g);
            let lhs = num_traits::pow(BigUint::from(a_i), e_i as usize);
            let rhs = num_traits::pow(BigUint::from(a_j), e_j as usize);
            lhs.cmp(&rhs)
        }
    }
}
