//! Exact factorial arithmetic.
//!
//! Every degree formula in this crate is a ratio of factorial products. Two
//! evaluation routes are provided and must agree: plain big-integer
//! multiplication followed by exact division, and prime-exponent bookkeeping
//! via Legendre's formula. The second route never forms a factorial.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::ArithError;

/// Arbitrary-precision non-negative integer.
pub type BigNat = BigUint;

/// Returns `m!`.
pub fn factorial(m: u64) -> BigNat {
    (2..=m).fold(BigNat::one(), |acc, i| acc * i)
}

/// A quotient `Π a_i! / Π b_j!` that is expected to be an integer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorialRatio {
    pub numerator: Vec<u64>,
    pub denominator: Vec<u64>,
}

impl FactorialRatio {
    pub fn new(numerator: Vec<u64>, denominator: Vec<u64>) -> Self {
        Self {
            numerator,
            denominator,
        }
    }

    /// Multiplies two ratios by concatenating their factor lists.
    pub fn times(mut self, other: &FactorialRatio) -> Self {
        self.numerator.extend_from_slice(&other.numerator);
        self.denominator.extend_from_slice(&other.denominator);
        self
    }

    fn largest_argument(&self) -> u64 {
        self.numerator
            .iter()
            .chain(&self.denominator)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for FactorialRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(xs: &[u64]) -> String {
            if xs.is_empty() {
                "1".to_string()
            } else {
                xs.iter()
                    .map(|x| format!("{x}!"))
                    .collect::<Vec<_>>()
                    .join("·")
            }
        }
        write!(
            f,
            "{} / ({})",
            side(&self.numerator),
            side(&self.denominator)
        )
    }
}

/// Evaluates the ratio by multiplying out both sides and dividing exactly.
pub fn eval_ratio_direct(ratio: &FactorialRatio) -> Result<BigNat, ArithError> {
    let product = |xs: &[u64]| xs.iter().fold(BigNat::one(), |acc, &m| acc * factorial(m));
    let num = product(&ratio.numerator);
    let den = product(&ratio.denominator);
    let (quotient, remainder) = num.div_rem(&den);
    if !remainder.is_zero() {
        return Err(ArithError::NonIntegralRatio(ratio.to_string()));
    }
    Ok(quotient)
}

/// Evaluates the ratio from the net exponent of every prime `p ≤ max(a_i, b_j)`.
///
/// The exponent of `p` in `m!` is `Σ_{i≥1} ⌊m / p^i⌋`. A negative net exponent
/// means the ratio is not an integer.
pub fn eval_ratio_legendre(ratio: &FactorialRatio) -> Result<BigNat, ArithError> {
    let mut value = BigNat::one();
    for p in primes_up_to(ratio.largest_argument()) {
        let up: u64 = ratio.numerator.iter().map(|&m| legendre(m, p)).sum();
        let down: u64 = ratio.denominator.iter().map(|&m| legendre(m, p)).sum();
        if down > up {
            return Err(ArithError::NonIntegralRatio(ratio.to_string()));
        }
        let net = up - down;
        if net > 0 {
            let exp = u32::try_from(net).expect("prime exponent fits in u32");
            value *= BigNat::from(p).pow(exp);
        }
    }
    Ok(value)
}

/// Exponent of the prime `p` in `m!`.
fn legendre(m: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = m / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = usize::try_from(limit).expect("sieve limit fits in usize");
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}
