//! Exact factorials and binomials on big integers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// num/den as f64 without overflowing the intermediate conversions.
pub fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

pub fn binomial_f64(n: i64, k: i64) -> f64 {
    ratio(&binomial(n, k), &BigUint::one())
}

/// √(Π num! / Π den!) evaluated exactly up to the final square root.
pub fn sqrt_factorial_ratio(num: &[u64], den: &[u64]) -> f64 {
    let n = num.iter().fold(BigUint::one(), |a, &k| a * factorial(k));
    let d = den.iter().fold(BigUint::one(), |a, &k| a * factorial(k));
    ratio(&n, &d).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(4, -1), BigUint::zero());
    }

    #[test]
    fn large_binomial_is_exact() {
        // C(100, 50)
        let expect: BigUint = "100891344545564193334812497256".parse().unwrap();
        assert_eq!(binomial(100, 50), expect);
    }

    #[test]
    fn ratio_survives_huge_operands() {
        let r = ratio(&factorial(300), &factorial(299));
        assert!((r - 300.0).abs() < 1e-9);
        assert!((sqrt_factorial_ratio(&[200], &[198]) - (200.0f64 * 199.0).sqrt()).abs() < 1e-9);
    }
}
