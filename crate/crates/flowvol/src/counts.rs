//! Overflow-checked arithmetic for exact counts.
//!
//! Every count in this crate is a `u64` and every operation on counts goes
//! through these helpers, so an overflow surfaces as [`Error::CountOverflow`]
//! instead of wrapping. The `bigint` feature adds an unbounded Kostant
//! evaluator on top of these (see `flow::kostant_unbounded`).

use crate::error::{Error, Result};

pub fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::CountOverflow)
}

pub fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::CountOverflow)
}

pub fn pow(base: u64, exp: u64) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = mul(acc, base)?;
    }
    Ok(acc)
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Multiply before dividing keeps every intermediate value integral.
        acc = acc
            .checked_mul((n - k + i) as u128)
            .ok_or(Error::CountOverflow)?
            / i as u128;
    }
    u64::try_from(acc).map_err(|_| Error::CountOverflow)
}

/// Multinomial coefficient `total! / (parts[0]! * parts[1]! * ...)`.
///
/// Returns 0 when any part is negative or the parts do not sum to `total`.
pub fn multinomial(total: u64, parts: &[i64]) -> Result<u64> {
    if parts.iter().any(|&p| p < 0) {
        return Ok(0);
    }
    if parts.iter().map(|&p| p as u64).sum::<u64>() != total {
        return Ok(0);
    }
    let mut acc = 1u64;
    let mut used = 0u64;
    for &p in parts {
        used += p as u64;
        acc = mul(acc, binomial(used, p as u64)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(64, 32).unwrap(), 1832624140942590534);
    }

    #[test]
    fn binomial_overflow_is_detected() {
        assert!(matches!(binomial(200, 100), Err(Error::CountOverflow)));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), 12);
        assert_eq!(multinomial(4, &[4, 0, 0]).unwrap(), 1);
        assert_eq!(multinomial(4, &[2, -1, 3]).unwrap(), 0);
        assert_eq!(multinomial(4, &[2, 1]).unwrap(), 0);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        assert_eq!(pow(3, 4).unwrap(), 81);
        assert_eq!(pow(0, 0).unwrap(), 1);
        assert_eq!(pow(7, 0).unwrap(), 1);
        assert!(pow(u64::MAX, 2).is_err());
    }
}
