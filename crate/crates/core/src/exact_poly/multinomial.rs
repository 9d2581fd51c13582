//! Exact multinomial and binomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::PolyError;

/// `top! / (parts_0! * ... * parts_k!)` for nonnegative parts summing to
/// `top`. Computed multiplicatively so every intermediate stays integral.
pub fn multinomial(top: u64, parts: &[u64]) -> Result<BigUint, PolyError> {
    let sum: u64 = parts.iter().sum();
    if sum != top {
        return Err(PolyError::Argument(format!(
            "parts sum to {sum}, expected {top}"
        )));
    }
    let mut acc = BigUint::one();
    let mut placed = 0u64;
    for &p in parts {
        for k in 1..=p {
            // acc *= (placed + k) / k stays exact: acc * C(placed+k, k) pattern
            acc = acc * BigUint::from(placed + k) / BigUint::from(k);
        }
        placed += p;
    }
    Ok(acc)
}

/// `C(n, k)` as an exact big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc = acc * BigUint::from(n - k + j) / BigUint::from(j);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: count distinct orderings of the block-label
    /// multiset by explicit recursive enumeration.
    fn enumerate_orderings(parts: &[u64]) -> u64 {
        fn go(remaining: &mut Vec<u64>) -> u64 {
            if remaining.iter().all(|&r| r == 0) {
                return 1;
            }
            let mut total = 0;
            for i in 0..remaining.len() {
                if remaining[i] > 0 {
                    remaining[i] -= 1;
                    total += go(remaining);
                    remaining[i] += 1;
                }
            }
            total
        }
        go(&mut parts.to_vec())
    }

    #[test]
    fn matches_enumeration_small() {
        // frozen from the enumeration oracle
        assert_eq!(enumerate_orderings(&[2, 1, 0]), 3);
        assert_eq!(multinomial(3, &[2, 1, 0]).unwrap(), BigUint::from(3u32));
        assert_eq!(multinomial(2, &[2, 0]).unwrap(), BigUint::from(1u32));
        assert_eq!(multinomial(4, &[1, 1, 1, 1]).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn matches_enumeration_exhaustive() {
        // all compositions of top <= 8 into at most 4 parts
        for top in 0u64..=8 {
            for a in 0..=top {
                for b in 0..=(top - a) {
                    for c in 0..=(top - a - b) {
                        let d = top - a - b - c;
                        let parts = [a, b, c, d];
                        assert_eq!(
                            multinomial(top, &parts).unwrap(),
                            BigUint::from(enumerate_orderings(&parts)),
                            "parts {parts:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_sum() {
        assert!(multinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(5, 5), BigUint::one());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
    }
}
