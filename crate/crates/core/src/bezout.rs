//! Restricted Bézout coefficients.
//!
//! For coprime positive `q` and `p` there is exactly one pair with
//! `0 <= a < q`, `0 < b <= p` and `b·q − a·p = 1`. The pair drives the
//! anomaly length of skew Sturmian sequences with frequency `q/p`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BezoutPair {
    pub q: u64,
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

impl BezoutPair {
    /// `a + b`, the anomaly size of the type-S sequence with frequency `q/p`.
    pub fn sum(&self) -> u64 {
        self.a + self.b
    }

    /// Checks every invariant of a restricted pair for `(q, p)`.
    pub fn is_valid(&self) -> bool {
        let (q, p, a, b) = (self.q as u128, self.p as u128, self.a as u128, self.b as u128);
        q > 0 && p > 0 && a < q && 0 < b && b <= p && b * q == a * p + 1 && (a + b).gcd(&(p + q)) == 1
    }
}

/// The unique restricted pair `(a, b)` for `(q, p)`.
pub fn restricted_bezout(q: u64, p: u64) -> Result<BezoutPair> {
    if q == 0 || p == 0 {
        return Err(Error::NonPositive);
    }
    let qi = i64::try_from(q).map_err(|_| Error::Overflow)?;
    let pi = i64::try_from(p).map_err(|_| Error::Overflow)?;
    let eg = qi.extended_gcd(&pi);
    if eg.gcd != 1 {
        return Err(Error::NotCoprime(q, p));
    }
    // q·x + p·y = 1, so b ≡ x (mod p); translate into (0, p].
    let b = eg.x.rem_euclid(pi);
    let b = if b == 0 { pi } else { b };
    let bq = b as u128 * q as u128;
    debug_assert_eq!((bq - 1) % p as u128, 0);
    Ok(BezoutPair {
        q,
        p,
        a: ((bq - 1) / p as u128) as u64,
        b: b as u64,
    })
}

/// The restricted pair for `(p, q)` derived from the one for `(q, p)`:
/// `(a', b') = (p − b, q − a)`.
pub fn swapped_pair(bp: &BezoutPair) -> BezoutPair {
    BezoutPair {
        q: bp.p,
        p: bp.q,
        a: bp.p - bp.b,
        b: bp.q - bp.a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(q: u64, p: u64, a: u64, b: u64) -> BezoutPair {
        BezoutPair { q, p, a, b }
    }

    #[test]
    fn examples() {
        assert_eq!(restricted_bezout(1, 1).unwrap(), pair(1, 1, 0, 1));
        assert_eq!(restricted_bezout(2, 5).unwrap(), pair(2, 5, 1, 3));
        assert_eq!(restricted_bezout(3, 5).unwrap(), pair(3, 5, 1, 2));
    }

    #[test]
    fn errors() {
        assert_eq!(restricted_bezout(2, 4), Err(Error::NotCoprime(2, 4)));
        assert_eq!(restricted_bezout(0, 1), Err(Error::NonPositive));
        assert_eq!(restricted_bezout(1, 0), Err(Error::NonPositive));
        assert_eq!(restricted_bezout(u64::MAX, 3), Err(Error::Overflow));
    }

    #[test]
    fn large_inputs() {
        let bp = restricted_bezout(999_983, 17).unwrap();
        assert!(bp.is_valid());
        let bp = restricted_bezout(1 << 40, (1 << 40) - 1).unwrap();
        assert!(bp.is_valid());
    }

    #[test]
    fn swapped_examples() {
        assert_eq!(swapped_pair(&pair(2, 5, 1, 3)), pair(5, 2, 2, 1));
        assert_eq!(swapped_pair(&pair(1, 1, 0, 1)), pair(1, 1, 0, 1));
        assert_eq!(swapped_pair(&pair(3, 5, 1, 2)), pair(5, 3, 3, 2));
    }

    #[test]
    fn swap_is_an_involution_and_valid() {
        for q in 1..40u64 {
            for p in 1..40u64 {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let bp = restricted_bezout(q, p).unwrap();
                assert!(bp.is_valid());
                let sw = swapped_pair(&bp);
                assert!(sw.is_valid(), "{sw:?}");
                assert_eq!(sw, restricted_bezout(p, q).unwrap());
                assert_eq!(swapped_pair(&sw), bp);
            }
        }
    }
}
