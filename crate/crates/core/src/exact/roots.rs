//! Integer root primitives used by every perfect-square test and threshold
//! ceiling in the crate.
//!
//! All results are exact floors/ceilings; no floating point is involved.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ExactError;

/// `⌊√n⌋` for `n ≥ 0`. The result `r` satisfies `r² ≤ n < (r+1)²`.
pub fn isqrt(n: &BigInt) -> Result<BigInt, ExactError> {
    if n.is_negative() {
        return Err(ExactError::NegativeRoot { n: n.clone() });
    }
    Ok(n.sqrt())
}

/// Smallest integer `m ≥ √n` for `n ≥ 0`, i.e. `⌈√n⌉`.
pub fn ceil_sqrt(n: &BigInt) -> Result<BigInt, ExactError> {
    let r = isqrt(n)?;
    if &(&r * &r) == n {
        Ok(r)
    } else {
        Ok(r + 1)
    }
}

/// `⌊n^(1/k)⌋` for `n ≥ 0`, `k ≥ 1`. The result `r` satisfies
/// `r^k ≤ n < (r+1)^k`.
pub fn iroot(n: &BigInt, k: u32) -> Result<BigInt, ExactError> {
    if k == 0 {
        return Err(ExactError::ZeroRootDegree);
    }
    if n.is_negative() {
        return Err(ExactError::NegativeRoot { n: n.clone() });
    }
    Ok(n.nth_root(k))
}

/// Returns the non-negative root when `n` is a perfect square, `None`
/// otherwise. Negative `n` is never a square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    // cheap residue filter: squares mod 64 form a small set
    let low = (n & BigInt::from(63)).to_u8().unwrap();
    const SQUARES_MOD_64: u64 = {
        let mut mask = 0u64;
        let mut i = 0u64;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if SQUARES_MOD_64 >> low & 1 == 0 {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(169)).unwrap(), big(13));
        assert_eq!(isqrt(&big(168)).unwrap(), big(12));
        assert!(isqrt(&big(-1)).is_err());
    }

    #[test]
    fn isqrt_bracketing_up_to_1e6() {
        // r^2 <= n < (r+1)^2 for all n <= 10^6
        let mut r = BigInt::zero();
        for n in 0..=1_000_000i64 {
            let n = big(n);
            while &(&r + 1u32) * (&r + 1u32) <= n {
                r += 1;
            }
            assert_eq!(isqrt(&n).unwrap(), r);
        }
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&big(169)), Some(big(13)));
        assert_eq!(is_perfect_square(&big(170)), None);
        // y_{-3} of tuple (2,1,13,3,1), verified by the sequence tests
        assert_eq!(is_perfect_square(&big(289)), Some(big(17)));
        assert_eq!(is_perfect_square(&big(-4)), None);
        assert_eq!(is_perfect_square(&big(0)), Some(big(0)));
    }

    #[test]
    fn perfect_square_iff_isqrt_squares_back() {
        for n in 0..=100_000i64 {
            let n = big(n);
            let r = isqrt(&n).unwrap();
            let exact = &r * &r == n;
            assert_eq!(is_perfect_square(&n).is_some(), exact, "n={n}");
        }
    }

    #[test]
    fn iroot_examples() {
        assert_eq!(iroot(&big(27), 3).unwrap(), big(3));
        assert_eq!(iroot(&big(28), 3).unwrap(), big(3));
        // floor(3*167^4/320) = 7291840, cube root floor is 193
        let n = big(7_291_840);
        let r = iroot(&n, 3).unwrap();
        assert_eq!(r, big(193));
        assert!(&r * &r * &r <= n);
        let r1 = &r + BigInt::one();
        assert!(&r1 * &r1 * &r1 > n);
        assert!(iroot(&big(5), 0).is_err());
        assert!(iroot(&big(-5), 3).is_err());
    }

    #[test]
    fn ceil_sqrt_matches_definition() {
        for n in 0..=10_000i64 {
            let n = big(n);
            let c = ceil_sqrt(&n).unwrap();
            assert!(&c * &c >= n);
            if c > BigInt::zero() {
                let cm = &c - 1u32;
                assert!(&cm * &cm < n);
            }
        }
    }
}
