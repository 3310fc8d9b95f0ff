//! Exact values of the form `C · ∏ vᵢ^(pᵢ/qᵢ)` and their exact comparison.
//!
//! Every threshold in the bound catalogue is such a product: an exact
//! rational constant times positive integers raised to rational exponents.
//! Two products are compared by clearing denominators — both sides are
//! raised to the lcm `L` of all exponent denominators, which turns the
//! comparison into one between integer products. No floating point is
//! involved anywhere in the decision.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{iroot, ExactError};

/// Exact rational exponent in lowest terms.
pub type Exponent = Ratio<BigInt>;

/// `constant · ∏ valueᵢ^(exponentᵢ)` with every `valueᵢ ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProduct {
    constant: Ratio<BigInt>,
    factors: Vec<(BigInt, Exponent)>,
}

impl PowerProduct {
    /// An exact rational with no power factors.
    pub fn from_ratio(numer: BigInt, denom: BigInt) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self {
            constant: Ratio::new(numer, denom),
            factors: Vec::new(),
        })
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self {
            constant: Ratio::from_integer(n.into()),
            factors: Vec::new(),
        }
    }

    /// Multiplies in a factor `value^(p/q)`; `value ≥ 1`, `q ≠ 0`.
    pub fn pow_factor(
        mut self,
        value: impl Into<BigInt>,
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
    ) -> Result<Self, ExactError> {
        let value = value.into();
        let q = q.into();
        if value < BigInt::one() {
            return Err(ExactError::FactorBelowOne { value });
        }
        if q.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        let exp = Ratio::new(p.into(), q);
        if value.is_one() || exp.is_zero() {
            return Ok(self); // contributes nothing
        }
        // integer exponents on integer values fold into the constant while
        // they stay small; keeps comparison products compact
        if exp.is_integer() {
            if let Some(e) = exp.to_integer().to_i32() {
                if (0..=64).contains(&e) {
                    self.constant *= Ratio::from_integer(value.pow(e as u32));
                    return Ok(self);
                }
                if (-64..0).contains(&e) {
                    self.constant /=
                        Ratio::from_integer(value.pow(e.unsigned_abs()));
                    return Ok(self);
                }
            }
        }
        self.factors.push((value, exp));
        Ok(self)
    }

    pub fn constant(&self) -> &Ratio<BigInt> {
        &self.constant
    }

    pub fn factors(&self) -> &[(BigInt, Exponent)] {
        &self.factors
    }

    fn sign(&self) -> Ordering {
        // factors are >= 1, so the sign is the constant's
        if self.constant.is_zero() {
            Ordering::Equal
        } else if self.constant.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact three-way comparison; never "unknown".
    pub fn compare(&self, other: &Self) -> Ordering {
        let (ls, rs) = (self.sign(), other.sign());
        if ls != rs {
            return ls.cmp(&rs);
        }
        if ls == Ordering::Equal {
            return Ordering::Equal; // both zero
        }
        let mag = compare_magnitudes(self, other);
        if ls == Ordering::Greater {
            mag
        } else {
            mag.reverse()
        }
    }

    /// Decimal rendering with `digits` digits after the point, rounded
    /// toward zero. Display only; computed with exact scaled-integer roots,
    /// never consulted by `compare`.
    pub fn decimal_string(&self, digits: u32) -> String {
        let ten = BigInt::from(10);
        // guard digits cover the per-factor floors
        let guard = digits + 12 + self.factors.len() as u32 * 2;
        let scale = ten.pow(guard);
        let mut acc = Ratio::from_integer(scale.clone()); // value * 10^guard
        acc *= self.constant.abs();
        for (v, e) in &self.factors {
            let p = e.numer();
            let q = e.denom().to_u32().expect("exponent denominator fits u32");
            let vp = v.pow(p.abs().to_u32().expect("exponent numerator fits u32"));
            // floor(v^(|p|/q) * 10^guard) = iroot(v^|p| * 10^(guard*q), q)
            let scaled = &vp * ten.pow(guard * q);
            let root = iroot(&scaled, q).expect("non-negative root");
            let approx = Ratio::new(root, scale.clone());
            if p.is_negative() {
                acc /= approx;
            } else {
                acc *= approx;
            }
        }
        let scaled = acc * Ratio::from_integer(ten.pow(digits));
        let units = scaled.to_integer() / &scale; // truncate
        let s = units.to_string();
        let sign = if self.constant.is_negative() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{s}");
        }
        let s = format!("{:0>width$}", s, width = digits as usize + 1);
        let cut = s.len() - digits as usize;
        format!("{sign}{}.{}", &s[..cut], &s[cut..])
    }
}

/// Compares `|lhs|` vs `|rhs|` by raising both to the lcm of all exponent
/// denominators and cross-multiplying the resulting integer products.
fn compare_magnitudes(lhs: &PowerProduct, rhs: &PowerProduct) -> Ordering {
    let mut l = BigInt::one();
    for (_, e) in lhs.factors.iter().chain(rhs.factors.iter()) {
        l = l.lcm(e.denom());
    }
    // side^L as numerator/denominator pair of positive integers
    let (ln, ld) = raised(lhs, &l);
    let (rn, rd) = raised(rhs, &l);
    (ln * rd).cmp(&(rn * ld))
}

fn raised(pp: &PowerProduct, l: &BigInt) -> (BigInt, BigInt) {
    let le = l.to_u32().expect("exponent lcm fits u32");
    let mut num = pp.constant.numer().abs().pow(le);
    let mut den = pp.constant.denom().abs().pow(le);
    for (v, e) in &pp.factors {
        let scaled: BigInt = (e.numer() * l) / e.denom(); // exact: denom | l
        let exp = scaled
            .abs()
            .to_u32()
            .expect("scaled exponent fits u32");
        if scaled.is_negative() {
            den *= v.pow(exp);
        } else {
            num *= v.pow(exp);
        }
    }
    (num, den)
}

/// Direction for [`max_satisfying`]: which end of the satisfying set to
/// report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchDirection {
    LargestSatisfying,
    SmallestSatisfying,
}

/// Finds the extreme integer in `[lo, hi]` whose instantiated template
/// satisfies `pred`, by exact bisection. The template must be monotone in
/// the free variable: the satisfying set must be a prefix (for
/// `LargestSatisfying`) or suffix (for `SmallestSatisfying`) of the range.
/// Detectably non-monotone inputs are rejected.
pub fn max_satisfying<F>(
    lo: &BigInt,
    hi: &BigInt,
    template: F,
    dir: SearchDirection,
) -> Result<Option<BigInt>, ExactError>
where
    F: Fn(&BigInt) -> bool,
{
    if lo > hi {
        return Ok(None);
    }
    let at_lo = template(lo);
    let at_hi = template(hi);
    match dir {
        SearchDirection::LargestSatisfying => {
            // satisfying set must be a prefix
            if !at_lo {
                if at_hi {
                    return Err(ExactError::NonMonotoneTemplate);
                }
                return Ok(None);
            }
            if at_hi {
                return Ok(Some(hi.clone()));
            }
            // invariant: template(a) true, template(b) false
            let mut a = lo.clone();
            let mut b = hi.clone();
            while &b - &a > BigInt::one() {
                let mid: BigInt = (&a + &b) >> 1;
                if template(&mid) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            Ok(Some(a))
        }
        SearchDirection::SmallestSatisfying => {
            if !at_hi {
                if at_lo {
                    return Err(ExactError::NonMonotoneTemplate);
                }
                return Ok(None);
            }
            if at_lo {
                return Ok(Some(lo.clone()));
            }
            let mut a = lo.clone();
            let mut b = hi.clone();
            while &b - &a > BigInt::one() {
                let mid: BigInt = (&a + &b) >> 1;
                if template(&mid) {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            Ok(Some(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    // 8 vs 15 * 4^(3/4) * 1^(3/2) / 1^(3/2): 8^4 = 4096 < 15^4 * 4^3 = 3240000
    #[test]
    fn compare_example_less() {
        let lhs = PowerProduct::from_int(8);
        let rhs = PowerProduct::from_int(15)
            .pow_factor(4, 3, 4)
            .unwrap()
            .pow_factor(1, 3, 2)
            .unwrap()
            .pow_factor(1, -3, 2)
            .unwrap();
        assert_eq!(lhs.compare(&rhs), Ordering::Less);
    }

    #[test]
    fn compare_example_equal() {
        let lhs = PowerProduct::from_int(167);
        let rhs = PowerProduct::from_int(167).pow_factor(1, 52, 9).unwrap();
        assert_eq!(lhs.compare(&rhs), Ordering::Equal);
    }

    // 2482504 vs (947/100) * 2^18: 100*2482504 > 947*262144 = 248250368
    #[test]
    fn compare_example_greater() {
        let lhs = PowerProduct::from_int(2_482_504);
        let rhs = PowerProduct::from_ratio(big(947), big(100))
            .unwrap()
            .pow_factor(2, 18, 1)
            .unwrap();
        assert_eq!(lhs.compare(&rhs), Ordering::Greater);
        let at_floor = PowerProduct::from_int(2_482_503);
        assert_eq!(at_floor.compare(&rhs), Ordering::Less);
    }

    #[test]
    fn compare_handles_signs_and_zero() {
        let neg = PowerProduct::from_ratio(big(-3), big(2)).unwrap();
        let zero = PowerProduct::from_int(0);
        let pos = PowerProduct::from_int(1).pow_factor(7, 1, 3).unwrap();
        assert_eq!(neg.compare(&pos), Ordering::Less);
        assert_eq!(neg.compare(&zero), Ordering::Less);
        assert_eq!(zero.compare(&pos), Ordering::Less);
        assert_eq!(zero.compare(&zero), Ordering::Equal);
        assert_eq!(neg.compare(&neg), Ordering::Equal);
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(PowerProduct::from_int(1).pow_factor(0, 1, 2).is_err());
        assert!(PowerProduct::from_int(1).pow_factor(3, 1, 0).is_err());
        assert!(PowerProduct::from_ratio(big(1), big(0)).is_err());
    }

    #[test]
    fn max_satisfying_example_step_iii() {
        // largest |N| with 15 * |N|^(8/17) <= 167  ->  167
        let target = PowerProduct::from_int(167);
        let r = max_satisfying(
            &big(1),
            &big(1_000_000),
            |n| {
                let t = PowerProduct::from_int(15)
                    .pow_factor(n.clone(), 8, 17)
                    .unwrap();
                t.compare(&target) != Ordering::Greater
            },
            SearchDirection::LargestSatisfying,
        )
        .unwrap()
        .unwrap();
        assert_eq!(r, big(167));
    }

    #[test]
    fn max_satisfying_example_cube() {
        // largest |N| with |N|^3 <= 3*5^4/320: 1^3 <= 5.859 < 2^3
        let target = PowerProduct::from_ratio(big(3 * 625), big(320)).unwrap();
        let r = max_satisfying(
            &big(1),
            &big(100),
            |n| {
                let t = PowerProduct::from_int(1)
                    .pow_factor(n.clone(), 3, 1)
                    .unwrap();
                t.compare(&target) != Ordering::Greater
            },
            SearchDirection::LargestSatisfying,
        )
        .unwrap()
        .unwrap();
        assert_eq!(r, big(1));
    }

    #[test]
    fn max_satisfying_rejects_non_monotone() {
        // satisfied only in the middle: not a prefix
        let r = max_satisfying(
            &big(0),
            &big(10),
            |n| *n == big(5),
            SearchDirection::LargestSatisfying,
        );
        assert!(matches!(r, Err(ExactError::NonMonotoneTemplate) | Ok(None)));
    }

    #[test]
    fn decimal_rendering() {
        // 2^(1/2) = 1.41421356...
        let pp = PowerProduct::from_int(1).pow_factor(2, 1, 2).unwrap();
        assert_eq!(&pp.decimal_string(8), "1.41421356");
        let pp = PowerProduct::from_ratio(big(947), big(100))
            .unwrap()
            .pow_factor(2, 18, 1)
            .unwrap();
        assert_eq!(&pp.decimal_string(2), "2482503.68");
        let pp = PowerProduct::from_ratio(big(-7), big(4)).unwrap();
        assert_eq!(&pp.decimal_string(3), "-1.750");
    }
}
