//! The two families of binary recurrence sequences attached to a tuple
//! (a, b, d, t, u).
//!
//! With α = a + b²√d and ε = (t + u√d)/2 a unit of norm ±1, the sequences
//! are defined by x_k + y_k√d = α·ε^(2k) and x'_k + y'_k√d = α·ε^k. Both
//! satisfy a two-term linear recurrence; 2y_k is always an integer while
//! y_k itself may be a half-integer, so every term is stored doubled.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::is_perfect_square;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("inputs must be positive, got {name} = {value}")]
    NonPositiveInput { name: &'static str, value: BigInt },
    #[error("d = {d} is a perfect square")]
    SquareD { d: BigInt },
    #[error("t^2 - d u^2 = {got}, not ±4, so (t+u√d)/2 is not a unit")]
    NotAUnit { got: BigInt },
    #[error("N_α = {n_alpha} is non-negative; this operation requires N_α < 0")]
    NormNotNegative { n_alpha: BigInt },
}

/// Validated tuple (a, b, d, t, u) together with the derived quantities the
/// whole crate keys on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceParams {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
    pub t: BigInt,
    pub u: BigInt,
    /// N_α = a² − b⁴d, the norm of α.
    pub n_alpha: BigInt,
    /// (t² − du²)/4 ∈ {+1, −1}, the norm of ε.
    pub unit_norm: i8,
    /// (t² + du²)/2 = t² − 2·unit_norm, the recurrence coefficient for the
    /// even-power sequence.
    pub coeff2: BigInt,
}

impl SequenceParams {
    /// Validates the tuple and derives N_α, the unit norm and the
    /// recurrence coefficient.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        d: impl Into<BigInt>,
        t: impl Into<BigInt>,
        u: impl Into<BigInt>,
    ) -> Result<Self, SequenceError> {
        let (a, b, d, t, u) = (a.into(), b.into(), d.into(), t.into(), u.into());
        for (name, v) in [("a", &a), ("b", &b), ("d", &d), ("t", &t), ("u", &u)] {
            if !v.is_positive() {
                return Err(SequenceError::NonPositiveInput {
                    name,
                    value: v.clone(),
                });
            }
        }
        if d < BigInt::from(2) || is_perfect_square(&d).is_some() {
            return Err(SequenceError::SquareD { d });
        }
        let four = BigInt::from(4);
        let disc = &t * &t - &d * &u * &u;
        let unit_norm = if disc == four {
            1i8
        } else if disc == -&four {
            -1i8
        } else {
            return Err(SequenceError::NotAUnit { got: disc });
        };
        let b2 = &b * &b;
        let n_alpha = &a * &a - &b2 * &b2 * &d;
        let coeff2 = &t * &t - BigInt::from(2 * i32::from(unit_norm));
        Ok(Self {
            a,
            b,
            d,
            t,
            u,
            n_alpha,
            unit_norm,
            coeff2,
        })
    }

    /// As [`SequenceParams::new`], additionally requiring N_α < 0 (the
    /// search regime).
    pub fn new_search(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        d: impl Into<BigInt>,
        t: impl Into<BigInt>,
        u: impl Into<BigInt>,
    ) -> Result<Self, SequenceError> {
        let p = Self::new(a, b, d, t, u)?;
        p.require_negative_norm()?;
        Ok(p)
    }

    pub fn require_negative_norm(&self) -> Result<(), SequenceError> {
        if self.n_alpha.is_negative() {
            Ok(())
        } else {
            Err(SequenceError::NormNotNegative {
                n_alpha: self.n_alpha.clone(),
            })
        }
    }

    /// |N_α|.
    pub fn n_abs(&self) -> BigInt {
        self.n_alpha.abs()
    }
}

/// One sequence element in doubled form: x2 = 2x_k, y2 = 2y_k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub k: i64,
    pub x2: BigInt,
    pub y2: BigInt,
}

impl Term {
    /// y_k when it is an integer.
    pub fn y_integer(&self) -> Option<BigInt> {
        if self.y2.is_even() {
            Some(&self.y2 >> 1)
        } else {
            None
        }
    }

    /// Checks x2² − d·y2² = 4·N_α.
    pub fn satisfies_norm_equation(&self, params: &SequenceParams) -> bool {
        &self.x2 * &self.x2 - &params.d * &self.y2 * &self.y2
            == BigInt::from(4) * &params.n_alpha
    }
}

/// Element (p + q√d)/2 of the quadratic field, in doubled coordinates.
/// Products of the α's and ε-powers we form always keep both coordinates
/// integral after the halving (parity argument on p² − dq² ≡ 0 mod 4).
#[derive(Debug, Clone)]
struct HalfElement {
    p: BigInt,
    q: BigInt,
}

impl HalfElement {
    fn mul(&self, other: &Self, d: &BigInt) -> Self {
        let p = &self.p * &other.p + d * &self.q * &other.q;
        let q = &self.p * &other.q + &self.q * &other.p;
        debug_assert!(p.is_even() && q.is_even(), "product left the order");
        Self {
            p: p >> 1,
            q: q >> 1,
        }
    }

    fn conjugate(&self) -> Self {
        Self {
            p: self.p.clone(),
            q: -&self.q,
        }
    }

    fn pow(&self, mut e: u64, d: &BigInt) -> Self {
        let mut base = self.clone();
        let mut acc = Self {
            p: BigInt::from(2), // the element 1 = (2 + 0√d)/2
            q: BigInt::zero(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, d);
            }
            base = base.mul(&base, d);
            e >>= 1;
        }
        acc
    }
}

/// k-th term of the even-power sequence via closed-form binary
/// exponentiation: α·(ε²)^k, with ε^(−2) = conj(ε²) since norm(ε²) = 1.
pub fn term(params: &SequenceParams, k: i64) -> Term {
    let alpha = HalfElement {
        p: &params.a << 1,
        q: (&params.b * &params.b) << 1,
    };
    // ε² = (coeff2 + tu√d)/2
    let eps2 = HalfElement {
        p: params.coeff2.clone(),
        q: &params.t * &params.u,
    };
    let step = if k >= 0 { eps2 } else { eps2.conjugate() };
    let power = step.pow(k.unsigned_abs(), &params.d);
    let v = alpha.mul(&power, &params.d);
    Term {
        k,
        x2: v.p,
        y2: v.q,
    }
}

/// k-th term of the all-powers sequence x'_k + y'_k√d = α·ε^k. For odd k
/// and unit norm −1, ε^(−1) = −conj(ε); the doubled coordinates stay exact.
pub fn term_prime(params: &SequenceParams, k: i64) -> Term {
    let alpha = HalfElement {
        p: &params.a << 1,
        q: (&params.b * &params.b) << 1,
    };
    let eps = HalfElement {
        p: params.t.clone(),
        q: params.u.clone(),
    };
    let step = if k >= 0 {
        eps
    } else {
        let c = eps.conjugate();
        if params.unit_norm == 1 {
            c
        } else {
            HalfElement { p: -c.p, q: -c.q }
        }
    };
    let power = step.pow(k.unsigned_abs(), &params.d);
    let v = alpha.mul(&power, &params.d);
    Term {
        k,
        x2: v.p,
        y2: v.q,
    }
}

/// Same value as [`term`], computed by running the linear recurrence
/// u_{k+1} = coeff2·u_k − u_{k−1} from the k = 0, ±1 seeds. Retained as the
/// independent cross-check for the closed form.
pub fn term_by_recurrence(params: &SequenceParams, k: i64) -> Term {
    let t0 = seed(params, 0);
    if k == 0 {
        return t0;
    }
    let dir = if k > 0 { 1 } else { -1 };
    let mut prev = t0;
    let mut cur = seed(params, dir);
    let mut at = dir;
    while at != k {
        let nx2 = &params.coeff2 * &cur.x2 - &prev.x2;
        let ny2 = &params.coeff2 * &cur.y2 - &prev.y2;
        prev = cur;
        at += dir;
        cur = Term {
            k: at,
            x2: nx2,
            y2: ny2,
        };
    }
    cur
}

fn seed(params: &SequenceParams, k: i64) -> Term {
    let b2 = &params.b * &params.b;
    match k {
        0 => Term {
            k: 0,
            x2: &params.a << 1,
            y2: b2 << 1,
        },
        // 2y_{±1} = (b²(t²+du²) ± 2atu)/2; both numerators are even
        1 | -1 => {
            let s = &b2 * (&params.t * &params.t + &params.d * &params.u * &params.u);
            let w = BigInt::from(2) * &params.a * &params.t * &params.u;
            let y2 = if k == 1 { (&s + &w) >> 1 } else { (&s - &w) >> 1 };
            // 2x_{±1} = (a(t²+du²) ± 2b²dtu)/2
            let sx = &params.a * (&params.t * &params.t + &params.d * &params.u * &params.u);
            let wx = BigInt::from(2) * &b2 * &params.d * &params.t * &params.u;
            let x2 = if k == 1 { (&sx + &wx) >> 1 } else { (&sx - &wx) >> 1 };
            Term { k, x2, y2 }
        }
        _ => unreachable!("seed only defined for k ∈ {{0, ±1}}"),
    }
}

/// Direction of traversal for [`iterate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn step(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// Lazily yields consecutive terms from `start` in the given direction,
/// starting with the term at `start` itself.
pub fn iterate(params: &SequenceParams, start: i64, direction: Direction) -> TermIter {
    let dir = direction.step();
    let cur = term(params, start);
    let prev = term(params, start - dir);
    TermIter {
        coeff2: params.coeff2.clone(),
        prev,
        cur: Some(cur),
        dir,
    }
}

pub struct TermIter {
    coeff2: BigInt,
    prev: Term,
    cur: Option<Term>,
    dir: i64,
}

impl Iterator for TermIter {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        let cur = self.cur.take()?;
        let nx2 = &self.coeff2 * &cur.x2 - &self.prev.x2;
        let ny2 = &self.coeff2 * &cur.y2 - &self.prev.y2;
        let next = Term {
            k: cur.k + self.dir,
            x2: nx2,
            y2: ny2,
        };
        self.prev = cur.clone();
        self.cur = Some(next);
        Some(cur)
    }
}

/// K: the largest negative index with y_K > b². Requires N_α < 0, which
/// guarantees the backward sequence eventually exceeds b² and stays above
/// it, so scanning k = −1, −2, … to the first success is correct.
pub fn compute_k(params: &SequenceParams) -> Result<i64, SequenceError> {
    params.require_negative_norm()?;
    let threshold = (&params.b * &params.b) << 1; // 2b²
    for t in iterate(params, -1, Direction::Backward) {
        if t.y2 > threshold {
            return Ok(t.k);
        }
    }
    unreachable!("backward sequence grows without bound when N_α < 0")
}
