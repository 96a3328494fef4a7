//! The three-stage preference order over utility vectors.
//!
//! 1. More agents with positive utility wins.
//! 2. Larger weighted Nash product `prod u_i^{w_i}` over the positive
//!    entries wins.
//! 3. Lexicographically larger utility vector wins.
//!
//! Stage 2 is decided exactly. With `L` the lcm of the weight denominators,
//! every `w_i * L` is a positive integer and raising both products to the
//! power `L` preserves their order, so the comparison reduces to two
//! big-integer products. Factors shared by both vectors (same positive
//! utility at the same agent) cancel and are skipped.
//!
//! Stage 3 on raw integer utilities agrees with stage 3 on the weighted
//! vector `(u_i^{w_i})` because `x -> x^w` is strictly increasing on
//! nonnegative `x` for `w > 0`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::model::{Rational, UtilityVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutcomeOrdering {
    FirstPreferred,
    SecondPreferred,
    Equal,
}

impl OutcomeOrdering {
    /// `Greater` means the first vector is preferred.
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => OutcomeOrdering::FirstPreferred,
            Ordering::Less => OutcomeOrdering::SecondPreferred,
            Ordering::Equal => OutcomeOrdering::Equal,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            OutcomeOrdering::FirstPreferred => Ordering::Greater,
            OutcomeOrdering::SecondPreferred => Ordering::Less,
            OutcomeOrdering::Equal => Ordering::Equal,
        }
    }

    pub fn reverse(self) -> Self {
        Self::from_ordering(self.to_ordering().reverse())
    }
}

/// Integer exponents `w_i * L` for a fixed weight vector, reusable across
/// many comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashOrder {
    exponents: Vec<u32>,
}

impl NashOrder {
    pub fn new(weights: &[Rational]) -> Result<Self> {
        let lcm = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let exponents = weights
            .iter()
            .map(|w| {
                let e: BigInt = w.numer() * (&lcm / w.denom());
                e.to_u32()
                    .filter(|&e| e > 0)
                    .ok_or_else(|| Error::ExponentOverflow(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NashOrder { exponents })
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The common-denominator exponents `w_i * L`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Compares two utility vectors; both must have `self.len()` entries.
    pub fn compare(&self, u: &[u64], u2: &[u64]) -> Result<OutcomeOrdering> {
        for v in [u, u2] {
            if v.len() != self.len() {
                return Err(Error::LengthMismatch {
                    expected: self.len(),
                    actual: v.len(),
                });
            }
        }
        Ok(OutcomeOrdering::from_ordering(self.ordering(u, u2)))
    }

    /// `Greater` when `u` is preferred. Panics on length mismatch.
    pub fn ordering(&self, u: &[u64], u2: &[u64]) -> Ordering {
        assert!(u.len() == self.len() && u2.len() == self.len());
        let positive = |v: &[u64]| v.iter().filter(|&&x| x > 0).count();
        positive(u)
            .cmp(&positive(u2))
            .then_with(|| self.product_ordering(u, u2))
            .then_with(|| u.cmp(u2))
    }

    fn product_ordering(&self, u: &[u64], u2: &[u64]) -> Ordering {
        let mut lhs = BigUint::one();
        let mut rhs = BigUint::one();
        for ((&a, &b), &e) in u.iter().zip(u2).zip(&self.exponents) {
            if a == b {
                continue;
            }
            if a > 0 {
                lhs *= BigUint::from(a).pow(e);
            }
            if b > 0 {
                rhs *= BigUint::from(b).pow(e);
            }
        }
        lhs.cmp(&rhs)
    }

    /// Index of the most preferred vector; the earliest wins among equals.
    pub fn best<'a, I>(&self, vectors: I) -> Option<usize>
    where
        I: IntoIterator<Item = &'a [u64]>,
    {
        let mut best: Option<(usize, &[u64])> = None;
        for (i, v) in vectors.into_iter().enumerate() {
            match best {
                Some((_, b)) if self.ordering(v, b) != Ordering::Greater => {}
                _ => best = Some((i, v)),
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Compares two utility vectors under fixed weights.
pub fn compare_outcomes(
    u: &UtilityVector,
    u2: &UtilityVector,
    weights: &[Rational],
) -> Result<OutcomeOrdering> {
    NashOrder::new(weights)?.compare(u.as_slice(), u2.as_slice())
}
