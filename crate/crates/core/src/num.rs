//! The natural-number carrier used by the evaluator.
//!
//! Truth in the standard model only needs `0`, successor, `+`, `*`, `<=`
//! and conversions to and from the big integers that codes live in. The
//! evaluator is generic over this trait so that small arithmetic can run on
//! machine words (with overflow reported, never wrapped) while anything
//! involving Goedel numbers runs on `BigUint`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, One, ToPrimitive, Zero};

pub trait Natural:
    Clone + Debug + Display + Eq + Ord + Hash + Zero + One + CheckedAdd + CheckedMul + Send + Sync + 'static
{
    /// Converts from a big integer, or `None` when the value does not fit.
    fn from_big(n: &BigUint) -> Option<Self>;

    fn to_big(&self) -> BigUint;

    fn from_u64(n: u64) -> Self;

    fn to_u64(&self) -> Option<u64>;

    /// `self + 1`, or `None` on overflow.
    fn checked_succ(&self) -> Option<Self> {
        self.checked_add(&Self::one())
    }
}

impl Natural for u64 {
    fn from_big(n: &BigUint) -> Option<Self> {
        ToPrimitive::to_u64(n)
    }

    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn from_u64(n: u64) -> Self {
        n
    }

    fn to_u64(&self) -> Option<u64> {
        Some(*self)
    }
}

impl Natural for BigUint {
    fn from_big(n: &BigUint) -> Option<Self> {
        Some(n.clone())
    }

    fn to_big(&self) -> BigUint {
        self.clone()
    }

    fn from_u64(n: u64) -> Self {
        BigUint::from(n)
    }

    fn to_u64(&self) -> Option<u64> {
        ToPrimitive::to_u64(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of<N: Natural>(xs: &[u64]) -> Option<N> {
        xs.iter().try_fold(N::zero(), |acc, &x| acc.checked_add(&N::from_u64(x)))
    }

    #[test]
    fn machine_words_report_overflow() {
        assert_eq!(sum_of::<u64>(&[1, 2, 3]), Some(6));
        assert_eq!(sum_of::<u64>(&[u64::MAX, 1]), None);
        assert_eq!(u64::MAX.checked_succ(), None);
    }

    #[test]
    fn big_integers_never_overflow() {
        let s = sum_of::<BigUint>(&[u64::MAX, 1]).unwrap();
        assert_eq!(s, BigUint::from(u64::MAX) + 1u32);
        assert_eq!(u64::from_big(&s), None);
        assert_eq!(Natural::to_u64(&BigUint::from(7u32)), Some(7));
    }
}
