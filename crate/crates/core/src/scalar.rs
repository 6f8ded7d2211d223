//! Scalar requirements for the exact linear algebra kernels.
//!
//! Everything in this crate is integer-valued in the end, but the rank and
//! linear-programming kernels divide, so they run over an ordered field.
//! Any exact ordered field works; the crate root fixes the concrete choices.

use std::fmt::Debug;

use num_traits::{Num, Signed};

/// An exact ordered field: division is exact and comparisons are total on
/// the values we produce.
pub trait ExactField: Clone + Debug + PartialOrd + Num + Signed {
    /// Embeds an integer.
    fn from_int(n: i64) -> Self;
}

impl<I> ExactField for num_rational::Ratio<I>
where
    I: Clone + Debug + num_integer::Integer + Signed + From<i64>,
{
    fn from_int(n: i64) -> Self {
        num_rational::Ratio::from_integer(I::from(n))
    }
}
