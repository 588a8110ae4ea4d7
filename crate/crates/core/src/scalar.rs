//! Exact scalar fields.
//!
//! Every engine in this crate is generic over [`Field`]. Two implementations
//! are provided: arbitrary-precision rationals ([`num_rational::BigRational`],
//! the default `Scalar` at the crate root) and machine-word rationals
//! ([`num_rational::Rational64`]), which are useful for quick checks but may
//! overflow on large inputs.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Num;

use crate::linalg::{self, SparseMatrix};

/// An exact field of characteristic zero.
pub trait Field:
    Clone + Debug + Eq + Hash + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Reduced `p/q` text, or `p` when the denominator is one.
    fn to_text(&self) -> String;

    fn parse_text(s: &str) -> Option<Self>;

    /// Rank of a sparse matrix. The default runs Markowitz-pivoted Gaussian
    /// elimination directly over the field.
    fn sparse_rank(m: &SparseMatrix<Self>) -> usize {
        linalg::rank_over_field(m)
    }

    fn is_integer(&self) -> bool;
}

fn parse_ratio<T>(s: &str) -> Option<num_rational::Ratio<T>>
where
    T: Clone + num_integer::Integer + std::str::FromStr,
{
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: T = num.parse().ok()?;
    let den: T = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(num_rational::Ratio::new(num, den))
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(s: &str) -> Option<Self> {
        parse_ratio(s)
    }

    fn sparse_rank(m: &SparseMatrix<Self>) -> usize {
        linalg::rank_fraction_free(m)
    }

    fn is_integer(&self) -> bool {
        BigRational::is_integer(self)
    }
}

impl Field for Rational64 {
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(s: &str) -> Option<Self> {
        parse_ratio(s)
    }

    fn is_integer(&self) -> bool {
        Rational64::is_integer(self)
    }
}

/// `(-1)^k` as a field element.
pub fn sign_pow<F: Field>(k: i64) -> F {
    if k.rem_euclid(2) == 0 {
        F::one()
    } else {
        -F::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let q = BigRational::parse_text("6/-4").unwrap();
        assert_eq!(q.to_text(), "-3/2");
        assert_eq!(BigRational::parse_text("-3/2").unwrap(), q);
        assert_eq!(BigRational::from_i64(5).to_text(), "5");
        assert_eq!(Rational64::parse_text(" 7 ").unwrap(), Rational64::from_integer(7));
        assert!(BigRational::parse_text("1/0").is_none());
        assert!(BigRational::parse_text("x").is_none());
    }
}
