//! Coefficient rings for the formal algebras.
//!
//! Every linear-combination type in this crate ([`FormalSum`](crate::words::FormalSum),
//! [`GroupRing`](crate::symgroup::GroupRing), [`SymbolicReal`](crate::regular::SymbolicReal),
//! [`TPoly`](crate::regular::TPoly)) is generic over a [`Scalar`]. Exact work uses
//! [`Rational`](crate::Rational); machine floats are accepted for quick experiments.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

/// A commutative ring usable as a coefficient type.
pub trait Scalar: Clone + PartialEq + Debug + Display + Num + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Exact rational value, when the scalar is exact.
    fn to_rational(&self) -> Option<BigRational>;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(BigInt::from(*self)))
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_rational(&self) -> Option<BigRational> {
        None
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn to_rational(&self) -> Option<BigRational> {
        None
    }
}

/// Renders a coefficient as it appears in front of a term: `""` for one,
/// `"c·"` otherwise. The sign is handled by the caller.
pub(crate) fn coeff_prefix<C: Scalar>(abs: &C) -> String {
    if abs.is_one() {
        return String::new();
    }
    let text = abs.to_string();
    match vulgar(&text) {
        Some(g) => g.to_string(),
        None => format!("{text}·"),
    }
}

fn vulgar(text: &str) -> Option<&'static str> {
    Some(match text {
        "1/2" => "½",
        "1/3" => "⅓",
        "2/3" => "⅔",
        "1/4" => "¼",
        "3/4" => "¾",
        "1/6" => "⅙",
        "5/6" => "⅚",
        "1/8" => "⅛",
        _ => return None,
    })
}

/// Joins signed terms as `a + b − c`.
pub(crate) fn join_signed<C: Scalar>(terms: impl IntoIterator<Item = (C, String)>) -> String {
    let mut out = String::new();
    for (i, (c, body)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('−'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" − "),
        }
        if body.is_empty() {
            let text = abs.to_string();
            out.push_str(vulgar(&text).unwrap_or(&text));
        } else {
            out.push_str(&coeff_prefix(&abs));
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
