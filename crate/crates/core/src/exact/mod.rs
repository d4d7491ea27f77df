//! Exact arithmetic: big rationals, elements of a quadratic field and
//! integer/rational matrices with their normal forms.
//!
//! Nothing in here touches floating point.

mod matrix;
mod quad;

pub use matrix::{hnf, invert_symmetric, snf, IntMatrix, RatMatrix, SmithForm};
pub use quad::{quad_field_ops, QuadExt, QuadOp};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("degenerate Gram")]
    DegenerateGram,
    #[error("mixed quadratic fields: sqrt({0}) vs sqrt({1})")]
    MixedFields(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field tag {0} is not a square-free integer other than 0 and 1")]
    BadFieldTag(i64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Reduce `x` into the half-open interval `[0, m)`.
pub fn rat_mod(x: &Rational, m: &Rational) -> Rational {
    let q = (x / m).floor();
    x - q * m
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn is_even_integer(x: &Rational) -> bool {
    is_integer(x) && x.numer().is_even()
}

/// Exact `floor(sqrt(n))` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        panic!("isqrt of negative number");
    }
    n.sqrt()
}

pub fn is_square_free(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Serde helpers that write rationals as `"p/q"` strings.
pub mod rat_serde {
    use super::Rational;
    use serde::ser::{SerializeSeq, Serializer};

    pub fn vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn vecs<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = v
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        serde::Serialize::serialize(&strings, s)
    }
}
