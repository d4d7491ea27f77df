use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{is_square_free, rat_int, ExactError, Rational};

/// An element `a + b*sqrt(d)` of a quadratic field `Q(sqrt(d))`.
///
/// A field tag of `0` marks a plain rational; such values combine with any
/// other field. Two nonzero tags that differ never combine: the checked
/// operations return [`ExactError::MixedFields`] and the operator impls panic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadExt {
    d: i64,
    a: Rational,
    b: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
    Conj,
    Eq,
}

impl QuadExt {
    pub fn new(d: i64, a: Rational, b: Rational) -> Result<Self, ExactError> {
        if d == 0 {
            if !b.is_zero() {
                return Err(ExactError::BadFieldTag(0));
            }
            return Ok(Self::rational(a));
        }
        if d == 1 || !is_square_free(d) {
            return Err(ExactError::BadFieldTag(d));
        }
        Ok(Self { d, a, b }.normalized())
    }

    pub fn rational(a: Rational) -> Self {
        Self {
            d: 0,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(rat_int(n))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: i64) -> Result<Self, ExactError> {
        Self::new(d, Rational::zero(), Rational::one())
    }

    /// The primitive cube root of unity `(-1 + sqrt(-3))/2`.
    pub fn zeta3() -> Self {
        Self {
            d: -3,
            a: Rational::new((-1).into(), 2.into()),
            b: Rational::new(1.into(), 2.into()),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn field(&self) -> i64 {
        self.d
    }

    pub fn re(&self) -> &Rational {
        &self.a
    }

    pub fn im(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Re-tag the value as living in `Q(sqrt(d))`; fails if it already lives
    /// in a different quadratic field.
    pub fn in_field(&self, d: i64) -> Result<Self, ExactError> {
        if self.d != 0 && self.d != d && !self.b.is_zero() {
            return Err(ExactError::MixedFields(self.d, d));
        }
        Ok(self.clone())
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    fn join(&self, other: &Self) -> Result<i64, ExactError> {
        match (self.d, other.d) {
            (0, e) => Ok(e),
            (d, 0) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(ExactError::MixedFields(d, e)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.join(other)?;
        Ok(Self {
            d,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
        .normalized())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.join(other)?;
        Ok(Self {
            d,
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
        .normalized())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.join(other)?;
        let dd = Rational::from_integer(d.into());
        Ok(Self {
            d,
            a: &self.a * &other.a + &self.b * &other.b * dd,
            b: &self.a * &other.b + &self.b * &other.a,
        }
        .normalized())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.join(other)?;
        let inv = other.inverse()?;
        self.try_mul(&inv)
    }

    pub fn conj(&self) -> Self {
        Self {
            d: self.d,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        let dd = Rational::from_integer(self.d.into());
        &self.a * &self.a - &self.b * &self.b * dd
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self {
            d: self.d,
            a: &self.a / &n,
            b: -&self.b / &n,
        }
        .normalized())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn try_eq(&self, other: &Self) -> Result<bool, ExactError> {
        self.join(other)?;
        Ok(self.a == other.a && self.b == other.b)
    }

    /// Approximate complex value, for display and sign decisions only.
    pub fn to_f64_parts(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        if self.d == 0 {
            (a, 0.0)
        } else if self.d > 0 {
            (a + b * (self.d as f64).sqrt(), 0.0)
        } else {
            (a, b * ((-self.d) as f64).sqrt())
        }
    }
}

/// Checked arithmetic entry point: every op of the quadratic-field kernel
/// behind one tag. `Eq` returns `1` or `0`; `Conj` ignores `y`.
pub fn quad_field_ops(op: QuadOp, x: &QuadExt, y: &QuadExt) -> Result<QuadExt, ExactError> {
    match op {
        QuadOp::Add => x.try_add(y),
        QuadOp::Sub => x.try_sub(y),
        QuadOp::Mul => x.try_mul(y),
        QuadOp::Div => x.try_div(y),
        QuadOp::Conj => Ok(x.conj()),
        QuadOp::Eq => Ok(QuadExt::from_int(x.try_eq(y)? as i64)),
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).unwrap_or(false)
    }
}

impl Eq for QuadExt {}

impl Default for QuadExt {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("quadratic field arithmetic")
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$checked(&rhs).expect("quadratic field arithmetic")
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$checked(rhs).expect("quadratic field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&QuadExt> for QuadExt {
    fn add_assign(&mut self, rhs: &QuadExt) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QuadExt> for QuadExt {
    fn sub_assign(&mut self, rhs: &QuadExt) {
        *self = &*self - rhs;
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            d: self.d,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.d);
        let bpart = if self.b.is_one() {
            root
        } else if (-&self.b).is_one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{bpart}")
        } else if self.b.is_negative() {
            write!(f, "{}{}", self.a, bpart)
        } else {
            write!(f, "{}+{}", self.a, bpart)
        }
    }
}
