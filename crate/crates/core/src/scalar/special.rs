use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::pow_rational;
use super::Coeff;

/// Rational numbers viewed as `Q(s)` evaluated at `s = S`.
///
/// Any identity that holds in `Q(s)` holds here too, so running the same
/// generic code over `SpecialS<3>` is a cheap independent cross-check.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpecialS<const S: i64>(pub BigRational);

impl<const S: i64> SpecialS<S> {
    pub fn point() -> BigRational {
        BigRational::from_integer(BigInt::from(S))
    }
}

impl<const S: i64> fmt::Display for SpecialS<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const S: i64> Zero for SpecialS<S> {
    fn zero() -> Self {
        Self(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const S: i64> One for SpecialS<S> {
    fn one() -> Self {
        Self(BigRational::one())
    }
}

macro_rules! special_op {
    ($tr:ident, $m:ident) => {
        impl<const S: i64> $tr for SpecialS<S> {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                Self(self.0.$m(rhs.0))
            }
        }
        impl<'a, const S: i64> $tr<&'a SpecialS<S>> for SpecialS<S> {
            type Output = Self;
            fn $m(self, rhs: &Self) -> Self {
                Self(self.0.$m(&rhs.0))
            }
        }
    };
}

special_op!(Add, add);
special_op!(Sub, sub);
special_op!(Mul, mul);

impl<const S: i64> Neg for SpecialS<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl<const S: i64> Coeff for SpecialS<S> {
    fn from_bigint(n: &BigInt) -> Self {
        Self(BigRational::from_integer(n.clone()))
    }
    fn s_pow(k: i32) -> Self {
        Self(pow_rational(&Self::point(), k))
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Self(self.0.recip()))
    }
}
