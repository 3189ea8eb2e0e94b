//! The field `Q(s)` of rational functions in `s = q^(1/2)`, kept in lowest terms.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{dense_div_exact, dense_gcd, Laurent};

/// An element `num / den` of `Q(s)`.
///
/// Canonical form: `den` is a polynomial with nonzero constant term and
/// positive leading coefficient, coprime to `num` over `Z[s]`, with the
/// integer contents of the two sides coprime. `den == None` means 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    num: Laurent,
    den: Option<Laurent>,
}

impl Scalar {
    pub fn from_laurent(num: Laurent) -> Self {
        Self { num, den: None }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_laurent(Laurent::constant(n))
    }

    /// `s^k`
    pub fn s_power(k: i32) -> Self {
        Self::from_laurent(Laurent::s_pow(k))
    }

    /// `q^k = s^(2k)`
    pub fn q_power(k: i32) -> Self {
        Self::s_power(2 * k)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(Laurent::constant(r.numer().clone()), Laurent::constant(r.denom().clone()))
            .expect("nonzero denominator")
    }

    /// `num / den` in lowest terms, or `None` if `den` is zero.
    pub fn new(num: Laurent, den: Laurent) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalize(num, den))
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> Laurent {
        self.den.clone().unwrap_or_else(Laurent::one)
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_none()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.den.is_none().then_some(&self.num)
    }

    fn normalize(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low();
        let num = num.shifted(-shift);
        let den = den.shifted(-shift);
        let num_low = num.low();

        let (mut n, mut d) = (num.dense().to_vec(), den.dense().to_vec());
        if d.len() > 1 && n.len() > 1 {
            let g = dense_gcd(&n, &d);
            if g.len() > 1 {
                n = dense_div_exact(&n, &g);
                d = dense_div_exact(&d, &g);
            }
        }
        let mut num = Laurent::from_dense(num_low, n);
        let mut den = Laurent::from_dense(0, d);
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        num.div_int_exact(&c);
        den.div_int_exact(&c);
        if den.is_one() {
            Self { num, den: None }
        } else {
            Self { num, den: Some(den) }
        }
    }

    /// Substitute `s -> -s`.
    pub fn negate_variable(&self) -> Self {
        match &self.den {
            None => Self::from_laurent(self.num.negate_variable()),
            Some(d) => Self::normalize(self.num.negate_variable(), d.negate_variable()),
        }
    }

    /// Substitute `s -> s^-1` (the bar involution).
    pub fn bar(&self) -> Self {
        match &self.den {
            None => Self::from_laurent(self.num.invert_variable()),
            Some(d) => Self::normalize(self.num.invert_variable(), d.invert_variable()),
        }
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        let n = self.num.eval(s);
        match &self.den {
            None => Some(n),
            Some(d) => {
                let dv = d.eval(s);
                (!dv.is_zero()).then(|| n / dv)
            }
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.denom(), self.num.clone()))
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.checked_inv().expect("zero to a negative power") } else { self.clone() };
        num_traits::pow(base, k.unsigned_abs() as usize)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let rn = if negate { -rhs.num.clone() } else { rhs.num.clone() };
        match (&self.den, &rhs.den) {
            (None, None) => Self::from_laurent(&self.num + &rn),
            (Some(a), Some(b)) if a == b => Self::normalize(&self.num + &rn, a.clone()),
            (None, Some(b)) => Self::normalize(&(&self.num * b) + &rn, b.clone()),
            (Some(a), None) => Self::normalize(&self.num + &(&rn * a), a.clone()),
            (Some(a), Some(b)) => Self::normalize(&(&self.num * b) + &(&rn * a), a * b),
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        match (&self.den, &rhs.den) {
            (None, None) => Self::from_laurent(&self.num * &rhs.num),
            (None, Some(d)) | (Some(d), None) => Self::normalize(&self.num * &rhs.num, d.clone()),
            (Some(a), Some(b)) => Self::normalize(&self.num * &rhs.num, a * b),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self { num: Laurent::zero(), den: None }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }
    fn is_one(&self) -> bool {
        self.den.is_none() && self.num.is_one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_impl(b));
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| a
    .mul_impl(&b.checked_inv().expect("division by zero scalar")));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -self.num, den: self.den }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_impl(rhs);
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Laurent> for Scalar {
    fn from(p: Laurent) -> Self {
        Scalar::from_laurent(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.den {
            None => write!(f, "{}", self.num),
            Some(d) => write!(f, "({})/({})", self.num, d),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}
