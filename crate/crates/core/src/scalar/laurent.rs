//! Integer Laurent polynomials in `s`, plus the dense `Z[s]` helpers used for
//! gcd computations in the rational-function field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial `sum c_e s^e` with arbitrary-precision integer coefficients.
///
/// Stored densely from the lowest exponent upward. Neither end of `coeffs`
/// holds a zero, and the zero polynomial is `coeffs == []` with `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    /// `s^exp`
    pub fn s_pow(exp: i32) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize + 1];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    pub(crate) fn from_dense(low: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for a nonzero constant (exponent 0 only).
    pub fn is_constant(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent present (`low - 1` for the zero polynomial).
    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        if exp < self.low || exp > self.high() {
            return BigInt::zero();
        }
        self.coeffs[(exp - self.low) as usize].clone()
    }

    pub(crate) fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Multiply by `s^k`.
    pub fn shifted(mut self, k: i32) -> Self {
        if !self.is_zero() {
            self.low += k;
        }
        self
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        dense_content(&self.coeffs)
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub(crate) fn div_int_exact(&mut self, c: &BigInt) {
        if c.is_one() {
            return;
        }
        for x in &mut self.coeffs {
            *x = &*x / c;
        }
    }

    /// Substitute `s -> -s`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.low + i as i32).rem_euclid(2) == 1 { -c } else { c.clone() })
            .collect();
        Self { low: self.low, coeffs }
    }

    /// Substitute `s -> s^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().rev().cloned().collect();
        Self { low: -self.high(), coeffs }
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + BigRational::from_integer(c.clone());
        }
        acc * pow_rational(s, self.low)
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other.clone() } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + i];
            if negate_other {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_dense(low, coeffs)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_dense(self.low + other.low, dense_mul(&self.coeffs, &other.coeffs))
    }
}

pub(crate) fn pow_rational(s: &BigRational, exp: i32) -> BigRational {
    let base = if exp < 0 { s.recip() } else { s.clone() };
    num_traits::pow(base, exp.unsigned_abs() as usize)
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        self.add_impl(&rhs, false)
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.add_impl(rhs, false)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        self.add_impl(&rhs, true)
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.add_impl(rhs, true)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        self.mul_impl(&rhs)
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.mul_impl(rhs)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for Laurent {
    /// Terms in decreasing exponent order, e.g. `2*s^3 - s + 1 - s^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write_s_power(f, e)?,
                (_, false) => {
                    write!(f, "{mag}*")?;
                    write_s_power(f, e)?;
                }
            }
        }
        Ok(())
    }
}

fn write_s_power(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "s")
    } else {
        write!(f, "s^{e}")
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

// ---------------------------------------------------------------------------
// Dense Z[s] helpers. Slices are ascending coefficient lists with a nonzero
// last entry (or empty for zero).

pub(crate) fn dense_content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    g
}

pub(crate) fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn dense_trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn primitive_part(a: &[BigInt]) -> Vec<BigInt> {
    let c = dense_content(a);
    let sign_fix = if a.last().is_some_and(Signed::is_negative) { -c } else { c };
    a.iter().map(|x| x / &sign_fix).collect()
}

/// Exact quotient `a / b` in `Z[s]`; `b` must divide `a`.
pub(crate) fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    assert!(a.len() > db, "inexact polynomial division");
    let lead = &b[db];
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let (c, r) = rem[i + db].div_rem(lead);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// Pseudo-remainder of `a` by `b` (up to a nonzero integer factor).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead_b = &b[db];
    let mut r = a.to_vec();
    dense_trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let lead_r = r.last().unwrap().clone();
        let g = lead_r.gcd(lead_b);
        let mr = lead_b / &g;
        let mb = &lead_r / &g;
        for x in r.iter_mut() {
            *x *= &mr;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &mb * bj;
        }
        dense_trim(&mut r);
        if r.len() > db + 1 {
            let c = dense_content(&r);
            if !c.is_one() {
                for x in r.iter_mut() {
                    *x = &*x / &c;
                }
            }
        }
    }
    r
}

/// Greatest common divisor in `Z[s]`, normalized to a positive leading coefficient.
pub(crate) fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive_sign(b);
    }
    if b.is_empty() {
        return primitive_sign(a);
    }
    let c = dense_content(a).gcd(&dense_content(b));
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_part(&r) };
    }
    x.iter().map(|v| v * &c).collect()
}

fn primitive_sign(a: &[BigInt]) -> Vec<BigInt> {
    match a.last() {
        Some(l) if l.is_negative() => a.iter().map(|x| -x).collect(),
        _ => a.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (s+1)(s-2) and (s+1)(s^2+3)
        let a = dense_mul(&p(&[1, 1]), &p(&[-2, 1]));
        let b = dense_mul(&p(&[1, 1]), &p(&[3, 0, 1]));
        assert_eq!(dense_gcd(&a, &b), p(&[1, 1]));
        let a2: Vec<BigInt> = a.iter().map(|x| x * 6).collect();
        let b2: Vec<BigInt> = b.iter().map(|x| x * -4).collect();
        assert_eq!(dense_gcd(&a2, &b2), p(&[2, 2]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(&[3, -1, 0, 2]);
        let b = p(&[-1, 0, 5]);
        assert_eq!(dense_div_exact(&dense_mul(&a, &b), &b), a);
    }

    #[test]
    fn display_orders_terms_by_decreasing_exponent() {
        let x = Laurent::from_terms([(-2, -1), (0, 1), (1, -1), (3, 2)]);
        assert_eq!(x.to_string(), "2*s^3 - s + 1 - s^-2");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn trimming_keeps_canonical_shape() {
        let x = Laurent::from_terms([(1, 1), (1, -1), (4, 3)]);
        assert_eq!(x, Laurent::monomial(BigInt::from(3), 4));
        let y = Laurent::from_terms([(0, 2)]) - Laurent::constant(2);
        assert_eq!(y, Laurent::zero());
        assert_eq!(y.low(), 0);
    }
}
