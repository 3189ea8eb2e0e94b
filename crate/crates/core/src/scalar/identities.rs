//! Standalone binomial and quantum identities, evaluated exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{q_pow, qbrace, Coeff, Scalar};
use crate::error::{Error, Result};

/// `C(n, k)`, taken to be 0 whenever `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Checks `sum_{i=0}^{delta} (delta+1-i)^ell C(gamma+i, gamma)` against its
/// closed form for `ell` in 0, 1, 2.
pub fn binom_identity(ell: u32, gamma: i64, delta: i64) -> Result<bool> {
    if gamma < 0 || delta < 0 {
        return Err(Error::Domain("gamma and delta must be nonnegative".into()));
    }
    let lhs: BigInt = (0..=delta)
        .map(|i| num_traits::pow(BigInt::from(delta + 1 - i), ell as usize) * binom(gamma + i, gamma))
        .sum();
    let rhs = match ell {
        0 => binom(gamma + 1 + delta, delta),
        1 => binom(gamma + 2 + delta, delta),
        2 => binom(gamma + 3 + delta, delta) + binom(gamma + 2 + delta, delta - 1),
        _ => return Err(Error::Domain(format!("ell must be 0, 1 or 2, got {ell}"))),
    };
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetPart {
    One,
    Two,
}

/// Part one: `sum_{j=0}^{p} (-1)^{p-j} C(2k-j, p) C(p, j) / (2k-j) = 0` for `0 < p < k`.
///
/// Part two: `sum_{j=1}^{k} (-1)^{j+1} (2k/(k+j)) C(k+j, 2j) C(2j, j) = 2`, together
/// with the equivalent form using `C(k+j, j) C(k, j)`. `p` is ignored.
pub fn coset_identity(part: CosetPart, k: i64, p: i64) -> Result<bool> {
    if k < 1 {
        return Err(Error::Domain(format!("k must be positive, got {k}")));
    }
    let rat = |n: BigInt| BigRational::from_integer(n);
    let sign = |e: i64| if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    match part {
        CosetPart::One => {
            if !(0 < p && p < k) {
                return Err(Error::Domain(format!("part 1 needs 0 < p < k, got p = {p}, k = {k}")));
            }
            let sum: BigRational = (0..=p)
                .map(|j| {
                    rat(sign(p - j) * binom(2 * k - j, p) * binom(p, j))
                        / rat(BigInt::from(2 * k - j))
                })
                .sum();
            Ok(sum.is_zero())
        }
        CosetPart::Two => {
            let two = rat(BigInt::from(2));
            let first: BigRational = (1..=k)
                .map(|j| {
                    rat(sign(j + 1) * BigInt::from(2 * k) * binom(k + j, 2 * j) * binom(2 * j, j))
                        / rat(BigInt::from(k + j))
                })
                .sum();
            let second: BigRational = (1..=k)
                .map(|j| {
                    rat(sign(j + 1) * BigInt::from(2 * k) * binom(k + j, j) * binom(k, j))
                        / rat(BigInt::from(k + j))
                })
                .sum();
            Ok(first == two && second == two)
        }
    }
}

/// Left side of the quantum identity whose value is `-q^k + 2 - q^-k`.
pub fn crazy_lhs<C: Coeff>(k: i64) -> C {
    let b1 = qbrace::<C>(1);
    let b1_sq = b1.clone() * &b1;
    let mut total = C::zero();
    let mut power = C::one();
    for j in 1..=k {
        power = power * &b1_sq;
        let mut inner = -(BigInt::from(k) * binom(k + j - 1, 2 * j - 1));
        for l in 1..=(k - j + 1) {
            inner += BigInt::from((k - l) * l) * binom(k + j - l - 2, 2 * j - 3);
        }
        total = total + power.clone() * C::from_bigint(&inner);
    }
    total
}

/// Checks the quantum identity exactly in `Q(s)` for `k >= 1`.
pub fn crazy_identity(k: i64) -> Result<bool> {
    if k < 1 {
        return Err(Error::Domain(format!("k must be positive, got {k}")));
    }
    let k32 = i32::try_from(k).map_err(|_| Error::Domain("k too large".into()))?;
    let rhs = Scalar::from_int(2) - q_pow::<Scalar>(k32) - q_pow::<Scalar>(-k32);
    Ok(crazy_lhs::<Scalar>(k) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pascal-triangle binomials as an independent oracle.
    fn pascal(n: usize) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigInt::one(); i + 1];
            for j in 1..i {
                row[j] = &prev[j - 1] + &prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binom_agrees_with_pascal() {
        let table = pascal(30);
        for n in 0..=30i64 {
            for k in -2..=32i64 {
                let expect =
                    if k < 0 || k > n { BigInt::zero() } else { table[n as usize][k as usize].clone() };
                assert_eq!(binom(n, k), expect);
            }
        }
    }

    #[test]
    fn binom_identity_examples() {
        assert!(binom_identity(0, 1, 1).unwrap());
        assert!(binom_identity(1, 0, 0).unwrap());
        // 9*1 + 4*2 + 1*3 = 20 = C(6,2) + C(5,1)
        assert!(binom_identity(2, 1, 2).unwrap());
        assert!(binom_identity(3, 1, 2).is_err());
    }

    #[test]
    fn coset_examples() {
        assert!(coset_identity(CosetPart::One, 3, 1).unwrap());
        assert!(coset_identity(CosetPart::Two, 1, 0).unwrap());
        assert!(coset_identity(CosetPart::Two, 4, 0).unwrap());
        assert!(coset_identity(CosetPart::One, 3, 3).is_err());
    }

    #[test]
    fn crazy_examples() {
        let b1 = qbrace::<Scalar>(1);
        assert_eq!(crazy_lhs::<Scalar>(1), -(b1.clone() * b1));
        for k in [1, 2, 5] {
            assert!(crazy_identity(k).unwrap(), "k = {k}");
        }
        assert!(crazy_identity(0).is_err());
    }
}
