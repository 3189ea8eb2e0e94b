//! Symmetric functions truncated at a total degree `N`, in the Schur or
//! power-sum basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::display::{term_string, write_sum};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{q_pow, Coeff};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Schur,
    #[serde(rename = "powersum")]
    PowerSum,
}

fn beta_set(lambda: &Partition, beads: usize) -> BTreeSet<usize> {
    (0..beads)
        .map(|i| lambda.parts().get(i).copied().unwrap_or(0) + beads - 1 - i)
        .collect()
}

fn from_beta(beads: &BTreeSet<usize>) -> Partition {
    let parts = beads.iter().rev().enumerate().map(|(i, &b)| b + i + 1 - beads.len()).filter(|&p| p > 0);
    Partition::new(parts.collect()).expect("bead positions give a partition")
}

fn strip_sign(beads: &BTreeSet<usize>, lo: usize, hi: usize) -> i64 {
    if beads.range(lo + 1..hi).count().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Partitions `mu` with `mu / lambda` a border strip of size `k`, with sign `(-1)^height`.
pub fn add_border_strips(lambda: &Partition, k: usize) -> Vec<(Partition, i64)> {
    if k == 0 {
        return Vec::new();
    }
    let beads = beta_set(lambda, lambda.len() + k);
    let mut out = Vec::new();
    for &b in &beads {
        if !beads.contains(&(b + k)) {
            let sign = strip_sign(&beads, b, b + k);
            let mut moved = beads.clone();
            moved.remove(&b);
            moved.insert(b + k);
            out.push((from_beta(&moved), sign));
        }
    }
    out
}

/// Partitions `mu` with `lambda / mu` a border strip of size `k`, with sign `(-1)^height`.
pub fn remove_border_strips(lambda: &Partition, k: usize) -> Vec<(Partition, i64)> {
    if k == 0 {
        return Vec::new();
    }
    let beads = beta_set(lambda, lambda.len());
    let mut out = Vec::new();
    for &b in &beads {
        if b >= k && !beads.contains(&(b - k)) {
            let sign = strip_sign(&beads, b - k, b);
            let mut moved = beads.clone();
            moved.remove(&b);
            moved.insert(b - k);
            out.push((from_beta(&moved), sign));
        }
    }
    out
}

static CHARACTERS: LazyLock<RwLock<HashMap<(Partition, Partition), i64>>> = LazyLock::new(Default::default);

/// The symmetric group character `chi^lambda` at cycle type `mu`, by strip removal.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = CHARACTERS.read().unwrap().get(&key) {
        return v;
    }
    let rest = Partition::new(mu.parts()[1..].to_vec()).expect("tail of a partition");
    let v = remove_border_strips(lambda, mu.parts()[0])
        .iter()
        .map(|(nu, sign)| sign * character(nu, &rest))
        .sum();
    CHARACTERS.write().unwrap().insert(key, v);
    v
}

/// `sum_{y in lambda} q^{ell c(y)}` with content `c = col - row`.
pub fn content_sum<C: Coeff>(lambda: &Partition, ell: i32) -> C {
    lambda
        .boxes()
        .fold(C::zero(), |acc, (i, j)| acc + q_pow::<C>(ell * (j as i32 - i as i32)))
}

/// An element of `Sym` truncated to degrees `<= N`.
#[derive(Clone, PartialEq)]
pub struct SymElem<C> {
    truncation: usize,
    basis: Basis,
    terms: BTreeMap<Partition, C>,
}

impl<C: Coeff> SymElem<C> {
    pub fn zero(truncation: usize, basis: Basis) -> Self {
        Self { truncation, basis, terms: BTreeMap::new() }
    }

    pub fn one(truncation: usize) -> Self {
        Self::schur(truncation, Partition::empty())
    }

    pub fn schur(truncation: usize, lambda: Partition) -> Self {
        Self::zero(truncation, Basis::Schur).with_term(lambda, C::one())
    }

    pub fn powersum(truncation: usize, lambda: Partition) -> Self {
        Self::zero(truncation, Basis::PowerSum).with_term(lambda, C::one())
    }

    fn with_term(mut self, lambda: Partition, c: C) -> Self {
        self.add_term(lambda, c);
        self
    }

    /// Adds `c` times a basis element; degrees above the truncation are dropped.
    pub fn add_term(&mut self, lambda: Partition, c: C) {
        if c.is_zero() || lambda.size() > self.truncation {
            return;
        }
        let e = self.terms.entry(lambda);
        match e {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> C {
        self.terms.get(lambda).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.truncation, self.basis);
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v.clone() * c);
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        let mut out = Self::zero(self.truncation, self.basis);
        for (l, v) in self.terms.iter().filter(|(l, _)| l.size() == d) {
            out.add_term(l.clone(), v.clone());
        }
        out
    }

    fn checked_same(&self, other: &Self) -> Result<()> {
        if self.truncation != other.truncation {
            return Err(Error::Domain(format!(
                "truncations differ: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.checked_same(other)?;
        let mut out = self.clone();
        for (l, v) in other.to_basis(self.basis).terms {
            out.add_term(l, v);
        }
        Ok(out)
    }

    /// Product, computed in the power-sum basis and returned in the basis of `self`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.checked_same(other)?;
        let a = self.to_basis(Basis::PowerSum);
        let b = other.to_basis(Basis::PowerSum);
        let mut out = Self::zero(self.truncation, Basis::PowerSum);
        for (l, x) in &a.terms {
            for (m, y) in &b.terms {
                if l.size() + m.size() <= self.truncation {
                    let parts = [l.parts(), m.parts()].concat();
                    out.add_term(Partition::from_unsorted(parts), x.clone() * y);
                }
            }
        }
        Ok(out.to_basis(self.basis))
    }

    /// The same element in the `target` basis.
    ///
    /// Power sums go to Schur functions by iterated Murnaghan-Nakayama; the way
    /// back uses `s_lambda = sum_mu chi^lambda(mu) / z_mu p_mu`.
    pub fn to_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(self.truncation, target);
        match target {
            Basis::Schur => {
                for (mu, c) in &self.terms {
                    let mut acc = Self::one(self.truncation);
                    for &k in mu.parts() {
                        acc = mul_powersum(k, &acc);
                    }
                    for (l, v) in acc.terms {
                        out.add_term(l, v * c);
                    }
                }
            }
            Basis::PowerSum => {
                for (lambda, c) in &self.terms {
                    for mu in Partition::all(lambda.size()) {
                        let chi = character(lambda, &mu);
                        if chi != 0 {
                            let z = C::from_bigint(&mu.z().into());
                            out.add_term(mu, C::from_i64(chi).div_exact(&z) * c);
                        }
                    }
                }
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for SymElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.terms.iter().map(|(l, c)| {
                let mon = if l.is_empty() {
                    String::new()
                } else {
                    match self.basis {
                        Basis::Schur => format!("s{l}"),
                        Basis::PowerSum => l.parts().iter().map(|k| format!("p{k}")).collect::<Vec<_>>().join("*"),
                    }
                };
                term_string(c, &mon)
            }),
        )
    }
}

impl<C: Coeff> fmt::Debug for SymElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym[N={}]({self})", self.truncation)
    }
}

impl<C: Coeff> Add for SymElem<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("truncations agree")
    }
}

impl<C: Coeff> Neg for SymElem<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Sub for SymElem<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Multiplication by `p_k`.
pub fn mul_powersum<C: Coeff>(k: usize, f: &SymElem<C>) -> SymElem<C> {
    let mut out = SymElem::zero(f.truncation, f.basis);
    for (lambda, c) in &f.terms {
        if lambda.size() + k > f.truncation {
            continue;
        }
        match f.basis {
            Basis::Schur => {
                for (mu, sign) in add_border_strips(lambda, k) {
                    out.add_term(mu, C::from_i64(sign) * c);
                }
            }
            Basis::PowerSum => {
                let parts = [lambda.parts(), &[k]].concat();
                out.add_term(Partition::from_unsorted(parts), c.clone());
            }
        }
    }
    out
}

/// `k d/dp_k`, the adjoint of multiplication by `p_k` for the pairing making
/// Schur functions orthonormal.
pub fn powersum_derivative<C: Coeff>(k: usize, f: &SymElem<C>) -> SymElem<C> {
    let mut out = SymElem::zero(f.truncation, f.basis);
    for (lambda, c) in &f.terms {
        match f.basis {
            Basis::Schur => {
                for (mu, sign) in remove_border_strips(lambda, k) {
                    out.add_term(mu, C::from_i64(sign) * c);
                }
            }
            Basis::PowerSum => {
                let mult = lambda.parts().iter().filter(|&&p| p == k).count();
                if mult > 0 {
                    let mut parts = lambda.parts().to_vec();
                    let pos = parts.iter().position(|&p| p == k).unwrap();
                    parts.remove(pos);
                    let mu = Partition::new(parts).expect("removing a part");
                    out.add_term(mu, C::from_i64((k * mult) as i64) * c);
                }
            }
        }
    }
    out
}

pub fn basis_change<C: Coeff>(f: &SymElem<C>, target: Basis) -> SymElem<C> {
    f.to_basis(target)
}

/// Expands `exp(sum_{n<=N} p_n u^n / n)` through `u^N` and compares each
/// coefficient with `h_n = s_(n)`.
pub fn newton_series_check<C: Coeff>(n_max: usize) -> Result<bool> {
    if n_max == 0 {
        return Err(Error::Domain("newton_series_check needs N >= 1".into()));
    }
    // a series in u is a vector of SymElem coefficients, index = u-degree
    type Series<C> = Vec<SymElem<C>>;
    let zero = || SymElem::<C>::zero(n_max, Basis::PowerSum);
    let a: Series<C> = (0..=n_max)
        .map(|n| match n {
            0 => zero(),
            _ => SymElem::powersum(n_max, Partition::new(vec![n]).unwrap())
                .scale(&C::from_i64(n as i64).inv().expect("nonzero")),
        })
        .collect();
    let series_mul = |x: &Series<C>, y: &Series<C>| -> Result<Series<C>> {
        let mut out: Series<C> = (0..=n_max).map(|_| zero()).collect();
        for i in 0..=n_max {
            for j in 0..=n_max - i {
                if !x[i].is_zero() && !y[j].is_zero() {
                    out[i + j] = out[i + j].checked_add(&x[i].checked_mul(&y[j])?)?;
                }
            }
        }
        Ok(out)
    };
    let mut total: Series<C> = (0..=n_max).map(|_| zero()).collect();
    total[0] = SymElem::one(n_max).to_basis(Basis::PowerSum);
    let mut power = total.clone();
    let mut factorial = C::one();
    for m in 1..=n_max {
        power = series_mul(&power, &a)?;
        factorial = factorial * C::from_i64(m as i64);
        let inv = factorial.inv().expect("nonzero");
        for d in 0..=n_max {
            total[d] = total[d].checked_add(&power[d].scale(&inv))?;
        }
    }
    Ok((0..=n_max).all(|n| {
        let row = if n == 0 { vec![] } else { vec![n] };
        let h = SymElem::<C>::schur(n_max, Partition::new(row).expect("one row"));
        total[n].to_basis(Basis::Schur) == h
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use num_traits::{One, Zero};

    type S = SymElem<Scalar>;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }
    fn s(n: usize, p: &[usize]) -> S {
        S::schur(n, part(p))
    }

    #[test]
    fn murnaghan_nakayama_examples() {
        assert_eq!(mul_powersum(1, &S::one(4)), s(4, &[1]));
        assert_eq!(mul_powersum(2, &s(4, &[1])), s(4, &[3]) - s(4, &[1, 1, 1]));
        // (2,1)/(1) is disconnected and must not appear
        let strips: Vec<_> = add_border_strips(&part(&[1]), 2).into_iter().map(|(p, _)| p).collect();
        assert!(!strips.contains(&part(&[2, 1])));
        assert_eq!(mul_powersum(2, &s(4, &[2])), s(4, &[4]) + s(4, &[2, 2]) - s(4, &[2, 1, 1]));
        // truncation drops degree 5
        assert!(mul_powersum(2, &s(4, &[3])).is_zero());
    }

    #[test]
    fn derivative_examples() {
        let p2 = S::powersum(4, part(&[2]));
        assert_eq!(powersum_derivative(2, &p2), S::powersum(4, Partition::empty()).scale(&Scalar::from_int(2)));
        assert_eq!(powersum_derivative(2, &p2.to_basis(Basis::Schur)), S::one(4).scale(&Scalar::from_int(2)));
        assert_eq!(powersum_derivative(1, &s(4, &[1])), S::one(4));
        assert_eq!(powersum_derivative(2, &s(4, &[3])), s(4, &[1]));
        assert!(powersum_derivative(3, &S::one(4)).is_zero());
    }

    #[test]
    fn content_sum_examples() {
        let q = Scalar::q_power(1);
        assert!(content_sum::<Scalar>(&Partition::empty(), 1).is_zero());
        assert_eq!(content_sum::<Scalar>(&part(&[2, 1]), 1), Scalar::one() + q.clone() + Scalar::q_power(-1));
        assert_eq!(content_sum::<Scalar>(&part(&[2]), 2), Scalar::one() + q.clone() * q);
    }

    #[test]
    fn basis_change_examples() {
        assert_eq!(S::powersum(3, part(&[1])).to_basis(Basis::Schur), s(3, &[1]));
        assert_eq!(S::powersum(3, part(&[2])).to_basis(Basis::Schur), s(3, &[2]) - s(3, &[1, 1]));
        let h2 = s(3, &[2]).to_basis(Basis::PowerSum);
        let half = Scalar::from_int(1) / Scalar::from_int(2);
        assert_eq!(h2, (S::powersum(3, part(&[2])) + S::powersum(3, part(&[1, 1]))).scale(&half));
    }

    #[test]
    fn round_trip_all_partitions() {
        for n in 0..=6 {
            for lambda in Partition::all(n) {
                let f = s(6, lambda.parts());
                assert_eq!(f.to_basis(Basis::PowerSum).to_basis(Basis::Schur), f);
                let p = S::powersum(6, lambda.clone());
                assert_eq!(p.to_basis(Basis::Schur).to_basis(Basis::PowerSum), p);
            }
        }
    }

    #[test]
    fn character_values() {
        // chi^(2,1) at (1,1,1), (2,1), (3)
        assert_eq!(character(&part(&[2, 1]), &part(&[1, 1, 1])), 2);
        assert_eq!(character(&part(&[2, 1]), &part(&[2, 1])), 0);
        assert_eq!(character(&part(&[2, 1]), &part(&[3])), -1);
        // column orthogonality at n = 5
        for mu in Partition::all(5) {
            for nu in Partition::all(5) {
                let sum: i64 = Partition::all(5).iter().map(|l| character(l, &mu) * character(l, &nu)).sum();
                assert_eq!(sum as u128, if mu == nu { mu.z() } else { 0 });
            }
        }
    }

    #[test]
    fn display_forms() {
        let f = s(4, &[2, 1]).scale(&Scalar::from_int(-2)) + S::one(4);
        assert_eq!(f.to_string(), "1 - 2*s[2,1]");
        assert_eq!(S::powersum(4, part(&[2, 1])).to_string(), "p2*p1");
    }

    #[test]
    fn newton_series() {
        for n in [1, 3, 6] {
            assert!(newton_series_check::<Scalar>(n).unwrap());
        }
        assert!(newton_series_check::<Scalar>(0).is_err());
    }

    fn schur_matrix(op: impl Fn(&S) -> S, n: usize, from: usize, to: usize) -> Vec<Vec<Scalar>> {
        let cols = Partition::all(from);
        Partition::all(to)
            .iter()
            .map(|row| cols.iter().map(|c| op(&s(n, c.parts())).coeff(row)).collect())
            .collect()
    }

    #[test]
    fn derivative_is_transpose_of_multiplication() {
        for k in 1..=4 {
            for d in 0..=8 - k {
                let m = schur_matrix(|f| mul_powersum(k, f), 8, d, d + k);
                let dm = schur_matrix(|f| powersum_derivative(k, f), 8, d + k, d);
                for (i, row) in m.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        assert_eq!(*v, dm[j][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn powersum_operators_commute_and_derivatives_are_canonical() {
        let n = 8;
        for d in 0..=n {
            for lambda in Partition::all(d) {
                let f = s(n, lambda.parts());
                for k in 1..=4 {
                    for m in 1..=4 {
                        if d + k + m <= n {
                            assert_eq!(mul_powersum(k, &mul_powersum(m, &f)), mul_powersum(m, &mul_powersum(k, &f)));
                        }
                        // [k d/dp_k, p_m] = k delta_km on blocks that stay inside degree N
                        if d + m <= n {
                            let lhs = powersum_derivative(k, &mul_powersum(m, &f))
                                - mul_powersum(m, &powersum_derivative(k, &f));
                            let rhs = if k == m { f.scale(&Scalar::from_int(k as i64)) } else { S::zero(n, Basis::Schur) };
                            assert_eq!(lhs, rhs, "{lambda} k={k} m={m}");
                        }
                    }
                }
            }
        }
    }

    // Brute-force oracle: Schur polynomials in six variables from semistandard
    // tableaux, and Schur coefficients read off through the Vandermonde.
    const VARS: usize = 6;
    type Poly = HashMap<[u8; VARS], i64>;

    fn schur_poly(lambda: &Partition) -> Poly {
        let boxes: Vec<(usize, usize)> = lambda.boxes().collect();
        let mut filling: HashMap<(usize, usize), u8> = HashMap::new();
        let mut out = Poly::new();
        fn rec(k: usize, boxes: &[(usize, usize)], filling: &mut HashMap<(usize, usize), u8>, out: &mut Poly) {
            if k == boxes.len() {
                let mut exps = [0u8; VARS];
                for v in filling.values() {
                    exps[*v as usize] += 1;
                }
                *out.entry(exps).or_default() += 1;
                return;
            }
            let (i, j) = boxes[k];
            let lo_left = if j > 1 { filling[&(i, j - 1)] } else { 0 };
            let lo_up = if i > 1 { filling[&(i - 1, j)] + 1 } else { 0 };
            for v in lo_left.max(lo_up)..VARS as u8 {
                filling.insert((i, j), v);
                rec(k + 1, boxes, filling, out);
            }
            filling.remove(&(i, j));
        }
        rec(0, &boxes, &mut filling, &mut out);
        out
    }

    fn times_powersum(f: &Poly, k: usize) -> Poly {
        let mut out = Poly::new();
        for (e, c) in f {
            for v in 0..VARS {
                let mut e2 = *e;
                e2[v] += k as u8;
                *out.entry(e2).or_default() += c;
            }
        }
        out
    }

    fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
        if n == 0 {
            return vec![(vec![], 1)];
        }
        let mut out = Vec::new();
        for (p, sign) in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                let flips = (p.len() - pos) as i64;
                out.push((q, if flips % 2 == 0 { sign } else { -sign }));
            }
        }
        out
    }

    fn schur_coefficient(f: &Poly, mu: &Partition, perms: &[(Vec<usize>, i64)]) -> i64 {
        let delta: Vec<i64> = (0..VARS).map(|i| (VARS - 1 - i) as i64).collect();
        perms
            .iter()
            .filter_map(|(sigma, sign)| {
                let mut e = [0u8; VARS];
                for i in 0..VARS {
                    let v = mu.parts().get(i).copied().unwrap_or(0) as i64 + delta[i] - delta[sigma[i]];
                    if v < 0 {
                        return None;
                    }
                    e[i] = v as u8;
                }
                f.get(&e).map(|c| sign * c)
            })
            .sum()
    }

    #[test]
    fn murnaghan_nakayama_matches_monomial_oracle() {
        let perms = permutations(VARS);
        for n in 0..=5 {
            for lambda in Partition::all(n) {
                let poly = schur_poly(&lambda);
                for k in 1..=4 {
                    let oracle = times_powersum(&poly, k);
                    let computed = mul_powersum(k, &s(9, lambda.parts()));
                    for mu in Partition::all(n + k).into_iter().filter(|m| m.len() <= VARS) {
                        let expect = schur_coefficient(&oracle, &mu, &perms);
                        assert_eq!(computed.coeff(&mu), Scalar::from_int(expect), "p{k} s{lambda} at {mu}");
                    }
                }
            }
        }
    }
}
