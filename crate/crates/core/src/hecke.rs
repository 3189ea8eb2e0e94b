//! The finite Hecke algebra `H_n` in the `T_w` basis.
//!
//! Quadratic relation `t_i^2 = (q-1) t_i + q`. Also Jucys-Murphy elements,
//! Young symmetrizers `z_lambda`, the central element `x` and the idempotents
//! `e(n)`, `e'(n)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};



use crate::display::{t_word, term_string, write_sum};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Perm;
use crate::scalar::{q_pow, qfact, qfact_inv, qint, Coeff, Laurent};

type Constants = Arc<[(Perm, Laurent)]>;

static STRUCTURE: LazyLock<RwLock<HashMap<(Perm, Perm), Constants>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `T_u T_v` in the `T_w` basis with integer Laurent coefficients in `s`.
/// Cached globally; the constants do not depend on the coefficient field.
pub fn structure_constants(u: &Perm, v: &Perm) -> Constants {
    let key = (u.clone(), v.clone());
    if let Some(c) = STRUCTURE.read().unwrap().get(&key) {
        return c.clone();
    }
    let mut cur: BTreeMap<Perm, Laurent> = BTreeMap::new();
    cur.insert(u.clone(), Laurent::one());
    let q = Laurent::s_pow(2);
    let q_minus_1 = &q - &Laurent::one();
    for i in v.reduced_word() {
        let mut next: BTreeMap<Perm, Laurent> = BTreeMap::new();
        for (w, c) in cur {
            let ws = w.mul_simple_right(i);
            if w.has_right_descent(i) {
                accumulate(&mut next, w, &c * &q_minus_1);
                accumulate(&mut next, ws, &c * &q);
            } else {
                accumulate(&mut next, ws, c);
            }
        }
        cur = next;
    }
    let out: Constants = cur.into_iter().collect::<Vec<_>>().into();
    STRUCTURE.write().unwrap().insert(key, out.clone());
    out
}

fn accumulate(map: &mut BTreeMap<Perm, Laurent>, w: Perm, c: Laurent) {
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                o.insert(sum);
            }
        }
    }
}

/// An element of `H_n` over the coefficient field `C`.
#[derive(Clone, PartialEq)]
pub struct HeckeElem<C> {
    n: usize,
    terms: BTreeMap<Perm, C>,
}

impl<C: Coeff> HeckeElem<C> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(Perm::identity(n))
    }

    pub fn basis(w: Perm) -> Self {
        Self::term(w, C::one())
    }

    pub fn term(w: Perm, c: C) -> Self {
        let mut e = Self::zero(w.rank());
        e.add_term(w, c);
        e
    }

    pub fn scalar(n: usize, c: C) -> Self {
        Self::term(Perm::identity(n), c)
    }

    /// The generator `t_i`, `1 <= i < n`.
    pub fn gen(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i as i64, rank: n });
        }
        Ok(Self::basis(Perm::simple(n, i)))
    }

    /// `t_{i_1} ... t_{i_k}`
    pub fn word(n: usize, word: &[usize]) -> Result<Self> {
        let mut e = Self::one(n);
        for &i in word {
            e = e.checked_mul(&Self::gen(n, i)?)?;
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Perm) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, w: Perm, c: C) {
        debug_assert_eq!(w.rank(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * c)).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a.clone() * b;
                for (w, c) in structure_constants(u, v).iter() {
                    out.add_term(w.clone(), ab.clone() * C::from_laurent(c));
                }
            }
        }
        Ok(out)
    }

    /// The anti-involution `T_w -> T_{w^-1}`.
    pub fn star(&self) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect() }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.checked_mul(other)? - other.checked_mul(self)?)
    }

    /// If the element is `c * 1`, returns `c`.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Perm::identity(self.n)).cloned(),
            _ => None,
        }
    }

    /// Finds `c` with `self = c * other`, if any.
    pub fn ratio_to(&self, other: &Self) -> Option<C> {
        let (w, b) = other.terms.iter().next()?;
        let c = self.coeff(w).div_exact(b);
        (other.scale(&c) == *self).then_some(c)
    }
}

impl<C: Coeff> fmt::Display for HeckeElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(w, c)| term_string(c, &t_word(&w.reduced_word()))))
    }
}

impl<C: Coeff> fmt::Debug for HeckeElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}({self})", self.n)
    }
}

impl<C: Coeff> Add for HeckeElem<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("rank mismatch")
    }
}

impl<C: Coeff> Sub for HeckeElem<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_add(&-rhs).expect("rank mismatch")
    }
}

impl<C: Coeff> Neg for HeckeElem<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { n: self.n, terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

impl<C: Coeff> Mul for &HeckeElem<C> {
    type Output = HeckeElem<C>;
    fn mul(self, rhs: Self) -> HeckeElem<C> {
        self.checked_mul(rhs).expect("rank mismatch")
    }
}

impl<C: Coeff> Mul for HeckeElem<C> {
    type Output = HeckeElem<C>;
    fn mul(self, rhs: Self) -> HeckeElem<C> {
        &self * &rhs
    }
}

/// Jucys-Murphy element `L_m = sum_{i<m} q^{i-m+1} t_i ... t_{m-1} ... t_i`, with `L_1 = 0`.
pub fn jm<C: Coeff>(n: usize, m: usize) -> Result<HeckeElem<C>> {
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange { index: m as i64, rank: n });
    }
    let mut out = HeckeElem::zero(n);
    for i in 1..m {
        let word: Vec<usize> = (i..m).chain((i..m - 1).rev()).collect();
        out = out + HeckeElem::word(n, &word)?.scale(&q_pow::<C>(i as i32 - m as i32 + 1));
    }
    Ok(out)
}

/// Entry of each box in the row reading tableau `t^lambda` and the column
/// reading tableau `t_lambda`, keyed by `(row, col)`.
type Filling = HashMap<(usize, usize), usize>;

fn tableaux(lambda: &Partition) -> (Filling, Filling) {
    let rows: HashMap<_, _> = lambda.boxes().enumerate().map(|(k, b)| (b, k + 1)).collect();
    let conj = lambda.conjugate();
    let cols: HashMap<_, _> = conj.boxes().enumerate().map(|(k, (i, j))| ((j, i), k + 1)).collect();
    (rows, cols)
}

/// The permutation `w_lambda` relating the row reading tableau `t^lambda` and
/// the column reading tableau `t_lambda`: it sends the entry of `t_lambda` in
/// each box to the entry of `t^lambda` in the same box.
pub fn w_lambda(lambda: &Partition) -> Perm {
    let (rows, cols) = tableaux(lambda);
    let mut one_line = vec![0; lambda.size()];
    for (b, &k) in &cols {
        one_line[k - 1] = rows[b];
    }
    Perm::from_one_line(&one_line).expect("tableau entries form a permutation")
}

/// `x_lambda = sum_{w in S_lambda} t_w`
pub fn row_symmetrizer<C: Coeff>(lambda: &Partition) -> HeckeElem<C> {
    let mut out = HeckeElem::zero(lambda.size());
    for w in Perm::young_subgroup(lambda.parts()) {
        out.add_term(w, C::one());
    }
    out
}

/// `y_lambda = sum_{w in S_lambda} (-q)^{-l(w)} t_w`
pub fn column_antisymmetrizer<C: Coeff>(lambda: &Partition) -> HeckeElem<C> {
    let mut out = HeckeElem::zero(lambda.size());
    for w in Perm::young_subgroup(lambda.parts()) {
        let l = w.length() as i32;
        let sign = if l % 2 == 0 { C::one() } else { -C::one() };
        out.add_term(w, sign * q_pow::<C>(-l));
    }
    out
}

/// `z_lambda = x_lambda t_{w_lambda} y_{lambda'}`
pub fn young_symmetrizer<C: Coeff>(lambda: &Partition) -> HeckeElem<C> {
    let x = row_symmetrizer::<C>(lambda);
    let y = column_antisymmetrizer::<C>(&lambda.conjugate());
    &(&x * &HeckeElem::basis(w_lambda(lambda))) * &y
}

/// `q [c]_q` where `c` is the content of the box labelled `m` in `t_lambda`.
pub fn jm_eigenvalue<C: Coeff>(lambda: &Partition, m: usize) -> Result<C> {
    let n = lambda.size();
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange { index: m as i64, rank: n });
    }
    let (_, cols) = tableaux(lambda);
    let (&(i, j), _) = cols.iter().find(|(_, &k)| k == m).unwrap();
    Ok(C::q() * qint::<C>(j as i32 - i as i32))
}

/// `x = 1 + sum_{i=1}^{n} q^{i-(n+1)} t_i ... t_n t_n ... t_i` in `H_{n+1}`.
pub fn central_element_x<C: Coeff>(n: usize) -> HeckeElem<C> {
    let mut out = HeckeElem::one(n + 1);
    for i in 1..=n {
        let word: Vec<usize> = (i..=n).chain((i..=n).rev()).collect();
        let term = HeckeElem::word(n + 1, &word).expect("indices in range");
        out = out + term.scale(&q_pow::<C>(i as i32 - (n as i32 + 1)));
    }
    out
}

/// The same element written as `1 + n + ((q-1)/q) sum_{i=1}^{n+1} L_i`.
pub fn central_element_x_jm<C: Coeff>(n: usize) -> HeckeElem<C> {
    let mut sum = HeckeElem::zero(n + 1);
    for i in 1..=n + 1 {
        sum = sum + jm::<C>(n + 1, i).expect("indices in range");
    }
    let factor = (C::q() - C::one()) * q_pow::<C>(-1);
    HeckeElem::scalar(n + 1, C::from_i64(1 + n as i64)) + sum.scale(&factor)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdempotentKind {
    /// `e(n) = sum t_w / [n]_q!`
    Row,
    /// `e'(n) = sum (-q)^{-l(w)} t_w / [n]_{q^-1}!`
    Column,
}

pub fn hecke_idempotent<C: Coeff>(n: usize, kind: IdempotentKind) -> Result<HeckeElem<C>> {
    if n == 0 {
        return Err(Error::Domain("idempotent needs n >= 1".into()));
    }
    let whole = Partition::new(vec![n]).expect("single part");
    Ok(match kind {
        IdempotentKind::Row => {
            let f = qfact::<C>(n as i64)?;
            row_symmetrizer::<C>(&whole).scale(&f.inv().expect("generic q"))
        }
        IdempotentKind::Column => {
            let f = qfact_inv::<C>(n as i64)?;
            column_antisymmetrizer::<C>(&whole).scale(&f.inv().expect("generic q"))
        }
    })
}
