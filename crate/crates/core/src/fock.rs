//! The Fock representation on truncated symmetric functions, as exact
//! Schur-basis block matrices.
//!
//! A block is stored for source degree `d` when its target `d + shift` lies in
//! `[0, N]` and its value is known exactly. Targets below zero are genuinely
//! zero. Targets above `N`, and blocks whose computation would have passed
//! through a degree above `N`, are unknown and simply absent.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hall::{bracket_value, det, BracketValue, LatticePoint};
use crate::hecke::{central_element_x, young_symmetrizer, HeckeElem};
use crate::partition::Partition;
use crate::scalar::{qbrace, Coeff};
use crate::symfunc::{add_border_strips, content_sum, remove_border_strips, Basis, SymElem};

/// A dense matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Block<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Block<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    fn add_at(&mut self, i: usize, j: usize, c: C) {
        let slot = &mut self.data[i * self.cols + j];
        *slot = slot.clone() + c;
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a.clone() * b);
                    }
                }
            }
        }
        out
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect() }
    }

    fn scale(&self, c: &C) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Schur basis of degree `d`, in the order of [`Partition::all`].
fn basis(d: usize) -> Vec<Partition> {
    Partition::all(d)
}

fn index(d: usize) -> HashMap<Partition, usize> {
    basis(d).into_iter().enumerate().map(|(i, p)| (p, i)).collect()
}

enum BlockState<'a, C> {
    Vanishes,
    Known(&'a Block<C>),
    Unknown,
}

/// A degree-homogeneous operator on `Sym` truncated at `N`.
#[derive(Clone, PartialEq)]
pub struct FockOperator<C> {
    truncation: usize,
    shift: i64,
    blocks: BTreeMap<usize, Block<C>>,
}

impl<C: Coeff> FockOperator<C> {
    fn target(&self, d: usize) -> i64 {
        d as i64 + self.shift
    }

    fn state(&self, d: usize) -> BlockState<'_, C> {
        if self.target(d) < 0 {
            BlockState::Vanishes
        } else {
            self.blocks.get(&d).map_or(BlockState::Unknown, BlockState::Known)
        }
    }

    fn from_fn(truncation: usize, shift: i64, mut f: impl FnMut(usize, usize) -> Block<C>) -> Self {
        let mut blocks = BTreeMap::new();
        for d in 0..=truncation {
            let t = d as i64 + shift;
            if (0..=truncation as i64).contains(&t) {
                blocks.insert(d, f(d, t as usize));
            }
        }
        Self { truncation, shift, blocks }
    }

    pub fn zero(truncation: usize, shift: i64) -> Self {
        Self::from_fn(truncation, shift, |d, t| Block::zeros(basis(t).len(), basis(d).len()))
    }

    pub fn scalar(truncation: usize, c: &C) -> Self {
        Self::from_fn(truncation, 0, |d, _| {
            let n = basis(d).len();
            let mut b = Block::zeros(n, n);
            for i in 0..n {
                b.add_at(i, i, c.clone());
            }
            b
        })
    }

    pub fn identity(truncation: usize) -> Self {
        Self::scalar(truncation, &C::one())
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Source degrees whose block is known (stored).
    pub fn known_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.keys().copied()
    }

    pub fn block(&self, d: usize) -> Option<&Block<C>> {
        self.blocks.get(&d)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.truncation != other.truncation {
            return Err(Error::Domain(format!(
                "truncations differ: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        self.compatible(other)?;
        if self.shift != other.shift {
            return Err(Error::Domain(format!("degree shifts differ: {} vs {}", self.shift, other.shift)));
        }
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(d, a)| other.blocks.get(d).map(|b| (*d, a.zip(b, &f))))
            .collect();
        Ok(Self { truncation: self.truncation, shift: self.shift, blocks })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.clone() + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.clone() - b)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            truncation: self.truncation,
            shift: self.shift,
            blocks: self.blocks.iter().map(|(d, b)| (*d, b.scale(c))).collect(),
        }
    }

    /// `self ∘ first`, known wherever every intermediate degree stays inside `[0, N]`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        self.compatible(first)?;
        let shift = self.shift + first.shift;
        let n = self.truncation;
        let mut blocks = BTreeMap::new();
        for d in 0..=n {
            let t = d as i64 + shift;
            if !(0..=n as i64).contains(&t) {
                continue;
            }
            let t = t as usize;
            let block = match first.state(d) {
                BlockState::Unknown => None,
                BlockState::Vanishes => Some(Block::zeros(basis(t).len(), basis(d).len())),
                BlockState::Known(a) => {
                    let mid = first.target(d) as usize;
                    match self.state(mid) {
                        BlockState::Known(b) => Some(b.mul(a)),
                        _ => None,
                    }
                }
            };
            if let Some(b) = block {
                blocks.insert(d, b);
            }
        }
        Ok(Self { truncation: n, shift, blocks })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.checked_sub(&other.compose(self)?)
    }

    /// Whether two operators agree on every block known to both, and how many blocks were compared.
    pub fn agrees_with(&self, other: &Self) -> (bool, usize) {
        if self.truncation != other.truncation || self.shift != other.shift {
            return (false, 0);
        }
        let mut count = 0;
        for (d, a) in &self.blocks {
            if let Some(b) = other.blocks.get(d) {
                count += 1;
                if a != b {
                    return (false, count);
                }
            }
        }
        (true, count)
    }

    /// Applies the operator to a Schur-basis element. Fails if a needed block is unknown.
    pub fn apply(&self, f: &SymElem<C>) -> Result<SymElem<C>> {
        if f.truncation() != self.truncation {
            return Err(Error::Domain("truncations differ".into()));
        }
        let f = f.to_basis(Basis::Schur);
        let mut out = SymElem::zero(self.truncation, Basis::Schur);
        for (lambda, c) in f.terms() {
            let d = lambda.size();
            match self.state(d) {
                BlockState::Vanishes => {}
                BlockState::Unknown => {
                    return Err(Error::Domain(format!("block at source degree {d} is unknown")));
                }
                BlockState::Known(b) => {
                    let j = index(d)[lambda];
                    let targets = basis(self.target(d) as usize);
                    for (i, mu) in targets.into_iter().enumerate() {
                        out.add_term(mu, b.get(i, j).clone() * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn export(&self) -> OperatorExport {
        OperatorExport {
            truncation: self.truncation,
            shift: self.shift,
            blocks: self
                .blocks
                .iter()
                .map(|(&d, b)| {
                    let t = self.target(d) as usize;
                    BlockExport {
                        source_degree: d,
                        rows: basis(t),
                        cols: basis(d),
                        entries: (0..b.rows).map(|i| (0..b.cols).map(|j| b.get(i, j).to_string()).collect()).collect(),
                    }
                })
                .collect(),
        }
    }
}

impl<C: Coeff> fmt::Debug for FockOperator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockOperator(N={}, shift={}, blocks={:?})", self.truncation, self.shift, self.blocks.keys())
    }
}

#[derive(Serialize, Debug)]
pub struct BlockExport {
    pub source_degree: usize,
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Serialize, Debug)]
pub struct OperatorExport {
    pub truncation: usize,
    pub shift: i64,
    pub blocks: Vec<BlockExport>,
}

/// `1/({1}^l {l}) + ({l}/{1}^l) sum_y q^{l c(y)}`
pub fn vertical_eigenvalue<C: Coeff>(lambda: &Partition, ell: i32) -> C {
    let b1 = qbrace::<C>(1);
    let mut b1l = C::one();
    for _ in 0..ell {
        b1l = b1l * &b1;
    }
    let bl = qbrace::<C>(ell);
    C::one().div_exact(&(b1l.clone() * &bl)) + bl.div_exact(&b1l) * content_sum::<C>(lambda, ell)
}

/// Operators for `w_{l,0}`, `w_{-l,0}` and `w_{0,l}`.
pub fn rho_generator<C: Coeff>(x: LatticePoint, truncation: usize) -> Result<FockOperator<C>> {
    let shape_err = || Error::Domain(format!("{x} is not of generator shape"));
    match (x.a, x.b) {
        (l, 0) if l != 0 => {
            let k = l.unsigned_abs() as usize;
            Ok(FockOperator::from_fn(truncation, l, |d, t| {
                let (src, tgt) = (basis(d), index(t));
                let mut b = Block::zeros(tgt.len(), src.len());
                for (j, lambda) in src.iter().enumerate() {
                    let moves = if l > 0 { add_border_strips(lambda, k) } else { remove_border_strips(lambda, k) };
                    for (mu, sign) in moves {
                        b.add_at(tgt[&mu], j, C::from_i64(sign));
                    }
                }
                b
            }))
        }
        (0, l) if l > 0 => Ok(FockOperator::from_fn(truncation, 0, |d, _| {
            let src = basis(d);
            let mut b = Block::zeros(src.len(), src.len());
            for (i, lambda) in src.iter().enumerate() {
                b.add_at(i, i, vertical_eigenvalue::<C>(lambda, l as i32));
            }
            b
        })),
        _ => Err(shape_err()),
    }
}

/// Result of comparing `[rho(w_x), rho(w_y)]` with `rho([w_x, w_y])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub holds: bool,
    pub blocks_compared: usize,
}

/// The representation at a fixed truncation, with a memo of built operators.
pub struct FockSpace<C> {
    truncation: usize,
    memo: RwLock<HashMap<LatticePoint, Arc<FockOperator<C>>>>,
}

impl<C: Coeff + Send + Sync> FockSpace<C> {
    pub fn new(truncation: usize) -> Self {
        Self { truncation, memo: RwLock::new(HashMap::new()) }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `rho(w_{a,b})`; off the axes, `-[rho(w_{a,0}), rho(w_{0,b})] / {ab}`.
    pub fn rho(&self, x: LatticePoint) -> Result<Arc<FockOperator<C>>> {
        let x = LatticePoint::new(x.a, x.b)?;
        if let Some(op) = self.memo.read().unwrap().get(&x) {
            return Ok(op.clone());
        }
        let op = if x.a == 0 || x.b == 0 {
            rho_generator(x, self.truncation)?
        } else {
            self.rho_via(LatticePoint { a: x.a, b: 0 }, LatticePoint { a: 0, b: x.b })?
        };
        let op = Arc::new(op);
        // concurrent builders of the same point write equal values
        self.memo.write().unwrap().entry(x).or_insert_with(|| op.clone());
        Ok(op)
    }

    /// `-[rho(w_u), rho(w_v)] / {det(u,v)}`, the operator the decomposition `u + v` assigns.
    pub fn rho_via(&self, u: LatticePoint, v: LatticePoint) -> Result<FockOperator<C>> {
        let d = det(u, v);
        if d == 0 {
            return Err(Error::Domain(format!("{u} and {v} are parallel")));
        }
        let c = self.rho(u)?.commutator(self.rho(v)?.as_ref())?;
        Ok(c.scale(&(-qbrace::<C>(d as i32)).inv().expect("nonzero bracket")))
    }

    /// The operator of the bracket `[w_x, w_y]`.
    pub fn rho_bracket(&self, x: LatticePoint, y: LatticePoint) -> Result<FockOperator<C>> {
        Ok(match bracket_value::<C>(x, y) {
            BracketValue::Zero => FockOperator::zero(self.truncation, x.a + y.a),
            BracketValue::Scalar(c) => FockOperator::scalar(self.truncation, &c),
            BracketValue::Gen(c, z) => self.rho(z)?.scale(&c),
        })
    }

    pub fn relation_outcome(&self, x: LatticePoint, y: LatticePoint) -> Result<RelationOutcome> {
        let lhs = self.rho(x)?.commutator(self.rho(y)?.as_ref())?;
        let rhs = self.rho_bracket(x, y)?;
        let (holds, blocks_compared) = lhs.agrees_with(&rhs);
        Ok(RelationOutcome { holds, blocks_compared })
    }

    /// `[rho(w_x), rho(w_y)] = rho([w_x, w_y])` on every block where both sides are known.
    pub fn relation_check(&self, x: LatticePoint, y: LatticePoint) -> Result<bool> {
        Ok(self.relation_outcome(x, y)?.holds)
    }

    /// Every pair of points with `|a| <= max_a`, `b <= max_b`, checked in parallel.
    pub fn relation_sweep(&self, max_a: i64, max_b: i64) -> Vec<(LatticePoint, LatticePoint, Result<RelationOutcome>)> {
        let pts = crate::hall::generator_points(max_a, max_b);
        let pairs: Vec<_> = pts.iter().flat_map(|&x| pts.iter().map(move |&y| (x, y))).collect();
        pairs.into_par_iter().map(|(x, y)| (x, y, self.relation_outcome(x, y))).collect()
    }

    /// All `u + v = x` with `|a_u|, |a_v| <= bound`, `det(u,v) != 0`.
    pub fn decompositions(x: LatticePoint, bound: i64) -> Vec<(LatticePoint, LatticePoint)> {
        let mut out = Vec::new();
        for a in -bound..=bound {
            for b in 0..=x.b {
                let (Ok(u), Ok(v)) = (LatticePoint::new(a, b), LatticePoint::new(x.a - a, x.b - b)) else {
                    continue;
                };
                if v.a.abs() <= bound && det(u, v) != 0 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Whether every decomposition of `x` reproduces `rho(w_x)` on common known blocks.
    pub fn decomposition_independent(&self, x: LatticePoint, bound: i64) -> Result<bool> {
        let canonical = self.rho(x)?;
        let decs = Self::decompositions(x, bound);
        let results: Result<Vec<bool>> = decs
            .par_iter()
            .map(|&(u, v)| Ok(self.rho_via(u, v)?.agrees_with(&canonical).0))
            .collect();
        Ok(results?.into_iter().all(|b| b))
    }

    /// `rho(w_{-l,0}) s_empty = 0`
    pub fn vacuum_annihilation(&self, ell: i64) -> Result<bool> {
        if ell < 1 {
            return Err(Error::Domain("vacuum_annihilation needs l >= 1".into()));
        }
        let op = self.rho(LatticePoint { a: -ell, b: 0 })?;
        Ok(op.apply(&SymElem::one(self.truncation))?.is_zero())
    }
}

/// The scalar by which `(1/{1})(1/{1}^2 + x)` acts on `z_lambda^*` in `H_{|lambda|}`.
pub fn jm_scalar<C: Coeff>(lambda: &Partition) -> Result<C> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::Domain("jm_cross_check needs a nonempty partition".into()));
    }
    let b1 = qbrace::<C>(1);
    let shift = C::one().div_exact(&(b1.clone() * &b1));
    let element = (HeckeElem::scalar(n, shift) + central_element_x::<C>(n - 1)).scale(&C::one().div_exact(&b1));
    let z = young_symmetrizer::<C>(lambda).star();
    (&element * &z)
        .ratio_to(&z)
        .ok_or_else(|| Error::Domain(format!("element does not act on z*_{lambda} by a scalar")))
}

/// `(1/{1})(1/{1}^2 + sum_y q^{c(y)})`
pub fn content_formula<C: Coeff>(lambda: &Partition) -> C {
    let b1 = qbrace::<C>(1);
    (C::one().div_exact(&(b1.clone() * &b1)) + content_sum::<C>(lambda, 1)).div_exact(&b1)
}

/// The Hecke route and the content-sum route give the same scalar.
pub fn jm_cross_check<C: Coeff>(lambda: &Partition) -> Result<bool> {
    Ok(jm_scalar::<C>(lambda)? == content_formula::<C>(lambda))
}

/// `jm_scalar / vertical_eigenvalue(lambda, 1)`.
pub fn jm_fock_ratio<C: Coeff>(lambda: &Partition) -> Result<C> {
    let ev = vertical_eigenvalue::<C>(lambda, 1);
    Ok(jm_scalar::<C>(lambda)?.div_exact(&ev))
}
