//! Zeroth Hochschild homology of the graded pieces `AH_n^+` in degree `d`,
//! computed as the quotient by the commutator subspace.
//!
//! The commutator subspace is generated by `[t_i, m]` for degree-`d` basis
//! monomials `m` and `[x_j, m]` for degree-`(d-1)` ones: `[ab, c] = [a, bc] + [b, ca]`
//! reduces any commutator to commutators with a generator.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{w_element, AffineElem, Monomial};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalar::Coeff;

pub const DEFAULT_AMBIENT_CAP: usize = 5000;

type SparseRow<C> = BTreeMap<usize, C>;

/// Row echelon form with unit pivots. Each row is zero left of its pivot.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    rows: BTreeMap<usize, SparseRow<C>>,
}

impl<C: Coeff> Default for Echelon<C> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<C: Coeff> Echelon<C> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduces `v` to have zero entries in every pivot column.
    pub fn reduce(&self, mut v: SparseRow<C>) -> SparseRow<C> {
        for (&p, row) in &self.rows {
            let Some(c) = v.remove(&p) else { continue };
            for (&j, r) in row.range(p + 1..) {
                let delta = c.clone() * r;
                match v.get_mut(&j) {
                    Some(x) => {
                        let nx = x.clone() - delta;
                        if nx.is_zero() {
                            v.remove(&j);
                        } else {
                            *x = nx;
                        }
                    }
                    None => {
                        v.insert(j, -delta);
                    }
                }
            }
        }
        v
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseRow<C>) -> bool {
        let v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let row: SparseRow<C> = v.iter().map(|(&j, c)| (j, if j == p { C::one() } else { c.clone() * &inv })).collect();
        self.rows.insert(p, row);
        true
    }
}

/// The degree-`d` piece of `AH_n^+` together with its commutator subspace.
#[derive(Debug)]
pub struct GradedPiece<C> {
    n: usize,
    d: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon<C>,
    quotient: Vec<usize>,
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=d).rev() {
            cur.push(a);
            rec(n, d - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// All PBW monomials of rank `n` and degree `d`.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Monomial> {
    let perms = Perm::all(n);
    let mut out = Vec::new();
    for x in exponent_vectors(n, d) {
        for w in &perms {
            out.push(Monomial { x: x.clone(), w: w.clone() });
        }
    }
    out
}

fn binomial_usize(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `(number of degree-d monomials in n variables) * n!`
pub fn ambient_dimension(n: usize, d: u32) -> usize {
    let fact: usize = (1..=n).product();
    binomial_usize(d as usize + n - 1, n.saturating_sub(1)) * fact
}

impl<C: Coeff> GradedPiece<C> {
    pub fn build(n: usize, d: u32, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        let ambient = ambient_dimension(n, d);
        if ambient > cap {
            return Err(Error::ResourceCap { dim: ambient, cap });
        }
        let basis = monomial_basis(n, d);
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let mut piece = Self { n, d, basis, index, echelon: Echelon::default(), quotient: Vec::new() };

        let mut gens: Vec<(AffineElem<C>, Vec<Monomial>)> = Vec::new();
        if n > 1 {
            let deg_d = piece.basis.clone();
            for i in 1..n {
                gens.push((AffineElem::t(n, i)?, deg_d.clone()));
            }
        }
        if d > 0 {
            let lower = monomial_basis(n, d - 1);
            for j in 1..=n {
                gens.push((AffineElem::x(n, j)?, lower.clone()));
            }
        }
        for (g, monos) in gens {
            for m in monos {
                let e = AffineElem::term(m, C::one());
                let c = g.commutator(&e)?;
                let row = piece.to_row(&c)?;
                piece.echelon.insert(row);
            }
        }
        piece.quotient = (0..piece.basis.len()).filter(|&k| !piece.echelon.is_pivot(k)).collect();
        Ok(piece)
    }

    /// Same quotient built from every pair `[u, v]` of basis monomials with
    /// complementary degrees. Much slower; used to validate [`Self::build`].
    pub fn build_from_all_pairs(n: usize, d: u32, cap: usize) -> Result<Self> {
        let mut piece = Self::build(n, d, cap)?;
        piece.echelon = Echelon::default();
        for d1 in 0..=d {
            let left = monomial_basis(n, d1);
            let right = monomial_basis(n, d - d1);
            for u in &left {
                for v in &right {
                    let c = AffineElem::term(u.clone(), C::one())
                        .commutator(&AffineElem::term(v.clone(), C::one()))?;
                    let row = piece.to_row(&c)?;
                    piece.echelon.insert(row);
                }
            }
        }
        piece.quotient = (0..piece.basis.len()).filter(|&k| !piece.echelon.is_pivot(k)).collect();
        Ok(piece)
    }

    fn to_row(&self, e: &AffineElem<C>) -> Result<SparseRow<C>> {
        if e.rank() != self.n {
            return Err(Error::Inhomogeneous { rank: self.n, degree: self.d as usize });
        }
        let mut row = SparseRow::new();
        for (m, c) in e.terms() {
            let k = self
                .index
                .get(m)
                .ok_or(Error::Inhomogeneous { rank: self.n, degree: self.d as usize })?;
            row.insert(*k, c.clone());
        }
        Ok(row)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn commutator_rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient.len()
    }

    /// Monomials whose classes form the quotient basis.
    pub fn quotient_basis(&self) -> Vec<&Monomial> {
        self.quotient.iter().map(|&k| &self.basis[k]).collect()
    }

    /// Coordinates of `e` modulo commutators. Fails unless `e` is homogeneous
    /// of this rank and degree.
    pub fn reduce(self: &Arc<Self>, e: &AffineElem<C>) -> Result<TraceClass<C>> {
        let v = self.echelon.reduce(self.to_row(e)?);
        let coords = self.quotient.iter().map(|k| v.get(k).cloned().unwrap_or_else(C::zero)).collect();
        Ok(TraceClass { piece: self.clone(), coords })
    }
}

/// A class in `HH_0` of one graded piece, in coordinates for its quotient basis.
#[derive(Clone, Debug)]
pub struct TraceClass<C> {
    piece: Arc<GradedPiece<C>>,
    coords: Vec<C>,
}

impl<C: Coeff> TraceClass<C> {
    pub fn rank(&self) -> usize {
        self.piece.n
    }

    pub fn degree(&self) -> u32 {
        self.piece.d
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The canonical representative: a combination of quotient basis monomials.
    pub fn lift(&self) -> AffineElem<C> {
        let mut e = AffineElem::zero(self.piece.n);
        for (c, &k) in self.coords.iter().zip(&self.piece.quotient) {
            e.add_term(self.piece.basis[k].clone(), c.clone());
        }
        e
    }

    fn same_piece(&self, other: &Self) -> Result<()> {
        if self.piece.n != other.piece.n || self.piece.d != other.piece.d {
            return Err(Error::RankMismatch(self.piece.n, other.piece.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_piece(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b).collect();
        Ok(Self { piece: self.piece.clone(), coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { piece: self.piece.clone(), coords: self.coords.iter().map(|a| a.clone() * c).collect() }
    }
}

impl<C: Coeff> PartialEq for TraceClass<C> {
    fn eq(&self, other: &Self) -> bool {
        self.piece.n == other.piece.n && self.piece.d == other.piece.d && self.coords == other.coords
    }
}

type PieceCache<C> = HashMap<(usize, u32), Arc<GradedPiece<C>>>;

/// Lazily built graded pieces, shared across reductions and products.
pub struct TraceSpace<C> {
    cap: usize,
    pieces: Mutex<PieceCache<C>>,
}

impl<C: Coeff> TraceSpace<C> {
    pub fn new(cap: usize) -> Self {
        Self { cap, pieces: Mutex::new(HashMap::new()) }
    }

    pub fn piece(&self, n: usize, d: u32) -> Result<Arc<GradedPiece<C>>> {
        if let Some(p) = self.pieces.lock().unwrap().get(&(n, d)) {
            return Ok(p.clone());
        }
        let p = Arc::new(GradedPiece::build(n, d, self.cap)?);
        self.pieces.lock().unwrap().insert((n, d), p.clone());
        Ok(p)
    }

    /// Reduces a homogeneous element; `degree` is needed only for zero.
    pub fn reduce(&self, e: &AffineElem<C>, degree: Option<u32>) -> Result<TraceClass<C>> {
        let d = match (e.homogeneous_degree(), degree) {
            (None, _) => return Err(Error::Inhomogeneous { rank: e.rank(), degree: degree.unwrap_or(0) as usize }),
            (Some(Some(d)), Some(want)) if d != want => {
                return Err(Error::Inhomogeneous { rank: e.rank(), degree: want as usize })
            }
            (Some(Some(d)), _) => d,
            (Some(None), Some(want)) => want,
            (Some(None), None) => 0,
        };
        self.piece(e.rank(), d)?.reduce(e)
    }

    /// `[a] . [b] = [a (x) b]`
    pub fn trace_mul(&self, u: &TraceClass<C>, v: &TraceClass<C>) -> Result<TraceClass<C>> {
        let e = u.lift().juxtapose(&v.lift());
        self.piece(u.rank() + v.rank(), u.degree() + v.degree())?.reduce(&e)
    }

    /// Class of `w_element(a, b)`.
    pub fn w_class(&self, a: i64, b: i64) -> Result<TraceClass<C>> {
        let e = w_element::<C>(a, b)?;
        self.piece(a as usize, b as u32)?.reduce(&e)
    }
}

/// Number of monomials of bidegree `(n, d)` in commuting variables `u_{a,b}`
/// (`a >= 1`, `b >= 0`) of bidegree `(a, b)`.
pub fn expected_dimension(n: usize, d: usize) -> u64 {
    let mut dp = vec![vec![0u64; d + 1]; n + 1];
    dp[0][0] = 1;
    for a in 1..=n {
        for b in 0..=d {
            // unbounded multiplicity of u_{a,b}
            for i in a..=n {
                for j in b..=d {
                    dp[i][j] += dp[i - a][j - b];
                }
            }
        }
    }
    dp[n][d]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub n: usize,
    pub d: u32,
    pub ambient: usize,
    pub computed: usize,
    pub expected: u64,
    pub matches: bool,
}

/// Computed versus expected `HH_0` dimensions for `1 <= n <= max_n`, `0 <= d <= max_d`.
pub fn dimension_table<C: Coeff>(max_n: usize, max_d: u32, cap: usize) -> Result<Vec<DimensionRow>> {
    let cells: Vec<(usize, u32)> = (1..=max_n).flat_map(|n| (0..=max_d).map(move |d| (n, d))).collect();
    cells
        .into_par_iter()
        .map(|(n, d)| {
            let piece = GradedPiece::<C>::build(n, d, cap)?;
            let expected = expected_dimension(n, d as usize);
            Ok(DimensionRow {
                n,
                d,
                ambient: piece.ambient_dim(),
                computed: piece.quotient_dim(),
                expected,
                matches: piece.quotient_dim() as u64 == expected,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::scalar::{qbrace, Scalar, SpecialS};

    type A = AffineElem<Scalar>;

    fn q() -> Scalar {
        Scalar::q_power(1)
    }

    #[test]
    fn expected_counts() {
        assert_eq!(expected_dimension(2, 1), 2);
        // u32; u10 u22; u20 u12; u11 u21; u10 u11 u11; u10 u10 u12
        assert_eq!(expected_dimension(3, 2), 6);
        assert_eq!(expected_dimension(2, 0), 2);
        for d in 0..6 {
            assert_eq!(expected_dimension(1, d), 1);
        }
    }

    #[test]
    fn small_pieces() {
        let p = GradedPiece::<Scalar>::build(2, 1, DEFAULT_AMBIENT_CAP).unwrap();
        assert_eq!((p.ambient_dim(), p.commutator_rank(), p.quotient_dim()), (4, 2, 2));
        let p = GradedPiece::<Scalar>::build(2, 0, DEFAULT_AMBIENT_CAP).unwrap();
        assert_eq!(p.quotient_dim(), 2);
        for d in 0..4 {
            assert_eq!(GradedPiece::<Scalar>::build(1, d, DEFAULT_AMBIENT_CAP).unwrap().quotient_dim(), 1);
        }
        assert_eq!(ambient_dimension(3, 4), 90);
        assert!(matches!(GradedPiece::<Scalar>::build(3, 4, 50), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn generator_commutators_span_all_commutators() {
        for (n, d) in [(2, 0), (2, 1), (2, 2), (3, 1)] {
            let a = GradedPiece::<Scalar>::build(n, d, DEFAULT_AMBIENT_CAP).unwrap();
            let b = GradedPiece::<Scalar>::build_from_all_pairs(n, d, DEFAULT_AMBIENT_CAP).unwrap();
            assert_eq!(a.commutator_rank(), b.commutator_rank(), "({n},{d})");
        }
    }

    #[test]
    fn example_relation_vanishes() {
        let space = TraceSpace::<Scalar>::new(DEFAULT_AMBIENT_CAP);
        let x1 = A::x(2, 1).unwrap();
        let x2 = A::x(2, 2).unwrap();
        let x2t1 = &x2 * &A::t(2, 1).unwrap();
        let e = x1.clone() - x2 - x2t1.scale(&((q() - Scalar::one()) / q()));
        assert!(space.reduce(&e, None).unwrap().is_zero());
        assert!(!space.reduce(&x1, None).unwrap().is_zero());
    }

    #[test]
    fn tower_product_example() {
        let space = TraceSpace::<Scalar>::new(DEFAULT_AMBIENT_CAP);
        let x1 = space.reduce(&A::x(1, 1).unwrap(), None).unwrap();
        let one = space.reduce(&A::one(1), None).unwrap();
        let lhs = space.trace_mul(&x1, &one).unwrap().checked_sub(&space.trace_mul(&one, &x1).unwrap()).unwrap();
        let x2t1 = &A::x(2, 2).unwrap() * &A::t(2, 1).unwrap();
        let rhs = space.reduce(&x2t1.scale(&((q() - Scalar::one()) / q())), None).unwrap();
        assert_eq!(lhs, rhs);
        let oo = space.trace_mul(&one, &one).unwrap();
        assert_eq!(oo, space.reduce(&A::one(2), None).unwrap());
    }

    #[test]
    fn w_commutator_relations() {
        let space = TraceSpace::<Scalar>::new(DEFAULT_AMBIENT_CAP);
        let bracket = |x: (i64, i64), y: (i64, i64)| {
            let a = space.w_class(x.0, x.1).unwrap();
            let b = space.w_class(y.0, y.1).unwrap();
            space.trace_mul(&a, &b).unwrap().checked_sub(&space.trace_mul(&b, &a).unwrap()).unwrap()
        };
        let target = space.w_class(2, 1).unwrap().scale(&qbrace(1));
        assert_eq!(bracket((1, 1), (1, 0)), target);
        let target = space.w_class(2, 2).unwrap().scale(&qbrace(2));
        assert_eq!(bracket((1, 2), (1, 0)), target);
    }

    #[test]
    fn dimensions_agree_with_special_point() {
        let generic = dimension_table::<Scalar>(2, 3, DEFAULT_AMBIENT_CAP).unwrap();
        let special = dimension_table::<SpecialS<3>>(2, 3, DEFAULT_AMBIENT_CAP).unwrap();
        for (g, s) in generic.iter().zip(&special) {
            assert!(g.matches, "{g:?}");
            assert_eq!(g.computed, s.computed);
        }
    }
}
