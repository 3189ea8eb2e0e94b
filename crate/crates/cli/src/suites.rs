//! Named verification suites and their JSON reports.

use std::fmt;
use std::str::FromStr;

use ehall::affine::{degenerate_relations, MixedIndex, Monomial};
use ehall::fock::{jm_cross_check, FockSpace};
use ehall::hall::{
    cross_relation_instance, cross_relation_instances, generator_points, jacobi_check, LatticePoint, Schedule,
};
use ehall::hecke::{central_element_x, central_element_x_jm, jm, jm_eigenvalue, young_symmetrizer};
use ehall::scalar::identities::{binom_identity, coset_identity, crazy_identity, CosetPart};
use ehall::symfunc::newton_series_check;
use ehall::trace::{dimension_table, exponent_vectors};
use ehall::{AffineElement, Coeff, HallElement, HeckeElement, Partition, Perm, Scalar};
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Scalars,
    Hecke,
    Affine,
    TraceDims,
    HallJacobi,
    HallCr,
    FockRelations,
    FockJm,
    Newton,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Scalars,
        Suite::Hecke,
        Suite::Affine,
        Suite::TraceDims,
        Suite::HallJacobi,
        Suite::HallCr,
        Suite::FockRelations,
        Suite::FockJm,
        Suite::Newton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Scalars => "scalars",
            Suite::Hecke => "hecke",
            Suite::Affine => "affine",
            Suite::TraceDims => "trace-dims",
            Suite::HallJacobi => "hall-jacobi",
            Suite::HallCr => "hall-cr",
            Suite::FockRelations => "fock-relations",
            Suite::FockJm => "fock-jm",
            Suite::Newton => "newton",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite '{s}', expected one of: {}", names.join(", "))
        })
    }
}

/// Bounds for a run; `None` takes the suite default.
#[derive(Clone, Debug, Default)]
pub struct Bounds {
    pub rank: Option<usize>,
    pub degree: Option<usize>,
    pub max_a: Option<i64>,
    pub max_b: Option<i64>,
    pub truncation: Option<usize>,
    pub max_ambient_dim: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

#[derive(Default)]
struct Cases {
    count: usize,
    failures: Vec<Failure>,
}

impl Cases {
    fn check(&mut self, case: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(Failure { case: case.into(), detail: detail() });
        }
    }

    fn check_result(&mut self, case: impl Into<String>, r: ehall::Result<bool>) {
        match r {
            Ok(ok) => self.check(case, ok, || "identity does not hold".into()),
            Err(e) => self.check(case, false, || e.to_string()),
        }
    }

    fn extend(&mut self, results: Vec<(String, bool, String)>) {
        for (case, ok, detail) in results {
            self.check(case, ok, || detail);
        }
    }
}

pub fn run_suite(suite: Suite, b: &Bounds) -> Report {
    let mut c = Cases::default();
    match suite {
        Suite::Scalars => scalars(&mut c),
        Suite::Hecke => hecke(&mut c, b.rank.unwrap_or(4)),
        Suite::Affine => affine(&mut c, b.rank.unwrap_or(3), b.degree.unwrap_or(3) as u32),
        Suite::TraceDims => {
            let cap = b.max_ambient_dim;
            match dimension_table::<Scalar>(b.rank.unwrap_or(3), b.degree.unwrap_or(4) as u32, cap) {
                Ok(rows) => {
                    for r in rows {
                        c.check(format!("dim(n={}, d={})", r.n, r.d), r.matches, || {
                            format!("computed {}, expected {}", r.computed, r.expected)
                        });
                    }
                }
                Err(e) => c.check("dimension table", false, || e.to_string()),
            }
        }
        Suite::HallJacobi => hall_jacobi(&mut c, b.max_a.unwrap_or(3), b.max_b.unwrap_or(3), b.seed),
        Suite::HallCr => {
            for rel in cross_relation_instances(b.max_a.unwrap_or(4).max(b.max_b.unwrap_or(4))) {
                match cross_relation_instance::<Scalar>(rel) {
                    Ok((l, r)) => c.check(rel.to_string(), l == r, || format!("lhs {l}, rhs {r}")),
                    Err(e) => c.check(rel.to_string(), false, || e.to_string()),
                }
            }
        }
        Suite::FockRelations => fock_relations(&mut c, b.max_a.unwrap_or(2), b.max_b.unwrap_or(2), b.truncation.unwrap_or(8)),
        Suite::FockJm => {
            for n in 1..=b.rank.unwrap_or(4) {
                for lambda in Partition::all(n) {
                    c.check_result(format!("jm_cross_check({lambda})"), jm_cross_check::<Scalar>(&lambda));
                }
            }
        }
        Suite::Newton => {
            let n = b.truncation.unwrap_or(6);
            c.check_result(format!("newton_series_check(N={n})"), newton_series_check::<Scalar>(n));
        }
    }
    Report { suite: suite.name().into(), cases: c.count, failures: c.failures, wall_time: None }
}

fn scalars(c: &mut Cases) {
    for ell in 0..=2 {
        for g in 0..=8 {
            for d in 0..=8 {
                c.check_result(format!("binom_identity({ell},{g},{d})"), binom_identity(ell, g, d));
            }
        }
    }
    for k in 1..=8 {
        for p in 1..k {
            c.check_result(format!("coset_identity(1,k={k},p={p})"), coset_identity(CosetPart::One, k, p));
        }
        c.check_result(format!("coset_identity(2,k={k})"), coset_identity(CosetPart::Two, k, 0));
    }
    for k in 1..=6 {
        c.check_result(format!("crazy_identity({k})"), crazy_identity(k));
    }
}

fn hecke(c: &mut Cases, max_n: usize) {
    for n in 1..=max_n {
        let t = |i| HeckeElement::gen(n, i).expect("index in range");
        let q = Scalar::q();
        for i in 1..n {
            let rhs = t(i).scale(&(q.clone() - Scalar::one())) + HeckeElement::scalar(n, q.clone());
            c.check(format!("H{n}: t{i}^2"), &t(i) * &t(i) == rhs, String::new);
            for j in i + 1..n {
                let ok = if j == i + 1 {
                    &(&t(i) * &t(j)) * &t(i) == &(&t(j) * &t(i)) * &t(j)
                } else {
                    &t(i) * &t(j) == &t(j) * &t(i)
                };
                c.check(format!("H{n}: t{i},t{j}"), ok, String::new);
            }
        }
        let basis: Vec<HeckeElement> = Perm::all(n).into_iter().map(HeckeElement::basis).collect();
        let bad: Vec<String> = (0..basis.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let basis = &basis;
                (0..basis.len()).flat_map(move |j| {
                    let ab = &basis[i] * &basis[j];
                    (0..basis.len()).filter_map(move |k| {
                        let lhs = &ab * &basis[k];
                        let rhs = &basis[i] * &(&basis[j] * &basis[k]);
                        (lhs != rhs).then(|| format!("({i},{j},{k})"))
                    })
                })
            })
            .collect();
        c.check(format!("H{n}: associativity on the basis"), bad.is_empty(), || bad.join(" "));
        let ls: Vec<_> = (1..=n).map(|m| jm::<Scalar>(n, m).expect("m in range")).collect();
        for a in 0..n {
            for b in a + 1..n {
                let ok = &ls[a] * &ls[b] == &ls[b] * &ls[a];
                c.check(format!("H{n}: L{} L{} commute", a + 1, b + 1), ok, String::new);
            }
        }
        for lambda in Partition::all(n) {
            let z = young_symmetrizer::<Scalar>(&lambda).star();
            for m in 1..=n {
                let ev = jm_eigenvalue::<Scalar>(&lambda, m).expect("m in range");
                let ok = !z.is_zero() && &ls[m - 1] * &z == z.scale(&ev);
                c.check(format!("H{n}: L{m} on z*{lambda}"), ok, || format!("expected eigenvalue {ev}"));
            }
        }
        if n <= 4 {
            let x = central_element_x::<Scalar>(n - 1);
            c.check(format!("H{n}: two forms of x"), x == central_element_x_jm::<Scalar>(n - 1), String::new);
        }
    }
}

fn affine_basis(n: usize, max_d: u32) -> Vec<(u32, AffineElement)> {
    let perms = Perm::all(n);
    let mut out = Vec::new();
    for d in 0..=max_d {
        for x in exponent_vectors(n, d) {
            for w in &perms {
                out.push((d, AffineElement::term(Monomial { x: x.clone(), w: w.clone() }, Scalar::one())));
            }
        }
    }
    out
}

fn affine(c: &mut Cases, max_n: usize, max_d: u32) {
    for n in 1..=max_n {
        let t = |i| AffineElement::t(n, i).expect("index in range");
        let x = |i| AffineElement::x(n, i).expect("index in range");
        let q = Scalar::q();
        for i in 1..n {
            let rhs = t(i).scale(&(q.clone() - Scalar::one())) + AffineElement::scalar(n, q.clone());
            c.check(format!("AH{n}: t{i}^2"), &t(i) * &t(i) == rhs, String::new);
            let lhs = &(&t(i) * &x(i + 1)) * &t(i);
            c.check(format!("AH{n}: t{i} x{} t{i}", i + 1), lhs == x(i).scale(&q), String::new);
            for j in i + 1..n {
                let ok = if j == i + 1 {
                    &(&t(i) * &t(j)) * &t(i) == &(&t(j) * &t(i)) * &t(j)
                } else {
                    &t(i) * &t(j) == &t(j) * &t(i)
                };
                c.check(format!("AH{n}: t{i},t{j}"), ok, String::new);
            }
            for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                c.check(format!("AH{n}: t{i} x{j}"), &t(i) * &x(j) == &x(j) * &t(i), String::new);
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                c.check(format!("AH{n}: x{i} x{j}"), &x(i) * &x(j) == &x(j) * &x(i), String::new);
            }
        }
        let basis = affine_basis(n, max_d);
        let bad: Vec<String> = (0..basis.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let basis = &basis;
                (0..basis.len()).flat_map(move |j| {
                    let dij = basis[i].0 + basis[j].0;
                    let ab = (dij <= max_d).then(|| &basis[i].1 * &basis[j].1);
                    (0..basis.len()).filter_map(move |k| {
                        let ab = ab.as_ref()?;
                        if dij + basis[k].0 > max_d {
                            return None;
                        }
                        let lhs = ab * &basis[k].1;
                        let rhs = &basis[i].1 * &(&basis[j].1 * &basis[k].1);
                        (lhs != rhs).then(|| format!("({i},{j},{k})"))
                    })
                })
            })
            .collect();
        c.check(format!("AH{n}: associativity up to degree {max_d}"), bad.is_empty(), || bad.join(" "));
        match degenerate_relations::<Scalar>(n, MixedIndex::Next) {
            Ok(rels) => {
                for r in rels {
                    c.check(format!("DH{n}: {}", r.label), r.holds(), || {
                        format!("lhs - rhs = {}", r.lhs.clone() - r.rhs.clone())
                    });
                }
            }
            Err(e) => c.check(format!("DH{n}"), false, || e.to_string()),
        }
    }
}

fn random_word(rng: &mut StdRng, pts: &[LatticePoint], max_len: usize) -> Vec<LatticePoint> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| pts[rng.gen_range(0..pts.len())]).collect()
}

fn random_hall(rng: &mut StdRng, pts: &[LatticePoint]) -> HallElement {
    let mut e = HallElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let w = random_word(rng, pts, 2);
        e = e + HallElement::word(&w).scale(&Scalar::from_int(rng.gen_range(-3..=3)));
    }
    e
}

fn hall_jacobi(c: &mut Cases, max_a: i64, max_b: i64, seed: u64) {
    let pts = generator_points(max_a, max_b);
    let mut triples = Vec::new();
    for &x in &pts {
        for &y in &pts {
            triples.extend(pts.iter().map(|&z| (x, y, z)));
        }
    }
    let bad: Vec<_> = triples
        .par_iter()
        .filter(|&&(x, y, z)| !jacobi_check::<Scalar>(x, y, z))
        .map(|(x, y, z)| format!("jacobi({x},{y},{z})"))
        .collect();
    c.count += triples.len() - bad.len();
    c.extend(bad.into_iter().map(|case| (case, false, "Jacobi sum is nonzero".into())).collect());

    let mut rng = StdRng::seed_from_u64(seed);
    let small = generator_points(2, 2);
    for i in 0..200 {
        let w = random_word(&mut rng, &small, 4);
        let l = HallElement::from_raw([(w.clone(), Scalar::one())], Schedule::Leftmost);
        let r = HallElement::from_raw([(w.clone(), Scalar::one())], Schedule::Rightmost);
        c.check(format!("confluence #{i}"), l == r && l.is_triangular(), || format!("word {w:?}"));
    }
    for i in 0..100 {
        let e = random_hall(&mut rng, &small);
        let f = random_hall(&mut rng, &small);
        let lhs = (e.clone() * f.clone()).anti_involution();
        let rhs = f.anti_involution() * e.anti_involution();
        c.check(format!("anti-involution #{i}"), lhs == rhs, || format!("e = {e}, f = {f}"));
    }
}

fn fock_relations(c: &mut Cases, max_a: i64, max_b: i64, truncation: usize) {
    let space = FockSpace::<Scalar>::new(truncation);
    for (x, y, r) in space.relation_sweep(max_a, max_b) {
        let case = format!("relation({x},{y})");
        match r {
            Ok(o) => c.check(case, o.holds && o.blocks_compared > 0, || {
                format!("holds = {}, blocks compared = {}", o.holds, o.blocks_compared)
            }),
            Err(e) => c.check(case, false, || e.to_string()),
        }
    }
    for n in 1..=4 {
        for m in 1..=4 {
            let (x, y) = (LatticePoint { a: n, b: 0 }, LatticePoint { a: -m, b: 0 });
            let case = format!("heisenberg(n={n},m={m})");
            match space.relation_outcome(x, y) {
                Ok(o) => c.check(case, o.holds && o.blocks_compared > 0, String::new),
                Err(e) => c.check(case, false, || e.to_string()),
            }
        }
    }
    for ell in 1..=5 {
        c.check_result(format!("vacuum(l={ell})"), space.vacuum_annihilation(ell));
    }
    for a in -3..=3 {
        for b in 1..=3 {
            let x = LatticePoint { a, b };
            c.check_result(format!("decomposition({x})"), space.decomposition_independent(x, 3));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass() {
        let b = Bounds { max_ambient_dim: 5000, ..Default::default() };
        for s in [Suite::Scalars, Suite::TraceDims, Suite::Newton, Suite::FockJm] {
            let r = run_suite(s, &b);
            assert!(r.failures.is_empty(), "{s}: {:?}", r.failures);
            assert!(r.cases > 0);
        }
    }
}
