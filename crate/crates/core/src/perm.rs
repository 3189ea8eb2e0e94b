//! Permutations of `{1..n}` in one-line notation.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation `w` stored as its one-line notation `w(1) ... w(n)`, zero-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u8]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n < 256, "rank too large");
        Perm((0..n as u8).collect())
    }

    /// From one-based one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Domain(format!("{values:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Perm(values.iter().map(|&v| (v - 1) as u8).collect()))
    }

    /// The simple transposition `s_i` swapping `i` and `i+1` (one-based `i`).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.0.swap(i - 1, i);
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// One-based value `w(i)` for one-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize] = i as u8;
        }
        Perm(out.into())
    }

    /// `(self * other)(i) = self(other(i))`
    pub fn compose(&self, other: &Self) -> Self {
        Perm(other.0.iter().map(|&v| self.0[v as usize]).collect())
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// `w s_i`: swaps positions `i, i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        w.swap(i - 1, i);
        Perm(w)
    }

    /// `s_i w`: swaps the values `i, i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let (a, b) = ((i - 1) as u8, i as u8);
        Perm(self.0.iter().map(|&v| if v == a { b } else if v == b { a } else { v }).collect())
    }

    /// `l(w s_i) < l(w)`
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// `l(s_i w) < l(w)`
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: u8| self.0.iter().position(|&x| x == v).unwrap();
        pos((i - 1) as u8) > pos(i as u8)
    }

    /// A reduced word `[i_1, ..., i_k]` with `w = s_{i_1} ... s_{i_k}`, built by
    /// repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = self.clone();
        let n = w.rank();
        'outer: loop {
            for i in 1..n {
                if w.has_left_descent(i) {
                    word.push(i);
                    w = w.mul_simple_left(i);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// All permutations of rank `n`, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm(cur.clone().into()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Elements of the Young subgroup permuting consecutive blocks of the given sizes.
    pub fn young_subgroup(blocks: &[usize]) -> Vec<Perm> {
        let n: usize = blocks.iter().sum();
        let mut out = vec![Perm::identity(n)];
        let mut start = 0;
        for &b in blocks {
            let local = Perm::all(b);
            let mut next = Vec::with_capacity(out.len() * local.len());
            for w in &out {
                for u in &local {
                    let mut v = w.0.clone();
                    for k in 0..b {
                        v[start + k] = (start + u.0[k] as usize) as u8;
                    }
                    next.push(Perm(v));
                }
            }
            out = next;
            start += b;
        }
        out
    }

    /// Embeds into rank `n + shift` acting on `shift+1 .. shift+n`.
    pub fn shifted(&self, shift: usize, total: usize) -> Perm {
        let mut v: Vec<u8> = (0..total as u8).collect();
        for (i, &x) in self.0.iter().enumerate() {
            v[shift + i] = x + shift as u8;
        }
        Perm(v.into())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.one_line().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_reconstruct_and_are_reduced() {
        for n in 0..=5 {
            for w in Perm::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                let mut v = Perm::identity(n);
                for &i in &word {
                    v = v.mul_simple_right(i);
                }
                assert_eq!(v, w);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::young_subgroup(&[2, 1, 2]).len(), 4);
        assert_eq!(Perm::all(0).len(), 1);
    }

    #[test]
    fn descents_match_lengths() {
        for w in Perm::all(4) {
            for i in 1..4 {
                assert_eq!(w.has_right_descent(i), w.mul_simple_right(i).length() < w.length());
                assert_eq!(w.has_left_descent(i), w.mul_simple_left(i).length() < w.length());
            }
            assert_eq!(w.compose(&w.inverse()), Perm::identity(4));
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_one_line(&[1, 1]).is_err());
        assert!(Perm::from_one_line(&[0, 1]).is_err());
        assert_eq!(Perm::from_one_line(&[2, 1]).unwrap(), Perm::simple(2, 1));
    }
}
