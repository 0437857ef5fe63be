//! The Frobenius algebra `A = ℚ[a,h][X]/(X² − hX − a)` and its tensor powers.
//!
//! An element of `A^{⊗k}` is stored on the basis of words in `{1, X}`: bit `i`
//! of a word is set when slot `i` holds `X`. Coefficients are polynomials in
//! `a` and `h` only. In the quantum grading `1` has degree −1 and `X` degree 1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Homogeneity, MultiPoly};

pub type Word = u64;

pub(crate) fn bit(w: Word, i: usize) -> bool {
    (w >> i) & 1 == 1
}

pub(crate) fn insert_bit(w: Word, pos: usize, b: bool) -> Word {
    let low = w & ((1 << pos) - 1);
    let high = w >> pos;
    (high << (pos + 1)) | ((b as Word) << pos) | low
}

pub(crate) fn remove_bit(w: Word, pos: usize) -> Word {
    let low = w & ((1 << pos) - 1);
    low | ((w >> (pos + 1)) << pos)
}

/// Quantum degree of a basis word of arity `k`.
pub fn word_degree(w: Word, k: usize) -> i32 {
    2 * w.count_ones() as i32 - k as i32
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AElem {
    arity: usize,
    terms: BTreeMap<Word, MultiPoly>,
}

impl AElem {
    pub fn zero(arity: usize) -> Self {
        AElem {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element with `X` in the slots set in `w`.
    pub fn basis(arity: usize, w: Word) -> Self {
        Self::from_terms(arity, [(w, MultiPoly::one())])
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one(arity: usize) -> Self {
        Self::basis(arity, 0)
    }

    /// Parses a word such as `"X1X"` (slot 0 first).
    pub fn word(s: &str) -> Self {
        let w = s
            .chars()
            .enumerate()
            .fold(0, |w, (i, c)| if c == 'X' { w | (1 << i) } else { w });
        Self::basis(s.chars().count(), w)
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Word, MultiPoly)>) -> Self {
        let mut e = Self::zero(arity);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Word, &MultiPoly)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn coeff(&self, w: Word) -> MultiPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Word, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        Self::from_terms(self.arity, self.terms.iter().map(|(&w, k)| (w, k * c)))
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot < self.arity {
            Ok(())
        } else {
            Err(Error::InvalidSlot {
                slot,
                arity: self.arity,
            })
        }
    }

    /// Applies a slot-local rule `bit ↦ Σ c·(new bits)` to every term.
    fn map_terms(
        &self,
        arity: usize,
        f: impl Fn(Word) -> Vec<(Word, MultiPoly)>,
    ) -> AElem {
        let mut out = AElem::zero(arity);
        for (&w, c) in &self.terms {
            for (w2, k) in f(w) {
                out.add_term(w2, &k * c);
            }
        }
        out
    }

    /// Multiplication of slots `i` and `j`; the product lands in slot
    /// `min(i, j)` and the other slot is removed.
    pub fn m(&self, i: usize, j: usize) -> Result<AElem> {
        self.check_slot(i)?;
        self.check_slot(j)?;
        if i == j {
            return Err(Error::InvalidSlot {
                slot: j,
                arity: self.arity,
            });
        }
        let (keep, drop) = (i.min(j), i.max(j));
        Ok(self.map_terms(self.arity - 1, |w| {
            let base = remove_bit(w & !(1 << keep), drop);
            match (bit(w, keep), bit(w, drop)) {
                (false, false) => vec![(base, MultiPoly::one())],
                (true, false) | (false, true) => vec![(base | 1 << keep, MultiPoly::one())],
                (true, true) => vec![(base | 1 << keep, MultiPoly::h()), (base, MultiPoly::a())],
            }
        }))
    }

    /// Comultiplication of slot `i`; the second factor is inserted at `i + 1`.
    pub fn delta(&self, i: usize) -> Result<AElem> {
        self.check_slot(i)?;
        Ok(self.map_terms(self.arity + 1, |w| {
            let base = insert_bit(w & !(1 << i), i + 1, false);
            let (x1, x2) = (1 << i, 1 << (i + 1));
            if bit(w, i) {
                vec![(base | x1 | x2, MultiPoly::one()), (base, MultiPoly::a())]
            } else {
                vec![
                    (base | x2, MultiPoly::one()),
                    (base | x1, MultiPoly::one()),
                    (base, -MultiPoly::h()),
                ]
            }
        }))
    }

    /// The trace `ε(1) = 0`, `ε(X) = 1` applied to slot `i`.
    pub fn eps(&self, i: usize) -> Result<AElem> {
        self.check_slot(i)?;
        Ok(self.map_terms(self.arity - 1, |w| {
            if bit(w, i) {
                vec![(remove_bit(w, i), MultiPoly::one())]
            } else {
                vec![]
            }
        }))
    }

    /// Inserts the unit `1` as a new slot at position `pos`.
    pub fn iota(&self, pos: usize) -> Result<AElem> {
        if pos > self.arity {
            return Err(Error::InvalidSlot {
                slot: pos,
                arity: self.arity,
            });
        }
        Ok(self.map_terms(self.arity + 1, |w| {
            vec![(insert_bit(w, pos, false), MultiPoly::one())]
        }))
    }

    /// Multiplication by `X` in slot `i`.
    pub fn dot(&self, i: usize) -> Result<AElem> {
        self.check_slot(i)?;
        Ok(self.map_terms(self.arity, |w| {
            if bit(w, i) {
                vec![(w, MultiPoly::h()), (w & !(1 << i), MultiPoly::a())]
            } else {
                vec![(w | 1 << i, MultiPoly::one())]
            }
        }))
    }

    /// Moves slot `s` to slot `perm[s]`.
    pub fn permute(&self, perm: &[usize]) -> Result<AElem> {
        if perm.len() != self.arity {
            return Err(Error::ShapeMismatch(format!(
                "permutation of length {} on arity {}",
                perm.len(),
                self.arity
            )));
        }
        Ok(self.map_terms(self.arity, |w| {
            let w2 = (0..perm.len())
                .filter(|&s| bit(w, s))
                .fold(0, |acc, s| acc | 1 << perm[s]);
            vec![(w2, MultiPoly::one())]
        }))
    }

    pub fn tensor(&self, other: &AElem) -> AElem {
        let mut out = AElem::zero(self.arity + other.arity);
        for (&w1, c1) in &self.terms {
            for (&w2, c2) in &other.terms {
                out.add_term(w1 | (w2 << self.arity), c1 * c2);
            }
        }
        out
    }

    pub fn degree(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|(&w, c)| {
            c.homogeneous_degree()
                .degree()
                .map(|d| d + word_degree(w, self.arity))
        });
        let Some(first) = degs.next() else {
            return Homogeneity::Zero;
        };
        match first {
            Some(d) if degs.all(|e| e == Some(d)) => Homogeneity::Degree(d),
            _ => Homogeneity::Inhomogeneous,
        }
    }
}

impl Add for &AElem {
    type Output = AElem;
    fn add(self, rhs: &AElem) -> AElem {
        assert_eq!(self.arity, rhs.arity, "adding elements of different arity");
        let mut out = self.clone();
        for (&w, c) in &rhs.terms {
            out.add_term(w, c.clone());
        }
        out
    }
}

impl Neg for &AElem {
    type Output = AElem;
    fn neg(self) -> AElem {
        self.scale(&MultiPoly::int(-1))
    }
}

impl Sub for &AElem {
    type Output = AElem;
    fn sub(self, rhs: &AElem) -> AElem {
        self + &(-rhs)
    }
}

impl fmt::Display for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<&str> = (0..self.arity)
                .map(|i| if bit(w, i) { "X" } else { "1" })
                .collect();
            let word = if word.is_empty() {
                "1".to_string()
            } else {
                word.join("⊗")
            };
            if c.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "({c})*{word}")?;
            }
        }
        Ok(())
    }
}

/// One elementary cobordism acting on tensor slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    Merge(usize, usize),
    Split(usize),
    Cup(usize),
    Cap(usize),
    Dot(usize),
    Permute(Vec<usize>),
}

impl Piece {
    pub fn degree(&self) -> i32 {
        match self {
            Piece::Merge(..) | Piece::Split(_) => 1,
            Piece::Cup(_) | Piece::Cap(_) => -1,
            Piece::Dot(_) => 2,
            Piece::Permute(_) => 0,
        }
    }

    /// Euler characteristic of the surface piece (a dot has none).
    pub fn euler_characteristic(&self) -> i32 {
        match self {
            Piece::Merge(..) | Piece::Split(_) => -1,
            Piece::Cup(_) | Piece::Cap(_) => 1,
            Piece::Dot(_) | Piece::Permute(_) => 0,
        }
    }

    pub fn apply(&self, x: &AElem) -> Result<AElem> {
        match self {
            Piece::Merge(i, j) => x.m(*i, *j),
            Piece::Split(i) => x.delta(*i),
            Piece::Cup(p) => x.iota(*p),
            Piece::Cap(i) => x.eps(*i),
            Piece::Dot(i) => x.dot(*i),
            Piece::Permute(p) => x.permute(p),
        }
    }
}

/// A composite of elementary pieces, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CobordismMap {
    pub pieces: Vec<Piece>,
}

impl CobordismMap {
    pub fn new(pieces: Vec<Piece>) -> Self {
        CobordismMap { pieces }
    }

    pub fn then(mut self, p: Piece) -> Self {
        self.pieces.push(p);
        self
    }

    pub fn apply(&self, x: &AElem) -> Result<AElem> {
        self.pieces.iter().try_fold(x.clone(), |acc, p| p.apply(&acc))
    }

    pub fn degree(&self) -> i32 {
        self.pieces.iter().map(Piece::degree).sum()
    }

    /// `χ` of the underlying surface, ignoring dots.
    pub fn euler_characteristic(&self) -> i32 {
        self.pieces.iter().map(Piece::euler_characteristic).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(AElem::word("1X").m(0, 1).unwrap(), AElem::word("X"));
        let xx = AElem::word("XX").m(0, 1).unwrap();
        assert_eq!(
            xx,
            AElem::from_terms(1, [(1, MultiPoly::h()), (0, MultiPoly::a())])
        );
        let md1 = AElem::one(1).delta(0).unwrap().m(0, 1).unwrap();
        assert_eq!(md1, AElem::from_terms(1, [(1, MultiPoly::int(2)), (0, -MultiPoly::h())]));
    }

    #[test]
    fn comultiplication_table() {
        let d1 = AElem::one(1).delta(0).unwrap();
        let expected = &(&AElem::word("1X") + &AElem::word("X1")) - &AElem::word("11").scale(&p("h"));
        assert_eq!(d1, expected);
        let dx = AElem::word("X").delta(0).unwrap();
        assert_eq!(dx, &AElem::word("XX") + &AElem::word("11").scale(&p("a")));
        assert_eq!(dx.degree(), Homogeneity::Degree(2));
        assert_eq!(AElem::word("X").degree(), Homogeneity::Degree(1));
    }

    #[test]
    fn trace_and_unit() {
        assert_eq!(AElem::word("X").eps(0).unwrap(), AElem::one(0));
        assert!(AElem::word("1").eps(0).unwrap().is_zero());
        let md1 = AElem::one(1).delta(0).unwrap().m(0, 1).unwrap();
        assert_eq!(md1.eps(0).unwrap(), AElem::one(0).scale(&MultiPoly::int(2)));
        assert_eq!(AElem::one(0).iota(0).unwrap(), AElem::word("1"));
        for w in ["1", "X"] {
            let x = AElem::word(w);
            assert_eq!(x.iota(0).unwrap().m(0, 1).unwrap(), x);
        }
        assert_eq!(AElem::one(0).iota(0).unwrap().degree(), Homogeneity::Degree(-1));
    }

    #[test]
    fn dots() {
        let one = AElem::word("1");
        assert_eq!(one.dot(0).unwrap(), AElem::word("X"));
        assert_eq!(
            AElem::word("X").dot(0).unwrap(),
            &AElem::word("X").scale(&p("h")) + &AElem::word("1").scale(&p("a"))
        );
        let dd = one.dot(0).unwrap().dot(0).unwrap();
        let rel = &(&dd - &one.dot(0).unwrap().scale(&p("h"))) - &one.scale(&p("a"));
        assert!(rel.is_zero());
    }

    #[test]
    fn bad_slots() {
        assert!(AElem::word("1").m(0, 1).is_err());
        assert!(AElem::word("11").m(1, 1).is_err());
        assert!(AElem::word("1").delta(3).is_err());
        assert!(AElem::word("1").eps(1).is_err());
        assert!(AElem::word("1").iota(2).is_err());
    }

    #[test]
    fn cobordism_degree_is_minus_euler() {
        let pants = CobordismMap::new(vec![Piece::Split(0), Piece::Merge(0, 1)]);
        assert_eq!(pants.degree(), -pants.euler_characteristic());
        let torus = CobordismMap::new(vec![Piece::Cup(0), Piece::Split(0), Piece::Merge(0, 1), Piece::Cap(0)]);
        assert_eq!(torus.degree(), 0);
        assert_eq!(torus.apply(&AElem::one(0)).unwrap(), AElem::one(0).scale(&MultiPoly::int(2)));
    }
}
