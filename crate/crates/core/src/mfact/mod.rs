//! Graded Koszul matrix factorizations over `ℚ[a,h,x⃗]`.
//!
//! A factorization is a list of rows `(aᵢ, bᵢ)`, each the two-term periodic
//! complex `R{lo} →aᵢ R{mid} →bᵢ R{lo}`, tensored together. A generator of
//! `R{s}` sits in quantum degree `s`, so the row shifts are chosen with
//! `mid = lo + 3 − deg aᵢ` and both differentials have degree 3. The moves
//! below (row operations, twists, exclusion of internal variables) are
//! isomorphisms in the homotopy category.

mod closed;
mod expand;
mod replay;

pub use closed::{closed_web_homology, induced_map_check, web_factorization, InducedMapReport, QuotientPresentation};
pub use expand::{
    check_morphism, compose_check, compose_check_with, flip, flip_prime, lambda0, lambda1, p_matrices,
    q_matrices, MFMorphism, PolyMatrix, TwoPeriodic,
};
pub use replay::{replay_proof, scripts, u_bar, ReplayOutcome, ReplayScript, Step};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{potential, rat, MultiPoly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulRow {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub lo: i32,
    pub mid: i32,
}

impl KoszulRow {
    /// A row whose shifts are fixed by `lo` and the degree of `a`.
    pub fn new(a: MultiPoly, b: MultiPoly, lo: i32) -> Self {
        let deg_a = a.homogeneous_degree().degree().unwrap_or(0);
        KoszulRow {
            a,
            b,
            lo,
            mid: lo + 3 - deg_a,
        }
    }

    fn substitute(&self, bindings: &BTreeMap<Var, MultiPoly>) -> Result<KoszulRow> {
        Ok(KoszulRow {
            a: self.a.substitute(bindings)?,
            b: self.b.substitute(bindings)?,
            lo: self.lo,
            mid: self.mid,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KoszulMF {
    pub rows: Vec<KoszulRow>,
    pub q_shift: i32,
    pub z2: u8,
}

pub fn x(i: u32) -> MultiPoly {
    MultiPoly::x(i)
}

/// `π̄ᵢⱼ = xᵢ² + xᵢxⱼ + xⱼ² − (3/2)h(xᵢ+xⱼ) − 3a`.
pub fn pi_bar(xi: &MultiPoly, xj: &MultiPoly) -> MultiPoly {
    let h = MultiPoly::h();
    xi * xi + xi * xj + xj * xj - (&h * &(xi + xj)).scale(&rat(3, 2)) - MultiPoly::a().scale(&rat(3, 1))
}

pub fn u1_bar(x1: &MultiPoly, x2: &MultiPoly, x3: &MultiPoly, x4: &MultiPoly) -> MultiPoly {
    let s = x1 + x2;
    let t = x3 + x4;
    let h = MultiPoly::h();
    &s * &s + &s * &t + &t * &t - (x1 * x2).scale(&rat(3, 1))
        - (&h * &(&s + &t)).scale(&rat(3, 2))
        - MultiPoly::a().scale(&rat(3, 1))
}

pub fn u2_bar(x3: &MultiPoly, x4: &MultiPoly) -> MultiPoly {
    (MultiPoly::h() - x3 - x4).scale(&rat(3, 1))
}

impl KoszulMF {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_rows(rows: Vec<KoszulRow>) -> Self {
        KoszulMF {
            rows,
            q_shift: 0,
            z2: 0,
        }
    }

    /// The arc from mark `i` to mark `j`: `(π̄ᵢⱼ, xⱼ − xᵢ)`.
    pub fn arc(i: &MultiPoly, j: &MultiPoly) -> Self {
        Self::from_rows(vec![KoszulRow::new(pi_bar(i, j), j - i, 0)])
    }

    /// A circle carrying one mark: `(3(x² − hx − a), 0)`.
    pub fn circle(m: &MultiPoly) -> Self {
        Self::from_rows(vec![KoszulRow::new(pi_bar(m, m), MultiPoly::zero(), 0)])
    }

    /// The singular resolution with outgoing marks `x1, x2` and incoming
    /// marks `x3, x4`.
    pub fn singular(x1: &MultiPoly, x2: &MultiPoly, x3: &MultiPoly, x4: &MultiPoly) -> Self {
        Self::from_rows(vec![
            KoszulRow::new(u1_bar(x1, x2, x3, x4), x1 + x2 - x3 - x4, 0),
            KoszulRow::new(u2_bar(x3, x4), x1 * x2 - x3 * x4, -1),
        ])
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// `Σ aᵢ bᵢ`.
    pub fn potential(&self) -> MultiPoly {
        self.rows.iter().map(|r| &r.a * &r.b).sum()
    }

    /// Row concatenation; shifts add.
    pub fn tensor(&self, other: &KoszulMF) -> KoszulMF {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        KoszulMF {
            rows,
            q_shift: self.q_shift + other.q_shift,
            z2: (self.z2 + other.z2) % 2,
        }
    }

    pub fn shifted(mut self, q: i32, z2: u8) -> KoszulMF {
        self.q_shift += q;
        self.z2 = (self.z2 + z2) % 2;
        self
    }

    /// Both differentials are homogeneous of degree 3 on every row.
    pub fn is_graded(&self) -> bool {
        self.rows.iter().all(|r| {
            r.a.homogeneous_degree().admits(3 + r.lo - r.mid) && r.b.homogeneous_degree().admits(3 + r.mid - r.lo)
        })
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < self.rows.len() {
            Ok(())
        } else {
            Err(Error::InvalidRow {
                index: i,
                rows: self.rows.len(),
            })
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_row(i)?;
        self.check_row(j)?;
        if i == j {
            return Err(Error::InvalidRow {
                index: j,
                rows: self.rows.len(),
            });
        }
        Ok(())
    }

    /// `[ij]_c`: `(aᵢ + c·aⱼ, bᵢ), (aⱼ, bⱼ − c·bᵢ)`. Rows are 0-based.
    pub fn row_op(&self, i: usize, j: usize, c: &MultiPoly) -> Result<KoszulMF> {
        self.check_pair(i, j)?;
        let mut out = self.clone();
        out.rows[i].a = &self.rows[i].a + &(c * &self.rows[j].a);
        out.rows[j].b = &self.rows[j].b - &(c * &self.rows[i].b);
        Ok(out)
    }

    /// `(aᵢ + k·bⱼ, bᵢ), (aⱼ − k·bᵢ, bⱼ)`.
    pub fn twist(&self, i: usize, j: usize, k: &MultiPoly) -> Result<KoszulMF> {
        self.check_pair(i, j)?;
        let mut out = self.clone();
        out.rows[i].a = &self.rows[i].a + &(k * &self.rows[j].b);
        out.rows[j].a = &self.rows[j].a - &(k * &self.rows[i].b);
        Ok(out)
    }

    /// The twist on the right-hand column: `(aᵢ, bᵢ + k·aⱼ), (aⱼ, bⱼ − k·aᵢ)`.
    pub fn twist_dual(&self, i: usize, j: usize, k: &MultiPoly) -> Result<KoszulMF> {
        self.check_pair(i, j)?;
        let mut out = self.clone();
        out.rows[i].b = &self.rows[i].b + &(k * &self.rows[j].a);
        out.rows[j].b = &self.rows[j].b - &(k * &self.rows[i].a);
        Ok(out)
    }

    /// Exchanges the two entries of row `i`, which shifts the whole
    /// factorization by `⟨1⟩`.
    pub fn swap_row(&self, i: usize) -> Result<KoszulMF> {
        self.check_row(i)?;
        let mut out = self.clone();
        let r = &mut out.rows[i];
        std::mem::swap(&mut r.a, &mut r.b);
        std::mem::swap(&mut r.lo, &mut r.mid);
        out.z2 ^= 1;
        Ok(out)
    }

    /// `(c·aᵢ, c⁻¹·bᵢ)` for a nonzero rational `c`.
    pub fn scale_row(&self, i: usize, c: &Rational) -> Result<KoszulMF> {
        self.check_row(i)?;
        if num_traits::Zero::is_zero(c) {
            return Err(Error::InvalidRow {
                index: i,
                rows: self.rows.len(),
            });
        }
        let mut out = self.clone();
        out.rows[i].a = self.rows[i].a.scale(c);
        out.rows[i].b = self.rows[i].b.scale(&c.recip());
        Ok(out)
    }

    /// Row `perm[k]` of `self` becomes row `k`.
    pub fn permute(&self, perm: &[usize]) -> Result<KoszulMF> {
        let mut seen = vec![false; self.rows.len()];
        for &p in perm {
            self.check_row(p)?;
            seen[p] = true;
        }
        if perm.len() != self.rows.len() || seen.contains(&false) {
            return Err(Error::ShapeMismatch(format!(
                "{perm:?} is not a permutation of {} rows",
                self.rows.len()
            )));
        }
        Ok(KoszulMF {
            rows: perm.iter().map(|&p| self.rows[p].clone()).collect(),
            ..self.clone()
        })
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, MultiPoly>) -> Result<KoszulMF> {
        Ok(KoszulMF {
            rows: self.rows.iter().map(|r| r.substitute(bindings)).collect::<Result<_>>()?,
            ..self.clone()
        })
    }

    /// Removes row `j`, whose `b` entry is `c·(v − α)` with `α` free of `v`,
    /// and substitutes `v ↦ α` in the other rows. `v` must not occur in the
    /// potential.
    pub fn exclude_variable(&self, j: usize, v: Var) -> Result<KoszulMF> {
        self.check_row(j)?;
        let err = |reason: &str| Error::NotExcludable {
            row: j,
            var: v,
            reason: reason.to_string(),
        };
        if self.potential().contains_var(v) {
            return Err(err("the variable occurs in the potential"));
        }
        let (_, alpha) = self.rows[j]
            .b
            .as_linear_in(v)
            .ok_or_else(|| err("the b entry is not a unit multiple of v − α"))?;
        let bindings = BTreeMap::from([(v, alpha)]);
        let mut rows = Vec::with_capacity(self.rows.len() - 1);
        for (k, r) in self.rows.iter().enumerate() {
            if k != j {
                rows.push(r.substitute(&bindings)?);
            }
        }
        Ok(KoszulMF {
            rows,
            q_shift: self.q_shift + self.rows[j].lo,
            z2: self.z2,
        })
    }

    /// The linear form `α` with `b_j = c·(v − α)`, if there is one.
    pub fn linear_b(&self, j: usize, v: Var) -> Option<MultiPoly> {
        self.rows.get(j)?.b.as_linear_in(v).map(|(_, alpha)| alpha)
    }

    /// Expands into the explicit two-periodic complex.
    pub fn expand(&self) -> TwoPeriodic {
        TwoPeriodic::of(self)
    }
}

/// Potential of a signed collection of boundary marks.
pub fn boundary_potential(marks: &[(MultiPoly, i32)]) -> MultiPoly {
    marks.iter().map(|(m, o)| potential(m).scale(&Rational::from_integer((*o).into()))).sum()
}

impl fmt::Display for KoszulMF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "({}, {})  {{{}, {}}}", r.a, r.b, r.lo, r.mid)?;
        }
        write!(f, "{{{}}} <{}>", self.q_shift, self.z2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arc_potential_and_degrees() {
        let f = KoszulMF::arc(&x(1), &x(2));
        assert_eq!(f.potential(), potential(&x(2)) - potential(&x(1)));
        assert!(f.is_graded());
        assert_eq!((f.rows[0].lo, f.rows[0].mid), (0, -1));
        let closed = f.substitute(&BTreeMap::from([(Var::X(2), x(1))])).unwrap();
        assert_eq!(closed.rows[0].a, p("3*x1^2 - 3*h*x1 - 3*a"));
        assert!(closed.rows[0].b.is_zero());
    }

    #[test]
    fn singular_rows() {
        let s = KoszulMF::singular(&x(1), &x(2), &x(3), &x(4));
        assert_eq!(s.rows[1].a, p("-3*x3 - 3*x4 + 3*h"));
        assert!(s.is_graded());
        assert_eq!((s.rows[1].lo, s.rows[1].mid), (-1, 0));
        let g0 = KoszulMF::arc(&x(4), &x(1)).tensor(&KoszulMF::arc(&x(3), &x(2)));
        assert_eq!(g0.potential(), s.potential());
        let omega = boundary_potential(&[(x(1), 1), (x(2), 1), (x(3), -1), (x(4), -1)]);
        assert_eq!(s.potential(), omega);
    }

    #[test]
    fn moves_keep_potential() {
        let f = KoszulMF::singular(&x(1), &x(2), &x(3), &x(4));
        let w = f.potential();
        assert_eq!(f.row_op(0, 1, &x(2)).unwrap().potential(), w);
        assert_eq!(f.twist(0, 1, &x(5)).unwrap().potential(), w);
        assert_eq!(f.twist_dual(1, 0, &x(5)).unwrap().potential(), w);
        assert_eq!(f.scale_row(1, &int(-3)).unwrap().potential(), w);
        assert_eq!(f.row_op(0, 1, &MultiPoly::zero()).unwrap(), f);
        assert_eq!(f.twist(0, 1, &MultiPoly::zero()).unwrap(), f);
        assert!(matches!(f.row_op(0, 0, &x(1)), Err(Error::InvalidRow { .. })));
        assert!(matches!(f.twist(0, 2, &x(1)), Err(Error::InvalidRow { .. })));
    }

    #[test]
    fn swap_toggles_parity() {
        let f = KoszulMF::singular(&x(1), &x(2), &x(3), &x(4));
        let g = f.swap_row(1).unwrap();
        assert_eq!(g.z2, 1);
        assert_eq!((g.rows[1].lo, g.rows[1].mid), (0, -1));
        assert!(g.is_graded());
        assert_eq!(g.swap_row(1).unwrap(), f);
    }

    #[test]
    fn exclusion() {
        let f = KoszulMF::arc(&x(1), &x(2)).tensor(&KoszulMF::arc(&x(2), &x(3)));
        let g = f.exclude_variable(0, Var::X(2)).unwrap();
        assert_eq!(g, KoszulMF::arc(&x(1), &x(3)));
        assert!(matches!(
            f.exclude_variable(0, Var::X(1)),
            Err(Error::NotExcludable { .. })
        ));
        let s = KoszulMF::singular(&x(1), &x(2), &x(3), &x(4));
        assert!(matches!(
            s.exclude_variable(1, Var::X(3)),
            Err(Error::NotExcludable { .. })
        ));
        // A variable absent elsewhere leaves the other rows untouched.
        let h = KoszulMF::arc(&x(7), &x(8)).tensor(&KoszulMF::arc(&x(1), &x(2)));
        let e = KoszulMF::arc(&x(5), &x(6)).tensor(&KoszulMF::arc(&x(1), &x(2)));
        let mut closed = h.tensor(&e);
        closed.rows[0].b = x(9) - x(5);
        closed.rows[0].a = MultiPoly::zero();
        let out = closed.exclude_variable(0, Var::X(9)).unwrap();
        assert_eq!(out.rows, closed.rows[1..].to_vec());
    }

    #[test]
    fn empty_tensor_is_identity() {
        let f = KoszulMF::arc(&x(1), &x(2));
        assert_eq!(f.tensor(&KoszulMF::empty()), f);
        assert_eq!(KoszulMF::empty().tensor(&f), f);
    }
}
