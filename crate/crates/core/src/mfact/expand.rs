//! Explicit two-periodic complexes, matrix morphisms and the maps `Λ₀`, `Λ₁`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Sub};

use super::{pi_bar, u1_bar, u2_bar, x, KoszulMF};
use crate::error::{Error, Result};
use crate::poly::{rat, MultiPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(); rows * cols],
        }
    }

    pub fn scalar(n: usize, c: &MultiPoly) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &MultiPoly::one())
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MultiPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, MultiPoly>) -> Result<PolyMatrix> {
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.substitute(bindings)).collect::<Result<_>>()?,
        })
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;

    fn mul(self, other: &PolyMatrix) -> PolyMatrix {
        self.try_mul(other).expect("matrix shapes agree")
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;

    fn sub(self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.shape(), other.shape());
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `M₀ →d₀ M₁ →d₁ M₀` with the quantum degree of every basis generator.
///
/// For a Koszul factorization with `n` rows the basis of `M₀` (resp. `M₁`)
/// is the even (resp. odd) words `ε ∈ {0,1}ⁿ` in increasing order, bit `i`
/// recording the state of row `i`. The differential sends `ε` to
/// `Σᵢ (−1)^{#ones of ε after i}·(aᵢ at ε+eᵢ if εᵢ=0, bᵢ at ε−eᵢ if εᵢ=1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPeriodic {
    pub d0: PolyMatrix,
    pub d1: PolyMatrix,
    pub deg0: Vec<i32>,
    pub deg1: Vec<i32>,
}

impl TwoPeriodic {
    pub(crate) fn of(f: &KoszulMF) -> TwoPeriodic {
        let n = f.rows.len();
        let words: Vec<u64> = (0..1u64 << n).collect();
        let even: Vec<u64> = words.iter().copied().filter(|w| w.count_ones() % 2 == 0).collect();
        let odd: Vec<u64> = words.iter().copied().filter(|w| w.count_ones() % 2 == 1).collect();
        let index = |list: &[u64]| -> BTreeMap<u64, usize> { list.iter().enumerate().map(|(i, &w)| (w, i)).collect() };
        let (ie, io) = (index(&even), index(&odd));
        let degree = |w: u64| -> i32 {
            f.q_shift
                + f.rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| if w >> i & 1 == 1 { r.mid } else { r.lo })
                    .sum::<i32>()
        };
        let build = |src: &[u64], tgt: &BTreeMap<u64, usize>| {
            let mut m = PolyMatrix::zeros(tgt.len(), src.len());
            for (c, &w) in src.iter().enumerate() {
                for (i, row) in f.rows.iter().enumerate() {
                    let negative = (w >> (i + 1)).count_ones() % 2 == 1;
                    let (target, entry) = if w >> i & 1 == 0 {
                        (w | 1 << i, &row.a)
                    } else {
                        (w & !(1 << i), &row.b)
                    };
                    let entry = if negative { -entry } else { entry.clone() };
                    let r = tgt[&target];
                    let cur = m.get(r, c) + &entry;
                    m.set(r, c, cur);
                }
            }
            m
        };
        let d0 = build(&even, &io);
        let d1 = build(&odd, &ie);
        let deg0 = even.iter().map(|&w| degree(w)).collect();
        let deg1 = odd.iter().map(|&w| degree(w)).collect();
        let t = TwoPeriodic { d0, d1, deg0, deg1 };
        if f.z2 == 1 {
            TwoPeriodic {
                d0: t.d1.map(|e| -e),
                d1: t.d0.map(|e| -e),
                deg0: t.deg1,
                deg1: t.deg0,
            }
        } else {
            t
        }
    }

    /// `d₁d₀ = ω·id` and `d₀d₁ = ω·id`.
    pub fn squares_to(&self, omega: &MultiPoly) -> bool {
        &self.d1 * &self.d0 == PolyMatrix::scalar(self.deg0.len(), omega)
            && &self.d0 * &self.d1 == PolyMatrix::scalar(self.deg1.len(), omega)
    }

    /// Every nonzero entry of both differentials is homogeneous of degree 3
    /// relative to the generator degrees.
    pub fn is_graded(&self) -> bool {
        entries_have_degree(&self.d0, &self.deg0, &self.deg1, 3) && entries_have_degree(&self.d1, &self.deg1, &self.deg0, 3)
    }
}

fn entries_have_degree(m: &PolyMatrix, src: &[i32], tgt: &[i32], d: i32) -> bool {
    let (rows, cols) = m.shape();
    (0..rows).all(|r| {
        (0..cols).all(|c| {
            let e = m.get(r, c);
            e.is_zero() || e.homogeneous_degree().degree() == Some(d + src[c] - tgt[r])
        })
    })
}

/// A pair `(M₀, M₁)` of components from the source to the target presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MFMorphism {
    pub m0: PolyMatrix,
    pub m1: PolyMatrix,
    pub degree: i32,
}

impl MFMorphism {
    pub fn identity(f: &KoszulMF) -> Self {
        let n = 1usize << (f.rows.len().max(1) - 1);
        let n0 = if f.rows.is_empty() { 1 } else { n };
        let n1 = if f.rows.is_empty() { 0 } else { n };
        MFMorphism {
            m0: PolyMatrix::identity(n0),
            m1: PolyMatrix::identity(n1),
            degree: 0,
        }
    }

    /// `id ⊗ φ` where `φ` acts on one extra last row and the identity acts on
    /// `k` leading rows.
    pub fn extend_by_identity(&self, k: usize) -> Result<MFMorphism> {
        if self.m0.shape() != (1, 1) || self.m1.shape() != (1, 1) {
            return Err(Error::ShapeMismatch("only single-row morphisms extend".into()));
        }
        let n = k + 1;
        let last = |w: u64| w >> k & 1;
        let block = |parity: u32| {
            let words: Vec<u64> = (0..1u64 << n).filter(|w| w.count_ones() % 2 == parity).collect();
            let mut m = PolyMatrix::zeros(words.len(), words.len());
            for (i, &w) in words.iter().enumerate() {
                let e = if last(w) == 0 { self.m0.get(0, 0) } else { self.m1.get(0, 0) };
                m.set(i, i, e.clone());
            }
            m
        };
        Ok(MFMorphism {
            m0: block(0),
            m1: block(1),
            degree: self.degree,
        })
    }
}

/// Whether `φ: f → g` commutes with the expanded differentials and is
/// homogeneous of its declared degree.
pub fn check_morphism(f: &KoszulMF, g: &KoszulMF, phi: &MFMorphism) -> Result<bool> {
    let (ef, eg) = (f.expand(), g.expand());
    let want0 = (eg.deg0.len(), ef.deg0.len());
    let want1 = (eg.deg1.len(), ef.deg1.len());
    if phi.m0.shape() != want0 || phi.m1.shape() != want1 {
        return Err(Error::ShapeMismatch(format!(
            "morphism blocks {:?}, {:?} do not fit {:?}, {:?}",
            phi.m0.shape(),
            phi.m1.shape(),
            want0,
            want1
        )));
    }
    let commutes = &eg.d0 * &phi.m0 == &phi.m1 * &ef.d0 && &eg.d1 * &phi.m1 == &phi.m0 * &ef.d1;
    let graded = entries_have_degree(&phi.m0, &ef.deg0, &eg.deg0, phi.degree)
        && entries_have_degree(&phi.m1, &ef.deg1, &eg.deg1, phi.degree);
    Ok(commutes && graded)
}

fn m2(rows: [[MultiPoly; 2]; 2]) -> PolyMatrix {
    PolyMatrix::from_rows(rows.into_iter().map(Vec::from).collect())
}

fn c(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

fn half_h(k: i64) -> MultiPoly {
    MultiPoly::h().scale(&rat(k, 2))
}

/// The differentials `(P₀, P₁)` of the oriented resolution `C̄(Γ⁰)`.
pub fn p_matrices() -> (PolyMatrix, PolyMatrix) {
    let (p41, p32) = (pi_bar(&x(4), &x(1)), pi_bar(&x(3), &x(2)));
    (
        m2([[p41.clone(), x(2) - x(3)], [p32.clone(), x(4) - x(1)]]),
        m2([[x(1) - x(4), x(2) - x(3)], [p32, -p41]]),
    )
}

/// The differentials `(Q₀, Q₁)` of the singular resolution `C̄(Γ¹)`.
pub fn q_matrices() -> (PolyMatrix, PolyMatrix) {
    let u1 = u1_bar(&x(1), &x(2), &x(3), &x(4));
    let u2 = u2_bar(&x(3), &x(4));
    let e = x(1) * x(2) - x(3) * x(4);
    (
        m2([[u1.clone(), e.clone()], [u2.clone(), x(3) + x(4) - x(1) - x(2)]]),
        m2([[x(1) + x(2) - x(3) - x(4), e], [u2, -u1]]),
    )
}

/// `Λ₀ = (U₀, U₁): C̄(Γ⁰) → C̄(Γ¹)`.
pub fn lambda0() -> MFMorphism {
    let k = x(1) - x(2) + x(3) + x(4).scale(&rat(2, 1)) - half_h(3);
    MFMorphism {
        m0: m2([[x(4) - x(2), c(0)], [k, c(1)]]),
        m1: m2([[x(4), -x(2)], [c(-1), c(1)]]),
        degree: 1,
    }
}

/// `Λ₁ = (V₀, V₁): C̄(Γ¹) → C̄(Γ⁰)`.
pub fn lambda1() -> MFMorphism {
    let k = -x(1) + x(2) - x(3) - x(4).scale(&rat(2, 1)) + half_h(3);
    MFMorphism {
        m0: m2([[c(1), c(0)], [k, x(4) - x(2)]]),
        m1: m2([[c(1), x(2)], [c(1), x(4)]]),
        degree: 1,
    }
}

/// The flip `ψ_c: (a, c·b) → (a·c, b)`.
pub fn flip(c: &MultiPoly, degree: i32) -> MFMorphism {
    MFMorphism {
        m0: PolyMatrix::identity(1),
        m1: PolyMatrix::scalar(1, c),
        degree,
    }
}

/// The flip `ψ′_c: (a·c, b) → (a, c·b)`.
pub fn flip_prime(c: &MultiPoly, degree: i32) -> MFMorphism {
    MFMorphism {
        m0: PolyMatrix::scalar(1, c),
        m1: PolyMatrix::identity(1),
        degree,
    }
}

/// `U₀V₀ = U₁V₁ = V₀U₀ = V₁U₁ = (x₄ − x₂)·id` for the given maps.
pub fn compose_check_with(u: &MFMorphism, v: &MFMorphism) -> bool {
    let target = PolyMatrix::scalar(2, &(x(4) - x(2)));
    [(&u.m0, &v.m0), (&u.m1, &v.m1), (&v.m0, &u.m0), (&v.m1, &u.m1)]
        .into_iter()
        .all(|(a, b)| a.try_mul(b).is_ok_and(|p| p == target))
}

pub fn compose_check() -> bool {
    compose_check_with(&lambda0(), &lambda1())
}
