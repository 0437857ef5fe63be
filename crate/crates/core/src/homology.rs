//! Homology of the cube complex at rational specializations of `(a, h)`.
//!
//! Homology over ℚ[a,h] itself is not computed. Instead the complex is
//! reduced by cancelling unit entries, and then evaluated at a point
//! `(a₀, h₀)` and reduced to zero differential over ℚ. The quantum grading
//! survives only at `(0, 0)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{bareiss_rank, GradedComplex};
use crate::cube::complex_of;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::poly::{fmt_rational, int, rat, LaurentPoly, MultiPoly, Rational, Var};

/// Multiplier `M` in the degree formula `M · Σ_{i<j, φ(i)≠φ(j)} lk(i, j)`
/// for the generator attached to a root assignment `φ`. Measured on the Hopf
/// links, where the mixed generators sit in degree `−2·lk`.
pub const DEGREE_FORMULA_MULTIPLIER: i64 = -2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootStructure {
    DoubleRoot,
    DistinctRoots,
}

/// A rational point `(a₀, h₀)`; `f(X) = X² − h₀X − a₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub name: String,
    pub a: Rational,
    pub h: Rational,
}

impl Specialization {
    pub fn new(a: Rational, h: Rational) -> Self {
        let name = format!("{},{}", fmt_rational(&a), fmt_rational(&h));
        Specialization { name, a, h }
    }

    fn named(name: &str, a: Rational, h: Rational) -> Self {
        Specialization {
            name: name.to_string(),
            a,
            h,
        }
    }

    /// `khovanov = (0,0)`, `distinct1 = (1,0)`, `distinct2 = (0,1)`,
    /// `double = (−1/4,1)`.
    pub fn presets() -> Vec<Specialization> {
        vec![
            Self::named("khovanov", int(0), int(0)),
            Self::named("distinct1", int(1), int(0)),
            Self::named("distinct2", int(0), int(1)),
            Self::named("double", rat(-1, 4), int(1)),
        ]
    }

    pub fn preset(name: &str) -> Result<Specialization> {
        Self::presets()
            .into_iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSpecialization(name.to_string()))
    }

    pub fn discriminant(&self) -> Rational {
        &self.h * &self.h + int(4) * &self.a
    }

    pub fn root_structure(&self) -> RootStructure {
        if self.discriminant().is_zero() {
            RootStructure::DoubleRoot
        } else {
            RootStructure::DistinctRoots
        }
    }

    /// The quantum grading survives only at the origin.
    pub fn is_graded(&self) -> bool {
        self.a.is_zero() && self.h.is_zero()
    }

    pub fn point(&self) -> BTreeMap<Var, Rational> {
        BTreeMap::from([(Var::A, self.a.clone()), (Var::H, self.h.clone())])
    }
}

/// Accepts a preset name or `a,h` with rational entries such as `-1/4,1`.
impl FromStr for Specialization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(p) = Self::preset(s) {
            return Ok(p);
        }
        let unknown = || Error::UnknownSpecialization(s.to_string());
        let (a, h) = s.split_once(',').ok_or_else(unknown)?;
        let parse = |t: &str| -> Result<Rational> {
            let p: MultiPoly = t.trim().parse().map_err(|_| unknown())?;
            p.constant_value().ok_or_else(unknown)
        };
        Ok(Specialization::new(parse(a)?, parse(h)?))
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (a={}, h={})",
            self.name,
            fmt_rational(&self.a),
            fmt_rational(&self.h)
        )
    }
}

/// Evaluates every entry at `(a₀, h₀)`.
pub fn specialize(c: &GradedComplex<MultiPoly>, s: &Specialization) -> GradedComplex<Rational> {
    let point = s.point();
    c.map_coeffs(|p| p.evaluate(&point).expect("cube entries only involve a and h"))
}

/// Homology dimensions per homological degree, and per `(i, j)` when the
/// quantum grading is kept.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HomologyTable {
    #[serde(serialize_with = "bigraded_rows")]
    pub bigraded: Option<BTreeMap<(i32, i32), usize>>,
    pub totals: BTreeMap<i32, usize>,
}

/// `(i, j) ↦ dim` as `[i, j, dim]` rows, since JSON keys are strings.
fn bigraded_rows<S: serde::Serializer>(b: &Option<BTreeMap<(i32, i32), usize>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Option<Vec<(i32, i32, usize)>> = b.as_ref().map(|b| b.iter().map(|(&(i, j), &d)| (i, j, d)).collect());
    rows.serialize(s)
}

impl HomologyTable {
    pub fn total_dim(&self) -> usize {
        self.totals.values().sum()
    }

    pub fn dim(&self, i: i32) -> usize {
        self.totals.get(&i).copied().unwrap_or(0)
    }

    /// `Σ (−1)^i q^j dim H^{i,j}` when bigraded.
    pub fn euler_characteristic(&self) -> Option<LaurentPoly> {
        let b = self.bigraded.as_ref()?;
        let mut e = LaurentPoly::zero();
        for (&(i, j), &d) in b {
            e.add_term(j, if i.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) });
        }
        Some(e)
    }

    /// Tab-separated rows `i, [j,] dim` with a header line.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        match &self.bigraded {
            Some(b) => {
                s.push_str("i\tj\tdim\n");
                for (&(i, j), &d) in b {
                    s.push_str(&format!("{i}\t{j}\t{d}\n"));
                }
            }
            None => {
                s.push_str("i\tdim\n");
                for (&i, &d) in &self.totals {
                    s.push_str(&format!("{i}\t{d}\n"));
                }
            }
        }
        s
    }

    fn from_generators(gens: impl Iterator<Item = (i32, i32)>, bigraded: bool) -> Self {
        let mut t = HomologyTable {
            bigraded: bigraded.then(BTreeMap::new),
            totals: BTreeMap::new(),
        };
        for (i, q) in gens {
            *t.totals.entry(i).or_default() += 1;
            if let Some(b) = &mut t.bigraded {
                *b.entry((i, q)).or_default() += 1;
            }
        }
        t
    }
}

/// Homology over ℚ by cancelling every nonzero entry. `bigraded` is only
/// meaningful when the complex came from the origin.
pub fn homology_dims(c: &GradedComplex<Rational>, bigraded: bool) -> HomologyTable {
    let r = c.gauss_reduce();
    debug_assert_eq!(r.num_entries(), 0);
    HomologyTable::from_generators(r.generators().iter().map(|g| (g.hom, g.q)), bigraded)
}

/// Independent route: `dim H^i = n_i − rk d_i − rk d_{i−1}` by exact rank,
/// split by quantum degree when `bigraded`.
pub fn homology_dims_by_rank(c: &GradedComplex<Rational>, bigraded: bool) -> HomologyTable {
    let blocks: Vec<Option<i32>> = if bigraded {
        let mut qs: Vec<i32> = c.generators().iter().map(|g| g.q).collect();
        qs.sort_unstable();
        qs.dedup();
        qs.into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let mut t = HomologyTable {
        bigraded: bigraded.then(BTreeMap::new),
        totals: BTreeMap::new(),
    };
    for q in blocks {
        let keep: Vec<usize> = (0..c.len())
            .filter(|&k| q.is_none_or(|q| c.generators()[k].q == q))
            .collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut sub = GradedComplex::new(keep.iter().map(|&k| c.generators()[k]).collect());
        for (s, tt, v) in c.entries() {
            if let (Some(&s2), Some(&t2)) = (index.get(&s), index.get(&tt)) {
                sub.add_entry(s2, t2, v.clone());
            }
        }
        let degrees = sub.degrees();
        let rank: BTreeMap<i32, usize> = degrees
            .iter()
            .map(|&i| (i, bareiss_rank(&sub.matrix(i))))
            .collect();
        for &i in &degrees {
            let n = sub.indices_in(i).len();
            let d = n - rank[&i] - rank.get(&(i - 1)).copied().unwrap_or(0);
            if d > 0 {
                *t.totals.entry(i).or_default() += d;
                if let (Some(b), Some(q)) = (&mut t.bigraded, q) {
                    b.insert((i, q), d);
                }
            }
        }
    }
    t
}

/// `Σ (−1)^i q^j` over generators; equals the Euler characteristic of
/// homology since ranks telescope.
pub fn euler_characteristic(c: &GradedComplex<MultiPoly>) -> LaurentPoly {
    c.euler_characteristic()
}

/// Full pipeline for one diagram at one point.
pub fn link_homology(d: &LinkDiagram, s: &Specialization, bigraded: bool) -> HomologyTable {
    let c = specialize(&complex_of(d), s);
    homology_dims(&c, bigraded && s.is_graded())
}

/// One generator predicted by a root assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootAssignment {
    /// Root index (0 or 1) of every component.
    pub phi: Vec<u8>,
    pub degree: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctRootReport {
    pub assignments: Vec<RootAssignment>,
    pub computed: BTreeMap<i32, usize>,
    pub multiplier: i64,
}

/// Predicted homological degree of every root assignment.
pub fn predicted_degrees(d: &LinkDiagram, multiplier: i64) -> Vec<RootAssignment> {
    let n = d.num_components();
    let lk = d.linking_matrix();
    (0..1u64 << n)
        .map(|bits| {
            let phi: Vec<u8> = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
            let mut sum = Rational::zero();
            for i in 0..n {
                for j in i + 1..n {
                    if phi[i] != phi[j] {
                        sum += &lk[i][j];
                    }
                }
            }
            let deg = sum * int(multiplier);
            assert!(deg.is_integer(), "linking numbers between components are integers");
            RootAssignment {
                phi,
                degree: deg.to_integer().try_into().expect("degree fits"),
            }
        })
        .collect()
}

/// Computes homology at a distinct-root point and compares the degree
/// multiset with the linking-number prediction.
pub fn distinct_root_report(d: &LinkDiagram, s: &Specialization) -> Result<DistinctRootReport> {
    if s.root_structure() == RootStructure::DoubleRoot {
        return Err(Error::DoubleRoot);
    }
    let table = link_homology(d, s, false);
    let assignments = predicted_degrees(d, DEGREE_FORMULA_MULTIPLIER);
    let mut expected: BTreeMap<i32, usize> = BTreeMap::new();
    for a in &assignments {
        *expected.entry(a.degree).or_default() += 1;
    }
    if expected != table.totals {
        return Err(Error::DegreeMismatch {
            expected: expected.into_iter().collect(),
            computed: table.totals.into_iter().collect(),
        });
    }
    Ok(DistinctRootReport {
        assignments,
        computed: table.totals,
        multiplier: DEGREE_FORMULA_MULTIPLIER,
    })
}

/// Homology at every preset, computed in parallel.
pub fn all_presets(d: &LinkDiagram, bigraded: bool) -> Vec<(Specialization, HomologyTable)> {
    let c = complex_of(d);
    Specialization::presets()
        .into_par_iter()
        .map(|s| {
            let t = homology_dims(&specialize(&c, &s), bigraded && s.is_graded());
            (s, t)
        })
        .collect()
}

impl Specialization {
    /// True if the discriminant is a nonzero square, so both roots are rational.
    pub fn has_rational_roots(&self) -> bool {
        let disc = self.discriminant();
        if disc.is_negative() {
            return false;
        }
        let sq = |n: &num_bigint::BigInt| {
            let r = n.sqrt();
            &r * &r == *n
        };
        sq(disc.numer()) && sq(disc.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> LinkDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn presets_and_parsing() {
        let d: Specialization = "double".parse().unwrap();
        assert_eq!(d.root_structure(), RootStructure::DoubleRoot);
        let p: Specialization = "-1/4, 1".parse().unwrap();
        assert_eq!((p.a.clone(), p.h.clone()), (d.a.clone(), d.h.clone()));
        assert!("nope".parse::<Specialization>().is_err());
        let t: Specialization = "distinct1".parse().unwrap();
        assert_eq!(t.root_structure(), RootStructure::DistinctRoots);
        assert_eq!(t.discriminant(), int(4));
    }

    #[test]
    fn unknot_and_kinks() {
        let k = Specialization::preset("khovanov").unwrap();
        let t = link_homology(&LinkDiagram::unknot(), &k, true);
        assert_eq!(
            t.bigraded.unwrap(),
            BTreeMap::from([((0, -1), 1), ((0, 1), 1)])
        );
        let t = link_homology(&pd("X[1,1,2,2]"), &k, true);
        assert_eq!(t.totals, BTreeMap::from([(0, 2)]));
    }

    #[test]
    fn reduce_agrees_with_rank() {
        let d = pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]");
        let c = complex_of(&d);
        for s in Specialization::presets() {
            let sc = specialize(&c, &s);
            let g = s.is_graded();
            assert_eq!(homology_dims(&sc, g), homology_dims_by_rank(&sc, g), "{s}");
        }
    }

    #[test]
    fn hopf_degrees() {
        let neg = pd("X[4,1,3,2]\nX[2,3,1,4]");
        let pos = neg.mirror();
        let s = Specialization::preset("distinct1").unwrap();
        let rp = distinct_root_report(&pos, &s).unwrap();
        assert_eq!(rp.computed, BTreeMap::from([(-2, 2), (0, 2)]));
        let rn = distinct_root_report(&neg, &s).unwrap();
        assert_eq!(rn.computed, BTreeMap::from([(0, 2), (2, 2)]));
        assert_eq!(
            distinct_root_report(&pos, &Specialization::preset("double").unwrap()),
            Err(Error::DoubleRoot)
        );
    }
}
