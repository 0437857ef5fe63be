//! Sparse cochain complexes of free graded modules.
//!
//! Generators carry a homological degree `hom` and a quantum degree `q`. The
//! differential raises `hom` by one and is stored as out-going sparse rows.
//! Coefficients are either polynomials in `a, h` (before specialization) or
//! rationals (after).

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{fmt_rational, Homogeneity, LaurentPoly, MultiPoly, Rational};

/// Coefficient ring of a complex. `is_unit` decides which entries
/// [`GradedComplex::gauss_reduce`] may cancel.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Inverse of a unit.
    fn inverse(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_text(&self) -> String;
    /// Quantum degree of a homogeneous coefficient; `None` if zero or mixed.
    fn grading(&self) -> Homogeneity;
}

impl Coeff for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.constant_value().is_some_and(|c| !Zero::is_zero(&c))
    }
    fn inverse(&self) -> Self {
        MultiPoly::constant(self.constant_value().expect("unit").recip())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn grading(&self) -> Homogeneity {
        self.homogeneous_degree()
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_text(&self) -> String {
        fmt_rational(self)
    }
    fn grading(&self) -> Homogeneity {
        if Zero::is_zero(self) {
            Homogeneity::Zero
        } else {
            Homogeneity::Degree(0)
        }
    }
}

/// A basis element: a word on the cycles of one resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Generator {
    pub hom: i32,
    pub q: i32,
    /// Cube vertex (bit `c` set when crossing `c` takes its later state).
    pub state: u64,
    /// Bit `k` set when cycle `k` carries `X`.
    pub word: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedComplex<C> {
    gens: Vec<Generator>,
    /// `d[x]` maps target generator index to coefficient.
    d: Vec<BTreeMap<usize, C>>,
}

impl<C: Coeff> GradedComplex<C> {
    pub fn new(gens: Vec<Generator>) -> Self {
        let d = vec![BTreeMap::new(); gens.len()];
        GradedComplex { gens, d }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Adds `c` to the entry `source → target`.
    pub fn add_entry(&mut self, source: usize, target: usize, c: C) {
        if c.is_zero() {
            return;
        }
        let row = &mut self.d[source];
        match row.get_mut(&target) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    row.remove(&target);
                }
            }
            None => {
                row.insert(target, c);
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.d
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().map(move |(&t, c)| (s, t, c)))
    }

    pub fn differential_of(&self, source: usize) -> &BTreeMap<usize, C> {
        &self.d[source]
    }

    pub fn num_entries(&self) -> usize {
        self.d.iter().map(BTreeMap::len).sum()
    }

    /// Homological degrees with at least one generator.
    pub fn degrees(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.gens.iter().map(|g| g.hom).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Generator indices in degree `i`, in order.
    pub fn indices_in(&self, i: i32) -> Vec<usize> {
        (0..self.gens.len()).filter(|&k| self.gens[k].hom == i).collect()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedComplex<D> {
        let mut out = GradedComplex::new(self.gens.clone());
        for (s, t, c) in self.entries() {
            out.add_entry(s, t, f(c));
        }
        out
    }

    /// Dense matrix of `d: C^i → C^{i+1}` (rows index targets).
    pub fn matrix(&self, i: i32) -> Vec<Vec<C>> {
        let src = self.indices_in(i);
        let tgt = self.indices_in(i + 1);
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(r, &t)| (t, r)).collect();
        let mut m = vec![vec![C::zero(); src.len()]; tgt.len()];
        for (col, &s) in src.iter().enumerate() {
            for (t, c) in &self.d[s] {
                m[pos[t]][col] = c.clone();
            }
        }
        m
    }

    /// Checks that every entry raises `hom` by one and `d ∘ d = 0`.
    pub fn check_d_squared(&self) -> Result<()> {
        for (s, t, _) in self.entries() {
            if self.gens[t].hom != self.gens[s].hom + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "entry {s} → {t} does not raise the homological degree by one"
                )));
            }
        }
        for (s, row) in self.d.iter().enumerate() {
            let mut acc: BTreeMap<usize, C> = BTreeMap::new();
            for (&m, c1) in row {
                for (&t, c2) in &self.d[m] {
                    let v = acc.entry(t).or_insert_with(C::zero);
                    *v = v.add(&c1.mul(c2));
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Err(Error::NonZeroSquare(self.gens[s].hom));
            }
        }
        Ok(())
    }

    /// True if every entry `x → y` is homogeneous of degree `q(x) − q(y)`,
    /// so that `d` has degree zero.
    pub fn is_grading_preserving(&self) -> bool {
        self.entries()
            .all(|(s, t, c)| c.grading().admits(self.gens[s].q - self.gens[t].q))
    }

    /// `Σ (−1)^{hom} q^{q}` over generators.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut e = LaurentPoly::zero();
        for g in &self.gens {
            e.add_term(g.q, if g.hom.rem_euclid(2) == 0 { 1 } else { -1 });
        }
        e
    }

    /// Cancels differential entries that are units, updating the remaining
    /// entries by the zig-zag rule `d(z→w) −= d(z→y)·u⁻¹·d(x→w)` for every
    /// cancelled `x → y` with coefficient `u`. Pivots are chosen
    /// deterministically, preferring those with the least fill-in.
    pub fn gauss_reduce(&self) -> GradedComplex<C> {
        let n = self.gens.len();
        let mut out: Vec<BTreeMap<usize, C>> = self.d.clone();
        let mut inc: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); n];
        for (s, row) in out.iter().enumerate() {
            for &t in row.keys() {
                inc[t].insert(s, ());
            }
        }
        let mut alive = vec![true; n];
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if !alive[x] {
                    continue;
                }
                let pivot = out[x]
                    .iter()
                    .filter(|(_, c)| c.is_unit())
                    .min_by_key(|(&y, _)| (inc[y].len(), y))
                    .map(|(&y, c)| (y, c.clone()));
                let Some((y, u)) = pivot else { continue };
                changed = true;
                let uinv = u.inverse();
                let sources: Vec<(usize, C)> = inc[y]
                    .keys()
                    .filter(|&&z| z != x)
                    .map(|&z| (z, out[z][&y].clone()))
                    .collect();
                let targets: Vec<(usize, C)> = out[x]
                    .iter()
                    .filter(|(&w, _)| w != y)
                    .map(|(&w, c)| (w, c.clone()))
                    .collect();
                for (z, czy) in &sources {
                    let f = czy.mul(&uinv).neg();
                    for (w, cxw) in &targets {
                        let delta = f.mul(cxw);
                        let row = &mut out[*z];
                        let entry = row.entry(*w).or_insert_with(C::zero);
                        *entry = entry.add(&delta);
                        if entry.is_zero() {
                            row.remove(w);
                            inc[*w].remove(z);
                        } else {
                            inc[*w].insert(*z, ());
                        }
                    }
                }
                // Remove x and y with all incident entries.
                for v in [x, y] {
                    for t in std::mem::take(&mut out[v]).into_keys() {
                        inc[t].remove(&v);
                    }
                    for s in std::mem::take(&mut inc[v]).into_keys() {
                        out[s].remove(&v);
                    }
                    alive[v] = false;
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&k| alive[k]).collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut reduced = GradedComplex::new(keep.iter().map(|&k| self.gens[k]).collect());
        for (i, &k) in keep.iter().enumerate() {
            for (t, c) in &out[k] {
                reduced.d[i].insert(index[t], c.clone());
            }
        }
        reduced
    }
}

#[derive(Serialize)]
struct DumpGenerator {
    index: usize,
    q: i32,
    state: u64,
    word: u64,
}

#[derive(Serialize)]
struct DumpDegree {
    hom: i32,
    generators: Vec<DumpGenerator>,
}

#[derive(Serialize)]
struct DumpDifferential {
    from: i32,
    /// `(row, col, coefficient)`: row indexes degree `from + 1`.
    entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize)]
struct Dump {
    degrees: Vec<DumpDegree>,
    differentials: Vec<DumpDifferential>,
}

impl<C: Coeff> GradedComplex<C> {
    /// JSON dump: generators per degree with q-degrees, and each
    /// differential as sparse `(row, col, text)` entries.
    pub fn to_json(&self) -> serde_json::Value {
        let mut local = vec![0; self.gens.len()];
        let mut degrees = Vec::new();
        for i in self.degrees() {
            let idx = self.indices_in(i);
            for (k, &g) in idx.iter().enumerate() {
                local[g] = k;
            }
            degrees.push(DumpDegree {
                hom: i,
                generators: idx
                    .iter()
                    .enumerate()
                    .map(|(k, &g)| DumpGenerator {
                        index: k,
                        q: self.gens[g].q,
                        state: self.gens[g].state,
                        word: self.gens[g].word,
                    })
                    .collect(),
            });
        }
        let mut differentials = Vec::new();
        for i in self.degrees() {
            let mut entries: Vec<(usize, usize, String)> = self
                .indices_in(i)
                .into_iter()
                .flat_map(|s| {
                    self.d[s]
                        .iter()
                        .map(move |(&t, c)| (t, s, c.to_text()))
                        .collect::<Vec<_>>()
                })
                .map(|(t, s, c)| (local[t], local[s], c))
                .collect();
            entries.sort();
            if !entries.is_empty() {
                differentials.push(DumpDifferential { from: i, entries });
            }
        }
        serde_json::to_value(Dump {
            degrees,
            differentials,
        })
        .expect("complex dump serializes")
    }
}

/// Rank of a rational matrix by fraction-free (Bareiss) elimination with
/// pivots taken in (row, column) order.
pub fn bareiss_rank(m: &[Vec<Rational>]) -> usize {
    use num_bigint::BigInt;
    if m.is_empty() {
        return 0;
    }
    // Clear denominators row by row.
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |l, x| num_integer::lcm(l, x.denom().clone()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

impl Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, q{}] {:b}/{:b}", self.hom, self.q, self.state, self.word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn gen(hom: i32, q: i32) -> Generator {
        Generator {
            hom,
            q,
            state: 0,
            word: 0,
        }
    }

    #[test]
    fn cancels_units_and_keeps_others() {
        // 0 → R·x --(1, h)--> R·y1 ⊕ R·y2
        let mut c: GradedComplex<MultiPoly> = GradedComplex::new(vec![gen(0, 0), gen(1, 0), gen(1, 2)]);
        c.add_entry(0, 1, MultiPoly::one());
        c.add_entry(0, 2, MultiPoly::h());
        let r = c.gauss_reduce();
        assert_eq!(r.len(), 1);
        assert_eq!(r.generators()[0].q, 2);
        assert_eq!(r.euler_characteristic(), c.euler_characteristic());
    }

    #[test]
    fn zero_differential_unchanged() {
        let c: GradedComplex<Rational> = GradedComplex::new(vec![gen(0, 1), gen(1, 3)]);
        assert_eq!(c.gauss_reduce(), c);
    }

    #[test]
    fn zigzag_updates_neighbours() {
        // a → {b, c}, d → {b, c} with a→b unit: after cancelling, d → c gets
        // d→c − d→b · (a→b)⁻¹ · a→c.
        let mut c: GradedComplex<Rational> =
            GradedComplex::new(vec![gen(0, 0), gen(0, 0), gen(1, 0), gen(1, 0)]);
        c.add_entry(0, 2, int(2));
        c.add_entry(0, 3, int(1));
        c.add_entry(1, 2, int(4));
        c.add_entry(1, 3, int(2));
        let r = c.gauss_reduce();
        assert_eq!(r.len(), 2);
        assert_eq!(r.num_entries(), 0);
    }

    #[test]
    fn bareiss() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(1), int(0), crate::poly::rat(1, 2)],
        ];
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(bareiss_rank(&[vec![int(0)]]), 0);
    }
}
