//! The cube of resolutions and the chain complex over ℚ[a,h].
//!
//! Each crossing has an earlier and a later state. A positive crossing goes
//! from singular (degree −1, shift {2}) to oriented (degree 0, shift {1}); a
//! negative one from oriented (degree 0, shift {−1}) to singular (degree 1,
//! shift {−2}). A cube vertex is a bit vector `b` with `b_c = 1` for the later
//! state at crossing `c`, so its homological degree is `Σ b − n₊`.
//!
//! The object at a vertex is `A^{⊗k}` for its `k` cycles. An edge is a merge
//! or a split of the cycles through the changed crossing, with sign
//! `(−1)^{Σ_{c' < c} b_{c'}}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::complex::{Generator, GradedComplex};
use crate::diagram::{LinkDiagram, Resolution, ResolutionWord, Sign};
use crate::error::{Error, Result};
use crate::frobenius::{bit, word_degree, CobordismMap, Piece, Word};
use crate::poly::MultiPoly;
use crate::web::{Cycle, Web};

#[derive(Debug, Clone)]
pub struct CubeVertex {
    pub bits: u64,
    pub word: ResolutionWord,
    pub web: Web,
    pub cycles: Vec<Cycle>,
    /// Cycle index of every edge of the web.
    pub cycle_of: BTreeMap<u32, usize>,
    pub hom: i32,
    pub q_shift: i32,
}

impl CubeVertex {
    pub fn num_generators(&self) -> usize {
        1 << self.cycles.len()
    }

    /// Quantum degree of the generator `w`.
    pub fn generator_q(&self, w: Word) -> i32 {
        self.q_shift + word_degree(w, self.cycles.len())
    }
}

#[derive(Debug, Clone)]
pub struct Cube {
    pub crossings: usize,
    pub vertices: Vec<CubeVertex>,
}

/// Resolution of crossing `c` in cube state `later`.
pub fn state_resolution(sign: Sign, later: bool) -> Resolution {
    match (sign, later) {
        (Sign::Positive, false) | (Sign::Negative, true) => Resolution::Singular,
        _ => Resolution::Oriented,
    }
}

pub fn vertex(d: &LinkDiagram, bits: u64) -> CubeVertex {
    let n = d.num_crossings();
    let mut word = ResolutionWord::all_oriented(n);
    let mut q_shift = 0;
    for (c, x) in d.crossings().iter().enumerate() {
        let later = (bits >> c) & 1 == 1;
        let r = state_resolution(x.sign, later);
        word = word.with(c, r);
        let s = x.sign.value();
        q_shift += match r {
            Resolution::Oriented => s,
            Resolution::Singular => 2 * s,
        };
    }
    let web = d.resolve(&word);
    let cycles = web.cycles();
    let cycle_of = cycles
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.edges.iter().map(move |&e| (e, i)))
        .collect();
    CubeVertex {
        bits,
        word,
        web,
        cycles,
        cycle_of,
        hom: bits.count_ones() as i32 - d.num_positive() as i32,
        q_shift,
    }
}

pub fn build_cube(d: &LinkDiagram) -> Cube {
    let n = d.num_crossings();
    assert!(n < 63, "too many crossings for the cube");
    let vertices = (0..1u64 << n).into_par_iter().map(|b| vertex(d, b)).collect();
    Cube {
        crossings: n,
        vertices,
    }
}

impl Cube {
    /// Edges `(source, target, crossing)` in increasing source order.
    pub fn edges(&self) -> Vec<(u64, u64, usize)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            for c in 0..self.crossings {
                if (v.bits >> c) & 1 == 0 {
                    out.push((v.bits, v.bits | 1 << c, c));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaddleKind {
    Merge,
    Split,
}

/// The map on an edge of the cube, in slot form.
#[derive(Debug, Clone)]
pub struct EdgeMap {
    pub crossing: usize,
    pub kind: SaddleKind,
    pub sign: i32,
    /// Target cycle of every untouched source cycle.
    carry: Vec<Option<usize>>,
    /// Touched source cycles (one for a split, two for a merge).
    src: Vec<usize>,
    /// Touched target cycles (two for a split, one for a merge).
    tgt: Vec<usize>,
    src_arity: usize,
    tgt_arity: usize,
}

/// Cycles of `v` through the four edges at junction `c`.
fn touched(v: &CubeVertex, c: usize) -> Vec<usize> {
    let j = &v.web.junctions()[c];
    let mut t: Vec<usize> = j
        .ins
        .iter()
        .chain(&j.outs)
        .map(|e| v.cycle_of[e])
        .collect();
    t.sort_unstable();
    t.dedup();
    t
}

/// The cobordism between adjacent vertices: merge when the crossing's local
/// strands lie on two cycles of the source, split otherwise.
pub fn edge_map(source: &CubeVertex, target: &CubeVertex) -> Result<EdgeMap> {
    let diff = source.bits ^ target.bits;
    if diff.count_ones() != 1 || target.bits & diff == 0 {
        return Err(Error::NotAdjacent(
            source.word.to_string(),
            target.word.to_string(),
        ));
    }
    let c = diff.trailing_zeros() as usize;
    let src = touched(source, c);
    let tgt = touched(target, c);
    let kind = match (src.len(), tgt.len()) {
        (2, 1) => SaddleKind::Merge,
        (1, 2) => SaddleKind::Split,
        _ => unreachable!("a saddle changes the cycle count by one"),
    };
    let carry = source
        .cycles
        .iter()
        .enumerate()
        .map(|(i, cyc)| (!src.contains(&i)).then(|| target.cycle_of[&cyc.edges[0]]))
        .collect();
    let below = source.bits & ((1 << c) - 1);
    Ok(EdgeMap {
        crossing: c,
        kind,
        sign: if below.count_ones().is_multiple_of(2) { 1 } else { -1 },
        carry,
        src,
        tgt,
        src_arity: source.cycles.len(),
        tgt_arity: target.cycles.len(),
    })
}

impl EdgeMap {
    /// Image of a source basis word as `(target word, coefficient)` pairs,
    /// sign included.
    pub fn apply_word(&self, w: Word) -> Vec<(Word, MultiPoly)> {
        let mut base: Word = 0;
        for (i, t) in self.carry.iter().enumerate() {
            if let Some(t) = t {
                if bit(w, i) {
                    base |= 1 << t;
                }
            }
        }
        let s = MultiPoly::int(self.sign as i64);
        let out: Vec<(Word, MultiPoly)> = match self.kind {
            SaddleKind::Merge => {
                let t = 1 << self.tgt[0];
                match (bit(w, self.src[0]), bit(w, self.src[1])) {
                    (false, false) => vec![(base, s)],
                    (true, true) => vec![(base | t, &s * &MultiPoly::h()), (base, &s * &MultiPoly::a())],
                    _ => vec![(base | t, s)],
                }
            }
            SaddleKind::Split => {
                let (t1, t2) = (1 << self.tgt[0], 1 << self.tgt[1]);
                if bit(w, self.src[0]) {
                    vec![(base | t1 | t2, s.clone()), (base, &s * &MultiPoly::a())]
                } else {
                    vec![(base | t2, s.clone()), (base | t1, s.clone()), (base, -(&s * &MultiPoly::h()))]
                }
            }
        };
        out
    }

    /// The same map as a composite of elementary cobordisms: move the
    /// touched slots to the front, merge or split, then move every slot to
    /// its target position. The sign is not part of the cobordism.
    pub fn cobordism(&self) -> CobordismMap {
        let mut front: Vec<usize> = self.src.clone();
        front.extend((0..self.src_arity).filter(|i| !self.src.contains(i)));
        let mut to_front = vec![0; self.src_arity];
        for (pos, &slot) in front.iter().enumerate() {
            to_front[slot] = pos;
        }
        let saddle = match self.kind {
            SaddleKind::Merge => Piece::Merge(0, 1),
            SaddleKind::Split => Piece::Split(0),
        };
        let k = self.tgt.len();
        let mut place = self.tgt.clone();
        place.extend(
            front[self.src.len()..]
                .iter()
                .map(|&i| self.carry[i].expect("untouched cycle")),
        );
        debug_assert_eq!(place.len(), self.tgt_arity);
        debug_assert!(k >= 1);
        CobordismMap::new(vec![Piece::Permute(to_front), saddle, Piece::Permute(place)])
    }
}

/// Assembles the complex: generators ordered by (vertex, word), differentials
/// from the signed edge maps. Vertices are processed in parallel and merged
/// in a fixed order.
pub fn assemble_complex(cube: &Cube) -> GradedComplex<MultiPoly> {
    let mut offset = Vec::with_capacity(cube.vertices.len());
    let mut gens = Vec::new();
    for v in &cube.vertices {
        offset.push(gens.len());
        for w in 0..v.num_generators() as Word {
            gens.push(Generator {
                hom: v.hom,
                q: v.generator_q(w),
                state: v.bits,
                word: w,
            });
        }
    }
    let blocks: Vec<Vec<(usize, usize, MultiPoly)>> = cube
        .vertices
        .par_iter()
        .map(|v| {
            let mut entries = Vec::new();
            for c in 0..cube.crossings {
                if (v.bits >> c) & 1 == 1 {
                    continue;
                }
                let t = &cube.vertices[(v.bits | 1 << c) as usize];
                let e = edge_map(v, t).expect("cube edge");
                for w in 0..v.num_generators() as Word {
                    for (w2, coef) in e.apply_word(w) {
                        entries.push((
                            offset[v.bits as usize] + w as usize,
                            offset[t.bits as usize] + w2 as usize,
                            coef,
                        ));
                    }
                }
            }
            entries
        })
        .collect();
    let mut complex = GradedComplex::new(gens);
    for block in blocks {
        for (s, t, c) in block {
            complex.add_entry(s, t, c);
        }
    }
    complex
}

/// Builds the cube and its complex for `d`.
pub fn complex_of(d: &LinkDiagram) -> GradedComplex<MultiPoly> {
    assemble_complex(&build_cube(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::AElem;
    use crate::skein::link_bracket;

    fn pd(s: &str) -> LinkDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn unknot_cube() {
        let cube = build_cube(&LinkDiagram::unknot());
        assert_eq!(cube.vertices.len(), 1);
        assert_eq!((cube.vertices[0].hom, cube.vertices[0].q_shift), (0, 0));
    }

    #[test]
    fn kink_cubes() {
        let pos = build_cube(&pd("X[1,1,2,2]"));
        let v: Vec<(i32, i32, Resolution)> = pos
            .vertices
            .iter()
            .map(|v| (v.hom, v.q_shift, v.word.get(0)))
            .collect();
        assert_eq!(v, vec![(-1, 2, Resolution::Singular), (0, 1, Resolution::Oriented)]);
        let neg = build_cube(&pd("X[1,2,2,1]"));
        let v: Vec<(i32, i32, Resolution)> = neg
            .vertices
            .iter()
            .map(|v| (v.hom, v.q_shift, v.word.get(0)))
            .collect();
        assert_eq!(v, vec![(0, -1, Resolution::Oriented), (1, -2, Resolution::Singular)]);
    }

    #[test]
    fn edge_kinds() {
        let d = pd("X[1,1,2,2]");
        let cube = build_cube(&d);
        let e = edge_map(&cube.vertices[0], &cube.vertices[1]).unwrap();
        assert_eq!(e.kind, SaddleKind::Split);
        assert_eq!(e.cobordism().degree(), 1);
        assert!(edge_map(&cube.vertices[1], &cube.vertices[0]).is_err());

        // Negative Hopf: (or, or) → (sing, or) joins the two loops.
        let hopf = pd("X[4,1,3,2]\nX[2,3,1,4]");
        let cube = build_cube(&hopf);
        assert_eq!(cube.vertices[0].cycles.len(), 2);
        assert_eq!(cube.vertices[1].cycles.len(), 1);
        let e = edge_map(&cube.vertices[0], &cube.vertices[1]).unwrap();
        assert_eq!(e.kind, SaddleKind::Merge);
        assert_eq!(e.cobordism().degree(), 1);
    }

    #[test]
    fn slot_form_matches_cobordism() {
        let d = pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]");
        let cube = build_cube(&d);
        for (s, t, _) in cube.edges() {
            let (sv, tv) = (&cube.vertices[s as usize], &cube.vertices[t as usize]);
            let e = edge_map(sv, tv).unwrap();
            let cob = e.cobordism();
            for w in 0..sv.num_generators() as Word {
                let via_slots = AElem::from_terms(tv.cycles.len(), e.apply_word(w))
                    .scale(&MultiPoly::int(e.sign as i64));
                let via_pieces = cob.apply(&AElem::basis(sv.cycles.len(), w)).unwrap();
                assert_eq!(via_slots, via_pieces);
            }
        }
    }

    #[test]
    fn kink_complex() {
        let c = complex_of(&pd("X[1,1,2,2]"));
        assert_eq!(c.len(), 2 + 4);
        c.check_d_squared().unwrap();
        assert!(c.is_grading_preserving());
        let r = c.gauss_reduce();
        assert_eq!(r.euler_characteristic(), crate::poly::LaurentPoly::quantum_two());
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn trefoil_ranks_and_euler() {
        let d = pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]").mirror();
        assert_eq!(d.writhe(), 3);
        let c = complex_of(&d);
        let ranks: Vec<usize> = c.degrees().iter().map(|&i| c.indices_in(i).len()).collect();
        assert_eq!(c.degrees(), vec![-3, -2, -1, 0]);
        // All-singular has 3 cycles, two singular 2 each (x3), one singular
        // 1 each (x3), all-oriented 2.
        assert_eq!(ranks, vec![8, 12, 6, 4]);
        c.check_d_squared().unwrap();
        assert!(c.is_grading_preserving());
        assert_eq!(c.euler_characteristic(), link_bracket(&d));
    }
}
