//! The edge algebra of a closed web and its action on the web's homology.
//!
//! Every edge `e` carries a generator `Xₑ` with `Xₑ² = hXₑ + a`, and the two
//! edges at a vertex satisfy `Xᵢ + Xⱼ = h`, `XᵢXⱼ = −a`. Along a cycle the
//! vertex relations make every edge variable equal to `X` or `h − X` for the
//! cycle's smallest edge, so the algebra is `A^{⊗cycles}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frobenius::{AElem, Word};
use crate::poly::{frobenius_relation, reduce_frobenius, LaurentPoly, Monomial, MultiPoly, Var};
use crate::web::{JunctionKind, Web};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebAlgebra {
    /// Smallest edge of each cycle.
    representatives: Vec<u32>,
    /// Cycle of each edge and whether it reads `h − X` there.
    edges: BTreeMap<u32, (usize, bool)>,
    relations: Vec<MultiPoly>,
}

/// A `ℚ[a,h]`-combination of square-free monomials in the representatives,
/// indexed by words over the cycles.
pub type NormalForm = AElem;

pub fn build_algebra(g: &Web) -> WebAlgebra {
    let cycles = g.cycles();
    let mut edges = BTreeMap::new();
    for (i, c) in cycles.iter().enumerate() {
        assert_eq!(c.vertices % 2, 0, "webs have even cycles");
        for (&e, &fwd) in c.edges.iter().zip(&c.forward) {
            edges.insert(e, (i, !fwd));
        }
    }
    let xv = |e: u32| MultiPoly::x(e);
    let mut relations: Vec<MultiPoly> = g.edges().into_iter().map(|e| frobenius_relation(&xv(e))).collect();
    for j in g.junctions().iter().filter(|j| j.kind == JunctionKind::Singular) {
        for pair in [j.ins, j.outs] {
            let (p, q) = (xv(pair[0]), xv(pair[1]));
            relations.push(&p + &q - MultiPoly::h());
            relations.push(&p * &q + MultiPoly::a());
        }
    }
    WebAlgebra {
        representatives: cycles.iter().map(|c| c.edges[0]).collect(),
        edges,
        relations,
    }
}

impl WebAlgebra {
    pub fn num_cycles(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[u32] {
        &self.representatives
    }

    /// `Xₑ ↦ X` or `h − X` for the representative of `e`'s cycle.
    pub fn image(&self, e: u32) -> Option<MultiPoly> {
        let &(c, flipped) = self.edges.get(&e)?;
        let x = MultiPoly::x(self.representatives[c]);
        Some(if flipped { MultiPoly::h() - x } else { x })
    }

    /// The defining relations: `Xₑ² − hXₑ − a` for every edge and
    /// `Xᵢ + Xⱼ − h`, `XᵢXⱼ + a` at every vertex.
    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    fn check_vars(&self, e: &MultiPoly) -> Result<()> {
        for v in e.variables() {
            if let Var::X(i) = v {
                if !self.edges.contains_key(&i) {
                    return Err(Error::InvalidWeb(format!("x{i} is not an edge of the web")));
                }
            }
        }
        Ok(())
    }

    pub fn normal_form(&self, e: &MultiPoly) -> Result<NormalForm> {
        self.check_vars(e)?;
        let bindings: BTreeMap<Var, MultiPoly> = self
            .edges
            .keys()
            .map(|&i| (Var::X(i), self.image(i).expect("known edge")))
            .collect();
        let mut p = e.substitute_unchecked(&bindings);
        for &r in &self.representatives {
            p = reduce_frobenius(&p, Var::X(r));
        }
        Ok(self.to_words(&p))
    }

    fn to_words(&self, p: &MultiPoly) -> NormalForm {
        let slot: BTreeMap<u32, usize> = self.representatives.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let mut w: Word = 0;
            let mut rest = Vec::new();
            for (v, k) in m.vars() {
                match v {
                    Var::X(i) => {
                        debug_assert_eq!(k, 1);
                        w |= 1 << slot[&i];
                    }
                    _ => rest.push((v, k)),
                }
            }
            let coeff = rest.into_iter().fold(Monomial::one(), |acc, (v, k)| acc.mul(&Monomial::var_pow(v, k)));
            terms.push((w, MultiPoly::monomial(coeff, c.clone())));
        }
        AElem::from_terms(self.num_cycles(), terms)
    }

    /// Rewrites one term at a time, each time applying the rule chosen by
    /// `choose(n)` among the `n` applicable ones: replace one non-representative
    /// variable in one term, or lower one square `X² → hX + a` in one term.
    pub fn rewrite_in_order(&self, e: &MultiPoly, choose: &mut dyn FnMut(usize) -> usize) -> Result<NormalForm> {
        self.check_vars(e)?;
        let reps: Vec<Var> = self.representatives.iter().map(|&r| Var::X(r)).collect();
        let mut p = e.clone();
        loop {
            let mut moves: Vec<(Monomial, Var)> = Vec::new();
            for (m, _) in p.terms() {
                for (v, k) in m.vars() {
                    if let Var::X(i) = v {
                        if !reps.contains(&v) || k >= 2 {
                            moves.push((m.clone(), Var::X(i)));
                        }
                    }
                }
            }
            if moves.is_empty() {
                return Ok(self.to_words(&p));
            }
            let (m, v) = moves.swap_remove(choose(moves.len()) % moves.len());
            let c = p.coefficient(&m);
            let term = MultiPoly::monomial(m.clone(), c.clone());
            let Var::X(i) = v else { unreachable!() };
            let replaced = if reps.contains(&v) {
                let lowered = m.checked_div(&Monomial::var_pow(v, 2)).expect("square present");
                MultiPoly::monomial(lowered, c)
                    * (MultiPoly::h() * MultiPoly::var(v) + MultiPoly::a())
            } else {
                let one = m.checked_div(&Monomial::var(v)).expect("variable present");
                MultiPoly::monomial(one, c) * self.image(i).expect("known edge")
            };
            p = p - term + replaced;
        }
    }

    /// Multiplication by `e` on `A^{⊗cycles}`, the representative of cycle
    /// `i` acting as `X` on slot `i`.
    pub fn act(&self, e: &MultiPoly, v: &AElem) -> Result<AElem> {
        if v.arity() != self.num_cycles() {
            return Err(Error::InvalidSlot {
                slot: self.num_cycles(),
                arity: v.arity(),
            });
        }
        let nf = self.normal_form(e)?;
        let mut out = AElem::zero(v.arity());
        for (w, c) in nf.terms() {
            let mut t = v.clone();
            for i in (0..v.arity()).filter(|i| w >> i & 1 == 1) {
                t = t.dot(i)?;
            }
            out = &out + &t.scale(c);
        }
        Ok(out)
    }

    /// `Σ q^{deg}` over the square-free monomial basis.
    pub fn graded_rank(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for w in 0..1u64 << self.num_cycles() {
            out.add_term(2 * w.count_ones() as i32, 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::Junction;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn basic() -> WebAlgebra {
        let j = Junction {
            kind: JunctionKind::Singular,
            ins: [1, 2],
            outs: [1, 2],
        };
        build_algebra(&Web::new(vec![j], vec![]).unwrap())
    }

    #[test]
    fn basic_web_relations() {
        let alg = basic();
        assert_eq!(alg.image(2), Some(p("h - x1")));
        let one = AElem::one(1);
        assert_eq!(alg.normal_form(&p("x1*x2")).unwrap(), one.scale(&p("-a")));
        assert_eq!(alg.normal_form(&p("x1^2")).unwrap(), AElem::from_terms(1, [(0, p("a")), (1, p("h"))]));
        assert_eq!(alg.normal_form(&p("x1 + x2")).unwrap(), one.scale(&p("h")));
        let v = AElem::word("X");
        assert_eq!(alg.act(&p("x1 + x2"), &v).unwrap(), v.scale(&p("h")));
        assert_eq!(alg.act(&p("x1*x2"), &v).unwrap(), v.scale(&p("-a")));
        for r in alg.relations() {
            assert!(alg.normal_form(r).unwrap().is_zero(), "{r}");
        }
    }

    #[test]
    fn plain_circle() {
        let alg = build_algebra(&Web::new(vec![], vec![3]).unwrap());
        assert_eq!(alg.act(&p("x3"), &AElem::one(1)).unwrap(), AElem::word("X"));
        assert_eq!(alg.graded_rank(), LaurentPoly::from_terms([(0, 1), (2, 1)]));
    }

    #[test]
    fn four_vertex_cycle_alternates() {
        let s = |ins, outs| Junction {
            kind: JunctionKind::Singular,
            ins,
            outs,
        };
        let alg = build_algebra(&Web::new(vec![s([1, 2], [3, 4]), s([3, 4], [1, 2])], vec![]).unwrap());
        assert_eq!(alg.num_cycles(), 2);
        assert_eq!(alg.image(2), Some(p("h - x1")));
        assert_eq!(alg.image(4), Some(p("h - x3")));
        let order: Vec<u32> = vec![1, 3];
        assert_eq!(alg.representatives(), &order[..]);
    }

    #[test]
    fn rejects_unknown_edges() {
        assert!(basic().normal_form(&p("x9")).is_err());
        assert!(basic().act(&p("x1"), &AElem::one(2)).is_err());
    }

    #[test]
    fn fixed_orders_agree() {
        let alg = basic();
        let e = p("x2^3*x1 + x1^2*x2 - 3*x2");
        let want = alg.normal_form(&e).unwrap();
        for seed in 0..20usize {
            let mut s = seed;
            let mut choose = |n: usize| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) % n
            };
            assert_eq!(alg.rewrite_in_order(&e, &mut choose).unwrap(), want);
        }
    }

    #[test]
    fn agrees_with_factorization_homology() {
        use crate::diagram::ResolutionWord;
        use crate::mfact::closed_web_homology;
        use crate::skein::web_bracket;
        for (name, d) in crate::corpus::links() {
            let n = d.num_crossings();
            for bits in 0..1u64 << n {
                let g = d.resolve(&ResolutionWord::from_bits(bits, n));
                let alg = build_algebra(&g);
                let h = closed_web_homology(&g).unwrap();
                for r in alg.relations() {
                    assert!(h.normal_form(r).is_zero(), "{name} {bits}: {r}");
                    assert!(alg.normal_form(r).unwrap().is_zero());
                }
                let shifted = alg.graded_rank().shift(-(alg.num_cycles() as i32));
                assert_eq!(shifted, web_bracket(&g));
                assert_eq!(alg.graded_rank().at_one(), 1 << alg.num_cycles());
            }
        }
    }
}
