//! Homology of closed webs and the maps induced by `Λ₀`, `Λ₁`.

use std::collections::BTreeMap;
use std::fmt;

use super::{lambda0, lambda1, x, KoszulMF, MFMorphism};
use crate::error::{Error, Result};
use crate::frobenius::{AElem, Word};
use crate::poly::{frobenius_relation, reduce_frobenius, LaurentPoly, Monomial, MultiPoly, Var};
use crate::web::{JunctionKind, Web};

/// `ℚ[a,h,v⃗]/(relations)` with a quantum shift, sitting in one homological
/// degree of a two-periodic complex.
///
/// The excluded variables are recorded as substitutions `v ↦ α`, applied in
/// order; every relation is a rational multiple of `v² − hv − a` for a
/// distinct remaining variable `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub variables: Vec<Var>,
    pub substitutions: Vec<(Var, MultiPoly)>,
    pub relations: Vec<MultiPoly>,
    pub q_shift: i32,
    pub hom_degree: u8,
}

impl QuotientPresentation {
    /// `v − α` for each substitution followed by the relations.
    pub fn ideal_generators(&self) -> Vec<MultiPoly> {
        self.substitutions
            .iter()
            .map(|(v, alpha)| MultiPoly::var(*v) - alpha)
            .chain(self.relations.iter().cloned())
            .collect()
    }

    /// The unique representative of `p` that is square-free in the remaining
    /// variables and free of the excluded ones.
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let mut out = p.clone();
        for (v, alpha) in &self.substitutions {
            out = out.substitute_unchecked(&BTreeMap::from([(*v, alpha.clone())]));
        }
        for v in &self.variables {
            out = reduce_frobenius(&out, *v);
        }
        out
    }

    /// The square-free monomials, a basis over `ℚ[a,h]`.
    pub fn basis(&self) -> Vec<Monomial> {
        (0..1u64 << self.variables.len())
            .map(|s| {
                self.variables
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == 1)
                    .fold(Monomial::one(), |m, (_, v)| m.mul(&Monomial::var(*v)))
            })
            .collect()
    }

    pub fn graded_rank(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for m in self.basis() {
            out.add_term(self.q_shift + m.grading(), 1);
        }
        out
    }
}

impl fmt::Display for QuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut vars = vec!["a".to_string(), "h".to_string()];
        vars.extend(self.variables.iter().map(Var::to_string));
        let gens: Vec<String> = self.relations.iter().map(MultiPoly::to_string).collect();
        write!(
            f,
            "H^{} = Q[{}]/({}){{{}}}",
            self.hom_degree,
            vars.join(","),
            gens.join(", "),
            self.q_shift
        )
    }
}

fn x_vars_desc(p: &MultiPoly) -> Vec<Var> {
    p.variables().into_iter().filter(|v| matches!(v, Var::X(_))).rev().collect()
}

/// `Some(v)` when `p` is a rational multiple of `v² − hv − a`.
fn frobenius_var(p: &MultiPoly) -> Option<Var> {
    let vars = x_vars_desc(p);
    let [v] = vars[..] else {
        return None;
    };
    let rel = frobenius_relation(&MultiPoly::var(v));
    let c = p.coefficient(&Monomial::var_pow(v, 2));
    (!num_traits::Zero::is_zero(&c) && *p == rel.scale(&c)).then_some(v)
}

/// Excludes variables until every row has the form `(c·(v² − hv − a), 0)`
/// with distinct `v`, and reads off the homology.
pub(crate) fn reduce_closed(mut mf: KoszulMF) -> Result<QuotientPresentation> {
    let mut substitutions = Vec::new();
    let incomplete = |mf: &KoszulMF| Error::ExclusionIncomplete(format!("stuck at\n{mf}"));
    'outer: loop {
        for j in 0..mf.rows.len() {
            for v in x_vars_desc(&mf.rows[j].b) {
                if let Some(alpha) = mf.linear_b(j, v) {
                    mf = mf.exclude_variable(j, v)?;
                    substitutions.push((v, alpha));
                    continue 'outer;
                }
            }
        }
        for j in 0..mf.rows.len() {
            let r = &mf.rows[j];
            for v in x_vars_desc(&r.a) {
                if let Some((_, alpha)) = r.a.as_linear_in(v) {
                    mf = mf.swap_row(j)?.exclude_variable(j, v)?;
                    substitutions.push((v, alpha));
                    continue 'outer;
                }
            }
            if r.a.is_zero() && !r.b.is_zero() {
                mf = mf.swap_row(j)?;
                continue 'outer;
            }
        }
        if mf.rows.iter().any(|r| !r.b.is_zero() || r.a.is_zero()) {
            return Err(incomplete(&mf));
        }
        // Every row is (a, 0). Reducing one a by multiples of the others is
        // the row operation [ij]_c.
        let mut found: BTreeMap<usize, Var> = BTreeMap::new();
        loop {
            let mut progress = false;
            for j in 0..mf.rows.len() {
                if found.contains_key(&j) {
                    continue;
                }
                let mut a = mf.rows[j].a.clone();
                for v in found.values() {
                    a = reduce_frobenius(&a, *v);
                }
                if a != mf.rows[j].a {
                    mf.rows[j].a = a.clone();
                    progress = true;
                }
                if a.is_zero() {
                    return Err(incomplete(&mf));
                }
                if x_vars_desc(&a).iter().any(|&v| a.as_linear_in(v).is_some()) {
                    continue 'outer;
                }
                if let Some(v) = frobenius_var(&a) {
                    if !found.values().any(|&w| w == v) {
                        found.insert(j, v);
                        progress = true;
                    }
                }
            }
            if found.len() == mf.rows.len() {
                break 'outer;
            }
            if !progress {
                return Err(incomplete(&mf));
            }
        }
    }
    let q_shift = mf.q_shift + mf.rows.iter().map(|r| r.mid).sum::<i32>();
    Ok(QuotientPresentation {
        variables: mf.rows.iter().map(|r| frobenius_var(&r.a).expect("checked above")).collect(),
        substitutions,
        relations: mf.rows.iter().map(|r| r.a.clone()).collect(),
        q_shift,
        hom_degree: ((mf.rows.len() as u8) + mf.z2) % 2,
    })
}

/// The Koszul factorization of a closed web with the mark `x_e` on edge `e`.
pub fn web_factorization(g: &Web) -> KoszulMF {
    let mut mf = KoszulMF::empty();
    for j in g.junctions() {
        match j.kind {
            JunctionKind::Pass => {
                for k in 0..2 {
                    if j.ins[k] != j.outs[k] {
                        mf = mf.tensor(&KoszulMF::arc(&x(j.ins[k]), &x(j.outs[k])));
                    }
                }
            }
            JunctionKind::Singular => {
                let [o0, o1] = j.outs.map(x);
                let [i0, i1] = j.ins.map(x);
                mf = mf.tensor(&KoszulMF::singular(&o0, &o1, &i0, &i1));
            }
        }
    }
    for c in g.cycles() {
        if c.vertices == 0 && c.edges.len() == 1 {
            mf = mf.tensor(&KoszulMF::circle(&x(c.edges[0])));
        }
    }
    mf
}

/// `H̄(Γ)`, checked to sit in the homological degree `p(Γ)`.
pub fn closed_web_homology(g: &Web) -> Result<QuotientPresentation> {
    let q = reduce_closed(web_factorization(g))?;
    let parity = g.p_parity()?;
    if q.hom_degree != parity {
        return Err(Error::ExclusionIncomplete(format!(
            "homology sits in degree {} but the web has parity {parity}",
            q.hom_degree
        )));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMapReport {
    pub lines: Vec<String>,
    pub ok: bool,
}

fn closing() -> BTreeMap<Var, MultiPoly> {
    BTreeMap::from([(Var::X(4), x(1)), (Var::X(3), x(2))])
}

/// The coefficient by which `φ` maps the top generator of the closed source
/// to the top generator of the closed target.
fn top_multiplier(phi: &MFMorphism) -> Result<MultiPoly> {
    let m0 = phi.m0.substitute(&closing())?;
    let (rows, cols) = m0.shape();
    let (tr, tc) = (rows - 1, cols - 1);
    if (0..rows).any(|r| r != tr && !m0.get(r, tc).is_zero()) {
        return Err(Error::ShapeMismatch("image of the top generator leaves the top word".into()));
    }
    Ok(m0.get(tr, tc).clone())
}

/// `H̄` of the single closed singular web to `A`: `1 ↦ 1`, `x₁ ↦ X`.
fn f_map(p: &MultiPoly) -> AElem {
    let c = p.coefficients_in(Var::X(1));
    AElem::from_terms(1, c.into_iter().map(|(e, k)| (e as Word, k)))
}

fn f_inverse(w: Word) -> MultiPoly {
    x(1).pow(w as u32)
}

/// `H̄` of two circles to `A ⊗ A`: `x₁ ↦ X⊗1`, `h − x₂ ↦ 1⊗X`.
fn g_map(p: &MultiPoly) -> AElem {
    let y = Var::X(0);
    let q = p.substitute_unchecked(&BTreeMap::from([(Var::X(2), MultiPoly::h() - MultiPoly::var(y))]));
    let mut terms = Vec::new();
    for (e1, c1) in q.coefficients_in(Var::X(1)) {
        for (e2, c2) in c1.coefficients_in(y) {
            terms.push(((e1 | e2 << 1) as Word, c2));
        }
    }
    AElem::from_terms(2, terms)
}

fn g_inverse(w: Word) -> MultiPoly {
    x(1).pow((w & 1) as u32) * (MultiPoly::h() - x(2)).pow((w >> 1) as u32)
}

/// Compares the maps induced on homology by `Λ₀`, `Λ₁` after closing up
/// `x₄ = x₁`, `x₃ = x₂` with multiplication and comultiplication.
pub fn induced_map_check() -> Result<InducedMapReport> {
    let g0 = KoszulMF::arc(&x(4), &x(1)).tensor(&KoszulMF::arc(&x(3), &x(2)));
    let g1 = KoszulMF::singular(&x(1), &x(2), &x(3), &x(4));
    let h0 = reduce_closed(g0.substitute(&closing())?)?;
    let h1 = reduce_closed(g1.substitute(&closing())?)?;
    let mut lines = Vec::new();
    let mut ok = h0.hom_degree == 0 && h1.hom_degree == 0;
    let c0 = top_multiplier(&lambda0())?;
    for w in 0..4 {
        let input = AElem::basis(2, w);
        let got = f_map(&h1.normal_form(&(&c0 * &g_inverse(w))));
        let want = input.m(0, 1)?;
        ok &= got == want;
        lines.push(format!("L0*({input}) = {got}, m = {want}"));
    }
    let c1 = top_multiplier(&lambda1())?;
    for w in 0..2 {
        let input = AElem::basis(1, w);
        let got = g_map(&h0.normal_form(&(&c1 * &f_inverse(w))));
        let want = input.delta(0)?;
        ok &= got == want;
        lines.push(format!("L1*({input}) = {got}, delta = {want}"));
    }
    Ok(InducedMapReport { lines, ok })
}
