//! The bracket of closed webs and link diagrams.
//!
//! A closed web with only bivalent vertices is a disjoint union of cycles, and
//! every cycle evaluates to `q + q⁻¹`. A crossing expands as
//! `q·(oriented) − q²·(singular)` when positive and
//! `q⁻¹·(oriented) − q⁻²·(singular)` when negative.

use rayon::prelude::*;

use crate::diagram::{LinkDiagram, Resolution, ResolutionWord, Sign};
use crate::poly::LaurentPoly;
use crate::web::Web;

pub fn web_bracket(g: &Web) -> LaurentPoly {
    LaurentPoly::quantum_two().pow(g.cycles().len() as u32)
}

/// Signed coefficient `±q^α` of a resolution in the bracket expansion.
pub fn resolution_weight(d: &LinkDiagram, w: &ResolutionWord) -> LaurentPoly {
    let mut exp = 0;
    let mut negative = false;
    for (c, x) in d.crossings().iter().enumerate() {
        let s = x.sign.value();
        match w.get(c) {
            Resolution::Oriented => exp += s,
            Resolution::Singular => {
                exp += 2 * s;
                negative = !negative;
            }
        }
    }
    LaurentPoly::monomial(exp, if negative { -1 } else { 1 })
}

/// `⟨D⟩ = Σ_Γ ±q^{α(Γ)} ⟨Γ⟩` over all resolutions.
pub fn link_bracket(d: &LinkDiagram) -> LaurentPoly {
    let n = d.num_crossings();
    (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let w = ResolutionWord::from_bits(bits, n);
            &resolution_weight(d, &w) * &web_bracket(&d.resolve(&w))
        })
        .reduce(LaurentPoly::zero, |a, b| a + b)
}

/// Checks `q²⟨D₋⟩ − q⁻²⟨D₊⟩ = (q − q⁻¹)⟨D₀⟩`.
pub fn jones_relation_check(d_pos: &LinkDiagram, d_neg: &LinkDiagram, d_or: &LinkDiagram) -> bool {
    let lhs = link_bracket(d_neg).shift(2) - link_bracket(d_pos).shift(-2);
    let rhs = &LaurentPoly::from_terms([(1, 1), (-1, -1)]) * &link_bracket(d_or);
    lhs == rhs
}

/// The triple `(D₊, D₋, D₀)` obtained by changing or smoothing crossing `c`.
pub fn skein_triple(d: &LinkDiagram, c: usize) -> (LinkDiagram, LinkDiagram, LinkDiagram) {
    let changed = d.change_crossing(c);
    let smoothed = d.smooth_crossing(c);
    match d.crossings()[c].sign {
        Sign::Positive => (d.clone(), changed, smoothed),
        Sign::Negative => (changed, d.clone(), smoothed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> LinkDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn web_values() {
        let two = Web::new(vec![], vec![1, 2]).unwrap();
        assert_eq!(web_bracket(&two), LaurentPoly::quantum_two().pow(2));
        let one = Web::new(vec![], vec![1]).unwrap();
        assert_eq!(web_bracket(&one).to_string(), "q + q^-1");
        let kink = pd("X[1,1,2,2]");
        let basic = kink.resolve(&ResolutionWord::from_bits(1, 1));
        assert_eq!(web_bracket(&basic), LaurentPoly::quantum_two());
    }

    #[test]
    fn link_values() {
        assert_eq!(link_bracket(&LinkDiagram::unknot()).to_string(), "q + q^-1");
        assert_eq!(link_bracket(&pd("X[1,1,2,2]")), LaurentPoly::quantum_two());
        assert_eq!(link_bracket(&pd("X[1,2,2,1]")), LaurentPoly::quantum_two());
        let hopf_pos = pd("X[4,1,3,2]\nX[2,3,1,4]").mirror();
        assert_eq!(link_bracket(&hopf_pos).to_string(), "q^6 + q^4 + q^2 + 1");
    }

    #[test]
    fn skein_relation() {
        let kp = pd("X[1,1,2,2]");
        let km = pd("X[1,2,2,1]");
        let unlink = Web::new(vec![], vec![1, 2]).unwrap();
        assert_eq!(web_bracket(&unlink), link_bracket(&kp.smooth_crossing(0)));
        assert!(jones_relation_check(&kp, &km, &kp.smooth_crossing(0)));
        assert!(!jones_relation_check(&kp, &kp, &kp));

        let hopf_pos = pd("X[4,1,3,2]\nX[2,3,1,4]").mirror();
        let (p, n, o) = skein_triple(&hopf_pos, 0);
        assert_eq!(n.num_components(), 2);
        assert_eq!(o.num_components(), 1);
        assert!(jones_relation_check(&p, &n, &o));
    }
}
