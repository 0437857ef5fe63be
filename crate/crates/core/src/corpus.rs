//! Built-in diagrams used by tests, benchmarks and the verification suite.

use crate::diagram::LinkDiagram;

fn pd(text: &str) -> LinkDiagram {
    text.parse().expect("built-in diagram is valid")
}

fn braid(strands: usize, word: &[i32]) -> LinkDiagram {
    LinkDiagram::from_braid(strands, word).expect("built-in braid is valid")
}

pub fn unknot() -> LinkDiagram {
    LinkDiagram::unknot()
}

pub fn kink_positive() -> LinkDiagram {
    pd("X[1,1,2,2]")
}

pub fn kink_negative() -> LinkDiagram {
    pd("X[1,2,2,1]")
}

pub fn hopf_negative() -> LinkDiagram {
    pd("X[4,1,3,2]\nX[2,3,1,4]")
}

pub fn hopf_positive() -> LinkDiagram {
    hopf_negative().mirror()
}

pub fn trefoil_left() -> LinkDiagram {
    pd("X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]")
}

pub fn trefoil_right() -> LinkDiagram {
    trefoil_left().mirror()
}

pub fn figure_eight() -> LinkDiagram {
    pd("X[4,2,5,1]\nX[8,6,1,5]\nX[6,3,7,4]\nX[2,7,3,8]")
}

pub fn unlink2() -> LinkDiagram {
    pd("O[1]\nO[2]")
}

/// Closure of `(σ₁σ₂⁻¹)⁵`, a 10-crossing alternating knot diagram.
pub fn ten_crossing() -> LinkDiagram {
    braid(3, &[1, -2, 1, -2, 1, -2, 1, -2, 1, -2])
}

/// The links of the test corpus with names.
pub fn links() -> Vec<(&'static str, LinkDiagram)> {
    vec![
        ("unknot", unknot()),
        ("kink+", kink_positive()),
        ("kink-", kink_negative()),
        ("hopf+", hopf_positive()),
        ("hopf-", hopf_negative()),
        ("trefoil-right", trefoil_right()),
        ("trefoil-left", trefoil_left()),
        ("figure-eight", figure_eight()),
        ("unlink2", unlink2()),
    ]
}

/// Pairs of diagrams related by one Reidemeister move.
pub fn reidemeister_pairs() -> Vec<(&'static str, LinkDiagram, LinkDiagram)> {
    vec![
        ("R1+", unknot(), kink_positive()),
        ("R1-", unknot(), kink_negative()),
        ("R1 trefoil+", braid(2, &[1, 1, 1]), braid(3, &[1, 1, 1, 2])),
        ("R1 trefoil-", braid(2, &[1, 1, 1]), braid(3, &[1, 1, 1, -2])),
        ("R2a", unlink2(), braid(2, &[1, -1])),
        ("R2b", unlink2(), pd("X[1,2,3,4]\nX[3,2,1,4]")),
        ("R2a hopf", hopf_positive(), braid(2, &[1, 1, -1, 1])),
        ("R3", braid(3, &[1, 2, 1]), braid(3, &[2, 1, 2])),
        ("R3 mixed", braid(3, &[-1, 2, 1]), braid(3, &[2, 1, -2])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shapes() {
        let comps: Vec<usize> = links().iter().map(|(_, d)| d.num_components()).collect();
        assert_eq!(comps, vec![1, 1, 1, 2, 2, 1, 1, 1, 2]);
        assert_eq!(trefoil_right().writhe(), 3);
        assert_eq!(hopf_positive().writhe(), 2);
        assert_eq!(figure_eight().writhe(), 0);
        let t = ten_crossing();
        assert_eq!((t.num_crossings(), t.num_components()), (10, 1));
        for (name, a, b) in reidemeister_pairs() {
            assert_eq!(a.num_components(), b.num_components(), "{name}");
        }
    }
}
