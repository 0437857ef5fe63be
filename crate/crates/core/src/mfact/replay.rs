//! Scripted sequences of moves ending at a target factorization.

use std::fmt;

use super::{pi_bar, u1_bar, u2_bar, x, KoszulMF, KoszulRow};
use crate::error::{Error, Result};
use crate::poly::{rat, MultiPoly, Rational, Var};

/// One move; row indices are 0-based and displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    RowOp { i: usize, j: usize, c: MultiPoly },
    Twist { i: usize, j: usize, k: MultiPoly },
    TwistDual { i: usize, j: usize, k: MultiPoly },
    Swap(usize),
    Scale(usize, Rational),
    Exclude { row: usize, var: Var },
    Permute(Vec<usize>),
}

impl Step {
    pub fn apply(&self, f: &KoszulMF) -> Result<KoszulMF> {
        match self {
            Step::RowOp { i, j, c } => f.row_op(*i, *j, c),
            Step::Twist { i, j, k } => f.twist(*i, *j, k),
            Step::TwistDual { i, j, k } => f.twist_dual(*i, *j, k),
            Step::Swap(i) => f.swap_row(*i),
            Step::Scale(i, c) => f.scale_row(*i, c),
            Step::Exclude { row, var } => f.exclude_variable(*row, *var),
            Step::Permute(p) => f.permute(p),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::RowOp { i, j, c } => write!(f, "[{}{}]_({c})", i + 1, j + 1),
            Step::Twist { i, j, k } => write!(f, "twist({},{}; {k})", i + 1, j + 1),
            Step::TwistDual { i, j, k } => write!(f, "dual twist({},{}; {k})", i + 1, j + 1),
            Step::Swap(i) => write!(f, "swap {}", i + 1),
            Step::Scale(i, c) => write!(f, "scale {} by {c}", i + 1),
            Step::Exclude { row, var } => write!(f, "exclude {var} via row {}", row + 1),
            Step::Permute(p) => {
                let p: Vec<usize> = p.iter().map(|i| i + 1).collect();
                write!(f, "permute {p:?}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReplayScript {
    pub name: &'static str,
    pub start: KoszulMF,
    pub steps: Vec<Step>,
    pub target: KoszulMF,
}

#[derive(Debug, Clone)]
pub struct ReplayOutcome {
    pub name: &'static str,
    pub result: KoszulMF,
    pub matches: bool,
}

/// Runs the script, checking that every step keeps the potential.
pub fn replay_proof(script: &ReplayScript) -> Result<ReplayOutcome> {
    let omega = script.start.potential();
    let mut f = script.start.clone();
    for (n, step) in script.steps.iter().enumerate() {
        let fail = |reason: String| Error::Replay {
            step: n + 1,
            name: step.to_string(),
            reason,
        };
        f = step.apply(&f).map_err(|e| fail(e.to_string()))?;
        if f.potential() != omega {
            return Err(fail("the potential changed".into()));
        }
    }
    Ok(ReplayOutcome {
        name: script.name,
        matches: f == script.target,
        result: f,
    })
}

fn half(n: i64) -> Rational {
    rat(n, 2)
}

fn sing(a: u32, b: u32, c: u32, d: u32) -> KoszulMF {
    KoszulMF::singular(&x(a), &x(b), &x(c), &x(d))
}

fn isom1() -> ReplayScript {
    // The singular resolution with its second outgoing edge x1 closed up
    // into its first incoming edge x5.
    let start = sing(2, 1, 5, 3).tensor(&KoszulMF::arc(&x(1), &x(5)));
    ReplayScript {
        name: "isom1",
        start,
        steps: vec![
            Step::Exclude { row: 2, var: Var::X(5) },
            Step::RowOp { i: 0, j: 1, c: x(1) },
            Step::Swap(1),
            Step::Exclude { row: 1, var: Var::X(1) },
        ],
        target: KoszulMF::arc(&x(3), &x(2)).shifted(0, 1),
    }
}

fn isom3() -> ReplayScript {
    ReplayScript {
        name: "isom3",
        start: sing(1, 5, 6, 4).tensor(&sing(3, 6, 5, 2)),
        steps: vec![
            Step::Swap(1),
            Step::Exclude { row: 1, var: Var::X(6) },
            Step::Swap(2),
            Step::Exclude { row: 2, var: Var::X(5) },
        ],
        target: KoszulMF::arc(&x(2), &x(1)).tensor(&KoszulMF::arc(&x(4), &x(3))),
    }
}

fn isom4() -> ReplayScript {
    let h = MultiPoly::h();
    let k = h.scale(&half(1)) - x(1) - x(2) - x(4) - x(5) + x(3) - x(6);
    let k2 = h.scale(&half(-3)) + x(1) + x(2) + x(4).scale(&rat(2, 1)) + x(5).scale(&rat(2, 1)) - x(3) + x(6);
    ReplayScript {
        name: "isom4",
        start: sing(1, 2, 8, 7).tensor(&sing(8, 3, 6, 9)).tensor(&sing(7, 9, 5, 4)),
        steps: vec![
            Step::Swap(1),
            Step::Exclude { row: 1, var: Var::X(8) },
            Step::Swap(2),
            Step::Exclude { row: 2, var: Var::X(9) },
            Step::Exclude { row: 1, var: Var::X(7) },
            Step::RowOp { i: 1, j: 0, c: MultiPoly::int(-1) },
            Step::Twist { i: 0, j: 1, k },
            Step::RowOp { i: 1, j: 2, c: x(3) - x(6) },
            Step::TwistDual {
                i: 1,
                j: 2,
                k: MultiPoly::constant(rat(-1, 3)),
            },
            Step::RowOp {
                i: 1,
                j: 2,
                c: -(x(3) - x(6) - x(4) - x(5)),
            },
            Step::RowOp { i: 1, j: 0, c: MultiPoly::one() },
            Step::Twist { i: 0, j: 1, k: k2 },
            Step::Permute(vec![1, 0, 2]),
        ],
        target: KoszulMF::arc(&x(6), &x(3)).tensor(&sing(1, 2, 4, 5)),
    }
}

/// `a₁ = π̄₄₁ − π̄₂₁ + π̄₃₁` and `a₂ = −2x₁ − 2x₂ − x₃ − x₄ + 3h`.
fn lambda_entries() -> (MultiPoly, MultiPoly) {
    let a1 = pi_bar(&x(4), &x(1)) - pi_bar(&x(2), &x(1)) + pi_bar(&x(3), &x(1));
    let a2 = MultiPoly::h().scale(&rat(3, 1)) - x(1).scale(&rat(2, 1)) - x(2).scale(&rat(2, 1)) - x(3) - x(4);
    (a1, a2)
}

fn lambda_gamma0() -> ReplayScript {
    let (a1, a2) = lambda_entries();
    let k = x(1) + x(2) + x(3) - MultiPoly::h().scale(&half(3));
    ReplayScript {
        name: "lambda-oriented",
        start: KoszulMF::arc(&x(4), &x(1)).tensor(&KoszulMF::arc(&x(3), &x(2))),
        steps: vec![
            Step::RowOp { i: 1, j: 0, c: MultiPoly::int(-1) },
            Step::Twist { i: 1, j: 0, k },
        ],
        target: KoszulMF::from_rows(vec![
            KoszulRow::new(a1, x(1) + x(2) - x(3) - x(4), 0),
            KoszulRow::new(a2 * (x(4) - x(2)), x(2) - x(3), 0),
        ]),
    }
}

fn lambda_gamma1() -> ReplayScript {
    let (a1, a2) = lambda_entries();
    ReplayScript {
        name: "lambda-singular",
        start: sing(1, 2, 3, 4),
        steps: vec![
            Step::RowOp { i: 0, j: 1, c: x(2) },
            Step::Twist { i: 0, j: 1, k: MultiPoly::int(2) },
        ],
        target: KoszulMF::from_rows(vec![
            KoszulRow::new(a1, x(1) + x(2) - x(3) - x(4), 0),
            KoszulRow::new(a2, (x(4) - x(2)) * (x(2) - x(3)), -1),
        ]),
    }
}

/// The built-in scripts: removing a closed loop at a singular point
/// (`isom1`), splitting two glued singular points into arcs (`isom3`), the
/// three-vertex move (`isom4`), and the normal forms of the two resolutions
/// used for `Λ₀`, `Λ₁`.
pub fn scripts() -> Vec<ReplayScript> {
    vec![isom1(), isom3(), isom4(), lambda_gamma0(), lambda_gamma1()]
}

/// `ū₁` and `ū₂` at the given marks, for callers building their own scripts.
pub fn u_bar(m: [u32; 4]) -> (MultiPoly, MultiPoly) {
    let [a, b, c, d] = m.map(x);
    (u1_bar(&a, &b, &c, &d), u2_bar(&c, &d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mfact::{check_morphism, flip, flip_prime};

    #[test]
    fn all_scripts_reach_their_targets() {
        for s in scripts() {
            let out = replay_proof(&s).unwrap();
            assert!(out.matches, "{}:\n{}\nwant\n{}", s.name, out.result, s.target);
            assert!(out.result.is_graded());
        }
    }

    #[test]
    fn intermediate_values() {
        let s = isom1();
        let f = s.steps[..2].iter().try_fold(s.start.clone(), |f, st| st.apply(&f)).unwrap();
        let (u1, u2) = u_bar([2, 1, 1, 3]);
        assert_eq!(f.rows[0].a, &u1 + &(x(1) * &u2));
        assert!(f.rows[1].b.is_zero());
        assert_eq!(u2, "-3*x1 - 3*x3 + 3*h".parse().unwrap());

        let s = isom3();
        let f = s.steps[..4].iter().try_fold(s.start.clone(), |f, st| st.apply(&f)).unwrap();
        let hx = |i| MultiPoly::h() - x(i);
        assert_eq!(f.rows[0].a, u1_bar(&x(1), &hx(2), &hx(4), &x(4)));
        assert_eq!(f.rows[0].a, pi_bar(&x(2), &x(1)));
    }

    #[test]
    fn broken_script_reports_step() {
        let mut s = isom3();
        s.steps[1] = Step::Exclude { row: 1, var: Var::X(1) };
        match replay_proof(&s) {
            Err(Error::Replay { step, .. }) => assert_eq!(step, 2),
            other => panic!("{other:?}"),
        }
        let mut s = isom1();
        s.steps.pop();
        assert!(!replay_proof(&s).unwrap().matches);
    }

    #[test]
    fn flips_on_normal_forms() {
        let (_, a2) = lambda_entries();
        let c = x(4) - x(2);
        let sing_row = KoszulMF::from_rows(vec![KoszulRow::new(a2.clone(), &c * &(x(2) - x(3)), -1)]);
        let or_row = KoszulMF::from_rows(vec![KoszulRow::new(&a2 * &c, x(2) - x(3), 0)]);
        assert!(check_morphism(&sing_row, &or_row, &flip(&c, 1)).unwrap());
        assert!(check_morphism(&or_row, &sing_row, &flip_prime(&c, 1)).unwrap());
        let g0 = lambda_gamma0().target;
        let g1 = lambda_gamma1().target;
        let psi = flip(&c, 1).extend_by_identity(1).unwrap();
        let psi_p = flip_prime(&c, 1).extend_by_identity(1).unwrap();
        assert!(check_morphism(&g1, &g0, &psi).unwrap());
        assert!(check_morphism(&g0, &g1, &psi_p).unwrap());
    }
}
