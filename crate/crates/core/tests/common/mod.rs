//! Strategies and property checks shared by the property suite and the
//! acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use ukr::cube::complex_of;
use ukr::homology::{homology_dims, homology_dims_by_rank, specialize, Specialization};
use ukr::mfact::{x, KoszulMF};
use ukr::webalg::build_algebra;
use ukr::{AElem, LinkDiagram, MultiPoly, Rational, ResolutionWord, Var};

pub type Check = Result<(), TestCaseError>;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn var_in(nx: u32) -> BoxedStrategy<Var> {
    if nx == 0 {
        return prop_oneof![Just(Var::A), Just(Var::H)].boxed();
    }
    prop_oneof![Just(Var::A), Just(Var::H), (1..=nx).prop_map(Var::X)].boxed()
}

pub fn monomial(nx: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((var_in(nx), 1u32..=2), 0..=3)
        .prop_map(|vs| vs.into_iter().fold(MultiPoly::one(), |m, (v, e)| m * MultiPoly::var(v).pow(e)))
}

/// Up to four terms in `a`, `h`, `x1..=xnx`.
pub fn poly(nx: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((rational(), monomial(nx)), 0..=4)
        .prop_map(|ts| ts.into_iter().map(|(c, m)| m.scale(&c)).sum())
}

/// At most two terms of degree at most two.
pub fn small_poly(nx: u32) -> impl Strategy<Value = MultiPoly> {
    let m = prop::collection::vec(var_in(nx), 0..=2)
        .prop_map(|vs| vs.into_iter().fold(MultiPoly::one(), |m, v| m * MultiPoly::var(v)));
    prop::collection::vec((rational(), m), 0..=2).prop_map(|ts| ts.into_iter().map(|(c, m)| m.scale(&c)).sum())
}

/// Polynomials in `a` and `h` only.
pub fn scalar() -> impl Strategy<Value = MultiPoly> {
    poly(0)
}

pub fn aelem(arity: usize) -> impl Strategy<Value = AElem> {
    prop::collection::vec((0u64..1 << arity, scalar()), 0..=4).prop_map(move |ts| AElem::from_terms(arity, ts))
}

pub fn ring_axioms((p, q, r): (MultiPoly, MultiPoly, MultiPoly)) -> Check {
    prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
    prop_assert_eq!(&p + &q, &q + &p);
    prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    prop_assert_eq!(&p * &q, &q * &p);
    prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    prop_assert_eq!(&p * &MultiPoly::one(), p.clone());
    let copy = p.clone();
    prop_assert!((&p - &copy).is_zero());
    prop_assert!((&p * &MultiPoly::zero()).is_zero());
    let back: MultiPoly = p.to_string().parse().map_err(|e| TestCaseError::fail(format!("{e}")))?;
    prop_assert_eq!(back, p);
    Ok(())
}

pub fn divide_exact((p, q): (MultiPoly, MultiPoly)) -> Check {
    if q.is_zero() {
        prop_assert!(p.divide_exact(&q).is_err());
        return Ok(());
    }
    let pq = &p * &q;
    prop_assert_eq!(pq.divide_exact(&q).map_err(|e| TestCaseError::fail(format!("{e}")))?, p);
    Ok(())
}

/// The part of `p` in quantum degree `d`.
fn component(p: &MultiPoly, d: i32) -> MultiPoly {
    MultiPoly::from_terms(p.terms().filter(|(m, _)| m.grading() == d).map(|(m, c)| (m.clone(), c.clone())))
}

pub fn homogeneity((p, q, dp, dq): (MultiPoly, MultiPoly, i32, i32)) -> Check {
    let (p, q) = (component(&p, 2 * dp), component(&q, 2 * dq));
    prop_assert!(p.homogeneous_degree().admits(2 * dp));
    let pq = &p * &q;
    prop_assert!(pq.homogeneous_degree().admits(2 * (dp + dq)));
    if dp != dq && !p.is_zero() && !q.is_zero() {
        prop_assert!((&p + &q).homogeneous_degree().degree().is_none());
    }
    Ok(())
}

pub fn substitute_evaluate((p, q, pt): (MultiPoly, MultiPoly, Vec<Rational>)) -> Check {
    let vars = [Var::A, Var::H, Var::X(1), Var::X(2), Var::X(3)];
    let point: BTreeMap<Var, Rational> = vars.iter().copied().zip(pt).collect();
    let err = |e: ukr::Error| TestCaseError::fail(format!("{e}"));
    let sub = p.substitute(&BTreeMap::from([(Var::X(1), q.clone())])).map_err(err)?;
    let mut moved = point.clone();
    moved.insert(Var::X(1), q.evaluate(&point).map_err(err)?);
    prop_assert_eq!(sub.evaluate(&point).map_err(err)?, p.evaluate(&moved).map_err(err)?);
    let pv = p.evaluate(&point).map_err(err)?;
    let qv = q.evaluate(&point).map_err(err)?;
    prop_assert_eq!((&p * &q).evaluate(&point).map_err(err)?, &pv * &qv);
    Ok(())
}

pub fn frobenius_axioms((v1, v2, v3): (AElem, AElem, AElem)) -> Check {
    let e = |r: ukr::Result<AElem>| r.map_err(|e| TestCaseError::fail(format!("{e}")));
    // associativity and commutativity of m
    prop_assert_eq!(e(e(v3.m(0, 1))?.m(0, 1))?, e(e(v3.m(1, 2))?.m(0, 1))?);
    prop_assert_eq!(e(v2.m(0, 1))?, e(e(v2.permute(&[1, 0]))?.m(0, 1))?);
    // unit and counit
    prop_assert_eq!(e(e(v1.iota(0))?.m(0, 1))?, v1.clone());
    prop_assert_eq!(e(e(v1.delta(0))?.eps(0))?, v1.clone());
    prop_assert_eq!(e(e(v1.delta(0))?.eps(1))?, v1.clone());
    // coassociativity and cocommutativity of delta
    prop_assert_eq!(e(e(v1.delta(0))?.delta(0))?, e(e(v1.delta(0))?.delta(1))?);
    prop_assert_eq!(e(v1.delta(0))?, e(e(v1.delta(0))?.permute(&[1, 0]))?);
    // Frobenius relation
    let dm = e(e(v2.m(0, 1))?.delta(0))?;
    prop_assert_eq!(e(e(v2.delta(1))?.m(0, 1))?, dm.clone());
    prop_assert_eq!(e(e(v2.delta(0))?.m(1, 2))?, dm);
    // X acts as multiplication by the class of X
    let xv = AElem::word("X").tensor(&v1);
    prop_assert_eq!(e(xv.m(0, 1))?, e(v1.dot(0))?);
    Ok(())
}

/// Factorizations with a row whose `b` entry is linear in a variable
/// absent from the potential.
pub fn templates() -> Vec<KoszulMF> {
    let s = |a, b, c, d| KoszulMF::singular(&x(a), &x(b), &x(c), &x(d));
    vec![
        s(2, 1, 5, 3).tensor(&KoszulMF::arc(&x(1), &x(5))),
        s(1, 5, 6, 4).tensor(&s(3, 6, 5, 2)),
        KoszulMF::arc(&x(1), &x(5)).tensor(&KoszulMF::arc(&x(5), &x(2))).tensor(&KoszulMF::circle(&x(6))),
    ]
}

#[derive(Debug, Clone)]
pub enum Move {
    RowOp(usize, usize, MultiPoly),
    Twist(usize, usize, MultiPoly),
    TwistDual(usize, usize, MultiPoly),
    Swap(usize),
    Scale(usize, Rational),
}

pub fn moves() -> impl Strategy<Value = (usize, Vec<Move>)> {
    let idx = 0usize..4;
    let mv = prop_oneof![
        (idx.clone(), idx.clone(), small_poly(6)).prop_map(|(i, j, c)| Move::RowOp(i, j, c)),
        (idx.clone(), idx.clone(), small_poly(6)).prop_map(|(i, j, c)| Move::Twist(i, j, c)),
        (idx.clone(), idx.clone(), small_poly(6)).prop_map(|(i, j, c)| Move::TwistDual(i, j, c)),
        idx.clone().prop_map(Move::Swap),
        (idx, rational()).prop_map(|(i, c)| Move::Scale(i, c)),
    ];
    (0usize..3, prop::collection::vec(mv, 0..6))
}

pub fn potential_invariance((t, ms): (usize, Vec<Move>)) -> Check {
    let start = templates()[t].clone();
    let w = start.potential();
    let n = start.num_rows();
    let mut excludable = false;
    for j in 0..n {
        for v in 1..=6 {
            if let Ok(g) = start.exclude_variable(j, Var::X(v)) {
                prop_assert_eq!(g.potential(), w.clone());
                excludable = true;
            }
        }
    }
    prop_assert!(excludable);
    let mut f = start;
    for m in ms {
        let r = match m {
            Move::RowOp(i, j, c) => f.row_op(i % n, j % n, &c),
            Move::Twist(i, j, c) => f.twist(i % n, j % n, &c),
            Move::TwistDual(i, j, c) => f.twist_dual(i % n, j % n, &c),
            Move::Swap(i) => f.swap_row(i % n),
            Move::Scale(i, c) => f.scale_row(i % n, &c),
        };
        match r {
            Ok(g) => f = g,
            Err(_) => continue,
        }
        prop_assert_eq!(f.potential(), w.clone());
    }
    for j in 0..n {
        for v in 1..=6 {
            if let Ok(g) = f.exclude_variable(j, Var::X(v)) {
                prop_assert_eq!(g.potential(), w.clone());
            }
        }
    }
    Ok(())
}

/// A braid closure on 2 or 3 strands with at most five crossings.
pub fn braid() -> impl Strategy<Value = LinkDiagram> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let g = (1..n as i32).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]);
            (Just(n), prop::collection::vec(g, 1..=5))
        })
        .prop_map(|(n, w)| LinkDiagram::from_braid(n, &w).expect("valid braid"))
}

pub fn gauss_reduce_preserves(d: LinkDiagram) -> Check {
    let c = complex_of(&d);
    let r = c.gauss_reduce();
    prop_assert_eq!(r.euler_characteristic(), c.euler_characteristic());
    for s in Specialization::presets() {
        let g = s.is_graded();
        let direct = homology_dims_by_rank(&specialize(&c, &s), g);
        prop_assert_eq!(homology_dims(&specialize(&r, &s), g), direct.clone());
        prop_assert_eq!(homology_dims(&specialize(&c, &s), g), direct);
    }
    Ok(())
}

/// Terms `c · Π x_{edge k}^p`, with edges picked modulo the edge count.
pub type EdgeTerms = Vec<(Rational, Vec<(usize, u32)>)>;

/// A resolution web of a braid closure, a polynomial in its edge
/// variables and a seed for the rewriting order.
pub fn web_input() -> impl Strategy<Value = (LinkDiagram, u64, EdgeTerms, u64)> {
    (
        braid(),
        any::<u64>(),
        prop::collection::vec((rational(), prop::collection::vec((any::<usize>(), 1u32..=3), 0..=3)), 1..=4),
        any::<u64>(),
    )
}

pub fn webalg_confluence((d, bits, terms, seed): (LinkDiagram, u64, EdgeTerms, u64)) -> Check {
    let n = d.num_crossings();
    let g = d.resolve(&ResolutionWord::from_bits(bits & ((1 << n) - 1), n));
    let edges = g.edges();
    let e: MultiPoly = terms
        .into_iter()
        .map(|(c, vs)| {
            vs.into_iter()
                .fold(MultiPoly::one(), |m, (k, p)| m * MultiPoly::x(edges[k % edges.len()]).pow(p))
                .scale(&c)
        })
        .sum();
    let alg = build_algebra(&g);
    let err = |e: ukr::Error| TestCaseError::fail(format!("{e}"));
    let want = alg.normal_form(&e).map_err(err)?;
    let mut s = seed;
    let mut choose = |k: usize| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 33) as usize) % k
    };
    prop_assert_eq!(alg.rewrite_in_order(&e, &mut choose).map_err(err)?, want.clone());
    for r in alg.relations() {
        prop_assert!(alg.normal_form(&(r * &e)).map_err(err)?.is_zero());
    }
    Ok(())
}

fn run_one<S: Strategy>(name: &'static str, cases: u32, s: S, f: impl Fn(S::Value) -> Check) -> (&'static str, Result<(), String>) {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    (name, runner.run(&s, f).map_err(|e| e.to_string()))
}

/// Every property suite at `cases` cases with a fixed seed.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        run_one("ring axioms", cases, (poly(3), poly(3), poly(3)), ring_axioms),
        run_one("divide_exact", cases, (poly(3), poly(3)), divide_exact),
        run_one("homogeneity", cases, (poly(3), poly(3), 0i32..4, 0i32..4), homogeneity),
        run_one(
            "substitute/evaluate",
            cases,
            (poly(3), poly(3), prop::collection::vec(rational(), 5)),
            substitute_evaluate,
        ),
        run_one("frobenius axioms", cases, (aelem(1), aelem(2), aelem(3)), frobenius_axioms),
        run_one("potential invariance", cases, moves(), potential_invariance),
        run_one("gauss_reduce", cases, braid(), gauss_reduce_preserves),
        run_one("webalg confluence", cases, web_input(), webalg_confluence),
    ]
}
