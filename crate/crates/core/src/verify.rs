//! The named verification suite run by `ukr verify` and `ukr mf-verify`.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus;
use crate::cube::complex_of;
use crate::diagram::ResolutionWord;
use crate::homology::{distinct_root_report, euler_characteristic, link_homology, Specialization};
use crate::mfact::{
    check_morphism, closed_web_homology, compose_check_with, induced_map_check, lambda0, lambda1, p_matrices,
    q_matrices, replay_proof, scripts, x, KoszulMF, MFMorphism,
};
use crate::poly::{potential, LaurentPoly};
use crate::skein::{jones_relation_check, link_bracket, skein_triple, web_bracket};
use crate::web::{Junction, JunctionKind, Web};

/// Deliberate corruptions used to test that failures are reported.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    pub corrupt_u0: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

type Outcome = Result<String, String>;

pub struct Check {
    pub name: &'static str,
    /// Part of the factorization suite run by `mf-verify`.
    pub mf: bool,
    run: fn(Faults) -> Outcome,
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn u_map(f: Faults) -> MFMorphism {
    let mut u = lambda0();
    if f.corrupt_u0 {
        u.m0.set(1, 1, crate::poly::MultiPoly::int(2));
    }
    u
}

fn gamma0() -> KoszulMF {
    KoszulMF::arc(&x(4), &x(1)).tensor(&KoszulMF::arc(&x(3), &x(2)))
}

fn gamma1() -> KoszulMF {
    KoszulMF::singular(&x(1), &x(2), &x(3), &x(4))
}

fn compose(f: Faults) -> Outcome {
    ensure(compose_check_with(&u_map(f), &lambda1()), "a product differs from (x4 - x2)*id")?;
    Ok("U0V0 = U1V1 = V0U0 = V1U1 = (x4 - x2)*id".into())
}

fn lambda_commute(f: Faults) -> Outcome {
    let e = |r: crate::error::Result<bool>| r.map_err(|e| e.to_string());
    ensure(e(check_morphism(&gamma0(), &gamma1(), &u_map(f)))?, "L0 does not commute")?;
    ensure(e(check_morphism(&gamma1(), &gamma0(), &lambda1()))?, "L1 does not commute")?;
    Ok("L0, L1 commute with the differentials, degree 1".into())
}

fn squares(_: Faults) -> Outcome {
    let w = potential(&x(1)) + potential(&x(2)) - potential(&x(3)) - potential(&x(4));
    let (e0, e1) = (gamma0().expand(), gamma1().expand());
    ensure((e0.d0.clone(), e0.d1.clone()) == p_matrices(), "oriented differentials differ from P0, P1")?;
    ensure((e1.d0.clone(), e1.d1.clone()) == q_matrices(), "singular differentials differ from Q0, Q1")?;
    ensure(e0.squares_to(&w) && e1.squares_to(&w), "d0d1 != w*id on a resolution")?;
    ensure(e0.is_graded() && e1.is_graded(), "differentials are not of degree 3")?;
    let arc = KoszulMF::arc(&x(1), &x(2));
    ensure(arc.expand().squares_to(&(potential(&x(2)) - potential(&x(1)))), "d0d1 != w*id on an arc")?;
    Ok("d0d1 = d1d0 = w*id for both resolutions and arcs".into())
}

fn replay(name: &'static str) -> Outcome {
    let s = scripts().into_iter().find(|s| s.name == name).expect("known script");
    let out = replay_proof(&s).map_err(|e| e.to_string())?;
    ensure(out.matches, format!("ended at\n{}\nexpected\n{}", out.result, s.target))?;
    Ok(format!("{} steps reach the target", s.steps.len()))
}

fn singular(ins: [u32; 2], outs: [u32; 2]) -> Junction {
    Junction {
        kind: JunctionKind::Singular,
        ins,
        outs,
    }
}

fn isom2(_: Faults) -> Outcome {
    let digon = Web::new(vec![singular([1, 2], [3, 4]), singular([3, 4], [1, 2])], vec![])
        .map_err(|e| e.to_string())?
        .with_junction_provenance();
    let basic = Web::new(vec![singular([1, 2], [1, 2])], vec![])
        .map_err(|e| e.to_string())?
        .with_junction_provenance();
    let hd = closed_web_homology(&digon).map_err(|e| e.to_string())?;
    let hb = closed_web_homology(&basic).map_err(|e| e.to_string())?;
    let want = &hb.graded_rank() * &LaurentPoly::quantum_two();
    ensure(hd.graded_rank() == want, format!("digon rank {} != {want}", hd.graded_rank()))?;
    Ok(format!("digon rank {} = (q + q^-1)*({})", hd.graded_rank(), hb.graded_rank()))
}

fn induced(_: Faults) -> Outcome {
    let r = induced_map_check().map_err(|e| e.to_string())?;
    ensure(r.ok, r.lines.join("; "))?;
    Ok("L0* = m and L1* = delta on full bases".into())
}

fn closed_webs(_: Faults) -> Outcome {
    let circle = Web::new(vec![], vec![1]).map_err(|e| e.to_string())?.with_provenance(1);
    let h = closed_web_homology(&circle).map_err(|e| e.to_string())?;
    ensure(h.hom_degree == 1 && h.q_shift == -1, "one circle is not A in degree 1")?;
    let basic = Web::new(vec![singular([1, 2], [1, 2])], vec![])
        .map_err(|e| e.to_string())?
        .with_junction_provenance();
    let h = closed_web_homology(&basic).map_err(|e| e.to_string())?;
    ensure(h.hom_degree == 0 && h.basis().len() == 2, "the basic web is not A in degree 0")?;
    let two = Web::new(vec![], vec![1, 2]).map_err(|e| e.to_string())?.with_provenance(2);
    let h = closed_web_homology(&two).map_err(|e| e.to_string())?;
    let aa = &LaurentPoly::quantum_two() * &LaurentPoly::quantum_two();
    ensure(h.hom_degree == 0 && h.graded_rank() == aa, "two circles are not A(x)A")?;
    let mut count = 0;
    for (name, d) in corpus::links() {
        let n = d.num_crossings();
        for bits in 0..1u64 << n {
            let g = d.resolve(&ResolutionWord::from_bits(bits, n));
            let h = closed_web_homology(&g).map_err(|e| format!("{name} {bits:b}: {e}"))?;
            ensure(h.graded_rank() == web_bracket(&g), format!("{name} {bits:b}: rank differs from bracket"))?;
            count += 1;
        }
    }
    Ok(format!("{count} resolution webs match their bracket"))
}

fn euler(_: Faults) -> Outcome {
    for (name, d) in corpus::links() {
        let chi = euler_characteristic(&complex_of(&d));
        ensure(chi == link_bracket(&d), format!("{name}: {chi} != {}", link_bracket(&d)))?;
    }
    let hopf = euler_characteristic(&complex_of(&corpus::hopf_positive()));
    ensure(hopf.to_string() == "q^6 + q^4 + q^2 + 1", format!("hopf+ gives {hopf}"))?;
    Ok("Euler characteristic equals the bracket on the corpus".into())
}

fn skein(_: Faults) -> Outcome {
    let mut count = 0;
    for (name, d) in corpus::links() {
        for c in 0..d.num_crossings() {
            let (p, n, o) = skein_triple(&d, c);
            ensure(jones_relation_check(&p, &n, &o), format!("{name} crossing {c}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} skein triples satisfy the relation"))
}

fn reidemeister(_: Faults) -> Outcome {
    let pairs = corpus::reidemeister_pairs();
    pairs.par_iter().try_for_each(|(name, a, b)| {
        for s in Specialization::presets() {
            let (ha, hb) = (link_homology(a, &s, false), link_homology(b, &s, false));
            ensure(ha == hb, format!("{name} at {}: {:?} vs {:?}", s.name, ha.totals, hb.totals))?;
        }
        let k = Specialization::preset("khovanov").expect("preset");
        let (ha, hb) = (link_homology(a, &k, true), link_homology(b, &k, true));
        ensure(ha == hb, format!("{name} bigraded differs"))
    })?;
    Ok(format!("{} pairs agree at every preset", pairs.len()))
}

fn distinct_roots(_: Faults) -> Outcome {
    for (name, d) in corpus::links() {
        let want = 1usize << d.num_components();
        for s in ["distinct1", "distinct2"] {
            let t = link_homology(&d, &Specialization::preset(s).expect("preset"), false);
            ensure(t.total_dim() == want, format!("{name} at {s}: {} != {want}", t.total_dim()))?;
        }
    }
    Ok("total dimension 2^components at distinct1, distinct2".into())
}

fn double_root(_: Faults) -> Outcome {
    let (k, dbl) = (
        Specialization::preset("khovanov").expect("preset"),
        Specialization::preset("double").expect("preset"),
    );
    for (name, d) in corpus::links() {
        let (a, b) = (link_homology(&d, &k, false), link_homology(&d, &dbl, false));
        ensure(a.totals == b.totals, format!("{name}: {:?} vs {:?}", a.totals, b.totals))?;
    }
    Ok("double root matches khovanov per degree".into())
}

fn degree_formula(_: Faults) -> Outcome {
    let mut mixed = Vec::new();
    for d in [corpus::hopf_positive(), corpus::hopf_negative()] {
        for s in ["distinct1", "distinct2"] {
            let r = distinct_root_report(&d, &Specialization::preset(s).expect("preset")).map_err(|e| e.to_string())?;
            let same: Vec<i32> = r.assignments.iter().filter(|a| a.phi[0] == a.phi[1]).map(|a| a.degree).collect();
            let other: Vec<i32> = r.assignments.iter().filter(|a| a.phi[0] != a.phi[1]).map(|a| a.degree).collect();
            ensure(same == [0, 0], "same-root generators are not in degree 0")?;
            ensure(other[0] == other[1] && other[0] != 0, "mixed generators are not in one nonzero degree")?;
            mixed.push(other[0]);
        }
    }
    ensure(mixed[0] == -mixed[2] && mixed[0] == mixed[1], "degrees are not opposite between hopf+ and hopf-")?;
    Ok(format!(
        "mixed generators at {} (hopf+) and {} (hopf-), multiplier {}",
        mixed[0],
        mixed[2],
        crate::homology::DEGREE_FORMULA_MULTIPLIER
    ))
}

pub fn checks() -> Vec<Check> {
    let c = |name, mf, run| Check { name, mf, run };
    vec![
        c("compose_check", true, compose),
        c("lambda_commute", true, lambda_commute),
        c("squares", true, squares),
        c("isom1", true, |_| replay("isom1")),
        c("isom2", true, isom2),
        c("isom3", true, |_| replay("isom3")),
        c("isom4", true, |_| replay("isom4")),
        c("lambda-oriented", true, |_| replay("lambda-oriented")),
        c("lambda-singular", true, |_| replay("lambda-singular")),
        c("induced_maps", true, induced),
        c("closed_webs", true, closed_webs),
        c("euler", false, euler),
        c("skein", false, skein),
        c("reidemeister", false, reidemeister),
        c("distinct_roots", false, distinct_roots),
        c("double_root", false, double_root),
        c("degree_formula", false, degree_formula),
    ]
}

/// Runs the checks whose name contains `filter`, in parallel, reporting in
/// suite order.
pub fn run(filter: Option<&str>, mf_only: bool, faults: Faults) -> Vec<CheckResult> {
    checks()
        .into_par_iter()
        .filter(|c| (!mf_only || c.mf) && filter.is_none_or(|f| c.name.contains(f)))
        .map(|c| {
            let t = Instant::now();
            let out = (c.run)(faults);
            let elapsed = t.elapsed();
            let (passed, detail) = match out {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult {
                name: c.name,
                passed,
                detail,
                elapsed,
            }
        })
        .collect()
}
