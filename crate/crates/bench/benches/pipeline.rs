use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use ukr::corpus;
use ukr::cube::complex_of;
use ukr::homology::{homology_dims, specialize, Specialization};
use ukr::mfact::{closed_web_homology, replay_proof, scripts};
use ukr::skein::link_bracket;
use ukr::ResolutionWord;

fn cube(c: &mut Criterion) {
    let mut g = c.benchmark_group("complex_of");
    for (name, d) in [("trefoil", corpus::trefoil_right()), ("figure-eight", corpus::figure_eight()), ("ten", corpus::ten_crossing())] {
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| b.iter(|| complex_of(black_box(d))));
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let d = corpus::ten_crossing();
    let cx = complex_of(&d);
    let mut g = c.benchmark_group("homology_ten");
    g.sample_size(10);
    for s in Specialization::presets() {
        g.bench_with_input(BenchmarkId::from_parameter(&s.name), &s, |b, s| {
            b.iter(|| homology_dims(&specialize(&cx, s), s.is_graded()))
        });
    }
    g.finish();
}

fn bracket(c: &mut Criterion) {
    let d = corpus::ten_crossing();
    c.bench_function("link_bracket_ten", |b| b.iter(|| link_bracket(black_box(&d))));
}

fn factorizations(c: &mut Criterion) {
    let all = scripts();
    c.bench_function("replay_all", |b| {
        b.iter(|| all.iter().all(|s| replay_proof(s).unwrap().matches))
    });
    let d = corpus::figure_eight();
    let n = d.num_crossings();
    let webs: Vec<_> = (0..1u64 << n).map(|w| d.resolve(&ResolutionWord::from_bits(w, n))).collect();
    c.bench_function("closed_webs_figure_eight", |b| {
        b.iter(|| webs.iter().map(|g| closed_web_homology(g).unwrap().hom_degree as u32).sum::<u32>())
    });
}

criterion_group!(benches, cube, homology, bracket, factorizations);
criterion_main!(benches);
