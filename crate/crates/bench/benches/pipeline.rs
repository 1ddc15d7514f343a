use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use stringpoly::weyl::{BraidMove, ReducedWord};
use stringpoly::{cones, family, lifting, polytope};

fn paper_word() -> ReducedWord {
    ReducedWord::parse("3 1 2 1 3 2", None).unwrap()
}

fn bench_hrep(c: &mut Criterion) {
    let w = paper_word();
    c.bench_function("delta_hrep n=3", |b| {
        b.iter(|| black_box(cones::delta_hrep(black_box(&w))))
    });
}

fn bench_vertices(c: &mut Criterion) {
    let w = paper_word();
    c.bench_function("vertex enumeration n=3", |b| {
        b.iter(|| black_box(polytope::string_polytope(black_box(&w)).unwrap()))
    });
}

fn bench_dual(c: &mut Criterion) {
    let w = paper_word();
    let (_, delta) = polytope::string_polytope(&w).unwrap();
    let p = polytope::interior_point_checked(&delta, &polytope::lambda_apex(&w)).unwrap();
    c.bench_function("dual polytope n=3", |b| {
        b.iter(|| black_box(polytope::dual_polytope(black_box(&delta), black_box(&p)).unwrap()))
    });
}

fn bench_pullback(c: &mut Criterion) {
    let w = ReducedWord::standard(3);
    let fam = family::build_family(&w);
    let space = family::box_equations(&fam);
    let mv = BraidMove::three(1);
    c.bench_function("lift pullback n=3", |b| {
        b.iter(|| black_box(lifting::lift_pullback(&fam, &space, mv).unwrap()))
    });
}

fn bench_picard(c: &mut Criterion) {
    let w = paper_word();
    let (_, delta) = polytope::string_polytope(&w).unwrap();
    c.bench_function("picard rank n=3", |b| {
        b.iter(|| black_box(polytope::class_and_picard_rank(black_box(&delta)).unwrap()))
    });
}

fn bench_chain(c: &mut Criterion) {
    let a = ReducedWord::standard(3);
    let b_word = paper_word();
    c.bench_function("chain verify standard to paper word", |b| {
        b.iter(|| black_box(lifting::chain_verify(&a, &b_word, 7).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_hrep,
    bench_vertices,
    bench_dual,
    bench_pullback,
    bench_picard,
    bench_chain
);
criterion_main!(benches);
