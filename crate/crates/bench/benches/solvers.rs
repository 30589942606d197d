use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kconvex::arcs::{build_arc_chain, convexity_conditions};
use kconvex::bounds::verify_theorem2;
use kconvex::extremal::{circumradius, inradius};
use kconvex::oracle::GridOracle;
use kconvex::surface::{distance_bvp, SurfacePoint, SurfaceProfile};
use kconvex::{CurvatureDefinition, Ln2Variant};
use kconvex_bench::{band, corpus, RHO};

fn extremal(c: &mut Criterion) {
    let mut g = c.benchmark_group("extremal");
    for n in [3, 5, 8] {
        let polys = corpus(32, n);
        g.bench_with_input(BenchmarkId::new("inradius", n), &polys, |b, ps| {
            b.iter(|| ps.iter().map(|p| inradius(black_box(p)).unwrap().r).sum::<f64>())
        });
        g.bench_with_input(BenchmarkId::new("circumradius", n), &polys, |b, ps| {
            b.iter(|| ps.iter().map(|p| circumradius(black_box(p)).unwrap().radius).sum::<f64>())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let p = corpus(1, 6).remove(0);
    let g = GridOracle::default();
    c.bench_function("grid_oracle_inradius", |b| b.iter(|| g.inradius(black_box(&p)).1));
}

fn rounding(c: &mut Criterion) {
    let polys = corpus(32, 6);
    let k1 = band().k1;
    c.bench_function("arc_chain_conditions", |b| {
        b.iter(|| {
            for p in &polys {
                let chain = build_arc_chain(black_box(p), RHO).unwrap();
                black_box(convexity_conditions(&chain, k1).unwrap());
            }
        })
    });
    c.bench_function("verify_polygon", |b| {
        let band = band();
        b.iter(|| {
            for p in &polys {
                black_box(verify_theorem2(p, &band, RHO, Ln2Variant::Dimensional, CurvatureDefinition::A).unwrap());
            }
        })
    });
}

fn surface(c: &mut Criterion) {
    let profile = SurfaceProfile::blended(1.0, 0.5, 2.0).unwrap();
    let a = SurfacePoint::new(0.6, 0.2).unwrap();
    let q = SurfacePoint::new(1.4, 2.3).unwrap();
    c.bench_function("blended_distance_bvp", |b| {
        b.iter(|| distance_bvp(&profile, black_box(&a), black_box(&q)).unwrap())
    });
}

criterion_group!(benches, extremal, oracle, rounding, surface);
criterion_main!(benches);
