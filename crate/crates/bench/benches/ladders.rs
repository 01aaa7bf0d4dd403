use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use rrpi_core::closedform::tower;
use rrpi_core::piladder::context_for;
use rrpi_core::{const_pi_reference, eval_r, ladder_deg5, rogers_solve, two_pi_reference, PrecisionContext, Scheme};

fn continued_fraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_r");
    for digits in [100u32, 1000] {
        let ctx = PrecisionContext::new(digits).unwrap();
        let q = (-two_pi_reference(&ctx).unwrap()).exp();
        group.bench_with_input(BenchmarkId::from_parameter(digits), &q, |b, q| {
            b.iter(|| eval_r(black_box(q), &ctx).unwrap())
        });
    }
    group.finish();
}

fn ladders(c: &mut Criterion) {
    let ctx = context_for(Scheme::Deg5, 3).unwrap();
    c.bench_function("ladder_deg5_n3", |b| b.iter(|| ladder_deg5(black_box(3), &ctx).unwrap()));

    let ctx = context_for(Scheme::Deg11, 1).unwrap();
    let u = tower(1, &ctx).unwrap().pop().unwrap().u;
    c.bench_function("rogers_solve_m1", |b| b.iter(|| rogers_solve(black_box(&u), &ctx).unwrap()));
}

fn reference_pi(c: &mut Criterion) {
    let ctx = PrecisionContext::new(2000).unwrap();
    c.bench_function("pi_2000", |b| b.iter(|| const_pi_reference(black_box(&ctx)).unwrap()));
}

criterion_group!(benches, continued_fraction, ladders, reference_pi);
criterion_main!(benches);
