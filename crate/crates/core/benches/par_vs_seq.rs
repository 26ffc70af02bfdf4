//! Parallel-vs-sequential comparison for the block-parallel kernels.
//!
//! The execution mode is a compile-time feature, so each bench id is
//! tagged with the mode the binary was built with. Compare the two with
//! criterion baselines:
//!
//! ```text
//! cargo bench -p ospq-core --bench par_vs_seq -- --save-baseline parallel
//! cargo bench -p ospq-core --bench par_vs_seq --no-default-features -- --baseline parallel
//! ```

use criterion::{criterion_group, criterion_main, Criterion};
use ospq_core::context::Context;
use ospq_core::coordring::{orthogonality_check, superdimension};
use ospq_core::homogeneous::sections;
use ospq_core::repcore::{one_dim_module, tensor_decomp, Scope};
use ospq_core::rootdata::WeightVec;
use std::hint::black_box;

const MODE: &str = if cfg!(feature = "parallel") {
    "parallel"
} else {
    "sequential"
};

fn bench_sections(c: &mut Criterion) {
    let ctx = Context::new(1).unwrap();
    let cneg = one_dim_module(1, -&WeightVec::epsilon(1, 1));
    let scope = Scope::reductive(1, vec![]);
    // warm the irreducible-module caches so the measurement isolates the
    // per-block section solves
    sections(&ctx, &cneg, &scope, 3).unwrap();
    c.bench_function(&format!("sections_n1_cutoff3/{}", MODE), |b| {
        b.iter(|| black_box(sections(&ctx, &cneg, &scope, black_box(3)).unwrap().dim()))
    });
}

fn bench_orthogonality(c: &mut Criterion) {
    let ctx = Context::new(1).unwrap();
    superdimension(&ctx, &[2]).unwrap();
    c.bench_function(&format!("orthogonality_n1_lam2/{}", MODE), |b| {
        b.iter(|| {
            black_box(
                orthogonality_check(&ctx, black_box(&[2]), black_box(&[2]))
                    .unwrap()
                    .checked,
            )
        })
    });
}

fn bench_tensor_decompose(c: &mut Criterion) {
    c.bench_function(&format!("tensor_square_n2/{}", MODE), |b| {
        b.iter(|| {
            // fresh context each pass: the decomposition cache would
            // otherwise absorb the entire workload
            let ctx = Context::new(2).unwrap();
            let td = tensor_decomp(&ctx, black_box(&[1, 0]), black_box(&[1, 0])).unwrap();
            black_box(td.1.summands.len())
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_sections, bench_orthogonality, bench_tensor_decompose
}
criterion_main!(benches);
