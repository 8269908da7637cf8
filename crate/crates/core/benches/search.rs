//! Parallel core against a one-worker pool; built without the `parallel`
//! feature the same workloads time the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transversal::exactmath::int_point;
use transversal::reductions::{
    equalbin_to_flattrans, subsetsum_to_hyptrans, twopoint_to_segments, BinPackingInstance,
    SegmentMode, SubsetSumInstance,
};
use transversal::solvers::{finite_flat_transversal, maxhyp_exact, segment_hyperplane_transversal};
use transversal::wellsep::is_well_separated;
use transversal::{Point, PointFamily};

type Workload = (&'static str, Box<dyn Fn() + Sync>);

fn workloads() -> Vec<Workload> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let pts: Vec<Point> = (0..40)
        .map(|_| {
            int_point(&[
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
            ])
        })
        .collect();
    let wellsep: PointFamily = PointFamily::new(
        4,
        (0..5)
            .map(|_| {
                (0..3)
                    .map(|_| int_point(&(0..4).map(|_| rng.gen_range(-6..=6)).collect::<Vec<_>>()))
                    .collect()
            })
            .collect(),
    )
    .unwrap();
    let (bins, bins_target) =
        equalbin_to_flattrans(&BinPackingInstance::new(vec![2, 1, 1, 2, 1, 1], 2, 4).unwrap())
            .unwrap();
    let ss = subsetsum_to_hyptrans(&SubsetSumInstance::new(vec![3, -2, 5], 9).unwrap()).unwrap();
    let segs = twopoint_to_segments(&ss, SegmentMode::Planar).unwrap();
    vec![
        (
            "maxhyp_exact",
            Box::new(move || {
                maxhyp_exact(&pts, 3).unwrap();
            }),
        ),
        (
            "wellsep",
            Box::new(move || {
                is_well_separated(&wellsep).unwrap();
            }),
        ),
        (
            "equalbin_transversal",
            Box::new(move || {
                finite_flat_transversal(&bins, bins_target).unwrap();
            }),
        ),
        (
            "segment_transversal",
            Box::new(move || {
                segment_hyperplane_transversal(&segs).unwrap();
            }),
        ),
    ]
}

#[cfg(feature = "parallel")]
fn bench(c: &mut Criterion) {
    let pools = [
        (
            "1-thread",
            rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .unwrap(),
        ),
        ("default", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ];
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        for (label, pool) in &pools {
            group.bench_function(BenchmarkId::from_parameter(label), |b| {
                b.iter(|| pool.install(&work))
            });
        }
        group.finish();
    }
}

#[cfg(not(feature = "parallel"))]
fn bench(c: &mut Criterion) {
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        group.bench_function(BenchmarkId::from_parameter("sequential"), |b| b.iter(&work));
        group.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
