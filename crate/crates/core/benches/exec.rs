//! Sequential versus parallel execution of the data-parallel kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyshock_core::quadrature::{integrate_flux_moments, integrate_production, QuadSpec};
use polyshock_core::shock::{solve, ShockProblem};
use polyshock_core::verification::{run, Group, VerifyOptions};
use polyshock_core::{CrossSection, Exec, GasParameters, MacroState6};

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn oracle_integrals(c: &mut Criterion) {
    let g = GasParameters::kinetic(0.5).unwrap();
    let s = MacroState6::at_rest(1.0, 1.0, 0.1, &g).unwrap();
    let spec = CrossSection::generalized(1.0, 0.5, 1.0, 1.0).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        let quad = QuadSpec::default().with_exec(exec);
        group.bench_with_input(BenchmarkId::new("production", name), &quad, |b, q| {
            b.iter(|| integrate_production(black_box(&s), &spec, &g, q).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("flux_moments", name), &quad, |b, q| {
            b.iter(|| integrate_flux_moments(black_box(&s), &g, q).unwrap())
        });
    }
    group.finish();
}

fn random_state_suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_states");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        let mut options =
            VerifyOptions::default().with_groups(&[Group::Kinematics, Group::EtCompatibility]);
        options.quad = options.quad.with_exec(exec);
        group.bench_with_input(
            BenchmarkId::new("kinematics_and_et", name),
            &options,
            |b, o| b.iter(|| run(o).unwrap()),
        );
    }
    group.finish();
}

fn profile_sweep(c: &mut Criterion) {
    let problems: Vec<ShockProblem> = (0..32)
        .map(|k| ShockProblem::new(1.02 + 0.06 * k as f64, 0.5, 1.0, 0.5).unwrap())
        .collect();
    let mut group = c.benchmark_group("profile_sweep");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| {
            b.iter(|| exec.map(&problems, |p| solve(p).map(|r| r.thickness)))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    oracle_integrals,
    random_state_suites,
    profile_sweep
);
criterion_main!(benches);
