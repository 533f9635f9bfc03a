use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sympair::certify::{sweep, PatternForm};
use sympair::cycstruct::hartmann_tzeng_bound;
use sympair::exec::Exec;
use sympair::families::{build, FamilyId};
use sympair::spcode::{enumerate_codewords, min_pair, SearchOptions};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn pair_distance(c: &mut Criterion) {
    let code = build(FamilyId::Dp7, 13).unwrap();
    let mut g = c.benchmark_group("min_pair/dp7_q13");
    for (name, exec) in MODES {
        let opts = SearchOptions::default().with_exec(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| min_pair(&code, 7, &opts).unwrap())
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let code = build(FamilyId::Dp9, 5).unwrap();
    let mut g = c.benchmark_group("enumerate/dp9_q5");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_codewords(&code, exec).unwrap())
        });
    }
    g.finish();
}

fn ht_bound(c: &mut Criterion) {
    let code = build(FamilyId::Dp7, 13).unwrap();
    let t = code.defining_set().unwrap().clone();
    let mut g = c.benchmark_group("hartmann_tzeng/dp7_q13");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| hartmann_tzeng_bound(&t, exec).unwrap())
        });
    }
    g.finish();
}

fn shape_sweep(c: &mut Criterion) {
    let code = build(FamilyId::Dp9, 9).unwrap();
    let forms: Vec<PatternForm> = FamilyId::Dp9
        .spec()
        .excluded_forms()
        .into_iter()
        .map(PatternForm::new)
        .collect();
    let mut g = c.benchmark_group("sweep/dp9_q9");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sweep(&code, 8, &forms, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, pair_distance, enumeration, ht_bound, shape_sweep);
criterion_main!(benches);
