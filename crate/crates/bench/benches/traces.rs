use criterion::{criterion_group, criterion_main, Criterion};
use cvdc_core::protocol::ExperimentConfig;
use cvdc_core::traces::{self, SignalSpec, TraceConfig, TraceKind};

fn bench_traces(c: &mut Criterion) {
    let exp = ExperimentConfig {
        r: 0.23025850929940458,
        ..ExperimentConfig::default()
    };
    let time_cfg = TraceConfig {
        averages: 2,
        sweep_s: 0.004,
        ..TraceConfig::default()
    };
    let spectrum_cfg = TraceConfig {
        span_hz: 1e6,
        averages: 2,
        sweep_s: 0.004,
        am_signal: Some(SignalSpec {
            freq_hz: 1.3e6,
            depth: 1.0,
        }),
        ..TraceConfig::default()
    };

    let mut group = c.benchmark_group("traces");
    group.sample_size(10);
    group.bench_function("time_trace/shot_noise", |b| {
        b.iter(|| traces::time_trace(&exp, &time_cfg, TraceKind::ShotNoise).unwrap())
    });
    group.bench_function("time_trace/squeezed_scanned", |b| {
        b.iter(|| traces::time_trace(&exp, &time_cfg, TraceKind::SqueezedScanned).unwrap())
    });
    group.bench_function("spectrum_trace", |b| {
        b.iter(|| traces::spectrum_trace(&exp, &spectrum_cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_traces);
criterion_main!(benches);
