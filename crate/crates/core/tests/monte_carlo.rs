//! Monte-Carlo oracles: sampled Gaussian statistics must reproduce the
//! analytic homodyne moments and the closed-form channel capacities.

use cvdc_core::capacity;
use cvdc_core::gaussian::GaussianState;
use cvdc_core::protocol::{run_experiment, ExperimentConfig};
use nalgebra::{Cholesky, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const R_2DB: f64 = 0.23025850929940458;

/// Draw quadrature vectors from the state's Gaussian distribution.
fn sample_states(state: &GaussianState, n: usize, seed: u64) -> Vec<DVector<f64>> {
    let chol = Cholesky::new(state.cov().clone()).expect("covariance not positive definite");
    let l = chol.l();
    let dim = state.mean().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let z = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
            state.mean() + &l * z
        })
        .collect()
}

fn mean_and_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v)
}

#[test]
fn sampled_homodyne_matches_analytic_moments() {
    let state = GaussianState::vacuum(2)
        .unwrap()
        .squeeze(0, R_2DB, 0.0)
        .unwrap()
        .squeeze(1, R_2DB, std::f64::consts::FRAC_PI_2)
        .unwrap()
        .beamsplitter(0, 1, 0.5, 0.0)
        .unwrap()
        .displace(0, Complex64::new(0.8, -0.4))
        .unwrap();
    let n = 1_000_000;
    let samples = sample_states(&state, n, 11);
    for (mode, phase) in [(0usize, 0.0), (0, 0.7), (1, 1.9)] {
        let expected = state.homodyne_stats(mode, phase).unwrap();
        let (c, s) = (phase.cos(), phase.sin());
        let projected: Vec<f64> = samples
            .iter()
            .map(|x| c * x[2 * mode] + s * x[2 * mode + 1])
            .collect();
        let (m, v) = mean_and_var(&projected);
        let se_mean = (expected.variance / n as f64).sqrt();
        let se_var = expected.variance * (2.0 / n as f64).sqrt();
        assert!(
            (m - expected.mean).abs() < 3.0 * se_mean,
            "mode {mode} phase {phase}: mean {m} vs {}",
            expected.mean
        );
        assert!(
            (v - expected.variance).abs() < 3.0 * se_var,
            "mode {mode} phase {phase}: var {v} vs {}",
            expected.variance
        );
    }
}

/// Gaussian mutual information of an additive channel estimated from
/// sampled signal-plus-noise records: `1/2 ln(var(y) / var(noise))`.
fn sampled_gaussian_mi(signal_var: f64, noise_var: f64, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ys: Vec<f64> = (0..n)
        .map(|_| {
            signal_var.sqrt() * rng.sample::<f64, _>(StandardNormal)
                + noise_var.sqrt() * rng.sample::<f64, _>(StandardNormal)
        })
        .collect();
    let (_, vy) = mean_and_var(&ys);
    0.5 * (vy / noise_var).ln()
}

#[test]
fn capacities_match_monte_carlo_estimates() {
    let n_bar = 1.5;
    let n_samples = 300_000;
    let signal = n_bar - R_2DB.sinh().powi(2);

    // decoded per-quadrature noise of the dense-coding pipeline
    let decoded = run_experiment(&ExperimentConfig::ideal(R_2DB, Complex64::default())).unwrap();
    let dense_noise = decoded.x_channel.variance;
    // single squeezed beam homodyned directly
    let squeezed_noise = GaussianState::vacuum(1)
        .unwrap()
        .squeeze(0, R_2DB, 0.0)
        .unwrap()
        .homodyne_stats(0, 0.0)
        .unwrap()
        .variance;

    // dense coding: complex alpha, decoded means (Re a, Im a), two channels
    let mc_dense = sampled_gaussian_mi(signal / 2.0, dense_noise, n_samples, 21)
        + sampled_gaussian_mi(signal / 2.0, dense_noise, n_samples, 22);
    let closed = capacity::i_dense_coding(n_bar, R_2DB).unwrap();
    assert!(
        (mc_dense - closed).abs() / closed < 0.02,
        "dense coding: MC {mc_dense} vs {closed}"
    );

    // squeezed homodyne: real alpha measured as sqrt(2) alpha over squeezed noise
    let mc_sqz = sampled_gaussian_mi(2.0 * signal, squeezed_noise, n_samples, 23);
    let closed = capacity::i_squeezed_homodyne(n_bar, R_2DB).unwrap();
    assert!(
        (mc_sqz - closed).abs() / closed < 0.02,
        "squeezed homodyne: MC {mc_sqz} vs {closed}"
    );

    // coherent single quadrature: vacuum noise
    let mc_1q = sampled_gaussian_mi(2.0 * n_bar, 0.5, n_samples, 24);
    let closed = capacity::i_coherent_1q(n_bar).unwrap();
    assert!(
        (mc_1q - closed).abs() / closed < 0.02,
        "coherent 1q: MC {mc_1q} vs {closed}"
    );

    // coherent double quadrature: one extra vacuum unit per quadrature
    let mc_2q = sampled_gaussian_mi(n_bar, 1.0, n_samples, 25)
        + sampled_gaussian_mi(n_bar, 1.0, n_samples, 26);
    let closed = capacity::i_coherent_2q(n_bar).unwrap();
    assert!(
        (mc_2q - closed).abs() / closed < 0.02,
        "coherent 2q: MC {mc_2q} vs {closed}"
    );

    // optimized dense coding is dense coding at r*(n_bar)
    let r_star = capacity::optimal_dense_coding_r(n_bar);
    let noise_star = run_experiment(&ExperimentConfig::ideal(r_star, Complex64::default()))
        .unwrap()
        .x_channel
        .variance;
    let sig_star = n_bar - r_star.sinh().powi(2);
    let mc_opt = sampled_gaussian_mi(sig_star / 2.0, noise_star, n_samples, 27)
        + sampled_gaussian_mi(sig_star / 2.0, noise_star, n_samples, 28);
    let closed = capacity::i_dense_coding_optimal(n_bar).unwrap();
    assert!(
        (mc_opt - closed).abs() / closed < 0.02,
        "optimal dense coding: MC {mc_opt} vs {closed}"
    );
}
