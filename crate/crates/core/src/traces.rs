//! Seeded synthesis of spectrum-analyzer records from the simulated noise
//! levels: zero-span time traces with an optional LO scan, and swept
//! two-channel spectra with AM/PM test signals.
//!
//! The analyzer front end is modeled the standard way: the homodyne
//! photocurrent is mixed down at the center frequency, band-limited by a
//! Gaussian-shaped resolution filter, square-law detected, smoothed by a
//! single-pole video filter, and trace-averaged. All randomness comes from
//! a counter-mode RNG, so identical configurations produce bit-identical
//! traces.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::{num_complex::Complex, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::Error;
use crate::gaussian::VACUUM_VARIANCE;
use crate::protocol::{self, ExperimentConfig};
use crate::Result;

/// A sinusoidal test signal on one quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSpec {
    pub freq_hz: f64,
    /// Quadrature oscillation amplitude in shot-noise units.
    pub depth: f64,
}

/// Spectrum-analyzer emulation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TraceConfig {
    pub center_hz: f64,
    /// 0 for zero-span (power vs. time), positive for a swept spectrum.
    pub span_hz: f64,
    pub rbw_hz: f64,
    pub vbw_hz: f64,
    pub averages: usize,
    pub sweep_s: f64,
    /// Scan the LO phase linearly over pi during the sweep.
    pub lo_scan: bool,
    pub seed: u64,
    pub am_signal: Option<SignalSpec>,
    pub pm_signal: Option<SignalSpec>,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self {
            center_hz: 1.1e6,
            span_hz: 0.0,
            rbw_hz: 30e3,
            vbw_hz: 0.3e3,
            averages: 10,
            sweep_s: 0.02,
            lo_scan: true,
            seed: 0,
            am_signal: None,
            pm_signal: None,
        }
    }
}

impl TraceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.center_hz <= 0.0 {
            return Err(Error::Config(format!(
                "center_hz must be positive (got {})",
                self.center_hz
            )));
        }
        if self.span_hz < 0.0 {
            return Err(Error::Config(format!(
                "span_hz must be nonnegative (got {})",
                self.span_hz
            )));
        }
        if self.rbw_hz <= 0.0 || self.vbw_hz <= 0.0 {
            return Err(Error::Config("rbw_hz and vbw_hz must be positive".into()));
        }
        if self.vbw_hz > self.rbw_hz {
            return Err(Error::Config(format!(
                "vbw_hz = {} exceeds rbw_hz = {}",
                self.vbw_hz, self.rbw_hz
            )));
        }
        if self.averages < 1 {
            return Err(Error::Config("averages must be at least 1".into()));
        }
        if self.sweep_s <= 0.0 {
            return Err(Error::Config("sweep_s must be positive".into()));
        }
        Ok(())
    }

    /// Internal sample rate: 16x the highest analyzed frequency.
    pub fn sample_rate(&self) -> f64 {
        16.0 * (self.center_hz + self.span_hz / 2.0)
    }
}

/// Which noise record to synthesize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceKind {
    ShotNoise,
    EprNoise,
    SqueezedLocked,
    SqueezedScanned,
}

impl TraceKind {
    pub const ALL: [TraceKind; 4] = [
        TraceKind::ShotNoise,
        TraceKind::EprNoise,
        TraceKind::SqueezedLocked,
        TraceKind::SqueezedScanned,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TraceKind::ShotNoise => "shot-noise",
            TraceKind::EprNoise => "epr-noise",
            TraceKind::SqueezedLocked => "squeezed-locked",
            TraceKind::SqueezedScanned => "squeezed-scanned",
        }
    }
}

/// One synthesized record: sample axis (seconds or Hz) and power in dB
/// relative to shot noise.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub axis: Vec<f64>,
    pub power_db: Vec<f64>,
    pub kind: TraceKind,
}

/// Second moments of one decoded mode, enough to evaluate the homodyne
/// variance at any LO phase.
#[derive(Debug, Clone, Copy)]
struct QuadratureMoments {
    vx: f64,
    vp: f64,
    cxp: f64,
}

impl QuadratureMoments {
    fn at_phase(&self, theta: f64) -> f64 {
        let (c, s) = (theta.cos(), theta.sin());
        c * c * self.vx + s * s * self.vp + 2.0 * c * s * self.cxp
    }
}

fn decoded_moments(exp: &ExperimentConfig, mode: usize) -> Result<QuadratureMoments> {
    let st = protocol::decoded_state(exp)?;
    let (ix, ip) = (2 * mode, 2 * mode + 1);
    Ok(QuadratureMoments {
        vx: st.cov()[(ix, ix)],
        vp: st.cov()[(ip, ip)],
        cxp: st.cov()[(ix, ip)],
    })
}

/// Gaussian resolution-filter taps at the decimated rate, normalized to
/// unit DC gain. The power response has FWHM `rbw_hz`.
fn rbw_taps(rbw_hz: f64, dt: f64) -> Vec<f64> {
    let sigma_f = rbw_hz / (2.0 * (2.0 * 2.0_f64.ln()).sqrt());
    let sigma_t = 1.0 / (2.0 * std::f64::consts::SQRT_2 * PI * sigma_f);
    let half = ((4.0 * sigma_t / dt).ceil() as usize).max(1);
    let mut h: Vec<f64> = (-(half as i64)..=half as i64)
        .map(|k| {
            let t = k as f64 * dt;
            (-(t * t) / (2.0 * sigma_t * sigma_t)).exp()
        })
        .collect();
    let sum: f64 = h.iter().sum();
    for v in &mut h {
        *v /= sum;
    }
    h
}

/// Zero-span record: noise power at the center frequency versus time.
///
/// The instantaneous homodyne variance follows the LO phase: constant for
/// locked kinds, swept linearly over pi for the scanned squeezed beam.
pub fn time_trace(exp: &ExperimentConfig, tc: &TraceConfig, kind: TraceKind) -> Result<Trace> {
    exp.validate()?;
    tc.validate()?;
    if tc.span_hz != 0.0 {
        return Err(Error::Config(format!(
            "time traces require span 0 (got {})",
            tc.span_hz
        )));
    }

    let fixed_variance = match kind {
        TraceKind::ShotNoise => Some(VACUUM_VARIANCE),
        TraceKind::EprNoise => Some(protocol::epr_noise(exp)?),
        TraceKind::SqueezedLocked => Some(protocol::run_experiment(exp)?.x_channel.variance),
        TraceKind::SqueezedScanned => None,
    };
    let scanned = match kind {
        TraceKind::SqueezedScanned => Some(decoded_moments(exp, 0)?),
        _ => None,
    };

    let fs = tc.sample_rate();
    let n_samples = (fs * tc.sweep_s).round() as usize;
    let decim = ((fs / (8.0 * tc.rbw_hz)).floor() as usize).max(1);
    let dt_dec = decim as f64 / fs;
    let taps = rbw_taps(tc.rbw_hz, dt_dec);
    let n_dec = n_samples / decim;
    if n_dec <= taps.len() {
        return Err(Error::Config(
            "sweep too short for the resolution bandwidth".into(),
        ));
    }

    let omega = 2.0 * PI * tc.center_hz;
    let vbw_alpha = 1.0 - (-2.0 * PI * tc.vbw_hz * dt_dec).exp();
    let n_out = n_dec - taps.len() + 1;
    let mut avg_power = vec![0.0_f64; n_out];

    for sweep in 0..tc.averages {
        let mut rng = ChaCha8Rng::seed_from_u64(tc.seed);
        rng.set_stream(sweep as u64);
        // mix to baseband and boxcar-decimate in one pass
        let mut i_dec = Vec::with_capacity(n_dec);
        let mut q_dec = Vec::with_capacity(n_dec);
        let mut acc_i = 0.0;
        let mut acc_q = 0.0;
        for n in 0..n_dec * decim {
            let t = n as f64 / fs;
            let v = match (&fixed_variance, &scanned) {
                (Some(v), _) => *v,
                (None, Some(m)) => m.at_phase(PI * t / tc.sweep_s),
                _ => unreachable!(),
            };
            let x: f64 = rng.sample::<f64, _>(StandardNormal) * v.sqrt();
            let (s, c) = (omega * t).sin_cos();
            acc_i += x * c;
            acc_q -= x * s;
            if (n + 1) % decim == 0 {
                i_dec.push(acc_i / decim as f64);
                q_dec.push(acc_q / decim as f64);
                acc_i = 0.0;
                acc_q = 0.0;
            }
        }
        // resolution filter (valid convolution) and square-law detection
        let mut detected = Vec::with_capacity(n_out);
        for m in 0..n_out {
            let mut yi = 0.0;
            let mut yq = 0.0;
            for (k, h) in taps.iter().enumerate() {
                yi += h * i_dec[m + k];
                yq += h * q_dec[m + k];
            }
            detected.push(yi * yi + yq * yq);
        }
        // video filter, seeded with a window average to tame the transient
        let warmup = ((1.0 / vbw_alpha).ceil() as usize).clamp(1, n_out);
        let mut video = detected[..warmup].iter().sum::<f64>() / warmup as f64;
        for (slot, &p) in avg_power.iter_mut().zip(&detected) {
            video += vbw_alpha * (p - video);
            *slot += video;
        }
    }

    // calibration: white noise of variance V reads V * sum(h^2) / decim
    let gain: f64 = taps.iter().map(|h| h * h).sum::<f64>() / decim as f64;
    let shot_reference = VACUUM_VARIANCE * gain;
    let half_filter = (taps.len() - 1) / 2;
    // drop the video-filter settling region
    let settle = (((3.0 / vbw_alpha).ceil() as usize).max(1)).min(n_out / 4);
    let trace: Vec<f64> = avg_power[settle..]
        .iter()
        .map(|p| 10.0 * (p / tc.averages as f64 / shot_reference).log10())
        .collect();
    let axis: Vec<f64> = (settle..n_out)
        .map(|m| (m + half_filter) as f64 * dt_dec)
        .collect();
    Ok(Trace {
        axis,
        power_db: trace,
        kind,
    })
}

/// Number of displayed frequency bins per spectrum.
const SPECTRUM_BINS: usize = 501;

/// Swept spectra of both homodyne outputs over
/// `[center - span/2, center + span/2]`.
///
/// The x-channel spectrum carries the AM test signal, the p-channel the PM
/// one; each floor sits at the decoded variance of its channel. Signals
/// outside the span simply do not appear.
pub fn spectrum_trace(exp: &ExperimentConfig, tc: &TraceConfig) -> Result<(Trace, Trace)> {
    exp.validate()?;
    tc.validate()?;
    if tc.span_hz <= 0.0 {
        return Err(Error::Config(format!(
            "spectrum traces require a positive span (got {})",
            tc.span_hz
        )));
    }

    let decoded = protocol::run_experiment(exp)?;
    let x = channel_spectrum(
        tc,
        decoded.x_channel.variance,
        tc.am_signal,
        0,
    )?;
    let p = channel_spectrum(
        tc,
        decoded.p_channel.variance,
        tc.pm_signal,
        1,
    )?;
    Ok((x, p))
}

fn channel_spectrum(
    tc: &TraceConfig,
    variance: f64,
    signal: Option<SignalSpec>,
    stream_offset: u64,
) -> Result<Trace> {
    let fs = tc.sample_rate();
    let total = (fs * tc.sweep_s).round() as usize;
    let seg_len = (total / tc.averages).max(1024);
    let df = fs / seg_len as f64;

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(seg_len);
    let n_pos = seg_len / 2;
    let mut periodogram = vec![0.0_f64; n_pos];
    let sigma = variance.sqrt();

    for seg in 0..tc.averages {
        let mut rng = ChaCha8Rng::seed_from_u64(tc.seed.wrapping_add(1));
        rng.set_stream(2 * seg as u64 + stream_offset);
        let t0 = seg as f64 * seg_len as f64 / fs;
        let mut buf: Vec<Complex<f64>> = (0..seg_len)
            .map(|n| {
                let t = t0 + n as f64 / fs;
                let mut s = sigma * rng.sample::<f64, _>(StandardNormal);
                if let Some(sig) = signal {
                    s += sig.depth * (2.0 * PI * sig.freq_hz * t).cos();
                }
                Complex::new(s, 0.0)
            })
            .collect();
        fft.process(&mut buf);
        for (k, slot) in periodogram.iter_mut().enumerate() {
            *slot += buf[k].norm_sqr() / seg_len as f64;
        }
    }
    for v in &mut periodogram {
        *v /= tc.averages as f64;
    }

    // swept Gaussian resolution filter over the averaged periodogram
    let f_lo = tc.center_hz - tc.span_hz / 2.0;
    let sigma_f = tc.rbw_hz / (2.0 * (2.0 * 2.0_f64.ln()).sqrt());
    let window_bins = ((4.0 * sigma_f / df).ceil() as usize).max(1);
    let mut readings = Vec::with_capacity(SPECTRUM_BINS);
    for i in 0..SPECTRUM_BINS {
        let f0 = f_lo + tc.span_hz * i as f64 / (SPECTRUM_BINS - 1) as f64;
        let k0 = (f0 / df).round() as i64;
        let mut power = 0.0;
        let mut weight = 0.0;
        for k in (k0 - window_bins as i64)..=(k0 + window_bins as i64) {
            if k < 1 || k as usize >= n_pos {
                continue;
            }
            let delta = k as f64 * df - f0;
            let g = (-(delta * delta) / (2.0 * sigma_f * sigma_f)).exp();
            power += g * periodogram[k as usize];
            weight += g;
        }
        // flat vacuum noise would read 0.5 * weight
        readings.push(power / (VACUUM_VARIANCE * weight));
    }

    // video filter acts along the sweep
    let vbw_alpha = 1.0 - (-2.0 * PI * tc.vbw_hz * tc.sweep_s / SPECTRUM_BINS as f64).exp();
    let mut video = readings[0];
    let power_db: Vec<f64> = readings
        .iter()
        .map(|&p| {
            video += vbw_alpha * (p - video);
            10.0 * video.log10()
        })
        .collect();
    let axis: Vec<f64> = (0..SPECTRUM_BINS)
        .map(|i| f_lo + tc.span_hz * i as f64 / (SPECTRUM_BINS - 1) as f64)
        .collect();
    Ok(Trace {
        axis,
        power_db,
        kind: TraceKind::SqueezedLocked,
    })
}
