//! Channel capacities under a fixed mean photon number in the channel,
//! `n_bar = |alpha|^2 + sinh^2 r`.
//!
//! All capacities are in nats. The comparison set matches the usual
//! power-constrained line-up: dense coding at fixed squeezing, dense coding
//! with squeezing optimized per photon budget, coherent-state channels
//! using one or two quadratures, a single-quadrature homodyne channel with
//! squeezed noise, and the single-mode Holevo limit without entanglement.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// One point of a capacity curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityPoint {
    pub n_bar: f64,
    pub info_nats: f64,
}

/// Tagged family of capacity formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ChannelModel {
    /// Dense coding at a fixed squeezing parameter.
    DenseCoding { r: f64 },
    /// Dense coding with the squeezing optimized at each photon number.
    DenseCodingOptimal,
    /// Coherent states, single-quadrature (homodyne) read-out.
    Coherent1q,
    /// Coherent states, both quadratures (heterodyne) read-out.
    Coherent2q,
    /// Single-quadrature homodyne channel with squeezed noise at fixed r.
    SqueezedHomodyne { r: f64 },
    /// Classical capacity limit of a single-mode bosonic channel.
    HolevoLimit,
}

impl ChannelModel {
    /// Mutual information at the given photon budget.
    pub fn info_nats(&self, n_bar: f64) -> Result<f64> {
        match *self {
            ChannelModel::DenseCoding { r } => i_dense_coding(n_bar, r),
            ChannelModel::DenseCodingOptimal => i_dense_coding_optimal(n_bar),
            ChannelModel::Coherent1q => i_coherent_1q(n_bar),
            ChannelModel::Coherent2q => i_coherent_2q(n_bar),
            ChannelModel::SqueezedHomodyne { r } => i_squeezed_homodyne(n_bar, r),
            ChannelModel::HolevoLimit => holevo_limit(n_bar),
        }
    }

    /// Short label used in CSV output.
    pub fn label(&self) -> String {
        match *self {
            ChannelModel::DenseCoding { r } => format!("dense-coding(r={r})"),
            ChannelModel::DenseCodingOptimal => "dense-coding-optimal".into(),
            ChannelModel::Coherent1q => "coherent-1q".into(),
            ChannelModel::Coherent2q => "coherent-2q".into(),
            ChannelModel::SqueezedHomodyne { r } => format!("squeezed-homodyne(r={r})"),
            ChannelModel::HolevoLimit => "holevo-limit".into(),
        }
    }
}

fn check_nonneg(name: &'static str, value: f64) -> Result<()> {
    if value < 0.0 || value.is_nan() {
        return Err(Error::NegativeValue { name, value });
    }
    Ok(())
}

/// Signal photons left after paying the squeezing cost.
fn signal_photons(n_bar: f64, r: f64) -> Result<f64> {
    check_nonneg("n_bar", n_bar)?;
    check_nonneg("r", r)?;
    let cost = r.sinh().powi(2);
    if n_bar < cost {
        return Err(Error::InfeasibleBudget {
            n_bar,
            min_photons: cost,
        });
    }
    Ok(n_bar - cost)
}

/// Dense coding at fixed squeezing:
/// `ln(1 + (n_bar - sinh^2 r) e^{2r})`.
pub fn i_dense_coding(n_bar: f64, r: f64) -> Result<f64> {
    let s = signal_photons(n_bar, r)?;
    Ok((1.0 + s * (2.0 * r).exp()).ln())
}

/// Dense coding with the squeezing chosen optimally at each budget:
/// `ln(1 + n_bar + n_bar^2)`, attained at `e^{2r*} = 1 + 2 n_bar`.
pub fn i_dense_coding_optimal(n_bar: f64) -> Result<f64> {
    check_nonneg("n_bar", n_bar)?;
    Ok((1.0 + n_bar + n_bar * n_bar).ln())
}

/// Squeezing parameter that attains [`i_dense_coding_optimal`].
pub fn optimal_dense_coding_r(n_bar: f64) -> f64 {
    0.5 * (1.0 + 2.0 * n_bar).ln()
}

/// Coherent states read out in both quadratures: `ln(1 + n_bar)`.
pub fn i_coherent_2q(n_bar: f64) -> Result<f64> {
    check_nonneg("n_bar", n_bar)?;
    Ok((1.0 + n_bar).ln())
}

/// Coherent states read out in a single quadrature:
/// `(1/2) ln(1 + 4 n_bar)`.
pub fn i_coherent_1q(n_bar: f64) -> Result<f64> {
    check_nonneg("n_bar", n_bar)?;
    Ok(0.5 * (1.0 + 4.0 * n_bar).ln())
}

/// Single-quadrature homodyne channel with squeezed noise:
/// `(1/2) ln(1 + 4 (n_bar - sinh^2 r) e^{2r})`.
pub fn i_squeezed_homodyne(n_bar: f64, r: f64) -> Result<f64> {
    let s = signal_photons(n_bar, r)?;
    Ok(0.5 * (1.0 + 4.0 * s * (2.0 * r).exp()).ln())
}

/// Squeezed homodyne with the squeezing chosen optimally:
/// `ln(1 + 2 n_bar)`, attained at `e^{2r*} = 1 + 2 n_bar`.
pub fn i_squeezed_homodyne_optimal(n_bar: f64) -> Result<f64> {
    check_nonneg("n_bar", n_bar)?;
    Ok((1.0 + 2.0 * n_bar).ln())
}

/// Classical capacity of a single-mode bosonic channel without
/// entanglement: `(1 + n) ln(1 + n) - n ln n`.
pub fn holevo_limit(n_bar: f64) -> Result<f64> {
    check_nonneg("n_bar", n_bar)?;
    if n_bar == 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 + n_bar) * (1.0 + n_bar).ln() - n_bar * n_bar.ln())
}

/// Absolute tolerance of [`crossing`] in `n_bar`.
pub const CROSSING_TOL: f64 = 1e-6;

/// Photon number at which the capacities of two channels cross, found by a
/// bracketing bisection / regula-falsi hybrid.
pub fn crossing(a: &ChannelModel, b: &ChannelModel, n_lo: f64, n_hi: f64) -> Result<f64> {
    let f = |n: f64| -> Result<f64> { Ok(a.info_nats(n)? - b.info_nats(n)?) };
    find_root(f, n_lo, n_hi, CROSSING_TOL)
}

/// Bracketing root-finder: bisection with a regula-falsi (Illinois)
/// refinement step. Derivative-free; requires a sign change on the bracket.
pub fn find_root<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..200 {
        if hi - lo < tol {
            break;
        }
        // regula-falsi proposal, clamped away from the bracket edges
        let mut mid = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        let quarter = 0.25 * (hi - lo);
        if !mid.is_finite() || mid < lo + 0.05 * (hi - lo) || mid > hi - 0.05 * (hi - lo) {
            mid = lo + 2.0 * quarter;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Minimum squeezing for dense coding to beat the Holevo limit at large
/// photon numbers: `r = 0.5` (4.34 dB).
pub fn asymptotic_min_squeezing() -> f64 {
    0.5
}

/// Extra photons carried by antisqueezing excess noise:
/// `(e^{r_plus} - e^{r}) / 4`.
pub fn excess_photons(r: f64, r_plus: f64) -> Result<f64> {
    check_nonneg("r", r)?;
    if r_plus < r {
        return Err(Error::UncertaintyViolation { r, r_plus });
    }
    Ok((r_plus.exp() - r.exp()) / 4.0)
}

/// Squeezing level in dB to the squeezing parameter: `r = db ln(10) / 20`.
pub fn db_to_r(db: f64) -> Result<f64> {
    check_nonneg("db", db)?;
    Ok(db * std::f64::consts::LN_10 / 20.0)
}

/// Squeezing parameter to dB: `db = 20 r / ln(10)`.
pub fn r_to_db(r: f64) -> Result<f64> {
    check_nonneg("r", r)?;
    Ok(20.0 * r / std::f64::consts::LN_10)
}

/// nats to bits (multiply by `1/ln 2 ~ 1.443`).
pub fn nats_to_bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}
