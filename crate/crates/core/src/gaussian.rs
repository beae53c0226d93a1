//! Gaussian states on n optical modes and the symplectic operations that
//! act on them.
//!
//! A state is its mean vector and covariance matrix over the quadratures
//! `(x_1, p_1, x_2, p_2, ...)`. The vacuum has mean zero and covariance
//! `(1/2) I`; that variance is the shot-noise reference for all dB values.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// Quadrature variance of the vacuum; the 0 dB shot-noise reference.
pub const VACUUM_VARIANCE: f64 = 0.5;

/// Symmetry tolerance for covariance matrices.
const SYMMETRY_TOL: f64 = 1e-12;
/// Slack allowed below 1/2 for symplectic eigenvalues.
const UNCERTAINTY_TOL: f64 = 1e-9;
/// Tolerance on `S Ω S^T = Ω`.
const SYMPLECTIC_TOL: f64 = 1e-10;

/// Standard symplectic form on n modes: block diagonal `[[0, 1], [-1, 0]]`.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let d = 2 * n_modes;
    let mut omega = DMatrix::zeros(d, d);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// Mean and variance of one measured quadrature, plus the level in dB
/// relative to shot noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneStats {
    pub mean: f64,
    pub variance: f64,
    /// `10 log10(variance / 0.5)`; 0 dB for vacuum at any LO phase.
    pub rel_db: f64,
}

impl HomodyneStats {
    fn new(mean: f64, variance: f64) -> Self {
        Self {
            mean,
            variance,
            rel_db: 10.0 * (variance / VACUUM_VARIANCE).log10(),
        }
    }
}

/// Kind of linear phase-space transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Squeeze,
    Beamsplitter,
    Rotation,
}

/// A linear symplectic transform with its 2n x 2n matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticOp {
    matrix: DMatrix<f64>,
    kind: OpKind,
}

impl SymplecticOp {
    /// Single-mode squeezer embedded in an n-mode identity.
    ///
    /// With orientation 0 the x-variance scales by `e^{-2r}` and the
    /// p-variance by `e^{+2r}`; orientation pi/2 swaps the roles.
    pub fn squeeze(n_modes: usize, mode: usize, r: f64, orientation: f64) -> Result<Self> {
        check_mode(mode, n_modes)?;
        if r < 0.0 {
            return Err(Error::NegativeSqueezing(r));
        }
        let (c, s) = (orientation.cos(), orientation.sin());
        // R(theta) diag(e^-r, e^r) R(-theta)
        let (em, ep) = ((-r).exp(), r.exp());
        let block = [
            [em * c * c + ep * s * s, (em - ep) * c * s],
            [(em - ep) * c * s, em * s * s + ep * c * c],
        ];
        Ok(Self {
            matrix: embed_one_mode(n_modes, mode, block),
            kind: OpKind::Squeeze,
        })
    }

    /// Two-mode beamsplitter with amplitude transmittance `sqrt(t)` and an
    /// extra phase on the reflected path.
    ///
    /// At `t = 1/2`, phase 0 the outputs are `(a + b)/sqrt(2)` on `mode_a`
    /// and `(b - a)/sqrt(2)` on `mode_b`.
    pub fn beamsplitter(
        n_modes: usize,
        mode_a: usize,
        mode_b: usize,
        transmittance: f64,
        phase: f64,
    ) -> Result<Self> {
        check_mode(mode_a, n_modes)?;
        check_mode(mode_b, n_modes)?;
        if mode_a == mode_b {
            return Err(Error::IdenticalModes(mode_a));
        }
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::TransmittanceOutOfRange(transmittance));
        }
        let t = transmittance.sqrt();
        let rho = (1.0 - transmittance).sqrt();
        let (c, s) = (phase.cos(), phase.sin());
        let d = 2 * n_modes;
        let mut m = DMatrix::identity(d, d);
        let (xa, pa, xb, pb) = (2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1);
        // a' = t a + rho e^{i phase} b ; b' = -rho e^{-i phase} a + t b
        m[(xa, xa)] = t;
        m[(xa, xb)] = rho * c;
        m[(xa, pb)] = -rho * s;
        m[(pa, pa)] = t;
        m[(pa, xb)] = rho * s;
        m[(pa, pb)] = rho * c;
        m[(xb, xa)] = -rho * c;
        m[(xb, pa)] = -rho * s;
        m[(xb, xb)] = t;
        m[(pb, xa)] = rho * s;
        m[(pb, pa)] = -rho * c;
        m[(pb, pb)] = t;
        Ok(Self {
            matrix: m,
            kind: OpKind::Beamsplitter,
        })
    }

    /// Phase-space rotation of one mode by `theta` (models the LO phase).
    pub fn rotation(n_modes: usize, mode: usize, theta: f64) -> Result<Self> {
        check_mode(mode, n_modes)?;
        let (c, s) = (theta.cos(), theta.sin());
        let block = [[c, s], [-s, c]];
        Ok(Self {
            matrix: embed_one_mode(n_modes, mode, block),
            kind: OpKind::Rotation,
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    /// Max-norm deviation from `S Ω S^T = Ω`.
    pub fn symplectic_defect(&self) -> f64 {
        let n = self.matrix.nrows() / 2;
        let omega = symplectic_form(n);
        let d = &self.matrix * &omega * self.matrix.transpose() - omega;
        d.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_symplectic(&self) -> bool {
        self.symplectic_defect() < SYMPLECTIC_TOL
    }
}

fn embed_one_mode(n_modes: usize, mode: usize, block: [[f64; 2]; 2]) -> DMatrix<f64> {
    let d = 2 * n_modes;
    let mut m = DMatrix::identity(d, d);
    let i = 2 * mode;
    m[(i, i)] = block[0][0];
    m[(i, i + 1)] = block[0][1];
    m[(i + 1, i)] = block[1][0];
    m[(i + 1, i + 1)] = block[1][1];
    m
}

fn check_mode(mode: usize, n_modes: usize) -> Result<()> {
    if mode >= n_modes {
        return Err(Error::InvalidMode { mode, n_modes });
    }
    Ok(())
}

/// Mean vector and covariance matrix over n modes; the simulator's
/// universal state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// n-mode vacuum: mean zero, covariance `(1/2) I`.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::ZeroModes(n_modes));
        }
        let d = 2 * n_modes;
        Ok(Self {
            n_modes,
            mean: DVector::zeros(d),
            cov: DMatrix::identity(d, d) * VACUUM_VARIANCE,
        })
    }

    /// Build a state from explicit moments, validating symmetry and the
    /// uncertainty principle.
    pub fn from_moments(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let d = mean.len();
        if d == 0 || d % 2 != 0 || cov.nrows() != d || cov.ncols() != d {
            return Err(Error::InvalidCovariance(format!(
                "dimension mismatch: mean {}, cov {}x{}",
                d,
                cov.nrows(),
                cov.ncols()
            )));
        }
        let state = Self {
            n_modes: d / 2,
            mean,
            cov,
        };
        state.validate()?;
        Ok(state)
    }

    fn validate(&self) -> Result<()> {
        let asym = (&self.cov - self.cov.transpose())
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        if asym > SYMMETRY_TOL {
            return Err(Error::InvalidCovariance(format!(
                "not symmetric (max asymmetry {asym:.3e})"
            )));
        }
        let nu_min = self
            .symplectic_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if nu_min < VACUUM_VARIANCE - UNCERTAINTY_TOL {
            return Err(Error::InvalidCovariance(format!(
                "uncertainty principle violated (min symplectic eigenvalue {nu_min:.6e})"
            )));
        }
        Ok(())
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Symplectic eigenvalues of the covariance matrix (one per mode, each
    /// >= 1/2 for a physical state).
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        let m = symplectic_form(self.n_modes) * &self.cov;
        // eigenvalues of Omega V come in pairs +/- i nu
        let mut nus: Vec<f64> = m
            .complex_eigenvalues()
            .iter()
            .map(|z| z.im.abs())
            .collect();
        nus.sort_by(|a, b| b.partial_cmp(a).unwrap());
        nus.into_iter().step_by(2).collect()
    }

    /// True when every symplectic eigenvalue equals 1/2 within `tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        self.symplectic_eigenvalues()
            .iter()
            .all(|nu| (nu - VACUUM_VARIANCE).abs() < tol)
    }

    /// Apply a symplectic transform: mean -> S m, cov -> S V S^T.
    pub fn apply(&self, op: &SymplecticOp) -> Self {
        debug_assert_eq!(op.matrix.nrows(), 2 * self.n_modes);
        Self {
            n_modes: self.n_modes,
            mean: op.matrix() * &self.mean,
            cov: op.matrix() * &self.cov * op.matrix().transpose(),
        }
    }

    /// Squeeze one mode. Orientation 0 compresses x, pi/2 compresses p.
    pub fn squeeze(&self, mode: usize, r: f64, orientation: f64) -> Result<Self> {
        let op = SymplecticOp::squeeze(self.n_modes, mode, r, orientation)?;
        Ok(self.apply(&op))
    }

    /// Mix two modes on a beamsplitter of the given intensity transmittance.
    pub fn beamsplitter(
        &self,
        mode_a: usize,
        mode_b: usize,
        transmittance: f64,
        phase: f64,
    ) -> Result<Self> {
        let op = SymplecticOp::beamsplitter(self.n_modes, mode_a, mode_b, transmittance, phase)?;
        Ok(self.apply(&op))
    }

    /// Rotate one mode in its (x, p) plane.
    pub fn phase_rotate(&self, mode: usize, theta: f64) -> Result<Self> {
        let op = SymplecticOp::rotation(self.n_modes, mode, theta)?;
        Ok(self.apply(&op))
    }

    /// Displace one mode by the complex amplitude `alpha`.
    ///
    /// The mean shifts by `(sqrt(2) Re a, sqrt(2) Im a)` so that a displaced
    /// vacuum carries `|alpha|^2` photons. The covariance is untouched.
    pub fn displace(&self, mode: usize, alpha: Complex64) -> Result<Self> {
        check_mode(mode, self.n_modes)?;
        let mut out = self.clone();
        out.mean[2 * mode] += std::f64::consts::SQRT_2 * alpha.re;
        out.mean[2 * mode + 1] += std::f64::consts::SQRT_2 * alpha.im;
        Ok(out)
    }

    /// Pure loss on one mode: the state is mixed with vacuum at a mirror of
    /// the given transmittance. Also models detector efficiency.
    pub fn loss(&self, mode: usize, transmittance: f64) -> Result<Self> {
        check_mode(mode, self.n_modes)?;
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::TransmittanceOutOfRange(transmittance));
        }
        let d = 2 * self.n_modes;
        let sqrt_t = transmittance.sqrt();
        let mut x = DMatrix::identity(d, d);
        x[(2 * mode, 2 * mode)] = sqrt_t;
        x[(2 * mode + 1, 2 * mode + 1)] = sqrt_t;
        let mut cov = &x * &self.cov * x.transpose();
        let vac_in = (1.0 - transmittance) * VACUUM_VARIANCE;
        cov[(2 * mode, 2 * mode)] += vac_in;
        cov[(2 * mode + 1, 2 * mode + 1)] += vac_in;
        Ok(Self {
            n_modes: self.n_modes,
            mean: x * &self.mean,
            cov,
        })
    }

    /// Statistics of the quadrature `x cos(theta) + p sin(theta)` of one
    /// mode. No state collapse is modeled; this is read-out only.
    pub fn homodyne_stats(&self, mode: usize, lo_phase: f64) -> Result<HomodyneStats> {
        check_mode(mode, self.n_modes)?;
        let (c, s) = (lo_phase.cos(), lo_phase.sin());
        let (ix, ip) = (2 * mode, 2 * mode + 1);
        let mean = c * self.mean[ix] + s * self.mean[ip];
        let variance = c * c * self.cov[(ix, ix)]
            + s * s * self.cov[(ip, ip)]
            + 2.0 * c * s * self.cov[(ix, ip)];
        Ok(HomodyneStats::new(mean, variance))
    }

    /// Mean photon number of one mode:
    /// `(<x>^2 + <p>^2)/2 + (Vx + Vp - 1)/2`.
    pub fn mean_photon(&self, mode: usize) -> Result<f64> {
        check_mode(mode, self.n_modes)?;
        let (ix, ip) = (2 * mode, 2 * mode + 1);
        let coherent = (self.mean[ix].powi(2) + self.mean[ip].powi(2)) / 2.0;
        let thermal = (self.cov[(ix, ix)] + self.cov[(ip, ip)] - 1.0) / 2.0;
        Ok(coherent + thermal)
    }

    /// Largest-magnitude covariance element between two modes.
    pub fn cross_covariance(&self, mode_a: usize, mode_b: usize) -> Result<f64> {
        check_mode(mode_a, self.n_modes)?;
        check_mode(mode_b, self.n_modes)?;
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let v = self.cov[(2 * mode_a + i, 2 * mode_b + j)];
                if v.abs() > worst.abs() {
                    worst = v;
                }
            }
        }
        Ok(worst)
    }

    /// Overwrite one diagonal covariance entry. Used to inject classical
    /// excess noise on the anti-squeezed axis; deliberately breaks purity.
    pub(crate) fn set_variance(&mut self, index: usize, value: f64) {
        self.cov[(index, index)] = value;
    }
}
