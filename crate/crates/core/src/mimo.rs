//! Line-of-sight and Kronecker-correlated fading channels for the UCA pair.
//!
//! The deterministic LoS matrix keeps the exact phase structure of the
//! far-field expansion: every entry has modulus `beta*lambda/(4*pi*d)` and a
//! phase that depends on the element pair only through `cos(phi_n - psi_m)`.
//!
//! The fading model is the Kronecker synthesis `G_r^{1/2} H_g G_t^{1/2}`
//! around a truncated-Gaussian angular spread: arrival angles are
//! `N(mean_aoa, std_dev^2)` restricted to one `2*pi` period, and the
//! resulting correlation between receive elements `u`, `v` is
//!
//! ```text
//! rho_uv = kappa * exp(-j xi sin(nu + theta) - [xi delta cos(nu + theta)]^2 / 2)
//! xi     = (2 pi R / lambda) sqrt(2 - 2 cos(psi_u - psi_v))
//! ```
//!
//! with `(sin nu, cos nu)` built from the element-position differences and
//! `kappa = 1/erf(pi/(sqrt(2) delta))` normalising the truncated Gaussian.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::UcaPairGeometry;
use crate::numerics::{erf, psd_sqrt, sample_complex_gaussian, ComplexMatrix};

/// Power, bandwidth and noise bookkeeping for one link.
///
/// Lengths share the geometry's unit system; configs normalise the carrier
/// wavelength to 1 so that geometry values read directly as multiples of
/// lambda.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudget {
    beta: f64,
    wavelength: f64,
    power: f64,
    bandwidth: f64,
    noise_variance: f64,
}

impl LinkBudget {
    pub fn new(
        beta: f64,
        wavelength: f64,
        power: f64,
        bandwidth: f64,
        noise_variance: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("beta", beta),
            ("wavelength", wavelength),
            ("power", power),
            ("bandwidth", bandwidth),
            ("noise_variance", noise_variance),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(Self {
            beta,
            wavelength,
            power,
            bandwidth,
            noise_variance,
        })
    }

    /// Budget that produces a given channel SNR at axial distance `d`,
    /// with unit noise variance and beta = 1.
    pub fn for_channel_snr(snr_ch: f64, bandwidth: f64, axial_distance: f64) -> Result<Self> {
        if !snr_ch.is_finite() || snr_ch <= 0.0 {
            return Err(Error::Domain(format!("snr_ch must be > 0, got {snr_ch}")));
        }
        let power = snr_ch * 16.0 * std::f64::consts::PI.powi(2) * axial_distance * axial_distance;
        Self::new(1.0, 1.0, power, bandwidth, 1.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    /// Amplitude path gain `beta*lambda/(4*pi*d)`.
    pub fn path_gain(&self, axial_distance: f64) -> f64 {
        self.beta * self.wavelength / (4.0 * std::f64::consts::PI * axial_distance)
    }

    /// Normalised channel SNR `P beta^2 lambda^2 / (16 pi^2 d^2 sigma^2)`,
    /// the quantity both capacity expressions reduce to.
    pub fn channel_snr(&self, axial_distance: f64) -> f64 {
        let pg = self.path_gain(axial_distance);
        self.power * pg * pg / self.noise_variance
    }
}

/// Truncated-Gaussian arrival-angle distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSpread {
    mean_aoa: f64,
    std_dev: f64,
    kappa: f64,
}

impl AngularSpread {
    pub fn new(mean_aoa: f64, std_dev: f64) -> Result<Self> {
        Ok(Self {
            mean_aoa,
            std_dev,
            kappa: normalization_kappa(std_dev)?,
        })
    }

    pub fn mean_aoa(&self) -> f64 {
        self.mean_aoa
    }

    pub fn std_dev(&self) -> f64 {
        self.std_dev
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Normalisation `kappa = 1/erf(pi/(sqrt(2) delta))` that makes the
/// truncated Gaussian integrate to one over its 2*pi window; >= 1, and
/// indistinguishable from 1 for small spreads.
pub fn normalization_kappa(std_dev: f64) -> Result<f64> {
    if !std_dev.is_finite() || std_dev <= 0.0 {
        return Err(Error::Domain(format!(
            "angular spread std_dev must be > 0, got {std_dev}"
        )));
    }
    Ok(1.0 / erf(std::f64::consts::PI / (std::f64::consts::SQRT_2 * std_dev)))
}

/// Which end of the link a correlation matrix describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Transmit,
    Receive,
}

/// Spatial correlation matrix of one UCA, together with the spread and
/// radius it was built from.
#[derive(Debug, Clone)]
pub struct SpatialCorrelation {
    pub side: Side,
    pub matrix: ComplexMatrix,
    pub spread: AngularSpread,
    pub radius_over_lambda: f64,
}

impl SpatialCorrelation {
    pub fn count(&self) -> usize {
        self.matrix.rows()
    }
}

/// Correlation between elements `u` and `v` (1-based) of a `count`-element
/// UCA of radius `radius_over_lambda` wavelengths.
pub fn correlation_coeff(
    u: usize,
    v: usize,
    spread: &AngularSpread,
    radius_over_lambda: f64,
    count: usize,
) -> Result<Complex64> {
    if u == 0 || u > count {
        return Err(Error::IndexOutOfRange { index: u, count });
    }
    if v == 0 || v > count {
        return Err(Error::IndexOutOfRange { index: v, count });
    }
    let kappa = spread.kappa();
    if u == v {
        // xi = 0 collapses both exponents regardless of nu
        return Ok(Complex64::new(kappa, 0.0));
    }
    let tau = std::f64::consts::TAU;
    let psi_u = tau * (u - 1) as f64 / count as f64;
    let psi_v = tau * (v - 1) as f64 / count as f64;
    let denom = (2.0 - 2.0 * (psi_u - psi_v).cos()).sqrt();
    let xi = tau * radius_over_lambda * denom;
    let sin_nu = (psi_u.cos() - psi_v.cos()) / denom;
    let cos_nu = (psi_u.sin() - psi_v.sin()) / denom;
    let theta = spread.mean_aoa();
    let sin_shift = sin_nu * theta.cos() + cos_nu * theta.sin();
    let cos_shift = cos_nu * theta.cos() - sin_nu * theta.sin();
    let damping = xi * spread.std_dev() * cos_shift;
    let magnitude = kappa * (-0.5 * damping * damping).exp();
    Ok(Complex64::from_polar(magnitude, -xi * sin_shift))
}

/// Full `count x count` correlation matrix for one side of the link.
pub fn correlation_matrix(
    side: Side,
    spread: &AngularSpread,
    radius_over_lambda: f64,
    count: usize,
) -> Result<SpatialCorrelation> {
    if count == 0 {
        return Err(Error::Domain("element count must be at least 1".into()));
    }
    if !radius_over_lambda.is_finite() || radius_over_lambda <= 0.0 {
        return Err(Error::Domain(format!(
            "radius_over_lambda must be > 0, got {radius_over_lambda}"
        )));
    }
    let mut matrix = ComplexMatrix::zeros(count, count);
    for u in 1..=count {
        for v in 1..=count {
            matrix.set(u - 1, v - 1, correlation_coeff(u, v, spread, radius_over_lambda, count)?);
        }
    }
    Ok(SpatialCorrelation {
        side,
        matrix,
        spread: spread.clone(),
        radius_over_lambda,
    })
}

/// How a channel matrix was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    LosDeterministic,
    KroneckerFading,
}

/// Complex channel matrix (receive elements x transmit elements).
#[derive(Debug, Clone)]
pub struct MimoChannel {
    pub matrix: ComplexMatrix,
    pub kind: ChannelKind,
    pub path_gain: f64,
}

/// Deterministic far-field LoS channel:
/// `h_mn = pg * exp(-j 2 pi D / lambda) * exp(j alpha cos(phi_n - psi_m))`
/// with `D = sqrt(d^2+r^2+R^2)` and `alpha = 2 pi r R / (lambda D)`.
pub fn los_matrix(geo: &UcaPairGeometry, lb: &LinkBudget) -> MimoChannel {
    let pg = lb.path_gain(geo.axial_distance());
    let diag = geo.diagonal_distance();
    let alpha = std::f64::consts::TAU * geo.tx_radius() * geo.rx_radius() / (lb.wavelength() * diag);
    let common = Complex64::from_polar(pg, -std::f64::consts::TAU * diag / lb.wavelength());
    let (n, m) = (geo.tx_count(), geo.rx_count());
    let tau = std::f64::consts::TAU;
    let matrix = ComplexMatrix::from_fn(m, n, |row, col| {
        let phi = tau * col as f64 / n as f64;
        let psi = tau * row as f64 / m as f64;
        common * Complex64::from_polar(1.0, alpha * (phi - psi).cos())
    });
    MimoChannel {
        matrix,
        kind: ChannelKind::LosDeterministic,
        path_gain: pg,
    }
}

/// Kronecker fading draw `pg * G_r^{1/2} H_g G_t^{1/2}`, deterministic in
/// the seed.
pub fn synthesize_channel(
    geo: &UcaPairGeometry,
    gt: &SpatialCorrelation,
    gr: &SpatialCorrelation,
    lb: &LinkBudget,
    seed: u64,
) -> Result<MimoChannel> {
    if gt.count() != geo.tx_count() {
        return Err(Error::Shape(format!(
            "transmit correlation is {}x{} but the geometry has {} transmit elements",
            gt.count(),
            gt.count(),
            geo.tx_count()
        )));
    }
    if gr.count() != geo.rx_count() {
        return Err(Error::Shape(format!(
            "receive correlation is {}x{} but the geometry has {} receive elements",
            gr.count(),
            gr.count(),
            geo.rx_count()
        )));
    }
    let st = psd_sqrt(&gt.matrix)?;
    let sr = psd_sqrt(&gr.matrix)?;
    let hg = sample_complex_gaussian(geo.rx_count(), geo.tx_count(), seed);
    let pg = lb.path_gain(geo.axial_distance());
    let matrix = sr.mul(&hg)?.mul(&st)?.scaled(Complex64::new(pg, 0.0));
    Ok(MimoChannel {
        matrix,
        kind: ChannelKind::KroneckerFading,
        path_gain: pg,
    })
}
