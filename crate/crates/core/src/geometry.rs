//! Aligned, coaxial transmit/receive uniform circular array pair.
//!
//! The transmit UCA has `N` elements on radius `r`, the receive UCA `M`
//! elements on radius `R`, ring centres a distance `d` apart on a common
//! axis. All lengths are carried in carrier wavelengths. Element `n`
//! (1-based) sits at azimuth `2*pi*(n-1)/N`; the line-of-sight path length
//! from transmit element `n` to receive element `m` is
//!
//! ```text
//! d_mn = sqrt(d^2 + r^2 + R^2 - 2 r R cos(phi_n - psi_m))
//! ```
//!
//! with a first-order expansion available for the far-field regime where
//! `d_mn >> r` and `d_mn >> R`.

use crate::error::{Error, Result};

/// Multiple of the larger ring radius below which the axial distance stops
/// looking like far field.
pub const FAR_FIELD_FACTOR: f64 = 10.0;

/// Coaxial UCA pair; lengths in carrier wavelengths.
#[derive(Debug, Clone, PartialEq)]
pub struct UcaPairGeometry {
    tx_count: usize,
    rx_count: usize,
    tx_radius: f64,
    rx_radius: f64,
    axial_distance: f64,
}

impl UcaPairGeometry {
    pub fn new(
        tx_count: usize,
        rx_count: usize,
        tx_radius: f64,
        rx_radius: f64,
        axial_distance: f64,
    ) -> Result<Self> {
        if tx_count == 0 || rx_count == 0 {
            return Err(Error::Domain("element counts must be at least 1".into()));
        }
        for (name, v) in [
            ("tx_radius", tx_radius),
            ("rx_radius", rx_radius),
            ("axial_distance", axial_distance),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(Self {
            tx_count,
            rx_count,
            tx_radius,
            rx_radius,
            axial_distance,
        })
    }

    pub fn tx_count(&self) -> usize {
        self.tx_count
    }

    pub fn rx_count(&self) -> usize {
        self.rx_count
    }

    pub fn tx_radius(&self) -> f64 {
        self.tx_radius
    }

    pub fn rx_radius(&self) -> f64 {
        self.rx_radius
    }

    pub fn axial_distance(&self) -> f64 {
        self.axial_distance
    }

    /// Azimuth of transmit element `n` (1-based): `2*pi*(n-1)/N`.
    pub fn azimuth_tx(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.tx_count {
            return Err(Error::IndexOutOfRange {
                index: n,
                count: self.tx_count,
            });
        }
        Ok(std::f64::consts::TAU * (n - 1) as f64 / self.tx_count as f64)
    }

    /// Azimuth of receive element `m` (1-based): `2*pi*(m-1)/M`.
    pub fn azimuth_rx(&self, m: usize) -> Result<f64> {
        if m == 0 || m > self.rx_count {
            return Err(Error::IndexOutOfRange {
                index: m,
                count: self.rx_count,
            });
        }
        Ok(std::f64::consts::TAU * (m - 1) as f64 / self.rx_count as f64)
    }

    /// Exact inter-element distance.
    pub fn distance_exact(&self, n: usize, m: usize) -> Result<f64> {
        let delta = self.azimuth_tx(n)? - self.azimuth_rx(m)?;
        let (d, r, rr) = (self.axial_distance, self.tx_radius, self.rx_radius);
        Ok((d * d + r * r + rr * rr - 2.0 * r * rr * delta.cos()).sqrt())
    }

    /// Far-field expansion of the distance:
    /// `sqrt(d^2+r^2+R^2) - r R cos(phi_n - psi_m) / sqrt(d^2+r^2+R^2)`.
    pub fn distance_approx(&self, n: usize, m: usize) -> Result<f64> {
        let delta = self.azimuth_tx(n)? - self.azimuth_rx(m)?;
        let diag = self.diagonal_distance();
        Ok(diag - self.tx_radius * self.rx_radius * delta.cos() / diag)
    }

    /// `sqrt(d^2 + r^2 + R^2)`, the angle-free part of the expansion.
    pub fn diagonal_distance(&self) -> f64 {
        let (d, r, rr) = (self.axial_distance, self.tx_radius, self.rx_radius);
        (d * d + r * r + rr * rr).sqrt()
    }

    /// Whether the far-field assumption `d >= 10 max(r, R)` holds. Callers
    /// treat a `false` as a warning, not an error.
    pub fn is_far_field(&self) -> bool {
        self.axial_distance >= FAR_FIELD_FACTOR * self.tx_radius.max(self.rx_radius)
    }
}
