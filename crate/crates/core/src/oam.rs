//! Orbital-angular-momentum mode multiplexing on the UCA pair.
//!
//! Feeding the transmit ring with the progressive phase `2*pi*(n-1)*l/N`
//! radiates mode `l`; an `N`-element ring distinguishes exactly `N`
//! consecutive modes before aliasing folds `l + N` onto `l`. The canonical
//! window is
//!
//! ```text
//! floor((2-K)/2) <= l <= floor(K/2),  K = min(N, M),
//! ```
//!
//! which always holds exactly `K` modes. For a large ring the per-mode
//! channel gain collapses to a Bessel value,
//!
//! ```text
//! h_l = beta lambda sqrt(N) / (4 pi d (-j)^l) * e^{-j 2 pi D / lambda} * J_l(alpha),
//! alpha = 2 pi r R / (lambda D),
//! ```
//!
//! so the mode-domain channel is diagonal and the whole link reduces to
//! `min(N, M)` parallel scalar channels.
//!
//! Mode phases are reduced modulo the element count in integer arithmetic
//! before any trigonometry, so aliased excitations are equal bit-for-bit,
//! not merely close.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::UcaPairGeometry;
use crate::mimo::LinkBudget;
use crate::numerics::bessel_j;

/// Consecutive integer OAM modes `lower..=upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OamModeSet {
    lower: i64,
    upper: i64,
}

impl OamModeSet {
    /// Canonical window of `count` consecutive modes.
    pub fn for_count(count: usize) -> Self {
        let k = count as i64;
        Self {
            lower: (2 - k).div_euclid(2),
            upper: k.div_euclid(2),
        }
    }

    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn upper(&self) -> i64 {
        self.upper
    }

    pub fn len(&self) -> usize {
        (self.upper - self.lower + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false // the window always holds at least mode 0
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        self.lower..=self.upper
    }

    pub fn contains(&self, l: i64) -> bool {
        (self.lower..=self.upper).contains(&l)
    }

    /// Position of mode `l` within the set.
    pub fn position(&self, l: i64) -> Option<usize> {
        self.contains(l).then(|| (l - self.lower) as usize)
    }
}

/// Modes usable end to end: `min(N, M)` of them.
pub fn mode_range(geo: &UcaPairGeometry) -> OamModeSet {
    OamModeSet::for_count(geo.tx_count().min(geo.rx_count()))
}

/// Folds any integer mode into the canonical window for a `count`-element
/// array: the unique `l'` with `l' = l (mod count)` inside the window.
pub fn alias_canonical(l: i64, count: usize) -> i64 {
    let set = OamModeSet::for_count(count);
    set.lower() + (l - set.lower()).rem_euclid(count as i64)
}

/// Per-mode complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSignalVector {
    entries: Vec<Complex64>,
    mode_set: OamModeSet,
}

impl ModeSignalVector {
    pub fn new(entries: Vec<Complex64>, mode_set: OamModeSet) -> Result<Self> {
        if entries.len() != mode_set.len() {
            return Err(Error::Shape(format!(
                "{} amplitudes for a {}-mode set",
                entries.len(),
                mode_set.len()
            )));
        }
        Ok(Self { entries, mode_set })
    }

    /// Amplitude 1 on a single mode.
    pub fn single(mode: i64, mode_set: OamModeSet) -> Result<Self> {
        let pos = mode_set
            .position(mode)
            .ok_or(Error::ModeAliases { mode, count: mode_set.len() })?;
        let mut entries = vec![Complex64::new(0.0, 0.0); mode_set.len()];
        entries[pos] = Complex64::new(1.0, 0.0);
        Ok(Self { entries, mode_set })
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn mode_set(&self) -> OamModeSet {
        self.mode_set
    }

    pub fn energy(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `count` evenly spaced points on the unit circle, `w_k = e^{j 2 pi k / count}`.
fn unit_roots(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / count as f64))
        .collect()
}

/// Raw transmit feed for mode `l` on an `n`-element ring:
/// element `e` (1-based) carries `(1/sqrt(n)) e^{j 2 pi (e-1) l / n}`.
///
/// Defined for any integer `l`; aliased orders produce bit-identical vectors.
pub fn excitation_weights(l: i64, n: usize) -> Vec<Complex64> {
    let roots = unit_roots(n);
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|e| roots[((e as i64) * l).rem_euclid(n as i64) as usize] * scale)
        .collect()
}

/// Sums per-mode feeds into per-element excitations. The map is unitary
/// (inverse-DFT columns), so signal energy is preserved. Modes outside the
/// canonical window for `n` are rejected; fold them first.
pub fn mux_excitation(signal: &ModeSignalVector, n: usize) -> Result<Vec<Complex64>> {
    for l in signal.mode_set().modes() {
        if alias_canonical(l, n) != l {
            return Err(Error::ModeAliases { mode: l, count: n });
        }
    }
    let roots = unit_roots(n);
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (pos, l) in signal.mode_set().modes().enumerate() {
        let s = signal.entries()[pos];
        if s == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (e, slot) in out.iter_mut().enumerate() {
            *slot += s * roots[((e as i64) * l).rem_euclid(n as i64) as usize];
        }
    }
    for slot in &mut out {
        *slot *= scale;
    }
    Ok(out)
}

/// Projects receive-element samples onto each mode of `mode_set`:
/// entry `(1/sqrt(M)) sum_m samples_m e^{-j 2 pi (m-1) l / M}`. Unitary, so
/// Parseval holds exactly up to rounding.
pub fn demux_project(samples: &[Complex64], mode_set: OamModeSet) -> ModeSignalVector {
    let m = samples.len();
    let roots = unit_roots(m);
    let scale = 1.0 / (m as f64).sqrt();
    let entries = mode_set
        .modes()
        .map(|l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (e, sample) in samples.iter().enumerate() {
                acc += sample * roots[(-(e as i64) * l).rem_euclid(m as i64) as usize];
            }
            acc * scale
        })
        .collect();
    ModeSignalVector {
        entries,
        mode_set,
    }
}

/// Closed form of `sum_{m=1..M} e^{j 2 pi (m-1)(l - l_r)/M}`: `M` when
/// `l = l_r (mod M)`, zero otherwise.
pub fn demux_phase_sum(l: i64, l_r: i64, count: usize) -> Complex64 {
    if (l - l_r).rem_euclid(count as i64) == 0 {
        Complex64::new(count as f64, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Bessel argument `alpha = 2 pi r R / (lambda D)` of the ring pair.
pub fn bessel_argument(geo: &UcaPairGeometry, lb: &LinkBudget) -> f64 {
    std::f64::consts::TAU * geo.tx_radius() * geo.rx_radius()
        / (lb.wavelength() * geo.diagonal_distance())
}

/// `(-j)^l` evaluated exactly.
fn minus_j_pow(l: i64) -> Complex64 {
    match l.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Exact finite-sum gain of mode `l` seen at receive element `m` (1-based):
/// no Bessel approximation, just the `N`-term sum over transmit elements.
pub fn mode_gain_exact(
    l: i64,
    m: usize,
    geo: &UcaPairGeometry,
    lb: &LinkBudget,
) -> Result<Complex64> {
    let psi_m = geo.azimuth_rx(m)?;
    let n = geo.tx_count();
    let alpha = bessel_argument(geo, lb);
    let roots = unit_roots(n);
    let tau = std::f64::consts::TAU;
    let mut acc = Complex64::new(0.0, 0.0);
    for e in 0..n {
        let phi = tau * e as f64 / n as f64;
        let feed = roots[((e as i64) * l).rem_euclid(n as i64) as usize];
        acc += feed * Complex64::from_polar(1.0, alpha * (phi - psi_m).cos());
    }
    let pg = lb.path_gain(geo.axial_distance());
    let prefactor = Complex64::from_polar(
        pg / (n as f64).sqrt(),
        -tau * geo.diagonal_distance() / lb.wavelength(),
    );
    Ok(prefactor * acc)
}

/// Large-`N` Bessel-form gain of mode `l`:
/// `(beta lambda sqrt(N)/(4 pi d)) e^{-j 2 pi D / lambda} J_l(alpha) / (-j)^l`.
pub fn mode_gain_bessel(l: i64, geo: &UcaPairGeometry, lb: &LinkBudget) -> Result<Complex64> {
    let order = i32::try_from(l)
        .map_err(|_| Error::Domain(format!("mode order {l} out of supported range")))?;
    let alpha = bessel_argument(geo, lb);
    let j = bessel_j(order, alpha)?;
    let pg = lb.path_gain(geo.axial_distance());
    let amp = pg * (geo.tx_count() as f64).sqrt();
    let prefactor = Complex64::from_polar(
        amp,
        -std::f64::consts::TAU * geo.diagonal_distance() / lb.wavelength(),
    );
    Ok(prefactor * j / minus_j_pow(l))
}

/// Diagonal mode-domain channel.
#[derive(Debug, Clone)]
pub struct OamChannel {
    gains: Vec<Complex64>,
    mode_set: OamModeSet,
    bessel_arg: f64,
    tx_count: usize,
    path_gain: f64,
}

impl OamChannel {
    pub fn gains(&self) -> &[Complex64] {
        &self.gains
    }

    pub fn mode_set(&self) -> OamModeSet {
        self.mode_set
    }

    pub fn bessel_arg(&self) -> f64 {
        self.bessel_arg
    }

    pub fn tx_count(&self) -> usize {
        self.tx_count
    }

    pub fn path_gain(&self) -> f64 {
        self.path_gain
    }

    /// Per-mode `J_l(alpha)^2`, the factor the channel SNR multiplies.
    pub fn mode_power_factors(&self) -> Vec<f64> {
        let scale = self.path_gain * self.path_gain * self.tx_count as f64;
        self.gains.iter().map(|h| h.norm_sqr() / scale).collect()
    }
}

/// Diagonal gains for every usable mode of the geometry.
pub fn oam_channel_matrix(geo: &UcaPairGeometry, lb: &LinkBudget) -> Result<OamChannel> {
    let mode_set = mode_range(geo);
    let gains = mode_set
        .modes()
        .map(|l| mode_gain_bessel(l, geo, lb))
        .collect::<Result<Vec<_>>>()?;
    Ok(OamChannel {
        gains,
        mode_set,
        bessel_arg: bessel_argument(geo, lb),
        tx_count: geo.tx_count(),
        path_gain: lb.path_gain(geo.axial_distance()),
    })
}

/// Mode-domain image of an element-domain channel matrix: demultiplex on
/// the left, multiplex on the right, over the same mode window.
///
/// Scalings match the diagonal gain convention: the transmit side is the
/// unitary `(1/sqrt(N)) e^{+j phi_n l}` feed, the receive side the averaged
/// `(1/M) e^{-j psi_m l}` projection. For the equal-count LoS matrix the
/// result is diagonal and its diagonal approximates the Bessel-form gains.
pub fn mode_domain_matrix(channel: &crate::numerics::ComplexMatrix, modes: OamModeSet) -> crate::numerics::ComplexMatrix {
    let m = channel.rows();
    let n = channel.cols();
    let tx_roots = unit_roots(n);
    let rx_roots = unit_roots(m);
    let tx_scale = 1.0 / (n as f64).sqrt();
    let rx_scale = 1.0 / m as f64;
    let mode_list: Vec<i64> = modes.modes().collect();
    crate::numerics::ComplexMatrix::from_fn(mode_list.len(), mode_list.len(), |row, col| {
        let l_r = mode_list[row];
        let l_t = mode_list[col];
        let mut acc = Complex64::new(0.0, 0.0);
        for e_m in 0..m {
            let proj = rx_roots[(-(e_m as i64) * l_r).rem_euclid(m as i64) as usize];
            let mut inner = Complex64::new(0.0, 0.0);
            for e_n in 0..n {
                let feed = tx_roots[((e_n as i64) * l_t).rem_euclid(n as i64) as usize];
                inner += channel.entry(e_m, e_n) * feed;
            }
            acc += proj * inner;
        }
        acc * (tx_scale * rx_scale)
    })
}

/// Closed form of `int_0^{2pi} s1 e^{j phi q1} conj(s2) e^{-j phi q2} dphi`
/// for integer orders: `2 pi s1 conj(s2)` when the orders match, else zero.
pub fn orthogonality_integral(q1: i64, q2: i64, s1: Complex64, s2: Complex64) -> Complex64 {
    if q1 == q2 {
        std::f64::consts::TAU * s1 * s2.conj()
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Fourier coefficients of a fractional-order helical phase over integer
/// modes `q_lo..=q_hi`: `c_q = e^{j pi l} sin(pi l) / (pi (l - q))`.
///
/// Integer `l` is rejected: the expansion has a pole there and the integer
/// case is an exact single-coefficient identity anyway.
pub fn fractional_fourier_coeffs(l: f64, q_lo: i64, q_hi: i64) -> Result<Vec<Complex64>> {
    if !l.is_finite() {
        return Err(Error::Domain("fractional order must be finite".into()));
    }
    if (l - l.round()).abs() < 1e-9 {
        return Err(Error::Domain(format!(
            "order {l} is (numerically) an integer; the Fourier expansion degenerates"
        )));
    }
    if q_lo > q_hi {
        return Err(Error::Domain(format!("empty order range {q_lo}..={q_hi}")));
    }
    let pi = std::f64::consts::PI;
    let front = Complex64::from_polar(1.0, pi * l) * (pi * l).sin() / pi;
    Ok((q_lo..=q_hi).map(|q| front / (l - q as f64)).collect())
}
