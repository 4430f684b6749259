//! Degrees of freedom and Shannon capacity for the two system views.
//!
//! Both capacities are driven by the same normalised channel SNR
//! `snr_ch = P beta^2 lambda^2 / (16 pi^2 d^2 sigma^2)`: the MIMO log-det
//! reduces to eigenvalues of the path-gain-normalised Gram, and each OAM
//! subchannel carries `snr_ch * J_l(alpha)^2`. That shared axis is what
//! makes the curves comparable.

use crate::error::{Error, Result};
use crate::geometry::UcaPairGeometry;
use crate::mimo::{synthesize_channel, LinkBudget, MimoChannel, SpatialCorrelation};
use crate::numerics::{herm_eig, split_seed, ComplexMatrix};
use crate::oam::OamChannel;

/// Number of singular values above `rel_tol` times the largest one.
/// Singular values come from the Hermitian eigenvalues of `A A^H`.
pub fn effective_rank(a: &ComplexMatrix, rel_tol: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&rel_tol) || rel_tol <= 0.0 {
        return Err(Error::Domain(format!(
            "rank tolerance must lie in (0, 1), got {rel_tol}"
        )));
    }
    let spectrum = herm_eig(&a.gram())?;
    let singular: Vec<f64> = spectrum
        .eigenvalues
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    let top = singular.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0);
    }
    Ok(singular.iter().filter(|&&s| s > rel_tol * top).count())
}

/// Generic rank of `G_r^{1/2} H_g G_t^{1/2}` for full-rank fading:
/// `min(rank(G_t), rank(G_r), N, M)`.
pub fn dof_mimo(
    gt: &SpatialCorrelation,
    gr: &SpatialCorrelation,
    rel_tol: f64,
) -> Result<usize> {
    let rt = effective_rank(&gt.matrix, rel_tol)?;
    let rr = effective_rank(&gr.matrix, rel_tol)?;
    Ok(rt.min(rr).min(gt.count()).min(gr.count()))
}

/// OAM-to-MIMO DoF ratio `min(N, M) / rank(H_MIMO)`; at least 1.
pub fn dof_ratio(
    geo: &UcaPairGeometry,
    gt: &SpatialCorrelation,
    gr: &SpatialCorrelation,
    rel_tol: f64,
) -> Result<f64> {
    let mimo = dof_mimo(gt, gr, rel_tol)?;
    if mimo == 0 {
        return Err(Error::Domain(
            "MIMO DoF is zero; correlation matrices must have positive diagonal".into(),
        ));
    }
    Ok(geo.tx_count().min(geo.rx_count()) as f64 / mimo as f64)
}

/// Eigenvalues of `H H^H`, clamped to be non-negative.
fn gram_eigenvalues(h: &MimoChannel) -> Result<Vec<f64>> {
    Ok(herm_eig(&h.matrix.gram())?
        .eigenvalues
        .into_iter()
        .map(|l| l.max(0.0))
        .collect())
}

/// `B log2 det(I + P/(sigma^2 N) H H^H)`, evaluated through the eigenvalues
/// of the Gram matrix as `sum_i B log2(1 + P gamma_i / (sigma^2 N))`.
pub fn capacity_mimo(h: &MimoChannel, lb: &LinkBudget) -> Result<f64> {
    let n = h.matrix.cols() as f64;
    let per_stream = lb.power() / (lb.noise_variance() * n);
    let sum: f64 = gram_eigenvalues(h)?
        .iter()
        .map(|g| (1.0 + per_stream * g).log2())
        .sum();
    Ok(lb.bandwidth() * sum)
}

/// OAM capacity from the diagonal gains:
/// `sum_l B log2(1 + P |h_l|^2 / (sigma^2 N))`.
pub fn capacity_oam(ch: &OamChannel, lb: &LinkBudget) -> f64 {
    let n = ch.tx_count() as f64;
    let per_mode = lb.power() / (lb.noise_variance() * n);
    let sum: f64 = ch
        .gains()
        .iter()
        .map(|h| (1.0 + per_mode * h.norm_sqr()).log2())
        .sum();
    lb.bandwidth() * sum
}

/// OAM capacity on the normalised axis: `sum_l B log2(1 + snr_ch J_l^2)`.
/// Equal to [`capacity_oam`] whenever `snr_ch` is the budget's channel SNR.
pub fn capacity_oam_at_snr(ch: &OamChannel, snr_ch: f64, bandwidth: f64) -> f64 {
    let sum: f64 = ch
        .mode_power_factors()
        .iter()
        .map(|j2| (1.0 + snr_ch * j2).log2())
        .sum();
    bandwidth * sum
}

/// Per-SNR Monte Carlo mean of the MIMO capacity, with its standard error.
#[derive(Debug, Clone)]
pub struct ErgodicCapacity {
    /// The channel-SNR grid the means were evaluated on (linear, not dB).
    pub snr_grid: Vec<f64>,
    /// Mean capacity in bits/s per grid point.
    pub mean: Vec<f64>,
    /// Standard error of each mean.
    pub std_err: Vec<f64>,
}

/// Averages `capacity` over `draws` Kronecker channel realisations for each
/// channel SNR in `snr_grid`. Draw `i` uses the substream seed
/// `split_seed(seed, i)`, so the result is independent of evaluation order
/// and bit-reproducible for a fixed seed.
pub fn ergodic_capacity_mimo(
    geo: &UcaPairGeometry,
    gt: &SpatialCorrelation,
    gr: &SpatialCorrelation,
    lb: &LinkBudget,
    snr_grid: &[f64],
    draws: u64,
    seed: u64,
) -> Result<ErgodicCapacity> {
    if draws == 0 {
        return Err(Error::Domain("ergodic capacity needs at least one draw".into()));
    }
    let n = geo.tx_count() as f64;
    let mut sums = vec![0.0_f64; snr_grid.len()];
    let mut sq_sums = vec![0.0_f64; snr_grid.len()];
    for i in 0..draws {
        let h = synthesize_channel(geo, gt, gr, lb, split_seed(seed, i))?;
        let pg2 = h.path_gain * h.path_gain;
        let gammas = gram_eigenvalues(&h)?;
        for (slot, &snr) in snr_grid.iter().enumerate() {
            // P gamma / (sigma^2 N) == snr_ch * (gamma / pg^2) / N
            let cap: f64 = gammas
                .iter()
                .map(|g| (1.0 + snr * g / (pg2 * n)).log2())
                .sum::<f64>()
                * lb.bandwidth();
            sums[slot] += cap;
            sq_sums[slot] += cap * cap;
        }
    }
    let d = draws as f64;
    let mean: Vec<f64> = sums.iter().map(|s| s / d).collect();
    let std_err = sq_sums
        .iter()
        .zip(&mean)
        .map(|(&sq, &m)| {
            if draws < 2 {
                0.0
            } else {
                let var = ((sq - d * m * m) / (d - 1.0)).max(0.0);
                (var / d).sqrt()
            }
        })
        .collect();
    Ok(ErgodicCapacity {
        snr_grid: snr_grid.to_vec(),
        mean,
        std_err,
    })
}

/// One-line comparison of the two systems at a single operating point.
#[derive(Debug, Clone)]
pub struct CapacityReport {
    pub snr_ch: f64,
    pub c_mimo_bits_per_s: f64,
    pub c_oam_bits_per_s: f64,
    pub dof_mimo: usize,
    pub dof_oam: usize,
    pub dof_ratio: f64,
    pub draws: u64,
    pub seed: u64,
}

/// Assembles a [`CapacityReport`] at the budget's own channel SNR: ergodic
/// MIMO capacity against the diagonal OAM channel of the same geometry.
pub fn capacity_report(
    geo: &UcaPairGeometry,
    gt: &SpatialCorrelation,
    gr: &SpatialCorrelation,
    oam: &OamChannel,
    lb: &LinkBudget,
    rel_tol: f64,
    draws: u64,
    seed: u64,
) -> Result<CapacityReport> {
    let snr = lb.channel_snr(geo.axial_distance());
    let ergodic = ergodic_capacity_mimo(geo, gt, gr, lb, &[snr], draws, seed)?;
    let dof_m = dof_mimo(gt, gr, rel_tol)?;
    let dof_o = geo.tx_count().min(geo.rx_count());
    Ok(CapacityReport {
        snr_ch: snr,
        c_mimo_bits_per_s: ergodic.mean[0],
        c_oam_bits_per_s: capacity_oam_at_snr(oam, snr, lb.bandwidth()),
        dof_mimo: dof_m,
        dof_oam: dof_o,
        dof_ratio: dof_ratio(geo, gt, gr, rel_tol)?,
        draws,
        seed,
    })
}
