//! Seeded sampling of circularly-symmetric complex Gaussians.
//!
//! Every draw site carries its seed explicitly; Monte Carlo loops derive one
//! substream seed per draw with [`split_seed`], so results never depend on
//! the order in which draws are evaluated.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::ComplexMatrix;

/// Counter-based seed split (SplitMix64 output function).
///
/// Maps a master seed and a stream index to an independent substream seed.
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(stream.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `rows x cols` matrix of i.i.d. CN(0, 1) entries: real and imaginary parts
/// are independent N(0, 1/2). Identical seeds give bit-identical matrices.
pub fn sample_complex_gaussian(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re * scale, im * scale)
    })
}
