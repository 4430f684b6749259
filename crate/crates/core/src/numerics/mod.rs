//! Self-contained numerical kernels: Bessel functions, the error function,
//! Hermitian eigen-machinery, and seeded complex-Gaussian sampling.

mod bessel;
mod matrix;
mod random;
mod special;

pub use bessel::{bessel_j, MAX_ARGUMENT, MAX_ORDER};
pub use matrix::{herm_eig, psd_sqrt, ComplexMatrix, HermitianSpectrum};
pub use random::{sample_complex_gaussian, split_seed};
pub use special::erf;
