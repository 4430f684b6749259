//! Dense complex matrices and the Hermitian eigenmachinery the channel
//! models are built on.
//!
//! The eigensolver is a cyclic complex Jacobi iteration: each off-diagonal
//! entry is phased real and annihilated by a two-sided plane rotation.
//! Quadratic convergence makes a handful of sweeps enough for the matrix
//! sizes that occur here (correlation matrices and channel Grams up to
//! 64 x 64), and the accumulated eigenvector matrix stays unitary to a few
//! ulps, which the spectrum consumers rely on.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "matrix dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "entry count {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.entry(c, r).conj())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.entry(r, c) + a * rhs.entry(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("subtraction shape mismatch".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.entry(i, i))
            .sum()
    }

    /// `A A^H`, the Gram matrix whose eigenvalues are squared singular values.
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.rows);
        for r in 0..self.rows {
            for c in 0..self.rows {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.entry(r, k) * self.entry(c, k).conj();
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// ||A - A^H||_F, zero for Hermitian matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let d = self.entry(r, c) - self.entry(c, r).conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// log2 |det A| via LU with partial pivoting. Kept as the second,
    /// eigen-free route for the capacity determinant identity.
    pub fn lu_log2_abs_det(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::Shape("determinant requires a square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut log2 = 0.0_f64;
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].norm_sqr();
            for r in col + 1..n {
                let m = a[r * n + col].norm_sqr();
                if m > best {
                    best = m;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return Ok(f64::NEG_INFINITY); // singular
            }
            if pivot != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot * n + c);
                }
            }
            let p = a[col * n + col];
            log2 += p.norm().log2();
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                for c in col..n {
                    let v = a[r * n + c] - factor * a[col * n + c];
                    a[r * n + c] = v;
                }
            }
        }
        Ok(log2)
    }
}

/// Eigensystem of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    /// Real eigenvalues, sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianSpectrum {
    /// `V diag(f(lambda)) V^H`, re-symmetrised.
    pub fn assemble(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lambda) in self.eigenvalues.iter().enumerate() {
                    acc += v.entry(r, k) * f(lambda) * v.entry(c, k).conj();
                }
                out.set(r, c, acc);
            }
        }
        // exact Hermitian symmetry for downstream spectral code
        for r in 0..n {
            for c in 0..r {
                let m = 0.5 * (out.entry(r, c) + out.entry(c, r).conj());
                out.set(r, c, m);
                out.set(c, r, m.conj());
            }
            let d = out.entry(r, r);
            out.set(r, r, Complex64::new(d.re, 0.0));
        }
        out
    }
}

/// Relative tolerance for accepting a matrix as Hermitian.
const HERMITIAN_TOL: f64 = 1e-9;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
pub fn herm_eig(a: &ComplexMatrix) -> Result<HermitianSpectrum> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "herm_eig requires a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let scale = a.frobenius_norm();
    if a.hermitian_deviation() > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Shape(
            "herm_eig requires a Hermitian matrix (deviation above 1e-9 relative)".into(),
        ));
    }

    let n = a.rows();
    // work on the Hermitian part so tiny asymmetries cannot bias the result
    let mut w = ComplexMatrix::from_fn(n, n, |r, c| 0.5 * (a.entry(r, c) + a.entry(c, r).conj()));
    for i in 0..n {
        let d = w.entry(i, i);
        w.set(i, i, Complex64::new(d.re, 0.0));
    }
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut acc = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                acc += m.entry(p, q).norm_sqr();
            }
        }
        acc.sqrt()
    };

    let stop = 1e-15 * scale.max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        if off_norm(&w) <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w.entry(p, q);
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // phase the pivot real, then a real Jacobi rotation
                let phase = apq / mag;
                let tau = (w.entry(q, q).re - w.entry(p, p).re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // unitary U restricted to the (p,q) plane:
                //   U[p,p] = phase*c   U[p,q] = phase*s
                //   U[q,p] = -s        U[q,q] = c
                let upp = phase * c;
                let upq = phase * s;

                // W <- W U (columns p, q)
                for k in 0..n {
                    let wkp = w.entry(k, p);
                    let wkq = w.entry(k, q);
                    w.set(k, p, wkp * upp - wkq * s);
                    w.set(k, q, wkp * upq + wkq * c);
                }
                // W <- U^H W (rows p, q)
                for k in 0..n {
                    let wpk = w.entry(p, k);
                    let wqk = w.entry(q, k);
                    w.set(p, k, upp.conj() * wpk - s * wqk);
                    w.set(q, k, upq.conj() * wpk + c * wqk);
                }
                // V <- V U
                for k in 0..n {
                    let vkp = v.entry(k, p);
                    let vkq = v.entry(k, q);
                    v.set(k, p, vkp * upp - vkq * s);
                    v.set(k, q, vkp * upq + vkq * c);
                }
                w.set(p, q, Complex64::new(0.0, 0.0));
                w.set(q, p, Complex64::new(0.0, 0.0));
                let dp = w.entry(p, p);
                let dq = w.entry(q, q);
                w.set(p, p, Complex64::new(dp.re, 0.0));
                w.set(q, q, Complex64::new(dq.re, 0.0));
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w.entry(j, j).re.total_cmp(&w.entry(i, i).re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| w.entry(i, i).re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| v.entry(r, order[c]));
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues below `-NEGATIVE_EIG_TOL * lambda_max` abort; anything in
/// `[-tol, 0)` is clamped to zero before the square root is assembled.
const NEGATIVE_EIG_TOL: f64 = 1e-6;

/// Positive-semidefinite square root `S` with `S S = A`.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spectrum = herm_eig(a)?;
    let lambda_max = spectrum.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let floor = -NEGATIVE_EIG_TOL * lambda_max;
    if let Some(&bad) = spectrum.eigenvalues.iter().find(|&&l| l < floor) {
        return Err(Error::NotPsd {
            min_eigenvalue: bad,
            max_eigenvalue: lambda_max,
        });
    }
    Ok(spectrum.assemble(|l| l.max(0.0).sqrt()))
}
