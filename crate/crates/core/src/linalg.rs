//! Dense complex matrices, the unitary DFT kernel, and power-iteration
//! spectral-norm estimation.
//!
//! The DFT is kept as an explicit dense matrix: at the widths used here
//! (m ≤ 512) the O(m²) multiply is cheap and the matrix form is exactly what
//! the layer algebra and its adjoints need.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;
use crate::{Error, Real, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMat<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<S>>,
}

impl<S: Scalar> ComplexMat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMat {
            rows,
            cols,
            data: vec![Complex::new(S::zero(), S::zero()); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<S> {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex<S>) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = ComplexMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<S>]) -> Vec<Complex<S>> {
        assert_eq!(v.len(), self.cols, "matvec dimension mismatch");
        let mut out = vec![Complex::new(S::zero(), S::zero()); self.rows];
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = Complex::new(S::zero(), S::zero());
            for (a, b) in row.iter().zip(v) {
                acc = acc + a * b;
            }
            out[r] = acc;
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = ComplexMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// max |entry - I| deviation from the identity.
    pub fn max_dev_from_identity(&self) -> S {
        let mut worst = S::zero();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let want = if r == c { S::one() } else { S::zero() };
                let z = self.get(r, c);
                let dev = ((z.re - want) * (z.re - want) + z.im * z.im).sqrt();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// The m×m DFT kernel with entry (k, j) = e^{-2πi(k-1)(j-1)/m} / √m.
///
/// The 1/√m factor makes the kernel unitary, so ‖Fv‖₂ = ‖v‖₂ holds exactly
/// and the adjoint is the inverse.
pub fn dft_matrix<S: Scalar>(m: usize) -> Result<ComplexMat<S>> {
    if m == 0 {
        return Err(Error::InvalidDimension(
            "DFT kernel needs at least one point".into(),
        ));
    }
    let mut out = ComplexMat::zeros(m, m);
    let norm = S::one() / S::of_usize(m).sqrt();
    let two_pi = S::of(2.0 * std::f64::consts::PI);
    let m_s = S::of_usize(m);
    for k in 0..m {
        for j in 0..m {
            // reduce k*j mod m first so the angle stays small
            let kj = (k * j) % m;
            let angle = -two_pi * S::of_usize(kj) / m_s;
            out.set(k, j, Complex::new(angle.cos() * norm, angle.sin() * norm));
        }
    }
    Ok(out)
}

/// Real and imaginary parts of the unitary DFT kernel, as dense real
/// matrices. This is the form the batched FNO layers consume.
pub fn dft_real_imag(m: usize) -> Result<(DMatrix<Real>, DMatrix<Real>)> {
    let f = dft_matrix::<Real>(m)?;
    let mut re = DMatrix::zeros(m, m);
    let mut im = DMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            let z = f.get(r, c);
            re[(r, c)] = z.re;
            im[(r, c)] = z.im;
        }
    }
    Ok((re, im))
}

/// Outcome of a power-iteration run.
#[derive(Debug, Clone, Copy)]
pub struct SpectralEstimate<S> {
    pub value: S,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest singular value of a linear operator given through its
/// matrix-vector product, by power iteration on a deterministic seeded start
/// vector.
///
/// For symmetric operators (loss Hessians) this is the spectral norm
/// directly. Successive estimates within `tol` relatively set the converged
/// flag; non-finite operator output aborts with the offending iteration.
pub fn spectral_norm<S, F>(
    op: F,
    dim: usize,
    iters: usize,
    tol: S,
) -> Result<SpectralEstimate<S>>
where
    S: Scalar,
    F: Fn(&[S]) -> Vec<S>,
{
    if dim == 0 {
        return Err(Error::InvalidDimension("operator dimension is zero".into()));
    }
    if iters == 0 {
        return Err(Error::InvalidArgument("need at least one iteration".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0123);
    let mut v: Vec<S> = (0..dim)
        .map(|_| S::of(rng.sample::<f64, _>(rand_distr::StandardNormal)))
        .collect();
    normalize(&mut v);

    let mut estimate = S::zero();
    let mut converged = false;
    let mut used = 0;
    for it in 0..iters {
        used = it + 1;
        let w = op(&v);
        if w.len() != dim {
            return Err(Error::InvalidDimension(format!(
                "operator returned length {} for dimension {dim}",
                w.len()
            )));
        }
        if w.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                context: "power-iteration operator output".into(),
                iteration: it,
            });
        }
        let norm = l2(&w);
        if norm == S::zero() {
            // operator annihilated the probe; norm estimate is 0
            return Ok(SpectralEstimate {
                value: S::zero(),
                iterations: used,
                converged: true,
            });
        }
        let prev = estimate;
        estimate = norm;
        v = w;
        normalize(&mut v);
        if it > 0 {
            let denom = estimate.max(S::of(1e-300));
            if ((estimate - prev) / denom).abs() < tol {
                converged = true;
                break;
            }
        }
    }
    Ok(SpectralEstimate {
        value: estimate,
        iterations: used,
        converged,
    })
}

/// Spectral norm of a dense real matrix (not necessarily symmetric), by power
/// iteration on AᵀA.
pub fn matrix_spectral_norm(a: &DMatrix<Real>, iters: usize, tol: Real) -> Result<Real> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(0.0);
    }
    let est = spectral_norm(
        |v: &[Real]| {
            let x = DVector::from_column_slice(v);
            let y = a.transpose() * (a * x);
            y.as_slice().to_vec()
        },
        a.ncols(),
        iters,
        tol,
    )?;
    Ok(est.value.sqrt())
}

pub fn l2<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::zero(), |acc, &x| acc + x * x).sqrt()
}

pub fn normalize<S: Scalar>(v: &mut [S]) {
    let n = l2(v);
    if n > S::zero() {
        for x in v.iter_mut() {
            *x = *x / n;
        }
    }
}

pub fn dot(a: &[Real], b: &[Real]) -> Real {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// a - b elementwise.
pub fn sub(a: &[Real], b: &[Real]) -> Vec<Real> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// a + s*b elementwise.
pub fn axpy(a: &[Real], s: Real, b: &[Real]) -> Vec<Real> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}
