//! Training and theory diagnostics for neural operators.
//!
//! The crate has three layers:
//!
//! * numerical substrate: activations, a dense unitary DFT, power-iteration
//!   spectral norms ([`activation`], [`linalg`]);
//! * data generation and the two operator models: Gaussian random fields,
//!   the antiderivative / diffusion-reaction / Burgers solvers ([`grf`],
//!   [`solvers`], [`dataset`]), DeepONet ([`don`]) and the Fourier neural
//!   operator ([`fno`]) with exact reverse-mode gradients;
//! * optimization and monitoring: gradient descent with a curvature-coupled
//!   step size, Adam, neighborhood-ball tracking ([`optim`]) and the
//!   restricted-strong-convexity / smoothness diagnostics ([`monitor`]).
//!
//! Low-level numeric kernels are generic over the scalar via [`scalar::Scalar`];
//! everything above them runs on the crate-wide alias [`Real`] (`f64`).

pub mod activation;
pub mod container;
pub mod dataset;
pub mod don;
pub mod error;
pub mod fno;
pub mod grf;
pub mod linalg;
pub mod model;
pub mod monitor;
pub mod optim;
pub mod scalar;
pub mod solvers;

#[cfg(test)]
pub(crate) mod testutil;

/// Working precision for models, solvers and diagnostics.
pub type Real = f64;

/// Complex matrix at working precision.
pub type ComplexMatrix = linalg::ComplexMat<Real>;

pub use error::{Error, Result};
