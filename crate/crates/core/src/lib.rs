//! Alternative factorizations of the harmonic oscillator hamiltonian
//! `H = -½ d²/dx² + ½ x²` and the deformed Hermite functions they produce.
//!
//! The crate is organised bottom-up:
//!
//! - [`special_fn`]: Hermite polynomials, oscillator eigenfunctions, `erf`.
//! - [`factorization`]: closed-form `α`, `β` for the one-parameter deformation
//!   and for Mielnik's isospectral family, with residual checkers for the
//!   Riccati, coupled and Bernoulli equations.
//! - [`genhermite`]: the functions `H_n^δ`, the weight `ω`, the operators
//!   `B`, `B*`, `L̃`, `L` and the Sturm–Liouville residual.
//! - [`ladder`]: the conjugated ladder operators `c = α a α⁻¹`, `c* = α a* α⁻¹`.
//! - [`numerics`]: grids, Gauss–Hermite quadrature, finite differences,
//!   tridiagonal eigensolvers and a finite-difference Schrödinger spectrum.
//! - [`verify`]: the aggregated identity suite used by `genhermite verify`.
//!
//! ```
//! use genhermite::{GenHermiteFunction, Grid};
//!
//! let h3 = GenHermiteFunction::new(3, 10.0).unwrap();
//! let report = h3.sl_residual(&Grid::default_residual());
//! assert!(report.max_abs < 1e-10);
//! ```

pub mod error;
pub mod factorization;
pub mod genhermite;
pub mod ladder;
pub mod numerics;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};
pub use factorization::{
    BetaProvider, ClassicalBeta, MielnikFactorization, ResidualReport, SimpleFactorization,
};
pub use genhermite::{GenHermiteFunction, JetValue};
pub use ladder::LadderOperators;
pub use numerics::{Grid, OverlapMatrix, QuadratureRule};
pub use special_fn::{EnergyLevel, HermiteIndex};
