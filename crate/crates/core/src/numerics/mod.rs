//! Numerical plumbing: grids, Gauss–Hermite quadrature, finite differences,
//! symmetric tridiagonal eigenvalues and the discretized Schrödinger spectrum.

mod diff;
mod eigen;
mod grid;
mod quadrature;
mod spectrum;

pub use diff::{central_diff, DiffOrder};
pub use eigen::{symtridiag_eigen, symtridiag_eigen_ql, sturm_count};
pub use grid::Grid;
pub use quadrature::{gauss_hermite_rule, integrate_gaussian, overlap_matrix, OverlapMatrix, QuadratureRule};
pub use spectrum::discretized_spectrum;
