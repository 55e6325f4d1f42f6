//! Generalized Catalan combinatorics and the spectral limits it encodes.
//!
//! The crate has three layers:
//!
//! * [`combinatorics`] — exact integer/rational arithmetic for Catalan
//!   numbers, Dyck-path statistics, non-crossing pair partitions and the
//!   one-parameter polynomial family `pi_n(d)` they generate, computed by
//!   four independent methods that cross-check each other.
//! * [`weyl`] — double-precision evaluation of the limit Weyl function
//!   `Q_d(z)`, the semicircle Stieltjes transform, generating functions,
//!   the outlier-root formulas and Laurent-series utilities.
//! * [`randmat`] — Monte Carlo layer: seeded Wigner-matrix sampling, moment
//!   estimation for `X = H_d W`, the Schur-complement secular model backed
//!   by a symmetric eigensolver, finite-size outlier localization, the
//!   Jacobi continued-fraction resolvent and a permutation-similarity
//!   determinant check.
//!
//! The [`cli`] module wires everything into the `gencat` binary with
//! reproducible seeds and CSV/JSON output.

pub mod cli;
pub mod combinatorics;
pub mod randmat;
pub mod tol;
pub mod weyl;
