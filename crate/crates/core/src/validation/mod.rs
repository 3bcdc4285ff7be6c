//! Oracles that recompute the analytic results by independent means:
//! exact ODE residuals, finite-difference operators and a grid eigensolver.

pub mod fd;
pub mod residual;
pub mod sturm;
pub mod tridiag;

pub use fd::{
    apply_h_fd, apply_partials_fd, commutator_fd, commuting_pairs, eigen_residual, interior_grid, Field, Operator,
    PartialOp, DEFAULT_STEP,
};
pub use residual::{psi_infinity_residual, residual_y, residual_z, ResidualReport, WorstPoint};
pub use sturm::{sl_grid_eigen, GridSpec, Scheme, SlProblem};
