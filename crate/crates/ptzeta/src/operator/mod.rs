//! The operator, its self-adjoint extensions, solutions and characteristic functions.

pub mod boundary;
pub mod charfn;
pub mod params;
pub mod solutions;

pub use boundary::{boundary_values_half_pi, sqrt_upper, Block, BlockKind, BoundaryBlocks, BoundaryValuesAtHalfPi};
pub use charfn::{characteristic, zero_mode_multiplicity, CharFn, ZeroMode};
pub use params::{Angle, BoundaryCondition, CoupledBC, OperatorParams, Param, SeparatedBC};
pub use solutions::{phi_series, solution_phi, solution_theta, theta_series};
