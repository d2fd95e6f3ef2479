//! Spectral ζ-function of the Pöschl–Teller operator
//! -d²/dx² + (μ²-1/4)/sin²x + (ν²-1/4)/cos²x on (0, π/2).

pub mod error;
pub mod real;
pub mod specialfn;

pub use error::{Error, Result};
pub use real::Real;
pub mod operator;
pub mod quad;
pub mod asymcoeff;
pub mod eigen;
pub mod continuation;
pub mod determinant;
pub mod oracle;
pub mod acceptance;

pub use continuation::{ContinuationConfig, ZetaMethod, ZetaValue};
pub use determinant::DetResult;
pub use eigen::Spectrum;
pub use operator::{Angle, BoundaryCondition, CoupledBC, OperatorParams, Param, SeparatedBC};
pub use specialfn::DoubleDouble;

pub type CharFn64 = operator::CharFn<f64>;
pub type CharFnDD = operator::CharFn<DoubleDouble>;
pub type AsyExpansion64 = asymcoeff::AsyExpansion<f64>;
pub type AsyExpansionDD = asymcoeff::AsyExpansion<DoubleDouble>;
pub type Complex64 = num_complex::Complex64;
