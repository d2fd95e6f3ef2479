//! Coefficients of the large-z expansion of ln F for μ = 0.

pub mod exact;
pub mod logseries;

pub use exact::{
    c_coefficient, e_coefficient, e_coefficient_signed, g_coefficient, p_coefficient, p_coefficient_signed,
    r_coefficient, r_coefficients, r_coefficients_signed, reflect, CSign,
};
pub use logseries::{exp_series, log1p_series, Coefficient, LogSeries};
pub mod numeric;
pub use numeric::{diophantine_set, omega0, omega_coefficients, s_coefficients, DiophantineSet};
pub mod lasy;
pub use lasy::{assemble_l_asy, AsyExpansion, AsyTerm};
