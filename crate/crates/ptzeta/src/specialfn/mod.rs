//! Special functions used by the operator and continuation layers.

pub mod bernoulli;
pub mod dd;
pub mod expint;
pub mod gamma;
pub mod hurwitz;
pub mod hyp2f1;
pub mod rational;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, generalized_bernoulli, generalized_bernoulli_value};
pub use dd::DoubleDouble;
pub use expint::{expint, expint_scaled};
pub use gamma::{
    digamma, gamma, gamma_real, ln_gamma, ln_gamma_ratio, pochhammer, polygamma, rgamma, rgamma_digamma, trigamma,
};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_f64, riemann_zeta};
pub use hyp2f1::{hyp2f1, hyp2f1_log_companion};
pub use rational::RatPoly;
