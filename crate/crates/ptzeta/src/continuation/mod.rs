//! ζ(s; T) by direct summation, closed forms and analytic continuation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub mod closed;
pub mod continued;
pub mod direct;
pub mod residue;
pub mod shifted;
pub mod structure;


pub use closed::zeta_closed_form;
pub use direct::zeta_direct;
pub use residue::{residue_at, Residue};
pub use shifted::{legendre_zeta, shifted_zeta, ShiftedZeta};
pub use continued::{zeta_continued, zeta_continued_beta0, ContinuedZeta};



pub use structure::{structure_report, BranchPoint, Location, Pole, Status, StructureReport};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuationConfig {
    /// Direction Ψ ∈ (π/2, π) of the branch cut of z^{-s}.
    pub psi: f64,
    /// Order of the subtracted large-z expansion.
    pub n: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Split point of the t-integral.
    pub split: f64,
    /// Upper end of the numerical [split, ∞) integral; `None` picks min(1e6, 10^{16/(N+1)}).
    pub cutoff: Option<f64>,
    /// Eigenvalues summed explicitly by `zeta_direct`.
    pub direct_terms: usize,
    /// `zeta_direct` needs Re s > 1/2 + margin.
    pub margin: f64,
    /// Distance in s inside which a catalogued singularity is refused.
    pub guard: f64,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        ContinuationConfig {
            psi: 0.75 * PI,
            n: 3,
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            split: 1.0,
            cutoff: None,
            direct_terms: 120,
            margin: 0.05,
            guard: 1e-3,
        }
    }
}

impl ContinuationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.psi > 0.5 * PI && self.psi < PI) {
            return Err(Error::Domain(format!("psi = {} must lie strictly inside (pi/2, pi)", self.psi)));
        }
        if self.n < 1 {
            return Err(Error::Domain("truncation order N must be at least 1".into()));
        }
        if !(self.split > 0.0 && self.split.is_finite()) {
            return Err(Error::Domain(format!("split point {} must be positive", self.split)));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        if self.direct_terms == 0 {
            return Err(Error::Domain("direct summation needs at least one term".into()));
        }
        Ok(())
    }

    pub fn cutoff(&self) -> f64 {
        let t = self.cutoff.unwrap_or_else(|| 1e6f64.min(10f64.powf(16.0 / (self.n as f64 + 1.0))));
        t.max(4.0 * self.split)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMethod {
    Direct,
    ClosedForm,
    Continued,
    Shifted,
}

impl ZetaMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZetaMethod::Direct => "direct",
            ZetaMethod::ClosedForm => "closed-form",
            ZetaMethod::Continued => "continued",
            ZetaMethod::Shifted => "shifted",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    pub err_estimate: f64,
    pub method: ZetaMethod,
}

/// sin(πs) with the real part reduced first, exact zeros at the integers.
pub(crate) fn sin_pi(s: Complex64) -> Complex64 {
    let n = s.re.round();
    let r = s.re - n;
    let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (sr, cr) = ((PI * r).sin(), (PI * r).cos());
    let y = PI * s.im;
    Complex64::new(sr * y.cosh(), cr * y.sinh()) * sign
}

pub(crate) fn cos_pi(s: Complex64) -> Complex64 {
    let n = s.re.round();
    let r = s.re - n;
    let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (sr, cr) = ((PI * r).sin(), (PI * r).cos());
    let y = PI * s.im;
    Complex64::new(cr * y.cosh(), -sr * y.sinh()) * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_reduction() {
        for s in [Complex64::new(3.0, 0.0), Complex64::new(-7.0, 0.0)] {
            assert_eq!(sin_pi(s), Complex64::new(0.0, 0.0));
        }
        let s = Complex64::new(-2.3, 0.4);
        assert!((sin_pi(s) - (s * PI).sin()).norm() < 1e-14);
        assert!((cos_pi(s) - (s * PI).cos()).norm() < 1e-14);
        assert!(ContinuationConfig { psi: 0.4, ..Default::default() }.validate().is_err());
        assert_eq!(ContinuationConfig::default().cutoff(), 1e4);
    }
}
