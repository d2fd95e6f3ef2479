use num_complex::Complex64;

use super::{ZetaMethod, ZetaValue};
use crate::eigen::closed_form_shift;
use crate::error::{Error, Result};
use crate::operator::{BoundaryCondition, OperatorParams};
use crate::specialfn::hurwitz_zeta_f64;

/// Σ_{n≥0} (2n + c)^{-2s} continued to all s ≠ 1/2.
pub(crate) fn shifted_square_zeta(c: f64, s: Complex64) -> Result<Complex64> {
    let two_s = s * 2.0;
    let scale = (-two_s * 2f64.ln()).exp();
    let a = c / 2.0;
    if a == 0.0 {
        return Ok(scale * hurwitz_zeta_f64(two_s, 1.0, 0)?);
    }
    if a > 0.0 {
        return Ok(scale * hurwitz_zeta_f64(two_s, a, 0)?);
    }
    // λ_0 = c² lies below the family (2n + 2 + c)², n ≥ 0
    let first = (-two_s * a.abs().ln()).exp();
    Ok(scale * (first + hurwitz_zeta_f64(two_s, a + 1.0, 0)?))
}

fn describe(bc: &BoundaryCondition) -> String {
    match bc {
        BoundaryCondition::Separated(s) => format!("alpha = {}, beta = {}", s.alpha, s.beta),
        BoundaryCondition::Coupled(c) => format!("coupled phi = {}, R = {:?}", c.phi, c.r),
    }
}

/// ζ(s) for the families whose eigenvalues are (2n + c)², n ≥ 0.
pub fn zeta_closed_form(params: &OperatorParams, bc: &BoundaryCondition, s: Complex64) -> Result<ZetaValue> {
    let c = closed_form_shift(params, bc)
        .ok_or_else(|| Error::NotClosedForm(format!("mu = {}, nu = {} with {}", params.mu.value, params.nu.value, describe(bc))))?;
    if s == Complex64::new(0.5, 0.0) {
        return Err(Error::Pole { function: "zeta", at: "s = 1/2".into() });
    }
    let value = shifted_square_zeta(c, s)?;
    Ok(ZetaValue { value, err_estimate: 1e-14 * value.norm().max(1e-300), method: ZetaMethod::ClosedForm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{Angle, SeparatedBC};
    use std::f64::consts::PI;

    fn bc(a: Angle, b: Angle) -> BoundaryCondition {
        SeparatedBC::new(a, b).unwrap().into()
    }

    #[test]
    fn special_values() {
        let s0 = Complex64::new(0.0, 0.0);
        let v = zeta_closed_form(&OperatorParams::new(0.3, 0.7).unwrap(), &bc(Angle::zero(), Angle::zero()), s0).unwrap();
        assert!((v.value.re + 0.5).abs() < 1e-14);
        let v = zeta_closed_form(&OperatorParams::new(0.4, 0.4).unwrap(), &bc(Angle::zero(), Angle::half_pi()), Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.value.re - PI * PI / 8.0).abs() < 1e-13);
        let v = zeta_closed_form(&OperatorParams::new(0.25, 0.75).unwrap(), &bc(Angle::half_pi(), Angle::half_pi()), Complex64::new(-1.0, 0.0)).unwrap();
        assert!(v.value.norm() < 1e-13);
        let err = zeta_closed_form(&OperatorParams::new(0.0, 0.3).unwrap(), &bc(Angle::pi_ratio(1, 3), Angle::zero()), s0);
        assert!(matches!(err, Err(Error::NotClosedForm(_))));
    }

    #[test]
    fn negative_shift_counts_the_lowest_eigenvalue() {
        // μ = 0.6, ν = 0.7 with (π/2, π/2): c = -0.3, eigenvalues 0.09, 2.89, 8.69...
        let p = OperatorParams::new(0.6, 0.7).unwrap();
        let v = zeta_closed_form(&p, &bc(Angle::half_pi(), Angle::half_pi()), Complex64::new(2.0, 0.0)).unwrap();
        let direct: f64 = (0..200_000).map(|n| (2.0 * n as f64 - 0.3).powi(-4)).sum();
        assert!((v.value.re - direct).abs() < 1e-10 * direct);
    }
}
