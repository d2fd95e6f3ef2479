//! ζ'(0) and ζ-regularized functional determinants.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::continuation::{ContinuationConfig, ContinuedZeta};
use crate::error::{Error, Result};
use crate::operator::{Angle, CharFn, OperatorParams, Param, SeparatedBC};
use crate::specialfn::{digamma, hurwitz_zeta_f64, ln_gamma};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetResult {
    /// ζ'(0), or ζ'_reg(0) when `regularized`.
    pub zeta_prime_zero: Complex64,
    pub det: Complex64,
    /// ζ + s ln s was differentiated (α ≠ 0).
    pub regularized: bool,
    /// lim_{z→0} z^{-m0} F(z).
    pub limit_constant: Complex64,
    pub m0: u32,
}

impl DetResult {
    fn new(zeta_prime_zero: Complex64, regularized: bool, limit_constant: Complex64, m0: u32) -> Self {
        DetResult { zeta_prime_zero, det: (-zeta_prime_zero).exp(), regularized, limit_constant, m0 }
    }
}

fn ln_gamma_pos(x: f64) -> Result<f64> {
    Ok(ln_gamma(Complex64::new(x, 0.0))?.re)
}

fn gamma_neg_nu(nu: f64) -> f64 {
    // Γ(-ν) = Γ(1-ν)/(-ν)
    -ln_gamma_pos(1.0 - nu).map(f64::exp).unwrap_or(f64::NAN) / nu
}

/// Constant term of F(z) at z = 0 for μ = 0, ν ∈ (0, 1).
pub fn small_z_constant(nu: f64, alpha: &Angle, beta: &Angle) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::Domain(format!("nu = {nu} must lie in (0, 1)")));
    }
    let (sa, ca) = (alpha.value.sin(), alpha.value.cos());
    let (sb, cb) = if beta.is_half_pi() { (1.0, 0.0) } else { (beta.value.sin(), beta.value.cos()) };
    let ca = if alpha.is_half_pi() { 0.0 } else { ca };
    let bracket = |y: f64| -> Result<f64> { Ok(-ca + sa * (EULER_GAMMA + digamma(Complex64::new(y, 0.0))?.re)) };
    let g_plus = ln_gamma_pos(0.5 * (1.0 + nu))?.exp();
    let g_minus = ln_gamma_pos(0.5 * (1.0 - nu))?.exp();
    let g1 = ln_gamma_pos(1.0 + nu)?.exp();
    let first = -2.0 * g1 * cb / (g_plus * g_plus) * bracket(0.5 * (1.0 + nu))?;
    let second = -gamma_neg_nu(nu) * sb / (g_minus * g_minus) * bracket(0.5 * (1.0 - nu))?;
    Ok(first + second)
}

/// lim_{z→0} z^{-m0} F(z) and m0 for μ = 0.
pub fn limit_constant(nu: Param, alpha: Angle, beta: Angle) -> Result<(Complex64, u32)> {
    let params = OperatorParams::from_params(Param::ratio(0, 1)?, nu);
    let bc = SeparatedBC::new(alpha, beta)?;
    let f = CharFn::<f64>::new(&params, &bc.into())?;
    let m0 = f.m0()?;
    if m0 > 1 {
        return Err(Error::Degenerate(format!("F vanishes to order {m0} at z = 0")));
    }
    if m0 == 0 {
        return Ok((Complex64::new(small_z_constant(nu.value, &alpha, &beta)?, 0.0), 0));
    }
    let c = f.limit_constant()?;
    if c.norm() == 0.0 {
        return Err(Error::Degenerate("F'(0) vanishes".into()));
    }
    Ok((c, m0))
}

/// ζ'(0) for the Friedrichs extension (0, 0), any μ, ν ∈ [0, 1).
pub fn det_friedrichs(mu: f64, nu: f64) -> Result<DetResult> {
    let params = OperatorParams::new(mu, nu)?;
    let zp = (mu + nu) * 2f64.ln() + 2.0 * ln_gamma_pos(0.5 * (1.0 + mu + nu))? - (2.0 * PI).ln();
    let f = CharFn::<f64>::new(&params, &SeparatedBC::friedrichs().into())?;
    Ok(DetResult::new(Complex64::new(zp, 0.0), false, f.limit_constant()?, 0))
}

/// ζ'(0) for (0, π/2), μ = 0, through the Hurwitz ζ-function and its w-derivative.
pub fn zeta_prime_hurwitz_route(nu: f64) -> Result<f64> {
    let a = 0.5 * (1.0 - nu);
    let w0 = Complex64::new(0.0, 0.0);
    let z0 = hurwitz_zeta_f64(w0, a, 0)?.re;
    let z1 = hurwitz_zeta_f64(w0, a, 1)?.re;
    Ok(-2.0 * 2f64.ln() * z0 + 2.0 * z1)
}

/// ζ'(0) (regularized when α ≠ 0) for μ = 0, ν ∈ (0, 1) and separated (α, β).
pub fn det_regularized(nu: Param, alpha: Angle, beta: Angle) -> Result<DetResult> {
    let v = nu.value;
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain(format!("nu = {v} must lie in (0, 1)")));
    }
    if alpha.is_zero() && beta.is_zero() {
        let r = det_friedrichs(0.0, v)?;
        return Ok(r);
    }
    let (lc, m0) = limit_constant(nu, alpha, beta)?;
    let ln_f = lc.ln();
    let ipm = Complex64::new(0.0, PI * m0 as f64);
    let sa = alpha.value.sin();
    let sb = if beta.is_half_pi() { 1.0 } else { beta.value.sin() };
    let g = gamma_neg_nu(v);
    let positive_ln = |x: f64, what: &str| -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("{what} = {x} must be positive")));
        }
        Ok(x.ln())
    };
    let (zp, regularized) = if alpha.is_zero() {
        let c = g * sb / (2f64.powf(v + 1.0) * PI);
        // Γ(-ν) < 0 makes this argument negative: principal log
        (-ln_f + Complex64::new(c, 0.0).ln() - ipm, false)
    } else if beta.is_zero() {
        let c = -ln_gamma_pos(1.0 + v)?.exp() * sa * 2f64.powf(v - 1.0) / PI;
        (-ln_f + Complex64::new(c, 0.0).ln() - ipm - EULER_GAMMA, true)
    } else {
        let c = positive_ln(-g * sa * sb / (2f64.powf(v + 2.0) * PI), "-Gamma(-nu) sin(alpha) sin(beta) / (2^(nu+2) pi)")?;
        (-ln_f + c - ipm - EULER_GAMMA, true)
    };
    Ok(DetResult::new(zp, regularized, lc, m0))
}

/// d/ds of ζ (plus s ln s when α ≠ 0) at s = 0 by central differences on the continued ζ.
/// The s² ln s remainder leaves an O(h) error in the quotient, removed by combining h and 2h.
pub fn numeric_zeta_prime(nu: Param, alpha: Angle, beta: Angle, h: f64, config: &ContinuationConfig) -> Result<Complex64> {
    let params = OperatorParams::from_params(Param::ratio(0, 1)?, nu);
    let z = ContinuedZeta::new(&params, &SeparatedBC::new(alpha, beta)?, config)?;
    let f = |x: f64| z.eval_regularized(Complex64::new(x, 0.0));
    let d = |h: f64| -> Result<Complex64> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
    Ok(d(h)? * 2.0 - d(2.0 * h)?)
}

/// The β ∈ (0, π) at which 0 is an eigenvalue for μ = 0, given ν and α.
pub fn zero_mode_beta(nu: f64, alpha: &Angle) -> Result<Angle> {
    let c = small_z_constant(nu, alpha, &Angle::zero())?;
    let s = small_z_constant(nu, alpha, &Angle::half_pi())?;
    // c cos β + s sin β = 0
    let b = (-c).atan2(s).rem_euclid(PI);
    if b == 0.0 {
        return Err(Error::Degenerate("zero mode sits at beta = 0".into()));
    }
    Ok(Angle::radians(b))
}

/// True when a and b agree to `tol` with imaginary parts compared modulo 2π.
pub fn agree_mod_2pi_i(a: Complex64, b: Complex64, tol: f64) -> bool {
    let d = a - b;
    let k = (d.im / (2.0 * PI)).round();
    (d - Complex64::new(0.0, 2.0 * PI * k)).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(x: f64) -> Param {
        OperatorParams::new(0.0, x).unwrap().nu
    }

    #[test]
    fn friedrichs_values() {
        let r = det_friedrichs(0.5, 0.5).unwrap();
        assert!((r.det.re - PI).abs() < 1e-12 && r.det.im == 0.0);
        let r = det_friedrichs(0.0, 0.0).unwrap();
        assert!((r.det.re - 2.0).abs() < 1e-12);
        assert!(!r.regularized && r.m0 == 0);
        assert_eq!(r.det, (-r.zeta_prime_zero).exp());
    }

    #[test]
    fn gamma_and_hurwitz_routes_agree() {
        for k in 1..10 {
            let v = k as f64 / 10.0;
            let direct = 2.0 * ln_gamma_pos(0.5 * (1.0 - v)).unwrap() - v * 2f64.ln() - (2.0 * PI).ln();
            let hurwitz = zeta_prime_hurwitz_route(v).unwrap();
            let theorem = det_regularized(nu(v), Angle::zero(), Angle::half_pi()).unwrap();
            assert!((direct - hurwitz).abs() < 1e-10, "nu = {v}: {direct} vs {hurwitz}");
            assert!((theorem.zeta_prime_zero - direct).norm() < 1e-10, "nu = {v}: {}", theorem.zeta_prime_zero);
            assert!(!theorem.regularized);
        }
    }

    #[test]
    fn limit_constants() {
        let (c, m0) = limit_constant(nu(0.5), Angle::zero(), Angle::half_pi()).unwrap();
        let g14 = ln_gamma_pos(0.25).unwrap().exp();
        assert_eq!(m0, 0);
        assert!((c.re - gamma_neg_nu(0.5) / (g14 * g14)).abs() < 1e-14);
        let p = OperatorParams::new(0.0, 1.0 / 3.0).unwrap();
        for (a, b) in [(1.0, 2.0), (PI / 3.0, PI / 4.0), (2.5, 0.0)] {
            let (a, b) = (Angle::radians(a), Angle::radians(b));
            let f = CharFn::<f64>::new(&p, &SeparatedBC::new(a, b).unwrap().into()).unwrap();
            let (c, _) = limit_constant(p.nu, a, b).unwrap();
            assert!((c - f.eval(Complex64::new(0.0, 0.0)).unwrap()).norm() < 1e-12);
        }
        // tuned β: the constant is F'(0), checked against a one-sided difference of F
        let a = Angle::radians(1.0);
        let b = zero_mode_beta(p.nu.value, &a).unwrap();
        let (c, m0) = limit_constant(p.nu, a, b).unwrap();
        assert_eq!(m0, 1);
        let f = CharFn::<f64>::new(&p, &SeparatedBC::new(a, b).unwrap().into()).unwrap();
        let h = 1e-3;
        let fz = |k: f64| f.eval(Complex64::new(k * h, 0.0)).unwrap().re;
        let d = (-25.0 * fz(0.0) + 48.0 * fz(1.0) - 36.0 * fz(2.0) + 16.0 * fz(3.0) - 3.0 * fz(4.0)) / (12.0 * h);
        assert!((c.re - d).abs() < 1e-8 * d.abs(), "{c} vs {d}");
    }

    #[test]
    fn theorem_matches_numeric_derivative() {
        let cfg = ContinuationConfig::default();
        let a = Angle::radians(2.0);
        let cases = [
            (nu(0.5), Angle::pi_ratio(1, 3), Angle::pi_ratio(1, 4)),
            (nu(0.5), Angle::half_pi(), Angle::zero()),
            (nu(1.0 / 3.0), a, zero_mode_beta(1.0 / 3.0, &a).unwrap()),
        ];
        for (n, a, b) in cases {
            let r = det_regularized(n, a, b).unwrap();
            let d = numeric_zeta_prime(n, a, b, 1e-5, &cfg).unwrap();
            assert!(r.regularized);
            assert!(agree_mod_2pi_i(r.zeta_prime_zero, d, 1e-6), "{:?}: {} vs {d}", (n.value, a.value, b.value), r.zeta_prime_zero);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(det_regularized(Param::ratio(0, 1).unwrap(), Angle::radians(1.0), Angle::radians(1.0)).is_err());
        assert!(small_z_constant(1.0, &Angle::zero(), &Angle::zero()).is_err());
        assert!(agree_mod_2pi_i(Complex64::new(1.0, PI), Complex64::new(1.0, -PI), 1e-12));
        assert!(!agree_mod_2pi_i(Complex64::new(1.0, PI), Complex64::new(1.0, 0.0), 1e-12));
    }
}
