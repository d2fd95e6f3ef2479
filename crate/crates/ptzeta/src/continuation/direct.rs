use num_complex::Complex64;
use std::f64::consts::PI;

use super::closed::shifted_square_zeta;
use super::{ZetaMethod, ZetaValue};
use crate::asymcoeff::{assemble_l_asy, AsyExpansion};
use crate::eigen::{closed_form_shift, lowest_eigenvalues, DEFAULT_FLOOR};
use crate::error::{Error, Result};
use crate::quad::adaptive_gk;
use crate::operator::{zero_mode_multiplicity, BoundaryCondition, OperatorParams};

/// Re s must exceed 1/2 by this much.
pub const DIRECT_MARGIN: f64 = 0.05;
/// Eigenvalues generated from the asymptotic phase beyond the computed ones.
const PHASE_TERMS: usize = 500;
const PHASE_ORDER: usize = 3;

/// λ^{-s} with arg λ = -π for negative λ.
fn power(lambda: f64, s: Complex64) -> Complex64 {
    let v = (-s * lambda.abs().ln()).exp();
    if lambda < 0.0 {
        v * (s * Complex64::new(0.0, PI)).exp()
    } else {
        v
    }
}

/// Σ_{n > J} λ_n^{-s} for λ_n ≈ (√λ_J + 2(n - J))², with the spread over
/// two choices of the base as error.
fn quadratic_tail(last: f64, prev: Option<f64>, s: Complex64) -> Result<(Complex64, f64)> {
    let r = last.sqrt();
    let v = shifted_square_zeta(r + 2.0, s)?;
    let err = match prev {
        Some(p) => {
            // same model anchored one step earlier, without the explicit last term
            let alt = shifted_square_zeta(p.sqrt() + 4.0, s)?;
            (alt - v).norm()
        }
        None => v.norm(),
    };
    Ok((v, err))
}

/// Eigenvalues beyond `last` from the large-λ phase: F(λ) ~ 2 Re exp 𝓛(λ + i0),
/// so consecutive zeros advance Im 𝓛 by -π.
pub(crate) fn phase_roots(exp: &AsyExpansion<f64>, last: f64, count: usize) -> Option<Vec<f64>> {
    let theta = |l: f64| exp.ln(Complex64::new(l, 0.0)).im;
    let dtheta = |l: f64| exp.dlog(Complex64::new(l, 0.0)).im;
    let k = (-theta(last) - 0.5 * PI) / PI;
    if (k - k.round()).abs() > 0.05 {
        return None;
    }
    let mut target = -0.5 * PI - k.round() * PI;
    let mut lam = last;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        target -= PI;
        let mut x = lam + PI / dtheta(lam).abs();
        for _ in 0..50 {
            let step = (theta(x) - target) / dtheta(x);
            x -= step;
            if step.abs() <= 1e-14 * x {
                break;
            }
        }
        if !(x > lam) {
            return None;
        }
        out.push(x);
        lam = x;
    }
    Some(out)
}

/// Σ_{n>J} λ_n^{-s} along the phase model by Euler–Maclaurin from λ_J, with the
/// counting density x'(λ) = -θ'(λ)/π split into 1/(4√λ) plus a remainder r(λ).
fn phase_tail(exp: &AsyExpansion<f64>, last: f64, s: Complex64) -> Result<(Complex64, f64)> {
    let dx = |l: f64| -exp.dlog(Complex64::new(l, 0.0)).im / PI;
    let r = |l: f64| dx(l) - 0.25 / l.sqrt();
    let head = (s * -last.ln()).exp();
    let smooth = head * last.sqrt() / ((s - 0.5) * 4.0);
    let u0 = last.ln();
    let span = 40.0 / s.re;
    let (rest, qerr) = adaptive_gk(|u| {
        let l = u.exp();
        (Complex64::new(1.0 - s.re, -s.im) * u).exp() * r(l)
    }, u0, u0 + span, 1e-16)?;
    let lp = 1.0 / dx(last);
    let f1 = -s * head / last * lp;
    let value = smooth + rest - head * 0.5 - f1 / 12.0;
    let em = f1.norm() * (s.norm() + 2.0).powi(2) * (lp / last).powi(2) / 720.0;
    Ok((value, qerr + em))
}

/// Σ λ_n^{-s} over the nonzero eigenvalues, Re s > 1/2 + margin.
pub fn zeta_direct(params: &OperatorParams, bc: &BoundaryCondition, s: Complex64, n_terms: usize) -> Result<ZetaValue> {
    if s.re <= 0.5 + DIRECT_MARGIN {
        return Err(Error::Domain(format!("direct summation needs Re s > {}, got {s}", 0.5 + DIRECT_MARGIN)));
    }
    let n_terms = n_terms.max(8);
    let spec = lowest_eigenvalues(params, bc, n_terms, DEFAULT_FLOOR)?;
    let ev = spec.expanded();
    let mut head = Complex64::new(0.0, 0.0);
    let mut head_err = 0.0;
    for &l in ev.iter().filter(|&&l| l != 0.0) {
        let t = power(l, s);
        head += t;
        head_err += t.norm() * s.norm() * 1e-12;
    }
    if let Some(c) = closed_form_shift(params, bc) {
        // the computed eigenvalues are (2n + c)², n < J; the rest of the family is summed exactly
        let tail = shifted_square_zeta(2.0 * ev.len() as f64 + c, s)?;
        let value = head + tail;
        return Ok(ZetaValue { value, err_estimate: head_err + 1e-14 * value.norm(), method: ZetaMethod::Direct });
    }
    let last = *ev.last().unwrap();
    let prev = ev.len().checked_sub(2).map(|i| ev[i]);
    let phase = match bc {
        BoundaryCondition::Separated(sb) if params.mu.is_zero() => {
            let m0 = zero_mode_multiplicity(params, bc)?.m0;
            assemble_l_asy::<f64>(params, sb, m0, PHASE_ORDER).ok().and_then(|e| {
                // the phase model must reproduce the last computed eigenvalue from the one before
                let p = prev?;
                let check = phase_roots(&e, p, 1)?;
                if (check[0] - last).abs() > 1e-6 * last {
                    return None;
                }
                Some((phase_roots(&e, last, PHASE_TERMS)?, e))
            })
        }
        _ => None,
    };
    let (tail, tail_err) = match phase {
        Some(roots) => {
            let (roots, e) = roots;
            let mid: Complex64 = roots.iter().map(|&l| power(l, s)).sum();
            let (rest, rest_err) = phase_tail(&e, roots[roots.len() - 1], s)?;
            (mid + rest, rest_err + 1e-13 * mid.norm())
        }
        None => quadratic_tail(last, prev, s)?,
    };
    let value = head + tail;
    Ok(ZetaValue { value, err_estimate: head_err + tail_err, method: ZetaMethod::Direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::find_eigenvalues;
    use crate::operator::{Angle, SeparatedBC};

    fn sep(a: Angle, b: Angle) -> BoundaryCondition {
        SeparatedBC::new(a, b).unwrap().into()
    }

    #[test]
    fn closed_form_sums() {
        let v = zeta_direct(&OperatorParams::new(0.5, 0.5).unwrap(), &sep(Angle::zero(), Angle::zero()), Complex64::new(1.0, 0.0), 50).unwrap();
        assert!((v.value.re - PI * PI / 24.0).abs() < 1e-12);
        let v = zeta_direct(&OperatorParams::new(0.4, 0.4).unwrap(), &sep(Angle::zero(), Angle::half_pi()), Complex64::new(1.0, 0.0), 50).unwrap();
        assert!((v.value.re - PI * PI / 8.0).abs() < 1e-12);
        assert!(zeta_direct(&OperatorParams::new(0.4, 0.4).unwrap(), &sep(Angle::zero(), Angle::zero()), Complex64::new(0.5, 0.0), 50).is_err());
    }

    #[test]
    fn phase_roots_track_the_spectrum() {
        let p = OperatorParams::log_case(1, 3).unwrap();
        let sb = SeparatedBC::new(Angle::radians(1.0), Angle::radians(2.0)).unwrap();
        let spec = find_eigenvalues(&p, &sb.into(), DEFAULT_FLOOR, 40_000.0).unwrap();
        let ev = spec.expanded();
        let m0 = zero_mode_multiplicity(&p, &sb.into()).unwrap().m0;
        let e = assemble_l_asy::<f64>(&p, &sb, m0, 3).unwrap();
        let n = ev.len();
        let start = n - 40;
        let roots = phase_roots(&e, ev[start], 39).unwrap();
        for (r, l) in roots.iter().zip(&ev[start + 1..]) {
            assert!((r - l).abs() < 1e-9 * l, "{r} vs {l}");
        }
    }
}
