use num_complex::Complex64;

use super::{ZetaMethod, ZetaValue};
use crate::error::{Error, Result};
use crate::specialfn::hurwitz_zeta_f64;

/// Spectrum μ_n = a1 λ_n + a2 of an operator whose ζ-function ζ0 is known.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftedZeta {
    pub a1: f64,
    pub a2: f64,
    /// Multiplicity of the zero eigenvalue λ_0 of the unshifted spectrum.
    pub m0: u32,
    /// Lowest nonzero unshifted eigenvalue.
    pub lambda1: f64,
}

/// m0 a2^{-s} + a1^{-s} Σ_{k≤K} (-1)^k/k! (a2/a1)^k (s)_k ζ0(s+k), with a geometric tail bound.
pub fn shifted_zeta<F: FnMut(Complex64) -> Result<Complex64>>(
    mut zeta0: F,
    shift: &ShiftedZeta,
    s: Complex64,
    k_max: usize,
) -> Result<ZetaValue> {
    let ShiftedZeta { a1, a2, m0, lambda1 } = *shift;
    if !(a1 > 0.0) || a2 == 0.0 {
        return Err(Error::Domain("shift needs a1 > 0 and a2 != 0".into()));
    }
    let ratio = a2.abs() / (a1 * lambda1);
    if !(ratio < 1.0) {
        return Err(Error::Domain(format!("|a2| = {} must be below a1 lambda1 = {}", a2.abs(), a1 * lambda1)));
    }
    let x = a2 / a1;
    let mut coef = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = 0.0;
    for k in 0..=k_max {
        if k > 0 {
            coef = coef * (s + (k - 1) as f64) * (-x) / k as f64;
        }
        if coef.norm() == 0.0 {
            last = 0.0;
            break;
        }
        let t = coef * zeta0(s + k as f64)?;
        sum += t;
        last = t.norm();
    }
    let scale = (-s * a1.ln()).exp();
    let mut value = sum * scale;
    if m0 > 0 {
        let a2c = Complex64::new(a2, 0.0);
        value += (-s * a2c.ln()).exp() * m0 as f64;
    }
    let tail = last * scale.norm() * ratio / (1.0 - ratio);
    Ok(ZetaValue { value, err_estimate: tail + 1e-14 * value.norm(), method: ZetaMethod::Shifted })
}

/// Σ_{k≥1} (k² + k)^{-s}, continued by the binomial expansion of (1 + 1/k)^{-s} beyond k = K.
pub fn legendre_zeta(s: Complex64) -> Result<Complex64> {
    const K: usize = 30;
    let mut head = Complex64::new(0.0, 0.0);
    for k in 1..=K {
        let kk = k as f64;
        head += (-s * (kk * kk + kk).ln()).exp();
    }
    let mut binom = Complex64::new(1.0, 0.0);
    let mut tail = Complex64::new(0.0, 0.0);
    for j in 0..200 {
        if j > 0 {
            binom = binom * (-s - (j - 1) as f64) / j as f64;
        }
        let t = binom * hurwitz_zeta_f64(s * 2.0 + j as f64, K as f64 + 1.0, 0)?;
        tail += t;
        if t.norm() < 1e-17 * tail.norm().max(1e-300) && j > 4 {
            return Ok(head + tail);
        }
    }
    Err(Error::NonConvergence(format!("binomial tail of the Legendre zeta at s = {s}")))
}
