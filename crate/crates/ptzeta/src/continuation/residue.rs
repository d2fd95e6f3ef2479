use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::Result;

const NODES: usize = 64;

/// Contour residue at two radii.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residue {
    pub value: Complex64,
    /// The same integral on the circle of half the radius.
    pub half_radius: Complex64,
    /// False when the two radii disagree: not a simple pole (or a branch point).
    pub consistent: bool,
}

/// (2πi)^{-1} ∮ ζ ds on |s - s0| = radius by the trapezoidal rule.
fn circle<F: FnMut(Complex64) -> Result<Complex64>>(f: &mut F, s0: f64, radius: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..NODES {
        // offset by half a step so that no node sits on the real axis
        let th = 2.0 * PI * (k as f64 + 0.5) / NODES as f64;
        let e = Complex64::from_polar(1.0, th);
        acc += f(s0 + e * radius)? * e;
    }
    Ok(acc * radius / NODES as f64)
}

pub fn residue_at<F: FnMut(Complex64) -> Result<Complex64>>(mut zeta: F, s0: f64, radius: f64) -> Result<Residue> {
    let value = circle(&mut zeta, s0, radius)?;
    let half_radius = circle(&mut zeta, s0, radius / 2.0)?;
    let consistent = (value - half_radius).norm() <= 1e-8 * value.norm().max(1.0);
    Ok(Residue { value, half_radius, consistent })
}
