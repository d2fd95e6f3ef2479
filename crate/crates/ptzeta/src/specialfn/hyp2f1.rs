use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

const MAX_TERMS: usize = 20_000;

fn guard<T: Real>(xi: T, delta: T) -> Result<()> {
    if !(xi >= T::zero() && xi <= T::one() - delta) {
        return Err(Error::Domain(format!("hypergeometric series needs 0 <= xi <= 1 - {delta}, got {xi}")));
    }
    Ok(())
}

/// ₂F₁(a, b; c; ξ) and dF/dξ by the defining series, for real ξ in [0, 1 - δ].
pub fn hyp2f1<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    xi: T,
    delta: T,
) -> Result<(Complex<T>, Complex<T>)> {
    guard(xi, delta)?;
    if c.im.is_zero() && c.re <= T::zero() && c.re == c.re.round() {
        return Err(Error::Pole { function: "hyp2f1", at: format!("c = {}", c.re) });
    }
    let eps = T::epsilon();
    let mut t = Complex::<T>::one(); // (a)_n (b)_n / ((c)_n n!) ξ^n
    let mut f = t;
    let mut df = Complex::<T>::zero();
    for n in 0..MAX_TERMS {
        let nn = T::int(n as i64);
        let r = (a + nn) * (b + nn) / ((c + nn) * (nn + T::one()));
        t = t * r * xi;
        f = f + t;
        if xi > T::zero() {
            df = df + t * (nn + T::one()) / xi;
        }
        let ratio = r.norm() * xi;
        if t.is_zero() || (ratio < T::lit(0.99) && t.norm() * (nn + T::int(2)) < eps * f.norm() * (T::one() - ratio)) {
            if xi.is_zero() {
                df = a * b / c;
            }
            return Ok((f, df));
        }
    }
    Err(Error::NonConvergence(format!("hyp2f1 series at xi = {xi}")))
}

/// The non-logarithmic part of the second solution of the hypergeometric equation
/// with c = 1:
///   Σ_{n>=1} (a)_n (b)_n / (n!)² [ψ(a+n) - ψ(a) + ψ(b+n) - ψ(b) - 2 H_n] ξ^n
/// written with d(a)_n/da so it stays finite when a or b is a non-positive integer.
/// Returns the value and its ξ-derivative.
pub fn hyp2f1_log_companion<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    xi: T,
    delta: T,
) -> Result<(Complex<T>, Complex<T>)> {
    guard(xi, delta)?;
    let eps = T::epsilon();
    let one = Complex::<T>::one();
    let (mut pa, mut pb) = (one, one);
    let (mut da, mut db) = (Complex::<T>::zero(), Complex::<T>::zero());
    let mut h = T::zero();
    let mut xin = T::one();
    let mut s = Complex::<T>::zero();
    let mut ds = Complex::<T>::zero();
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nn = T::int(n as i64);
        let n1 = nn + T::one();
        da = (da * (a + nn) + pa) / n1;
        pa = pa * (a + nn) / n1;
        db = (db * (b + nn) + pb) / n1;
        pb = pb * (b + nn) / n1;
        h += T::one() / n1;
        let coef = da * pb + pa * db - pa * pb * (h + h);
        xin = xin * xi;
        let t = coef * xin;
        s = s + t;
        if xi > T::zero() {
            ds = ds + t * n1 / xi;
        } else if n == 0 {
            ds = coef;
        }
        let ratio = ((a + nn) * (b + nn)).norm() / (n1 * n1) * xi;
        if ratio < T::lit(0.99) && t.norm() * (n1 + T::one()) <= eps * s.norm().max(eps) * (T::one() - ratio) {
            small += 1;
            if small >= 2 {
                return Ok((s, ds));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(format!("log companion series at xi = {xi}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn elementary_cases() {
        // ₂F₁(1,1;2;ξ) = -ln(1-ξ)/ξ
        let (f, df) = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.5, 0.01).unwrap();
        assert!((f.re - 2.0 * 2f64.ln()).abs() < 1e-14);
        // derivative: [ξ/(1-ξ) + ln(1-ξ)]/ξ²
        assert!((df.re - (1.0 + 0.5f64.ln()) / 0.25).abs() < 1e-13);
        // terminating series
        let (f, _) = hyp2f1(c(-2.0, 0.0), c(3.0, 0.0), c(1.5, 0.0), 0.3, 0.01).unwrap();
        let want = 1.0 + (-2.0 * 3.0 / 1.5) * 0.3 + (-2.0 * -1.0 * 3.0 * 4.0) / (1.5 * 2.5 * 2.0) * 0.09;
        assert!((f.re - want).abs() < 1e-14);
        assert!(hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), 0.3, 0.01).is_err());
        assert!(hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.995, 0.01).is_err());
    }

    #[test]
    fn complex_parameters() {
        // mpmath.hyp2f1(0.3+2j, 0.8-2j, 1.25, 0.4)
        let (f, _) = hyp2f1(c(0.3, 2.0), c(0.8, -2.0), c(1.25, 0.0), 0.4, 0.01).unwrap();
        assert!((f - c(3.575848198477131, 0.8939810485311346)).norm() < 1e-13, "{f}");
    }

    #[test]
    fn log_companion_is_a_solution() {
        // F ln ξ + companion solves ξ(1-ξ)y'' + [1-(a+b+1)ξ]y' - ab y = 0
        let (a, b) = (c(0.25, 1.5), c(0.75, -1.5));
        let y = |xi: f64| {
            let (f, _) = hyp2f1(a, b, c(1.0, 0.0), xi, 0.01).unwrap();
            let (s, _) = hyp2f1_log_companion(a, b, xi, 0.01).unwrap();
            f * xi.ln() + s
        };
        let xi = 0.35;
        let hstep = 1e-4;
        let (ym, y0, yp) = (y(xi - hstep), y(xi), y(xi + hstep));
        let d1 = (yp - ym) / (2.0 * hstep);
        let d2 = (yp - y0 * 2.0 + ym) / (hstep * hstep);
        let r = d2 * xi * (1.0 - xi) + d1 * (c(1.0, 0.0) - (a + b + 1.0) * xi) - a * b * y0;
        assert!(r.norm() < 1e-5, "{r}");
        let (s, ds) = hyp2f1_log_companion(a, b, xi, 0.01).unwrap();
        let (sp, _) = hyp2f1_log_companion(a, b, xi + hstep, 0.01).unwrap();
        let (sm, _) = hyp2f1_log_companion(a, b, xi - hstep, 0.01).unwrap();
        assert!(((sp - sm) / (2.0 * hstep) - ds).norm() < 1e-7 * (1.0 + s.norm()));
    }

    #[test]
    fn log_companion_at_nonpositive_integer_a() {
        // a = 0: (a)_n = 0 for n >= 1 and d(a)_n/da = (n-1)!
        let b = c(0.5, 0.0);
        let (s, _) = hyp2f1_log_companion(c(0.0, 0.0), b, 0.2, 0.01).unwrap();
        let mut want = 0.0;
        let mut pb = 1.0;
        let mut fact = 1.0;
        for n in 1..60 {
            pb *= 0.5 + (n - 1) as f64;
            fact *= n as f64;
            want += fact / n as f64 * pb / (fact * fact) * 0.2f64.powi(n);
        }
        assert!((s.re - want).abs() < 1e-14 && s.im.abs() < 1e-15);
    }
}
