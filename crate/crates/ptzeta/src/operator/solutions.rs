use num_complex::Complex;

use super::boundary::{sqrt_upper, BoundaryBlocks};
use super::params::OperatorParams;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::specialfn::hyp2f1::{hyp2f1, hyp2f1_log_companion};

/// Default guard keeping the hypergeometric series away from ξ = 1.
pub const SERIES_GUARD: f64 = 1e-3;

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// d/dx [sin^p x cos^q x H(sin²x)] given H and H'.
fn assemble<T: Real>(x: T, p: T, q: T, h: Complex<T>, dh: Complex<T>) -> (Complex<T>, Complex<T>) {
    let (s, c) = (x.sin(), x.cos());
    let pre = s.powf(p) * c.powf(q);
    let v = h * pre;
    let d = (h * (p * c / s - q * s / c) + dh * (s * c * T::int(2))) * pre;
    (v, d)
}

/// φ(z, x) and ∂_x φ from the series about x = 0.
pub fn phi_series<T: Real>(params: &OperatorParams, z: Complex<T>, x: T) -> Result<(Complex<T>, Complex<T>)> {
    let (mu, nu) = (params.mu::<T>(), params.nu::<T>());
    let half = T::lit(0.5);
    let one = T::one();
    let w = sqrt_upper(z) * half;
    let base = (one + mu + nu) * half;
    let xi = x.sin().powi(2);
    let (f, df) = hyp2f1(w + base, -w + base, re(one + mu), xi, T::lit(SERIES_GUARD))?;
    Ok(assemble(x, (one + mu * T::int(2)) * half, (one + nu * T::int(2)) * half, f, df))
}

/// θ(z, x) and ∂_x θ from the series about x = 0 (logarithmic when μ = 0).
pub fn theta_series<T: Real>(params: &OperatorParams, z: Complex<T>, x: T) -> Result<(Complex<T>, Complex<T>)> {
    let (mu, nu) = (params.mu::<T>(), params.nu::<T>());
    let half = T::lit(0.5);
    let one = T::one();
    let two = T::int(2);
    let w = sqrt_upper(z) * half;
    let xi = x.sin().powi(2);
    let guard = T::lit(SERIES_GUARD);
    if params.mu.is_zero() {
        let base = (one + nu) * half;
        let (a, b) = (w + base, -w + base);
        let (f, df) = hyp2f1(a, b, re(one), xi, guard)?;
        let (s, ds) = hyp2f1_log_companion(a, b, xi, guard)?;
        let l = xi.ln();
        let h = f * l + s;
        let dh = df * l + f / xi + ds;
        let (v, d) = assemble(x, half, (one + nu * two) * half, h, dh);
        return Ok((v * (-half), d * (-half)));
    }
    let base = (one - mu - nu) * half;
    let (f, df) = hyp2f1(w + base, -w + base, re(one - mu), xi, guard)?;
    let (v, d) = assemble(x, (one - mu * two) * half, (one - nu * two) * half, f, df);
    let k = one / (mu * two);
    Ok((v * k, d * k))
}

fn check_interior<T: Real>(x: T) -> Result<()> {
    if !(x > T::zero() && x < T::FRAC_PI_2()) {
        return Err(Error::Domain(format!("x = {x} outside (0, pi/2)")));
    }
    Ok(())
}

/// A solution with generalized values (g̃, g̃') at π/2, evaluated at x ≤ π/2 from the
/// fundamental system of the mirrored operator at π/2 - x.
fn from_right_end<T: Real>(
    params: &OperatorParams,
    z: Complex<T>,
    x: T,
    g: Complex<T>,
    gp: Complex<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    let m = params.mirrored();
    let y = T::FRAC_PI_2() - x;
    let (t, dt) = theta_series(&m, z, y)?;
    let (p, dp) = phi_series(&m, z, y)?;
    Ok((g * t - gp * p, -(g * dt - gp * dp)))
}

/// φ_{μ,ν}(z, x) with ∂_x φ, normalized by φ̃(0) = 0, φ̃'(0) = 1.
pub fn solution_phi<T: Real>(params: &OperatorParams, z: Complex<T>, x: T) -> Result<(Complex<T>, Complex<T>)> {
    check_interior(x)?;
    if x <= T::FRAC_PI_4() {
        return phi_series(params, z, x);
    }
    let bb = BoundaryBlocks::<T>::new(params)?;
    from_right_end(params, z, x, bb.phi.eval(z)?, bb.phi_prime.eval(z)?)
}

/// θ_{μ,ν}(z, x) with ∂_x θ, normalized by θ̃(0) = 1, θ̃'(0) = 0.
pub fn solution_theta<T: Real>(params: &OperatorParams, z: Complex<T>, x: T) -> Result<(Complex<T>, Complex<T>)> {
    check_interior(x)?;
    if x <= T::FRAC_PI_4() {
        return theta_series(params, z, x);
    }
    let bb = BoundaryBlocks::<T>::new(params)?;
    from_right_end(params, z, x, bb.theta.eval(z)?, bb.theta_prime.eval(z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    fn potential(mu: f64, nu: f64, x: f64) -> f64 {
        (mu * mu - 0.25) / x.sin().powi(2) + (nu * nu - 0.25) / x.cos().powi(2)
    }

    /// RK4 for u'' = (V - z) u from x0 to x1.
    fn rk4(mu: f64, nu: f64, z: Complex64, x0: f64, x1: f64, u: Complex64, du: Complex64, n: usize) -> (Complex64, Complex64) {
        let h = (x1 - x0) / n as f64;
        let f = |x: f64, u: Complex64, du: Complex64| (du, (potential(mu, nu, x) - z) * u);
        let (mut u, mut du) = (u, du);
        for k in 0..n {
            let x = x0 + k as f64 * h;
            let (a1, b1) = f(x, u, du);
            let (a2, b2) = f(x + h / 2.0, u + a1 * (h / 2.0), du + b1 * (h / 2.0));
            let (a3, b3) = f(x + h / 2.0, u + a2 * (h / 2.0), du + b2 * (h / 2.0));
            let (a4, b4) = f(x + h, u + a3 * h, du + b3 * h);
            u += (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (h / 6.0);
            du += (b1 + b2 * 2.0 + b3 * 2.0 + b4) * (h / 6.0);
        }
        (u, du)
    }

    #[test]
    fn regular_case() {
        let p = OperatorParams::new(0.5, 0.5).unwrap();
        let z = c(4.0, 0.0);
        let (v, _) = solution_phi(&p, z, PI / 8.0).unwrap();
        assert!((v.re - (PI / 4.0).sin() / 2.0).abs() < 1e-14);
        let (v, _) = solution_theta(&p, c(9.0, 0.0), PI / 6.0).unwrap();
        assert!(v.norm() < 1e-14);
        for x in [0.3, 1.0, 1.4] {
            let z = c(2.5, 1.5);
            let w = z.sqrt();
            let (ph, dph) = solution_phi(&p, z, x).unwrap();
            let (th, dth) = solution_theta(&p, z, x).unwrap();
            assert!((ph - (w * x).sin() / w).norm() < 1e-12);
            assert!((dph - (w * x).cos()).norm() < 1e-12);
            assert!((th - (w * x).cos()).norm() < 1e-12);
            assert!((dth + w * (w * x).sin()).norm() < 1e-12);
        }
    }

    #[test]
    fn wronskian_is_one() {
        for (mu, nu, z) in [(0.3, 0.6, c(2.7, 0.0)), (0.0, 0.4, c(1.3, 0.5)), (0.0, 0.0, c(-3.0, 1.0)), (0.8, 0.0, c(20.0, -2.0))] {
            let p = OperatorParams::new(mu, nu).unwrap();
            for k in 1..12 {
                let x = k as f64 * FRAC_PI_2 / 12.0;
                let (th, dth) = solution_theta(&p, z, x).unwrap();
                let (ph, dph) = solution_phi(&p, z, x).unwrap();
                let w = th * dph - dth * ph;
                assert!((w - 1.0).norm() < 1e-8, "{mu} {nu} {z} {x}: {w}");
            }
        }
    }

    #[test]
    fn connection_matches_raw_series() {
        for (mu, nu) in [(0.3, 0.6), (0.0, 0.45), (0.0, 0.0), (0.7, 0.0)] {
            let p = OperatorParams::new(mu, nu).unwrap();
            let z = c(3.1, 0.7);
            for x in [0.9, 1.1, 1.3] {
                let bb = BoundaryBlocks::<f64>::new(&p).unwrap();
                let conn = from_right_end(&p, z, x, bb.phi.eval(z).unwrap(), bb.phi_prime.eval(z).unwrap()).unwrap();
                let raw = phi_series(&p, z, x).unwrap();
                assert!((conn.0 - raw.0).norm() < 1e-9 * (1.0 + raw.0.norm()), "{mu} {nu} {x}");
                let conn = from_right_end(&p, z, x, bb.theta.eval(z).unwrap(), bb.theta_prime.eval(z).unwrap()).unwrap();
                let raw = theta_series(&p, z, x).unwrap();
                assert!((conn.0 - raw.0).norm() < 1e-9 * (1.0 + raw.0.norm()), "{mu} {nu} {x}");
                assert!((conn.1 - raw.1).norm() < 1e-8 * (1.0 + raw.1.norm()), "{mu} {nu} {x}");
            }
        }
    }

    #[test]
    fn series_solve_the_equation() {
        for (mu, nu, z) in [(0.3, 0.6, c(2.7, 0.0)), (0.0, 0.4, c(1.3, 0.0))] {
            let p = OperatorParams::new(mu, nu).unwrap();
            for (is_phi, sol) in [(true, phi_series::<f64> as fn(&OperatorParams, Complex64, f64) -> Result<(Complex64, Complex64)>), (false, theta_series::<f64>)] {
                let (u0, du0) = sol(&p, z, 0.05).unwrap();
                let (u1, du1) = rk4(mu, nu, z, 0.05, 0.5, u0, du0, 20000);
                let (v, dv) = sol(&p, z, 0.5).unwrap();
                assert!((u1 - v).norm() < 1e-9 * (1.0 + v.norm()) && (du1 - dv).norm() < 1e-8 * (1.0 + dv.norm()));
                // continue past π/4 and compare with the connection formula
                let (u2, du2) = rk4(mu, nu, z, 0.5, 1.3, u1, du1, 20000);
                let bb = BoundaryBlocks::<f64>::new(&p).unwrap();
                let (g, gp) = if is_phi {
                    (bb.phi.eval(z).unwrap(), bb.phi_prime.eval(z).unwrap())
                } else {
                    (bb.theta.eval(z).unwrap(), bb.theta_prime.eval(z).unwrap())
                };
                let (w, dw) = from_right_end(&p, z, 1.3, g, gp).unwrap();
                assert!((u2 - w).norm() < 1e-8 * (1.0 + w.norm()) && (du2 - dw).norm() < 1e-7 * (1.0 + dw.norm()));
            }
        }
    }

    /// Integrates toward π/2 in τ = ln(π/2 - x) and extracts the two-term
    /// behavior g̃ (2ν)^{-1} y^{(1-2ν)/2} - g̃' y^{(1+2ν)/2}.
    #[test]
    fn boundary_values_match_limits() {
        let (mu, nu) = (0.0, 0.5);
        let p = OperatorParams::new(mu, nu).unwrap();
        let z = c(2.0, 1.0);
        let bb = BoundaryBlocks::<f64>::new(&p).unwrap();
        for (sol, g, gp) in [
            (phi_series::<f64> as fn(&OperatorParams, Complex64, f64) -> Result<(Complex64, Complex64)>, bb.phi, bb.phi_prime),
            (theta_series::<f64>, bb.theta, bb.theta_prime),
        ] {
            let x0 = PI / 4.0;
            let (u, du) = sol(&p, z, x0).unwrap();
            // v = u, q = y u_y with y = π/2 - x; dv/dτ = q, dq/dτ = q + y²(V - z) u
            let f = |tau: f64, v: Complex64, q: Complex64| {
                let y: f64 = tau.exp();
                (q, q + (potential(mu, nu, FRAC_PI_2 - y) - z) * v * (y * y))
            };
            let (t0, t1) = ((FRAC_PI_2 - x0).ln(), 1e-4f64.ln());
            let n = 40000;
            let h = (t1 - t0) / n as f64;
            let (mut v, mut q) = (u, -du * (FRAC_PI_2 - x0));
            for k in 0..n {
                let t = t0 + k as f64 * h;
                let (a1, b1) = f(t, v, q);
                let (a2, b2) = f(t + h / 2.0, v + a1 * (h / 2.0), q + b1 * (h / 2.0));
                let (a3, b3) = f(t + h / 2.0, v + a2 * (h / 2.0), q + b2 * (h / 2.0));
                let (a4, b4) = f(t + h, v + a3 * h, q + b3 * h);
                v += (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (h / 6.0);
                q += (b1 + b2 * 2.0 + b3 * 2.0 + b4) * (h / 6.0);
            }
            let y = 1e-4f64;
            // v = A a(y) + B b(y), q = A y a'(y) + B y b'(y)
            let a = y.powf((1.0 - 2.0 * nu) / 2.0) / (2.0 * nu);
            let ya = a * (1.0 - 2.0 * nu) / 2.0;
            let b = -y.powf((1.0 + 2.0 * nu) / 2.0);
            let yb = b * (1.0 + 2.0 * nu) / 2.0;
            let det = a * yb - b * ya;
            let ga = (v * yb - q * b) / det;
            let gb = (q * a - v * ya) / det;
            let (we, wp) = (g.eval(z).unwrap(), gp.eval(z).unwrap());
            assert!((ga - we).norm() < 1e-5 * (1.0 + we.norm()), "{ga} vs {we}");
            assert!((gb - wp).norm() < 1e-3 * (1.0 + wp.norm()), "{gb} vs {wp}");
        }
    }
}
