use num_complex::Complex;
use num_traits::Zero;

use super::params::OperatorParams;
use crate::error::Result;
use crate::real::Real;
use crate::specialfn::gamma::{digamma, gamma_real, ln_gamma_ratio, polygamma, rgamma, rgamma_digamma};

/// How a block depends on z through u_b(x) = 1/(Γ(b+x)Γ(b-x)) and
/// D_b(x) = 2γ + ψ(b+x) + ψ(b-x), with x = z^{1/2}/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BlockKind<T> {
    /// u_b (κ0 + κ1 D_b)
    Linear { k0: T, k1: T },
    /// (u D² - 1/u)/2 at b = 1/2, the μ = ν = 0 value of θ̃'(π/2).
    Squared,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Block<T> {
    pub coef: T,
    pub b: T,
    pub kind: BlockKind<T>,
}

/// The principal root of z rotated into the closed upper half-plane.
pub fn sqrt_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    let w = z.sqrt();
    if w.im < T::zero() || (w.im.is_zero() && w.re < T::zero()) {
        -w
    } else {
        w
    }
}

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

impl<T: Real> Block<T> {
    pub fn linear(coef: T, b: T, k0: T, k1: T) -> Self {
        Block { coef, b, kind: BlockKind::Linear { k0, k1 } }
    }

    pub fn plain(coef: T, b: T) -> Self {
        Block::linear(coef, b, T::one(), T::zero())
    }

    pub fn digamma(coef: T, b: T) -> Self {
        Block::linear(coef, b, T::zero(), T::one())
    }

    pub fn squared(coef: T) -> Self {
        Block { coef, b: T::lit(0.5), kind: BlockKind::Squared }
    }

    /// Value from entire building blocks; accurate for moderate |x|.
    pub fn eval_direct(&self, x: Complex<T>) -> Result<Complex<T>> {
        let g2 = T::euler_gamma() * T::int(2);
        match self.kind {
            BlockKind::Linear { k0, k1 } => {
                let (p, m) = (x + self.b, -x + self.b);
                let (rp, rm) = (rgamma(p), rgamma(m));
                let u = rp * rm;
                let mut v = u * k0;
                if !k1.is_zero() {
                    let ud = u * g2 + rgamma_digamma(p) * rm + rp * rgamma_digamma(m);
                    v = v + ud * k1;
                }
                Ok(v * self.coef)
            }
            BlockKind::Squared => {
                let pi = T::PI();
                let a = digamma(x + T::lit(0.5))? * T::int(2) + g2;
                let (s, c) = ((x * pi).sin(), (x * pi).cos());
                Ok((c * (a * a - pi * pi) - a * s * (pi * T::int(2))) / (pi * T::int(2)) * self.coef)
            }
        }
    }

    /// e^{iπx} times the block and its x-derivative, for Im x ≥ 0 and |x| > 1/2.
    /// Uses Γ(b-x) = π/(sin(π(b-x)) Γ(1-b+x)) so no large gamma values appear.
    pub fn eval_scaled(&self, x: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let pi = T::PI();
        let two_pi = pi * T::int(2);
        let i = Complex::<T>::i();
        let g2 = T::euler_gamma() * T::int(2);
        let e2 = (i * x * two_pi).exp();
        match self.kind {
            BlockKind::Linear { k0, k1 } => {
                let b = self.b;
                let one_b = T::one() - b;
                let r = ln_gamma_ratio(x, one_b, b)?.exp();
                let psi_p = digamma(x + b)?;
                let psi_m = digamma(x + one_b)?;
                let rp = r * (psi_m - psi_p);
                let k = re(k0) + (psi_p + psi_m + g2) * k1;
                let dk = if k1.is_zero() {
                    Complex::zero()
                } else {
                    (polygamma(1, x + b)? + polygamma(1, x + one_b)?) * k1
                };
                let ph = Complex::from_polar(T::one(), pi * one_b);
                let ep = ph * e2;
                let em = ph.conj();
                let pp = -i * (k + i * (pi * k1));
                let pm = i * (k - i * (pi * k1));
                let s = pp * ep + pm * em;
                let ds = (-i * dk) * ep + pp * ep * (i * two_pi) + (i * dk) * em;
                let f = r * s / two_pi * self.coef;
                let df = (rp * s + r * ds) / two_pi * self.coef;
                Ok((f, df))
            }
            BlockKind::Squared => {
                let half = T::lit(0.5);
                let a = digamma(x + half)? * T::int(2) + g2;
                let da = polygamma(1, x + half)? * T::int(2);
                let ap = a + i * pi;
                let am = a - i * pi;
                let ep = i * e2;
                let em = -i;
                let pp = -i * ap * ap * half;
                let pm = i * am * am * half;
                let s = pp * ep + pm * em;
                let ds = (-i * ap * da) * ep + pp * ep * (i * two_pi) + (i * am * da) * em;
                Ok((s / two_pi * self.coef, ds / two_pi * self.coef))
            }
        }
    }

    /// Value at z through whichever representation is appropriate.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let x = sqrt_upper(z) * T::lit(0.5);
        if z.norm() <= T::lit(UNIFORM_RADIUS) {
            return self.eval_direct(x);
        }
        let (f, _) = self.eval_scaled(x)?;
        Ok(f * (-Complex::<T>::i() * x * T::PI()).exp())
    }
}

/// |z| beyond which the scaled representation is used.
pub const UNIFORM_RADIUS: f64 = 1.5;

/// The four generalized boundary values at π/2 as blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryBlocks<T> {
    pub phi: Block<T>,
    pub phi_prime: Block<T>,
    pub theta: Block<T>,
    pub theta_prime: Block<T>,
}

impl<T: Real> BoundaryBlocks<T> {
    pub fn new(params: &OperatorParams) -> Result<Self> {
        let mu: T = params.mu();
        let nu: T = params.nu();
        let one = T::one();
        let half = T::lit(0.5);
        let mz = params.mu.is_zero();
        let nz = params.nu.is_zero();
        let g = |v: T| gamma_real(v);
        let phi = Block::plain(g(one + mu)? * g(one + nu)? * T::int(2), (one + mu + nu) * half);
        let phi_prime = if nz {
            Block::digamma(g(one + mu)?, (one + mu) * half)
        } else {
            Block::plain(-g(one + mu)? * g(-nu)?, (one + mu - nu) * half)
        };
        let theta = if mz {
            Block::digamma(g(one + nu)?, (one + nu) * half)
        } else {
            Block::plain(-g(-mu)? * g(one + nu)?, (one - mu + nu) * half)
        };
        let theta_prime = match (mz, nz) {
            (false, false) => Block::plain(g(-mu)? * g(-nu)? * half, (one - mu - nu) * half),
            (true, false) => Block::digamma(-g(-nu)? * half, (one - nu) * half),
            (false, true) => Block::digamma(-g(-mu)? * half, (one - mu) * half),
            (true, true) => Block::squared(one),
        };
        Ok(BoundaryBlocks { phi, phi_prime, theta, theta_prime })
    }

    pub fn eval(&self, z: Complex<T>) -> Result<BoundaryValuesAtHalfPi<T>> {
        Ok(BoundaryValuesAtHalfPi {
            phi_tilde: self.phi.eval(z)?,
            phi_tilde_prime: self.phi_prime.eval(z)?,
            theta_tilde: self.theta.eval(z)?,
            theta_tilde_prime: self.theta_prime.eval(z)?,
        })
    }
}

/// φ̃(π/2), φ̃'(π/2), θ̃(π/2), θ̃'(π/2) of the solutions normalized at x = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryValuesAtHalfPi<T> {
    pub phi_tilde: Complex<T>,
    pub phi_tilde_prime: Complex<T>,
    pub theta_tilde: Complex<T>,
    pub theta_tilde_prime: Complex<T>,
}

pub fn boundary_values_half_pi<T: Real>(
    params: &OperatorParams,
    z: Complex<T>,
) -> Result<BoundaryValuesAtHalfPi<T>> {
    BoundaryBlocks::new(params)?.eval(z)
}

impl<T: Real> BoundaryValuesAtHalfPi<T> {
    /// Wronskian-type combination φ̃ θ̃' - φ̃' θ̃, which equals -1 for every z.
    pub fn boundary_wronskian(&self) -> Complex<T> {
        self.phi_tilde * self.theta_tilde_prime - self.phi_tilde_prime * self.theta_tilde
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn regular_case_reduces_to_sine_and_cosine() {
        let p = OperatorParams::new(0.5, 0.5).unwrap();
        for z in [c(4.0, 0.0), c(2.3, 1.1), c(40.0, -3.0), c(-7.0, 0.0), c(0.3, 0.2)] {
            let bv = boundary_values_half_pi(&p, z).unwrap();
            let w = z.sqrt();
            let want = (w * (PI / 2.0)).sin() / w;
            assert!((bv.phi_tilde - want).norm() < 1e-12 * (1.0 + want.norm()), "{z}: {} vs {want}", bv.phi_tilde);
            // φ'(π/2) = cos(π w/2), θ(π/2) = cos(π w/2), θ'(π/2) = -w sin(π w/2)
            let cw = (w * (PI / 2.0)).cos();
            assert!((bv.phi_tilde_prime - cw).norm() < 1e-12 * (1.0 + cw.norm()));
            assert!((bv.theta_tilde - cw).norm() < 1e-12 * (1.0 + cw.norm()));
            let tp = w * (w * (PI / 2.0)).sin();
            assert!((bv.theta_tilde_prime + tp).norm() < 1e-12 * (1.0 + tp.norm()));
        }
    }

    #[test]
    fn symmetric_case_identity() {
        for mu in [0.2, 0.5, 0.8] {
            let p = OperatorParams::new(mu, mu).unwrap();
            for z in [c(1.0, 0.0), c(3.5, 2.0), c(90.0, 5.0)] {
                let bv = boundary_values_half_pi(&p, z).unwrap();
                let want = (z.sqrt() * (PI / 2.0)).cos() / (PI * mu).sin();
                assert!((bv.phi_tilde_prime - bv.theta_tilde).norm() < 1e-10 * (1.0 + want.norm()));
                assert!((bv.phi_tilde_prime - want).norm() < 1e-10 * (1.0 + want.norm()));
            }
        }
    }

    #[test]
    fn direct_and_scaled_paths_agree() {
        for (mu, nu) in [(0.0, 0.0), (0.0, 0.4), (0.3, 0.0), (0.3, 0.6), (0.9, 0.8)] {
            let p = OperatorParams::new(mu, nu).unwrap();
            let bb = BoundaryBlocks::<f64>::new(&p).unwrap();
            for z in [c(3.0, 0.0), c(20.0, 7.0), c(-5.0, 0.5), c(-60.0, 80.0)] {
                let x = sqrt_upper(z) * 0.5;
                for blk in [bb.phi, bb.phi_prime, bb.theta, bb.theta_prime] {
                    let d = blk.eval_direct(x).unwrap();
                    let (s, ds) = blk.eval_scaled(x).unwrap();
                    let u = s * (-Complex64::i() * x * PI).exp();
                    assert!((d - u).norm() < 1e-11 * (1.0 + d.norm()), "{mu} {nu} {z}: {d} vs {u}");
                    let h = 1e-5;
                    let (sp, _) = blk.eval_scaled(x + h).unwrap();
                    let (sm, _) = blk.eval_scaled(x - h).unwrap();
                    let fd = (sp - sm) / (2.0 * h);
                    assert!((fd - ds).norm() < 1e-6 * (1.0 + ds.norm()), "{mu} {nu} {z}: {fd} vs {ds}");
                }
            }
        }
    }

    #[test]
    fn boundary_wronskian_is_constant() {
        for (mu, nu) in [(0.0, 0.0), (0.0, 0.7), (0.4, 0.0), (0.25, 0.6)] {
            let p = OperatorParams::new(mu, nu).unwrap();
            for z in [c(0.7, 0.0), c(5.0, 2.0), c(-30.0, 1.0), c(400.0, 300.0)] {
                let bv = boundary_values_half_pi(&p, z).unwrap();
                let size = (bv.phi_tilde * bv.theta_tilde_prime).norm() + (bv.phi_tilde_prime * bv.theta_tilde).norm();
                let w = bv.boundary_wronskian();
                assert!((w + 1.0).norm() < 1e-13 * size.max(1.0), "{mu} {nu} {z}: {w}");
            }
        }
    }
}
