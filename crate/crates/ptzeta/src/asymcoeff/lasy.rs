use num_complex::Complex;
use num_traits::Zero;

use super::exact::{r_coefficients, reflect};
use super::numeric::{eval_at, s_coefficients};
use crate::error::{Error, Result};
use crate::operator::{Angle, OperatorParams, Param, SeparatedBC};
use crate::real::Real;
use crate::specialfn::gamma_real;

/// coef · (sin α / Λ)^l · z^{-ρ} with ρ = rho.0 / rho.1.
#[derive(Clone, Debug, PartialEq)]
pub struct AsyTerm<T> {
    pub coef: Complex<T>,
    pub l: usize,
    pub rho: (i64, i64),
}

impl<T: Real> AsyTerm<T> {
    pub fn rho(&self) -> T {
        T::ratio(self.rho.0, self.rho.1)
    }
}

/// Truncated large-z expansion of ln(z^{-m0} F(z)) for μ = 0:
/// sqrt_coef·z^{1/2} + constant + log_coef·ln z + ln Λ(z) + Σ terms.
#[derive(Clone, Debug)]
pub struct AsyExpansion<T> {
    pub nu: Param,
    pub alpha: Angle,
    pub beta: Angle,
    pub m0: u32,
    pub n: usize,
    /// min{q, ⌈q(N+1)/p⌉ - 1} when ν = p/q and β ∉ {0, π/2}.
    pub q_n: Option<usize>,
    pub sqrt_coef: Complex<T>,
    pub constant: Complex<T>,
    pub log_coef: T,
    pub terms: Vec<AsyTerm<T>>,
}

fn reduce(n: i64, d: i64) -> (i64, i64) {
    use num_integer::Integer;
    let g = n.gcd(&d).max(1);
    (n / g, d / g)
}

/// Assembles the expansion to order z^{-N}.
pub fn assemble_l_asy<T: Real>(params: &OperatorParams, bc: &SeparatedBC, m0: u32, n: usize) -> Result<AsyExpansion<T>> {
    if !params.mu.is_zero() {
        return Err(Error::Unsupported("large-z expansion is implemented for mu = 0".into()));
    }
    let nu = params.nu;
    let v: T = nu.get();
    let i = Complex::<T>::i();
    let pi = T::PI();
    let two = T::int(2);
    let beta_zero = bc.beta.is_zero();
    let (constant, log_coef) = if beta_zero {
        let k = -gamma_real(T::one() + v)? * two.powf(v) / pi;
        (Complex::from_polar(k, pi * v / two).ln(), -(v / two + T::int(m0 as i64)))
    } else {
        if nu.is_zero() {
            return Err(Error::Unsupported("beta != 0 expansion needs nu in (0, 1)".into()));
        }
        let (_, sb) = bc.beta.cos_sin::<T>();
        let k = -gamma_real(-v)? * sb / (two.powf(v + T::one()) * pi);
        (Complex::from_polar(k, -pi * v / two).ln(), v / two - T::int(m0 as i64))
    };
    let mut terms = Vec::new();
    for (m, r) in r_coefficients(n).iter().enumerate() {
        let lmax = if bc.alpha.is_zero() { 0 } else { r.order() };
        for l in 0..=lmax {
            let p = if beta_zero { reflect(&r.entry(l)) } else { r.entry(l) };
            let c = eval_at::<T>(&p, &nu, false);
            if !c.is_zero() {
                terms.push(AsyTerm { coef: Complex::new(c, T::zero()), l, rho: (m as i64 + 1, 1) });
            }
        }
    }
    let mut q_n = None;
    if !beta_zero && !bc.beta.is_half_pi() {
        let (p, q) = nu
            .exact
            .filter(|&(p, _)| p > 0)
            .ok_or_else(|| Error::Unsupported("beta outside {0, pi/2} needs rational nu = p/q".into()))?;
        let nn = n as i64;
        q_n = Some(q.min((q * (nn + 1) + p - 1) / p - 1) as usize);
        let count = (q * (nn + 1) - p) as usize;
        for (m, s) in s_coefficients::<T>(p as u64, q as u64, &bc.beta, count)?.iter().enumerate() {
            let lmax = if bc.alpha.is_zero() { 0 } else { s.order() };
            let scale = s.entry(0).norm().max(T::min_positive_value());
            for l in 0..=lmax {
                let c = s.entry(l);
                if l > 0 && c.norm() <= T::epsilon() * T::int(64) * scale {
                    continue;
                }
                if !c.is_zero() {
                    terms.push(AsyTerm { coef: c, l, rho: reduce(m as i64 + p, q) });
                }
            }
        }
    }
    Ok(AsyExpansion {
        nu,
        alpha: bc.alpha,
        beta: bc.beta,
        m0,
        n,
        q_n,
        sqrt_coef: -i * pi / two,
        constant,
        log_coef,
        terms,
    })
}

impl<T: Real> AsyExpansion<T> {
    /// Λ(z) = -cos α + sin α (γ + ln z^{1/2} - ln 2 - iπ/2).
    pub fn lambda(&self, z: Complex<T>) -> Complex<T> {
        let (ca, sa) = self.alpha.cos_sin::<T>();
        let two = T::int(2);
        let inner = z.ln() / two + Complex::new(T::euler_gamma() - two.ln(), -T::FRAC_PI_2());
        inner * sa - ca
    }

    /// The truncated expansion at z (ln z principal, z^{1/2} with Im ≥ 0).
    pub fn ln(&self, z: Complex<T>) -> Complex<T> {
        let (_, sa) = self.alpha.cos_sin::<T>();
        let lz = z.ln();
        let lam = self.lambda(z);
        let g = Complex::new(sa, T::zero()) / lam;
        let mut acc = self.sqrt_coef * crate::operator::sqrt_upper(z) + self.constant + lz * self.log_coef + lam.ln();
        for t in &self.terms {
            acc = acc + t.coef * g.powu(t.l as u32) * (-lz * t.rho()).exp();
        }
        acc
    }

    /// d/dz of [`Self::ln`].
    pub fn dlog(&self, z: Complex<T>) -> Complex<T> {
        let (_, sa) = self.alpha.cos_sin::<T>();
        let two = T::int(2);
        let lz = z.ln();
        let lam = self.lambda(z);
        let g = Complex::new(sa, T::zero()) / lam;
        // dΛ/dz = sin α / (2z)
        let dlam = Complex::new(sa, T::zero()) / (z * two);
        let sq = crate::operator::sqrt_upper(z);
        let mut acc = self.sqrt_coef / (sq * two) + Complex::new(self.log_coef, T::zero()) / z + dlam / lam;
        for t in &self.terms {
            let zr = (-lz * t.rho()).exp();
            let l = T::int(t.l as i64);
            let gl = g.powu(t.l as u32);
            acc = acc + t.coef * (gl * zr) * (-(dlam / lam) * l - Complex::new(t.rho(), T::zero()) / z);
        }
        acc
    }
}
