use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::boundary::{sqrt_upper, Block, BlockKind, BoundaryBlocks, UNIFORM_RADIUS};
use super::params::{BoundaryCondition, OperatorParams};
use crate::error::{Error, Result};
use crate::real::Real;

/// Radius of the circle carrying the Cauchy integrals for the Taylor coefficients.
const TAYLOR_RADIUS: f64 = 4.0;

#[derive(Clone, Debug)]
struct Taylor<T> {
    coeffs: Vec<Complex<T>>,
    scale: T,
}

/// Order of vanishing of F at z = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroMode {
    pub m0: u32,
    /// |F(0)| (or |F'(0)|) sits within ten times the decision tolerance.
    pub indeterminate: bool,
}

/// F(z) = prefactor · (c0 + Σ blocks), with real block data.
#[derive(Clone, Debug)]
pub struct CharFn<T> {
    pub blocks: Vec<Block<T>>,
    pub c0: T,
    pub prefactor: Complex<T>,
    taylor: OnceLock<Taylor<T>>,
    zero_mode: OnceLock<ZeroMode>,
}

fn weighted<T: Real>(b: &Block<T>, w: T) -> Block<T> {
    Block { coef: b.coef * w, ..*b }
}

impl<T: Real> CharFn<T> {
    pub fn from_parts(blocks: Vec<Block<T>>, c0: T, prefactor: Complex<T>) -> Self {
        // merge linear blocks sharing the same b
        let mut merged: Vec<Block<T>> = Vec::new();
        for blk in blocks.into_iter().filter(|b| !b.coef.is_zero()) {
            if let BlockKind::Linear { k0, k1 } = blk.kind {
                if let Some(m) = merged.iter_mut().find(|m| m.b == blk.b && matches!(m.kind, BlockKind::Linear { .. })) {
                    if let BlockKind::Linear { k0: a0, k1: a1 } = m.kind {
                        let (n0, n1) = (a0 * m.coef + k0 * blk.coef, a1 * m.coef + k1 * blk.coef);
                        *m = Block::linear(T::one(), blk.b, n0, n1);
                    }
                    continue;
                }
            }
            merged.push(blk);
        }
        merged.retain(|b| match b.kind {
            BlockKind::Linear { k0, k1 } => !(k0.is_zero() && k1.is_zero()),
            BlockKind::Squared => true,
        });
        CharFn { blocks: merged, c0, prefactor, taylor: OnceLock::new(), zero_mode: OnceLock::new() }
    }

    pub fn new(params: &OperatorParams, bc: &BoundaryCondition) -> Result<Self> {
        let bb = BoundaryBlocks::<T>::new(params)?;
        match bc {
            BoundaryCondition::Separated(s) => {
                let (ca, sa) = s.alpha.cos_sin::<T>();
                let (cb, sb) = s.beta.cos_sin::<T>();
                let blocks = vec![
                    weighted(&bb.phi, ca * cb),
                    weighted(&bb.phi_prime, -ca * sb),
                    weighted(&bb.theta, -sa * cb),
                    weighted(&bb.theta_prime, sa * sb),
                ];
                Ok(Self::from_parts(blocks, T::zero(), Complex::one()))
            }
            BoundaryCondition::Coupled(c) => {
                let (cp, sp) = c.phi.cos_sin::<T>();
                let r = |i: usize, j: usize| T::lit(c.r[i][j]);
                let blocks = vec![
                    weighted(&bb.phi, r(1, 0)),
                    weighted(&bb.phi_prime, -r(0, 0)),
                    weighted(&bb.theta, -r(1, 1)),
                    weighted(&bb.theta_prime, r(0, 1)),
                ];
                Ok(Self::from_parts(blocks, cp * T::int(2), Complex::new(cp, sp)))
            }
        }
    }

    /// c0 + Σ blocks by the direct representation.
    pub fn reduced_direct(&self, z: Complex<T>) -> Result<Complex<T>> {
        let x = sqrt_upper(z) * T::lit(0.5);
        let mut s = Complex::new(self.c0, T::zero());
        for b in &self.blocks {
            s = s + b.eval_direct(x)?;
        }
        Ok(s)
    }

    /// e^{iπx}(c0 + Σ blocks) and its x-derivative.
    pub fn reduced_scaled(&self, x: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let i = Complex::<T>::i();
        let pi = T::PI();
        let e = (i * x * pi).exp();
        let mut s = e * self.c0;
        let mut ds = e * i * (pi * self.c0);
        for b in &self.blocks {
            let (f, df) = b.eval_scaled(x)?;
            s = s + f;
            ds = ds + df;
        }
        Ok((s, ds))
    }

    /// c0 + Σ blocks at any z.
    pub fn reduced(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() <= T::lit(UNIFORM_RADIUS) {
            return self.reduced_direct(z);
        }
        let x = sqrt_upper(z) * T::lit(0.5);
        let (s, _) = self.reduced_scaled(x)?;
        Ok(s * (-Complex::<T>::i() * x * T::PI()).exp())
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        Ok(self.reduced(z)? * self.prefactor)
    }

    /// Sign-faithful real value on the real axis (prefactor removed; for
    /// large negative λ the positive factor e^{-π|x|} is applied).
    pub fn real_value(&self, lambda: T) -> Result<T> {
        let z = Complex::new(lambda, T::zero());
        if lambda.abs() <= T::lit(UNIFORM_RADIUS) {
            return Ok(self.reduced_direct(z)?.re);
        }
        let x = sqrt_upper(z) * T::lit(0.5);
        let (s, _) = self.reduced_scaled(x)?;
        if lambda < T::zero() {
            Ok(s.re)
        } else {
            Ok((s * (-Complex::<T>::i() * x * T::PI()).exp()).re)
        }
    }

    fn taylor(&self) -> Result<&Taylor<T>> {
        if let Some(t) = self.taylor.get() {
            return Ok(t);
        }
        let eps = T::epsilon().to_f64().unwrap();
        let m: usize = if eps < 1e-20 { 192 } else if eps < 1e-10 { 96 } else { 48 };
        let k = m / 2;
        let rho = T::lit(TAYLOR_RADIUS);
        let mut samples = Vec::with_capacity(m);
        let mut scale = T::zero();
        for j in 0..m {
            let th = T::PI() * T::int(2 * j as i64) / T::int(m as i64);
            let z = Complex::from_polar(rho, th);
            let v = self.reduced(z)?;
            scale = scale.max(v.norm());
            samples.push((th, v));
        }
        let mut coeffs = Vec::with_capacity(k);
        let mut rk = T::one();
        for kk in 0..k {
            let mut s = Complex::<T>::zero();
            for &(th, v) in &samples {
                s = s + v * Complex::from_polar(T::one(), -th * T::int(kk as i64));
            }
            coeffs.push(s / (T::int(m as i64) * rk));
            rk = rk * rho;
        }
        let _ = self.taylor.set(Taylor { coeffs, scale });
        Ok(self.taylor.get().unwrap())
    }

    /// Taylor coefficients of c0 + Σ blocks about z = 0.
    pub fn taylor_coeffs(&self) -> Result<Vec<Complex<T>>> {
        Ok(self.taylor()?.coeffs.clone())
    }

    pub fn zero_mode(&self) -> Result<ZeroMode> {
        if let Some(z) = self.zero_mode.get() {
            return Ok(*z);
        }
        let t = self.taylor()?;
        let eps = T::epsilon().to_f64().unwrap();
        let tol = T::lit(eps.powf(0.65)) * t.scale;
        let f0 = self.reduced_direct(Complex::zero())?.norm();
        let f1 = t.coeffs[1].norm() * T::lit(TAYLOR_RADIUS);
        let f2 = t.coeffs[2].norm() * T::lit(TAYLOR_RADIUS * TAYLOR_RADIUS);
        let near = |v: T| v > tol && v <= tol * T::int(10);
        let zm = if f0 > tol {
            ZeroMode { m0: 0, indeterminate: near(f0) }
        } else if f1 > tol {
            ZeroMode { m0: 1, indeterminate: near(f1) }
        } else if f2 > tol {
            ZeroMode { m0: 2, indeterminate: near(f2) }
        } else {
            return Err(Error::Degenerate("characteristic function vanishes to third order at 0".into()));
        };
        let _ = self.zero_mode.set(zm);
        Ok(zm)
    }

    pub fn m0(&self) -> Result<u32> {
        Ok(self.zero_mode()?.m0)
    }

    /// lim_{z→0} z^{-m0} F(z).
    pub fn limit_constant(&self) -> Result<Complex<T>> {
        let m0 = self.m0()? as usize;
        let c = if m0 == 0 { self.reduced_direct(Complex::zero())? } else { self.taylor()?.coeffs[m0] };
        Ok(c * self.prefactor)
    }

    /// G(z) = z^{-m0}(c0 + Σ blocks) and G'(z) from the Taylor data, |z| ≤ 1.5.
    fn reduced_taylor(&self, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let m0 = self.m0()? as usize;
        let c = &self.taylor()?.coeffs;
        let mut g = Complex::<T>::zero();
        let mut dg = Complex::<T>::zero();
        for k in (m0..c.len()).rev() {
            dg = dg * z + g;
            g = g * z + c[k];
        }
        Ok((g, dg))
    }

    /// ln F(z); the imaginary part is determined only modulo 2π.
    pub fn ln(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() <= T::lit(UNIFORM_RADIUS) {
            return Ok(self.eval(z)?.ln());
        }
        let x = sqrt_upper(z) * T::lit(0.5);
        let (s, _) = self.reduced_scaled(x)?;
        Ok(self.prefactor.ln() + s.ln() - Complex::<T>::i() * x * T::PI())
    }

    /// ln(z^{-m0} F(z)) modulo 2πi.
    pub fn ln_reduced(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() <= T::lit(UNIFORM_RADIUS) {
            let (g, _) = self.reduced_taylor(z)?;
            return Ok(self.prefactor.ln() + g.ln());
        }
        Ok(self.ln(z)? - z.ln() * T::int(self.m0()? as i64))
    }

    /// F'(z)/F(z).
    pub fn dlog(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() <= T::lit(UNIFORM_RADIUS) {
            let (g, dg) = self.reduced_taylor(z)?;
            let m0 = self.m0()?;
            return Ok(dg / g + Complex::new(T::int(m0 as i64), T::zero()) / z);
        }
        let x = sqrt_upper(z) * T::lit(0.5);
        let (s, ds) = self.reduced_scaled(x)?;
        Ok((ds / s - Complex::<T>::i() * T::PI()) / (x * T::int(8)))
    }

    /// d/dz ln(z^{-m0} F(z)) = F'/F - m0/z, regular at z = 0.
    pub fn dlog_reduced(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() <= T::lit(UNIFORM_RADIUS) {
            let (g, dg) = self.reduced_taylor(z)?;
            return Ok(dg / g);
        }
        let m0 = T::int(self.m0()? as i64);
        Ok(self.dlog(z)? - Complex::new(m0, T::zero()) / z)
    }
}

pub fn characteristic<T: Real>(
    params: &OperatorParams,
    bc: &BoundaryCondition,
    z: Complex<T>,
) -> Result<Complex<T>> {
    CharFn::new(params, bc)?.eval(z)
}

pub fn zero_mode_multiplicity(params: &OperatorParams, bc: &BoundaryCondition) -> Result<ZeroMode> {
    CharFn::<f64>::new(params, bc)?.zero_mode()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::params::{Angle, CoupledBC, SeparatedBC};
    use crate::specialfn::gamma::{digamma, gamma_real, rgamma};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    fn sep(a: Angle, b: Angle) -> BoundaryCondition {
        SeparatedBC::new(a, b).unwrap().into()
    }

    /// The μ = 0 separated characteristic function written out term by term.
    fn log_case_explicit(nu: f64, alpha: f64, beta: f64, z: Complex64) -> Complex64 {
        let w = z.sqrt();
        let blk = |y: f64| {
            let p = (w + y * 2.0) * 0.5;
            let m = (-w + y * 2.0) * 0.5;
            let d = digamma(p).unwrap() + digamma(m).unwrap() + 2.0 * 0.5772156649015329;
            (d * (alpha.sin() / 2.0) - alpha.cos()) * rgamma(p) * rgamma(m)
        };
        -2.0 * gamma_real(1.0 + nu).unwrap() * beta.cos() * blk((1.0 + nu) / 2.0)
            - gamma_real(-nu).unwrap() * beta.sin() * blk((1.0 - nu) / 2.0)
    }

    #[test]
    fn log_case_matches_explicit_form() {
        let p = OperatorParams::new(0.0, 0.37).unwrap();
        let bc = sep(Angle::radians(1.1), Angle::radians(2.3));
        let f = CharFn::<f64>::new(&p, &bc).unwrap();
        for z in [c(0.5, 0.1), c(3.0, 0.0), c(17.0, -4.0), c(-9.0, 2.0), c(150.0, 30.0)] {
            let a = f.eval(z).unwrap();
            let b = log_case_explicit(0.37, 1.1, 2.3, z);
            assert!((a - b).norm() < 1e-10 * b.norm(), "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn friedrichs_zeros() {
        let p = OperatorParams::new(0.3, 0.7).unwrap();
        let f = CharFn::<f64>::new(&p, &sep(Angle::zero(), Angle::zero())).unwrap();
        for n in 0..5 {
            let l = (2.0 * n as f64 + 2.0).powi(2);
            assert!(f.real_value(l).unwrap().abs() < 1e-12, "{n}");
            assert!(f.real_value(l + 0.5).unwrap().abs() > 1e-6);
        }
    }

    #[test]
    fn coupled_symmetric_case() {
        let mu = 0.35;
        let p = OperatorParams::new(mu, mu).unwrap();
        let r = 2.0;
        let bc: BoundaryCondition = CoupledBC::new(Angle::half_pi(), [[r, 0.0], [0.0, 1.0 / r]]).unwrap().into();
        let f = CharFn::<f64>::new(&p, &bc).unwrap();
        let bb = BoundaryBlocks::<f64>::new(&p).unwrap();
        for z in [c(2.0, 0.5), c(9.0, 0.0), c(50.0, 10.0)] {
            let want = -Complex64::i() * (r + 1.0 / r) * bb.phi_prime.eval(z).unwrap();
            let got = f.eval(z).unwrap();
            assert!((got - want).norm() < 1e-11 * (1.0 + want.norm()), "{got} vs {want}");
        }
    }

    #[test]
    fn zero_modes() {
        let fr = zero_mode_multiplicity(&OperatorParams::new(0.2, 0.6).unwrap(), &sep(Angle::zero(), Angle::zero()));
        assert_eq!(fr.unwrap().m0, 0);
        let nn = OperatorParams::new(0.5, 0.5).unwrap();
        assert_eq!(zero_mode_multiplicity(&nn, &sep(Angle::half_pi(), Angle::half_pi())).unwrap().m0, 1);
        // μ + ν = 1 Neumann-type extension has the eigenvalue 0
        let p = OperatorParams::new(0.3, 0.7).unwrap();
        assert_eq!(zero_mode_multiplicity(&p, &sep(Angle::half_pi(), Angle::half_pi())).unwrap().m0, 1);
        // periodic coupling for the free operator: 0 is a simple eigenvalue, -1 of the
        // antiperiodic one is not
        let per: BoundaryCondition = CoupledBC::new(Angle::zero(), [[1.0, 0.0], [0.0, 1.0]]).unwrap().into();
        assert_eq!(zero_mode_multiplicity(&nn, &per).unwrap().m0, 1);
    }

    #[test]
    fn taylor_and_direct_agree_near_zero() {
        let p = OperatorParams::new(0.0, 0.5).unwrap();
        let f = CharFn::<f64>::new(&p, &sep(Angle::radians(0.7), Angle::radians(2.0))).unwrap();
        let coeffs = f.taylor_coeffs().unwrap();
        for z in [c(0.3, 0.2), c(-1.2, 0.4), c(0.0, 1.4)] {
            let mut s = Complex64::new(0.0, 0.0);
            for cf in coeffs.iter().rev() {
                s = s * z + cf;
            }
            let d = f.reduced_direct(z).unwrap();
            assert!((s - d).norm() < 1e-13 * (1.0 + d.norm()));
        }
        // dlog from both sides of the switch radius
        for z in [c(1.49, 0.1), c(1.52, 0.1)] {
            let h = 1e-6;
            let fd = (f.ln(z + h).unwrap() - f.ln(z - h).unwrap()) / (2.0 * h);
            let dl = f.dlog(z).unwrap();
            assert!((fd - dl).norm() < 1e-7 * (1.0 + dl.norm()), "{z}: {fd} {dl}");
        }
    }

    #[test]
    fn real_on_real_axis() {
        let p = OperatorParams::new(0.0, 1.0 / 3.0).unwrap();
        let f = CharFn::<f64>::new(&p, &sep(Angle::radians(1.0), Angle::radians(2.0))).unwrap();
        for l in [-40.0, -3.0, 0.7, 5.0, 77.0, 1000.0] {
            let v = f.eval(c(l, 0.0)).unwrap();
            assert!(v.im.abs() < 1e-10 * v.norm().max(1e-300), "{l}: {v}");
        }
        let _ = PI;
    }
}
