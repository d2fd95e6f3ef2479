use num_complex::Complex64;
use num_traits::Zero;
use std::f64::consts::PI;

use super::structure::structure_report;
use super::{cos_pi, sin_pi, ContinuationConfig, ZetaMethod, ZetaValue};
use crate::asymcoeff::{assemble_l_asy, AsyExpansion};
use crate::error::{Error, Result};
use crate::operator::{Angle, CharFn, OperatorParams, Param, SeparatedBC};
use crate::quad::{gk15_nodes, TanhSinh};
use crate::specialfn::expint_scaled;

const NEAR_LEVELS: usize = 8;
const MAX_PANEL_DEPTH: u32 = 12;

#[derive(Clone, Copy, Debug)]
struct FarNode {
    u: f64,
    wk: f64,
    wg: f64,
    /// t (g - L') at t = e^u
    h: Complex64,
    /// t |g|, the scale of the cancellation in h
    scale: f64,
}

/// ζ(s) for μ = 0 from the contour representation along z = t e^{iΨ}:
/// P(s) [∫₀^a t^{-s} g + ∫_a^∞ t^{-s}(g - L') + ∫_a^∞ t^{-s} L'], with the last
/// integral done in closed form and the integrand samples cached across s.
#[derive(Clone, Debug)]
pub struct ContinuedZeta {
    pub params: OperatorParams,
    pub bc: SeparatedBC,
    pub config: ContinuationConfig,
    pub m0: u32,
    pub expansion: AsyExpansion<f64>,
    singular: Vec<f64>,
    near: Vec<Vec<(f64, f64, Complex64)>>,
    far: Vec<FarNode>,
    far_end: (f64, Complex64),
    sa: f64,
    eta: Complex64,
}

impl ContinuedZeta {
    pub fn new(params: &OperatorParams, bc: &SeparatedBC, config: &ContinuationConfig) -> Result<Self> {
        config.validate()?;
        let f = CharFn::<f64>::new(params, &(*bc).into())?;
        let m0 = f.m0()?;
        let expansion = assemble_l_asy::<f64>(params, bc, m0, config.n)?;
        let psi = config.psi;
        let rot = Complex64::from_polar(1.0, psi);
        let a = config.split;
        let g = |t: f64| -> Result<Complex64> { Ok(rot * f.dlog_reduced(rot * t)?) };
        let lp = |t: f64| rot * expansion.dlog(rot * t);

        let ts = TanhSinh::new(NEAR_LEVELS);
        let mut near = Vec::with_capacity(ts.levels.len());
        for nodes in &ts.levels {
            let mut lv = Vec::with_capacity(nodes.len());
            for &(tau, _, w) in nodes {
                lv.push((tau, w, g(a * tau)?));
            }
            near.push(lv);
        }

        let u0 = a.ln();
        let u1 = config.cutoff().ln();
        let h = |u: f64| -> Result<(Complex64, f64)> {
            let t = u.exp();
            let gv = g(t)?;
            Ok(((gv - lp(t)) * t, gv.norm() * t))
        };
        let refs = [0.99, -0.5 * config.n as f64];
        let tol = config.abs_tol;
        let panels = ((u1 - u0) / 0.5).ceil().max(1.0) as usize;
        let width = (u1 - u0) / panels as f64;
        let mut stack: Vec<(f64, f64, u32)> = (0..panels).rev().map(|k| (u0 + k as f64 * width, u0 + (k + 1) as f64 * width, 0)).collect();
        let mut far = Vec::new();
        while let Some((lo, hi, depth)) = stack.pop() {
            let nodes = gk15_nodes(lo, hi);
            let mut vals = Vec::with_capacity(nodes.len());
            for &(u, wk, wg) in &nodes {
                let (hv, scale) = h(u)?;
                vals.push(FarNode { u, wk, wg, h: hv, scale });
            }
            let ok = refs.iter().all(|&s| {
                let (mut k, mut gs, mut noise) = (Complex64::zero(), Complex64::zero(), 0.0);
                for n in &vals {
                    let e = (-s * n.u).exp();
                    k += n.h * e * n.wk;
                    gs += n.h * e * n.wg;
                    noise += n.scale * e * n.wk;
                }
                (k - gs).norm() <= (tol * (hi - lo) / (u1 - u0)).max(64.0 * f64::EPSILON * noise)
            });
            if ok || depth >= MAX_PANEL_DEPTH {
                far.extend(vals);
            } else {
                let mid = 0.5 * (lo + hi);
                stack.push((mid, hi, depth + 1));
                stack.push((lo, mid, depth + 1));
            }
        }
        let far_end = (u1, h(u1)?.0);

        let (ca, sa) = bc.alpha.cos_sin::<f64>();
        let eta = Complex64::new(sa * (0.577_215_664_901_532_9 - 2f64.ln()) - ca, -sa * (PI - psi) / 2.0) + sa / 2.0 * a.ln();

        let mut singular = vec![0.5];
        if !bc.alpha.is_zero() {
            singular.push(0.0);
        }
        for t in &expansion.terms {
            let r = t.rho();
            if t.l > 0 || r != r.round() {
                singular.push(-r);
            }
        }
        if let Ok(rep) = structure_report(params, bc, config.n + 2) {
            singular.extend(rep.locations());
        }
        singular.sort_by(f64::total_cmp);
        singular.dedup();

        Ok(ContinuedZeta { params: *params, bc: *bc, config: *config, m0, expansion, singular, near, far, far_end, sa, eta })
    }

    /// Real locations refused by [`Self::eval`].
    pub fn singular_points(&self) -> &[f64] {
        &self.singular
    }

    fn phase(&self, s: Complex64) -> Complex64 {
        (s * Complex64::new(0.0, PI - self.config.psi)).exp()
    }

    /// e^{is(π-Ψ)} sin(πs)/π.
    pub fn prefactor(&self, s: Complex64) -> Complex64 {
        self.phase(s) * sin_pi(s) / PI
    }

    /// P(s)/(s - s0), continued to s = s0 when s0 is an integer.
    fn p_over(&self, s: Complex64, s0: f64) -> Result<Complex64> {
        let d = s - s0;
        if d.is_zero() {
            if s0 == s0.round() {
                return Ok(self.phase(s) * cos_pi(s));
            }
            return Err(Error::Pole { function: "zeta", at: format!("s = {s0}") });
        }
        Ok(self.prefactor(s) / d)
    }

    /// e^{σb} E_k(σb), b = 2η/sin α, continued from σ > 0 with the cut along σ ≤ 0.
    fn scaled_e(&self, k: u32, sigma: Complex64) -> Result<Complex64> {
        let b = self.eta * (2.0 / self.sa);
        let mut c = sigma * b;
        let phi = sigma.arg() + b.arg();
        if c.im == 0.0 && c.re < 0.0 {
            c.im = f64::MIN_POSITIVE;
        }
        let v = expint_scaled(k, c)?;
        if phi > -PI {
            return Ok(v);
        }
        let mut fact = 1.0;
        for j in 1..k {
            fact *= j as f64;
        }
        Ok(v + Complex64::new(0.0, 2.0 * PI) * (-c).powu(k - 1) / fact * c.exp())
    }

    /// ∫_a^∞ t^{-σ-1} Λ(t)^{-k} dt along the ray.
    fn i_k(&self, k: u32, sigma: Complex64) -> Result<Complex64> {
        let a = self.config.split;
        let scale = (-sigma * a.ln()).exp();
        if k == 0 {
            return Ok(scale / sigma);
        }
        let pre = self.eta.powc(Complex64::new(1.0 - k as f64, 0.0)) * (2.0 / self.sa);
        Ok(scale * pre * self.scaled_e(k, sigma)?)
    }

    /// (∫₀^a t^{-s} g, error) from the cached tanh-sinh levels.
    fn near_integral(&self, s: Complex64) -> (Complex64, f64) {
        let mut acc = Complex64::zero();
        let mut prev = Complex64::zero();
        for (level, nodes) in self.near.iter().enumerate() {
            let part: Complex64 = nodes.iter().map(|&(tau, w, g)| g * (-s * tau.ln()).exp() * w).sum();
            prev = acc;
            acc = if level == 0 { part } else { acc * 0.5 + part };
        }
        let a = self.config.split;
        let scale = (s * -a.ln()).exp() * a;
        (acc * scale, (acc - prev).norm() * scale.norm())
    }

    /// (∫_a^T t^{-s}(g - L'), error, tail estimate beyond T).
    fn far_integral(&self, s: Complex64) -> (Complex64, f64, f64) {
        let (mut k, mut g) = (Complex64::zero(), Complex64::zero());
        for n in &self.far {
            let w = n.h * (-s * n.u).exp();
            k += w * n.wk;
            g += w * n.wg;
        }
        let (u1, h1) = self.far_end;
        let decay = (self.config.n as f64 + 1.0 + s.re).max(0.25);
        let tail = h1.norm() * (-s.re * u1).exp() / decay;
        (k, (k - g).norm(), tail)
    }

    /// Evaluates without the singularity guard (the strip -(N+1) < Re s < 1 is still enforced).
    pub fn eval_raw(&self, s: Complex64) -> Result<ZetaValue> {
        let nn = self.config.n as f64;
        if !(s.re > -(nn + 1.0) && s.re < 1.0) {
            return Err(Error::Domain(format!("continued representation needs -{} < Re s < 1, got {s}", nn + 1.0)));
        }
        let psi = self.config.psi;
        let a = self.config.split;
        let e = &self.expansion;
        let p = self.prefactor(s);
        let (near, near_err) = self.near_integral(s);
        let (far, far_err, tail) = self.far_integral(s);
        let mut total = p * (near + far);
        // √z term: -iπ/2 z^{1/2}
        let sq = e.sqrt_coef * Complex64::from_polar(1.0, psi / 2.0) * 0.5 * ((0.5 - s) * a.ln()).exp();
        total += self.p_over(s, 0.5)? * sq;
        total += self.p_over(s, 0.0)? * e.log_coef * (-s * a.ln()).exp();
        if !self.bc.alpha.is_zero() && !s.is_zero() {
            total += p * (-s * a.ln()).exp() * self.scaled_e(1, s)?;
        }
        for t in &e.terms {
            let rho = t.rho();
            let sigma = s + rho;
            let ph = Complex64::from_polar(1.0, -rho * psi);
            if t.l == 0 {
                total += t.coef * ph * (-rho) * self.p_over(s, -rho)? * (-sigma * a.ln()).exp();
                continue;
            }
            if sigma.is_zero() {
                if p.is_zero() {
                    continue;
                }
                return Err(Error::Pole { function: "zeta", at: format!("s = {}", -rho) });
            }
            let l = t.l as u32;
            let inner = self.i_k(l, sigma)? * (-rho) - self.i_k(l + 1, sigma)? * (t.l as f64 * self.sa / 2.0);
            total += p * t.coef * self.sa.powi(t.l as i32) * ph * inner;
        }
        let err = p.norm() * (near_err + far_err + tail) + 1e-14 * total.norm();
        Ok(ZetaValue { value: total, err_estimate: err, method: ZetaMethod::Continued })
    }

    /// ζ(s), refusing points within the guard distance of a catalogued singularity.
    pub fn eval(&self, s: Complex64) -> Result<ZetaValue> {
        for &x in &self.singular {
            let d = (s - x).norm();
            if d < self.config.guard {
                let kind = if x == 0.5 || self.is_pole(x) { "pole" } else { "branch point" };
                return Err(Error::Singularity { s: format!("{s}"), distance: d, kind: format!("{kind} at {x}") });
            }
        }
        self.eval_raw(s)
    }

    fn is_pole(&self, x: f64) -> bool {
        x != x.round() && self.expansion.terms.iter().any(|t| t.l == 0 && (t.rho() + x).abs() < 1e-12)
    }

    /// ζ(s) + s ln s, regular at s = 0 for every α.
    pub fn eval_regularized(&self, s: Complex64) -> Result<Complex64> {
        let v = self.eval_raw(s)?.value;
        if self.bc.alpha.is_zero() || s.is_zero() {
            return Ok(v);
        }
        Ok(v + s * s.ln())
    }
}

fn separated(alpha: f64, beta: f64) -> Result<SeparatedBC> {
    SeparatedBC::new(Angle::radians(alpha), Angle::radians(beta))
}

/// ζ(s) for μ = 0, ν = p/q and β ≠ 0.
pub fn zeta_continued(p: i64, q: i64, alpha: f64, beta: f64, s: Complex64, config: &ContinuationConfig) -> Result<ZetaValue> {
    if beta == 0.0 {
        return Err(Error::Domain("zeta_continued needs beta != 0; use zeta_continued_beta0".into()));
    }
    let params = OperatorParams::log_case(p, q)?;
    ContinuedZeta::new(&params, &separated(alpha, beta)?, config)?.eval(s)
}

/// ζ(s) for μ = 0, β = 0 and any ν ∈ (0, 1).
pub fn zeta_continued_beta0(nu: Param, alpha: f64, s: Complex64, config: &ContinuationConfig) -> Result<ZetaValue> {
    let params = OperatorParams::from_params(Param::ratio(0, 1)?, nu);
    ContinuedZeta::new(&params, &separated(alpha, 0.0)?, config)?.eval(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn friedrichs_matches_hurwitz() {
        let params = OperatorParams::new(0.0, 0.37).unwrap();
        let z = ContinuedZeta::new(&params, &SeparatedBC::friedrichs(), &ContinuationConfig::default()).unwrap();
        for s in [0.7, 0.3, 0.0, -0.4, -1.0, -1.7] {
            let v = z.eval(c(s)).unwrap();
            let want = crate::specialfn::hurwitz_zeta(c(2.0 * s), 0.685, 0).unwrap() * 2f64.powf(-2.0 * s);
            assert!((v.value - want).norm() < 1e-8, "s = {s}: {} vs {want}", v.value);
        }
    }

    #[test]
    fn overlap_with_direct_sums() {
        let cfg = ContinuationConfig::default();
        let s = c(0.75);
        let v = zeta_continued(1, 2, PI / 3.0, PI / 4.0, s, &cfg).unwrap();
        let p = OperatorParams::log_case(1, 2).unwrap();
        let bc = separated(PI / 3.0, PI / 4.0).unwrap();
        let d = super::super::zeta_direct(&p, &bc.into(), s, 120).unwrap();
        assert!((v.value - d.value).norm() < 1e-6, "{} vs {}", v.value, d.value);
        let v = zeta_continued_beta0(Param::ratio(1, 2).unwrap(), PI / 2.0, c(0.8), &cfg).unwrap();
        let p = OperatorParams::new(0.0, 0.5).unwrap();
        let d = super::super::zeta_direct(&p, &separated(PI / 2.0, 0.0).unwrap().into(), c(0.8), 120).unwrap();
        assert!((v.value - d.value).norm() < 1e-6);
    }

    #[test]
    fn psi_invariance_and_negative_integer() {
        let at = |psi: f64, s: f64| {
            let cfg = ContinuationConfig { psi, ..Default::default() };
            zeta_continued(1, 2, PI / 3.0, PI / 4.0, c(s), &cfg)
        };
        let (a, b) = (at(1.8, 0.3).unwrap(), at(2.6, 0.3).unwrap());
        assert!((a.value - b.value).norm() < 1e-6);
        // s = -1 is a logarithmic branch point for α ≠ 0, where ζ stays finite
        let p = OperatorParams::log_case(1, 2).unwrap();
        let z = ContinuedZeta::new(&p, &separated(PI / 3.0, PI / 4.0).unwrap(), &ContinuationConfig::default()).unwrap();
        assert!(z.eval(c(-1.0)).is_err());
        let v = z.eval_raw(c(-1.0)).unwrap();
        assert!(v.value.is_finite() && v.value.im.abs() < 1e-8);
    }

    #[test]
    fn half_pole_and_guard() {
        let cfg = ContinuationConfig::default();
        let h = 1e-4;
        let p = OperatorParams::log_case(1, 3).unwrap();
        let z = ContinuedZeta::new(&p, &separated(1.0, 2.0).unwrap(), &cfg).unwrap();
        let v = z.eval_raw(c(0.5 + h)).unwrap();
        assert!((v.value * h - 0.25).norm() < 1e-3);
        assert!(matches!(z.eval(c(0.5 + h)), Err(Error::Singularity { .. })));
        assert!(matches!(zeta_continued(1, 3, 1.0, 2.0, c(-1.0 / 3.0), &cfg), Err(Error::Singularity { .. })));
        assert!(zeta_continued(1, 3, 1.0, 0.0, c(0.2), &cfg).is_err());
    }
}
