//! Eigenvalues as real zeros of the characteristic function.

use crate::error::{Error, Result};
use num_complex::Complex64;

use crate::operator::{Angle, BoundaryCondition, CharFn, OperatorParams};
use crate::specialfn::ln_gamma;

/// Default lower end of the scan for negative eigenvalues.
pub const DEFAULT_FLOOR: f64 = -2500.0;
/// Grid step in √|λ|.
pub const SCAN_STEP: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    RootFind,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::RootFind => "root-find",
            Method::Oracle => "oracle",
        }
    }
}

/// Increasing eigenvalues; a double eigenvalue is listed once with multiplicity 2.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub params: OperatorParams,
    pub bc: BoundaryCondition,
    pub method: Method,
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<u32>,
    /// |F(λ)| relative to the local scale of F, one per eigenvalue.
    pub residuals: Vec<f64>,
}

impl Spectrum {
    /// Eigenvalues repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&l, &m)| std::iter::repeat_n(l, m as usize))
            .collect()
    }
}

/// The shift c in λ_n = (2n + c)², n ≥ 0, for families whose characteristic function
/// is a single Gamma-type boundary value.
pub fn closed_form_shift(params: &OperatorParams, bc: &BoundaryCondition) -> Option<f64> {
    let (mu, nu) = (params.mu.value, params.nu.value);
    let mz = params.mu.is_zero();
    let nz = params.nu.is_zero();
    match bc {
        BoundaryCondition::Separated(s) => {
            let (a0, ah) = (s.alpha.is_zero(), s.alpha.is_half_pi());
            let (b0, bh) = (s.beta.is_zero(), s.beta.is_half_pi());
            if params.mu == params.nu && !mz && ((a0 && bh) || (ah && b0)) {
                return Some(1.0);
            }
            match (a0, ah, b0, bh) {
                (true, _, true, _) => Some(1.0 + mu + nu),
                (true, _, _, true) if !nz => Some(1.0 + mu - nu),
                (_, true, true, _) if !mz => Some(1.0 - mu + nu),
                (_, true, _, true) if !mz && !nz => Some(1.0 - mu - nu),
                _ => None,
            }
        }
        BoundaryCondition::Coupled(c) => {
            let diag = c.r[0][1] == 0.0 && c.r[1][0] == 0.0;
            if params.mu == params.nu && !mz && diag && c.phi.is_half_pi() {
                Some(1.0)
            } else {
                None
            }
        }
    }
}

/// The first `count` eigenvalues of a closed-form family.
pub fn closed_form_spectrum(params: &OperatorParams, bc: &BoundaryCondition, count: usize) -> Result<Spectrum> {
    let c = closed_form_shift(params, bc)
        .ok_or_else(|| Error::NotClosedForm(format!("no closed-form spectrum for {params:?} with {bc:?}")))?;
    let mut ev: Vec<f64> = (0..count).map(|n| (2.0 * n as f64 + c).powi(2)).collect();
    ev.sort_by(f64::total_cmp);
    Ok(Spectrum {
        params: *params,
        bc: *bc,
        method: Method::ClosedForm,
        multiplicities: vec![1; ev.len()],
        residuals: vec![0.0; ev.len()],
        eigenvalues: ev,
    })
}

/// Initial guess for the n-th eigenvalue (n ≥ 0).
pub fn eigenvalue_asymptotic_seed(params: &OperatorParams, bc: &BoundaryCondition, n: usize) -> f64 {
    if let Some(c) = closed_form_shift(params, bc) {
        let mut ev: Vec<f64> = (0..=n + 1).map(|k| (2.0 * k as f64 + c).powi(2)).collect();
        ev.sort_by(f64::total_cmp);
        return ev[n];
    }
    let (mu, nu) = (params.mu.value, params.nu.value);
    match bc {
        BoundaryCondition::Separated(s) => {
            let sm = if s.alpha.is_zero() { mu } else { -mu };
            let sn = if s.beta.is_zero() { nu } else { -nu };
            let c = 1.0 + sm + sn;
            // a generic extension may have one eigenvalue below the Friedrichs bottom
            let shift = if s.alpha.is_zero() && s.beta.is_zero() { 0.0 } else { 1.0 };
            let k = (2.0 * n as f64 + c - 2.0 * shift).max(0.0);
            k * k
        }
        BoundaryCondition::Coupled(_) => (n as f64).powi(2),
    }
}

struct Scanner<'a> {
    f: &'a CharFn<f64>,
    m0: u32,
}

impl Scanner<'_> {
    /// F(λ)/λ^{m0}, sign-faithful, finite at nonzero λ.
    fn g(&self, lambda: f64) -> Result<f64> {
        let v = self.f.real_value(lambda)?;
        Ok(if self.m0 == 0 { v } else { v / lambda.powi(self.m0 as i32) })
    }

    /// Zero of g in [a, b] with g(a) g(b) < 0 (Illinois false position).
    fn refine(&self, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> Result<f64> {
        let mut side = 0i8;
        for _ in 0..200 {
            let tol = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-3);
            if (b - a).abs() <= tol {
                break;
            }
            let mut c = (a * fb - b * fa) / (fb - fa);
            if !(c > a.min(b) && c < a.max(b)) {
                c = 0.5 * (a + b);
            }
            let fc = self.g(c)?;
            if fc == 0.0 {
                return Ok(c);
            }
            if fc.signum() == fb.signum() {
                b = c;
                fb = fc;
                if side == -1 {
                    fa *= 0.5;
                }
                side = -1;
            } else {
                a = c;
                fa = fc;
                if side == 1 {
                    fb *= 0.5;
                }
                side = 1;
            }
        }
        Ok(if fa.abs() < fb.abs() { a } else { b })
    }

    /// Minimizer of |g| in [a, c] (golden section), for tangential zeros.
    fn minimize(&self, mut a: f64, mut c: f64) -> Result<(f64, f64)> {
        let r = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = c - r * (c - a);
        let mut x2 = a + r * (c - a);
        let mut f1 = self.g(x1)?.abs();
        let mut f2 = self.g(x2)?.abs();
        while (c - a).abs() > 1e-9 * c.abs().max(1.0) {
            if f1 < f2 {
                c = x2;
                x2 = x1;
                f2 = f1;
                x1 = c - r * (c - a);
                f1 = self.g(x1)?.abs();
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + r * (c - a);
                f2 = self.g(x2)?.abs();
            }
        }
        let (x, v) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
        self.polish_double(x, v)
    }

    /// Moves a tangential zero to the nearby zero of g' (five-point differences).
    fn polish_double(&self, mut x: f64, v: f64) -> Result<(f64, f64)> {
        for _ in 0..3 {
            let h = 2e-3 * x.abs().max(1.0);
            let g = |k: f64| self.g(x + k * h);
            let (m2, m1, g0, p1, p2) = (g(-2.0)?, g(-1.0)?, g(0.0)?, g(1.0)?, g(2.0)?);
            let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
            let d2 = (-p2 + 16.0 * p1 - 30.0 * g0 + 16.0 * m1 - m2) / (12.0 * h * h);
            if d2 == 0.0 {
                break;
            }
            let step = d1 / d2;
            if step.abs() > h {
                break;
            }
            x -= step;
        }
        let vn = self.g(x)?.abs();
        Ok((x, vn.min(v.max(vn))))
    }
}

fn grid(lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    let sq = |v: f64| v.abs().sqrt();
    if lo < 0.0 {
        let mut k = (sq(lo) / SCAN_STEP).ceil() as i64;
        pts.push(lo);
        while k > 0 {
            let v = -(k as f64 * SCAN_STEP).powi(2);
            if v > lo && v < hi {
                pts.push(v);
            }
            k -= 1;
        }
    }
    let k0 = if lo > 0.0 { (sq(lo) / SCAN_STEP).floor() as i64 } else { 0 };
    let k1 = (sq(hi.max(0.0)) / SCAN_STEP).ceil() as i64;
    if lo <= 0.0 && hi >= 0.0 {
        pts.push(0.0);
    }
    for k in k0.max(1)..=k1 {
        let v = (k as f64 * SCAN_STEP).powi(2);
        if v > lo && v < hi {
            pts.push(v);
        }
    }
    pts.push(hi);
    if lo > 0.0 {
        pts.insert(0, lo);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// All eigenvalues in [lo, hi].
pub fn find_eigenvalues(params: &OperatorParams, bc: &BoundaryCondition, lo: f64, hi: f64) -> Result<Spectrum> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("invalid window [{lo}, {hi}]")));
    }
    let f = CharFn::<f64>::new(params, bc)?;
    let m0 = f.m0()?;
    let sc = Scanner { f: &f, m0 };
    let mut pts = grid(lo, hi);
    let has_zero = m0 > 0 && lo <= 0.0 && hi >= 0.0;
    if m0 > 0 {
        pts.retain(|&v| v != 0.0);
    }
    let vals: Vec<f64> = pts.iter().map(|&v| sc.g(v)).collect::<Result<_>>()?;
    let mut found: Vec<(f64, u32, f64)> = Vec::new();
    if has_zero {
        found.push((0.0, m0, 0.0));
    }
    let scale_at = |i: usize| {
        let a = i.saturating_sub(2);
        let b = (i + 3).min(vals.len());
        vals[a..b].iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE)
    };
    let mut suspicious = Vec::new();
    for i in 0..pts.len() - 1 {
        let (a, b, fa, fb) = (pts[i], pts[i + 1], vals[i], vals[i + 1]);
        if fa == 0.0 {
            found.push((a, 1, 0.0));
            continue;
        }
        if fa.signum() != fb.signum() && fb != 0.0 {
            let r = sc.refine(a, b, fa, fb)?;
            let scale = scale_at(i);
            let res = sc.g(r)?.abs() / scale;
            let h = 1e-4 * (b - a);
            let d = (sc.g(r + h)? - sc.g(r - h)?) / (2.0 * h);
            let mult = if d.abs() * (b - a) < 1e-6 * scale { 2 } else { 1 };
            found.push((r, mult, res));
        } else if i + 2 < pts.len() {
            // |g| dips at an interior grid point without a sign change
            let fc = vals[i + 2];
            if fb.signum() == fa.signum() && fc.signum() == fb.signum() && fb.abs() < fa.abs() && fb.abs() < fc.abs() {
                let (x, v) = sc.minimize(a, pts[i + 2])?;
                let scale = scale_at(i + 1);
                if v < 1e-8 * scale {
                    found.push((x, 2, v / scale));
                } else if v < 1e-3 * scale {
                    suspicious.push((a, pts[i + 2]));
                }
            }
        }
    }
    suspicious.retain(|&(a, b)| found.iter().all(|&(l, _, _)| l < a || l > b));
    if !suspicious.is_empty() {
        return Err(Error::Bracketing { intervals: suspicious });
    }
    if hi == pts[pts.len() - 1] && vals[vals.len() - 1] == 0.0 {
        found.push((hi, 1, 0.0));
    }
    found.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut merged: Vec<(f64, u32, f64)> = Vec::with_capacity(found.len());
    for x in found {
        match merged.last_mut() {
            Some(y) if (x.0 - y.0).abs() <= 1e-6 * x.0.abs().max(1.0) => {
                y.0 = 0.5 * (x.0 + y.0);
                y.1 = (y.1 + x.1).min(2);
                y.2 = y.2.max(x.2);
            }
            _ => merged.push(x),
        }
    }
    for y in merged.iter_mut().filter(|y| y.1 == 2) {
        let v = sc.g(y.0)?.abs();
        y.0 = sc.polish_double(y.0, v)?.0;
    }
    let found = merged;
    Ok(Spectrum {
        params: *params,
        bc: *bc,
        method: Method::RootFind,
        eigenvalues: found.iter().map(|x| x.0).collect(),
        multiplicities: found.iter().map(|x| x.1).collect(),
        residuals: found.iter().map(|x| x.2).collect(),
    })
}

/// Largest bound-state scale accepted by [`bound_state_floor`].
pub const MAX_BOUND_KAPPA: f64 = 3000.0;

/// A scan floor below every negative eigenvalue of a separated extension.
///
/// Near an endpoint with index m and angle θ the operator is a Bessel operator, whose
/// decaying solution √x K_m(κx) meets the condition when
/// κ = 2 (cot θ Γ(m) / (2 Γ(1-m)))^{1/(2m)}, or κ = 2 e^{cot θ - γ} for m = 0.
pub fn bound_state_floor(params: &OperatorParams, bc: &BoundaryCondition) -> Result<f64> {
    let BoundaryCondition::Separated(s) = bc else {
        return Ok(DEFAULT_FLOOR);
    };
    let kappa = |m: f64, a: &Angle| -> Result<f64> {
        if a.is_zero() || a.is_half_pi() {
            return Ok(0.0);
        }
        let cot = 1.0 / a.value.tan();
        if m == 0.0 {
            return Ok(2.0 * (cot - 0.577_215_664_901_532_9).exp());
        }
        if cot <= 0.0 {
            return Ok(0.0);
        }
        let lg = |x: f64| -> Result<f64> { Ok(ln_gamma(Complex64::new(x, 0.0))?.re) };
        Ok(2.0 * ((cot.ln() + lg(m)? - lg(1.0 - m)? - 2f64.ln()) / (2.0 * m)).exp())
    };
    let k = kappa(params.mu.value, &s.alpha)?.max(kappa(params.nu.value, &s.beta)?);
    if !(k <= MAX_BOUND_KAPPA) {
        return Err(Error::Unsupported(format!("a bound state near lambda = {:.3e} lies beyond the scan range", -k * k)));
    }
    Ok(DEFAULT_FLOOR.min(-(1.5 * k).powi(2) - 100.0))
}

/// The lowest `count` eigenvalues (with multiplicity) above `floor`, lowered to
/// [`bound_state_floor`] when that lies deeper.
pub fn lowest_eigenvalues(params: &OperatorParams, bc: &BoundaryCondition, count: usize, floor: f64) -> Result<Spectrum> {
    let floor = floor.min(bound_state_floor(params, bc)?);
    let mut hi = eigenvalue_asymptotic_seed(params, bc, count + 1).max(16.0) * 1.5 + 10.0;
    for _ in 0..12 {
        let mut s = find_eigenvalues(params, bc, floor, hi)?;
        if s.expanded().len() >= count {
            let mut n = 0;
            let mut keep = 0;
            while n < count {
                n += s.multiplicities[keep] as usize;
                keep += 1;
            }
            s.eigenvalues.truncate(keep);
            s.multiplicities.truncate(keep);
            s.residuals.truncate(keep);
            return Ok(s);
        }
        hi *= 2.0;
    }
    Err(Error::NonConvergence(format!("fewer than {count} eigenvalues below {hi}")))
}

/// Convenience for separated conditions given as angles.
pub fn separated(alpha: Angle, beta: Angle) -> Result<BoundaryCondition> {
    Ok(crate::operator::SeparatedBC::new(alpha, beta)?.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::CoupledBC;

    fn p(mu: f64, nu: f64) -> OperatorParams {
        OperatorParams::new(mu, nu).unwrap()
    }

    #[test]
    fn closed_forms() {
        let fr = separated(Angle::zero(), Angle::zero()).unwrap();
        let s = closed_form_spectrum(&p(0.3, 0.7), &fr, 3).unwrap();
        assert_eq!(s.eigenvalues, vec![4.0, 16.0, 36.0]);
        let dn = separated(Angle::zero(), Angle::half_pi()).unwrap();
        let s = closed_form_spectrum(&p(0.4, 0.4), &dn, 4).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 9.0, 25.0, 49.0]);
        let nn = separated(Angle::half_pi(), Angle::half_pi()).unwrap();
        let s = closed_form_spectrum(&p(0.25, 0.75), &nn, 3).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0, 4.0, 16.0]);
        assert!(closed_form_spectrum(&p(0.0, 0.5), &nn, 3).is_err());
        assert!(closed_form_spectrum(&p(0.3, 0.5), &separated(Angle::radians(1.0), Angle::zero()).unwrap(), 3).is_err());
    }

    #[test]
    fn root_finder_reproduces_closed_forms() {
        for (mu, nu, a, b) in [
            (0.3, 0.7, Angle::zero(), Angle::zero()),
            (0.1, 0.9, Angle::half_pi(), Angle::half_pi()),
            (0.6, 0.2, Angle::zero(), Angle::half_pi()),
            (0.6, 0.0, Angle::half_pi(), Angle::zero()),
            (0.8, 0.5, Angle::half_pi(), Angle::half_pi()),
        ] {
            let bc = separated(a, b).unwrap();
            let want = closed_form_spectrum(&p(mu, nu), &bc, 12).unwrap();
            let got = lowest_eigenvalues(&p(mu, nu), &bc, 12, DEFAULT_FLOOR).unwrap();
            for (x, y) in want.expanded().iter().zip(got.expanded()) {
                assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0), "{mu} {nu} {a} {b}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn double_eigenvalues_are_detected() {
        // periodic conditions for the free problem on (0, π/2): λ = (4n)², double for n ≥ 1
        let bc: BoundaryCondition = CoupledBC::new(Angle::zero(), [[1.0, 0.0], [0.0, 1.0]]).unwrap().into();
        let s = find_eigenvalues(&p(0.5, 0.5), &bc, -5.0, 150.0).unwrap();
        assert_eq!(s.multiplicities, vec![1, 2, 2, 2], "{s:?}");
        for (k, l) in s.eigenvalues.iter().enumerate() {
            assert!((l - (4.0 * k as f64).powi(2)).abs() < 1e-9 * l.max(1.0), "{l}");
        }
        // antiperiodic: λ = (4n+2)², all double
        let bc: BoundaryCondition = CoupledBC::new(Angle::zero(), [[-1.0, 0.0], [0.0, -1.0]]).unwrap().into();
        let s = find_eigenvalues(&p(0.5, 0.5), &bc, -5.0, 120.0).unwrap();
        assert_eq!(s.multiplicities, vec![2, 2, 2], "{s:?}");
        assert!((s.eigenvalues[2] - 100.0).abs() < 1e-9 * 100.0);
    }

    #[test]
    fn weyl_counting() {
        let bc = separated(Angle::radians(1.0), Angle::radians(2.0)).unwrap();
        let s = find_eigenvalues(&p(0.0, 1.0 / 3.0), &bc, DEFAULT_FLOOR, 1e4).unwrap();
        let n = s.expanded().len() as f64;
        assert!((n - 0.5 * 1e4f64.sqrt()).abs() <= 2.0, "{n}");
        for (k, l) in s.eigenvalues.iter().enumerate().take(8) {
            let seed = eigenvalue_asymptotic_seed(&p(0.0, 1.0 / 3.0), &bc, k);
            let spacing = 4.0 * l.abs().sqrt() + 4.0;
            assert!((seed - l).abs() < spacing, "{k}: {seed} vs {l}");
        }
    }

    #[test]
    fn deep_bound_state_below_the_default_floor() {
        let params = p(0.0, 0.25);
        let bc = separated(Angle::radians(0.2), Angle::radians(2.5)).unwrap();
        let s = lowest_eigenvalues(&params, &bc, 2, DEFAULT_FLOOR).unwrap().expanded();
        // local Bessel estimate -(2 e^{cot α - γ})²
        let est = -(2.0 * (1.0 / 0.2f64.tan() - 0.5772156649015329).exp()).powi(2);
        assert!((s[0] - est).abs() < 1e-3 * est.abs(), "{} vs {est}", s[0]);
        assert!(s[1] > 0.0);
        assert!(bound_state_floor(&params, &separated(Angle::radians(0.01), Angle::zero()).unwrap()).is_err());
    }
}
