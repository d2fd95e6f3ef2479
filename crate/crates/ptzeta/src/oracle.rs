//! Independent finite-difference eigenvalue solver for separated extensions.

use std::f64::consts::FRAC_PI_2;

use crate::eigen::{Method, Spectrum};
use crate::error::{Error, Result};
use crate::operator::{Angle, OperatorParams, SeparatedBC};

/// Largest μ, ν accepted before the two endpoint behaviors become numerically inseparable.
pub const MAX_INDEX: f64 = 0.95;
pub const MAX_COUNT: usize = 20;
pub const MIN_GRID: usize = 500;

/// One endpoint: local index m, condition angle, and the constant part V0 of the potential there.
#[derive(Clone, Copy, Debug)]
struct End {
    m: f64,
    sin: f64,
    cos: f64,
    v0: f64,
}

impl End {
    fn new(m: f64, angle: &Angle, other: f64) -> Self {
        let (sin, cos) = if angle.is_zero() {
            (0.0, 1.0)
        } else if angle.is_half_pi() {
            (1.0, 0.0)
        } else {
            (angle.value.sin(), angle.value.cos())
        };
        End { m, sin, cos, v0: (m * m - 0.25) / 3.0 + (other * other - 0.25) }
    }

    /// sin θ u1(y) - cos θ u2(y) with the Frobenius solutions carried to relative order y².
    fn local(&self, y: f64, lambda: f64) -> f64 {
        let m = self.m;
        let w = self.v0 - lambda;
        let (u1, u2) = if m == 0.0 {
            let a = w / 4.0;
            (-y.sqrt() * (y.ln() * (1.0 + a * y * y) - a * y * y), y.sqrt() * (1.0 + a * y * y))
        } else {
            let (rm, rp) = (0.5 - m, 0.5 + m);
            let am = w / (4.0 * rm + 2.0);
            let ap = w / (4.0 * rp + 2.0);
            (y.powf(rm) * (1.0 + am * y * y) / (2.0 * m), y.powf(rp) * (1.0 + ap * y * y))
        };
        self.sin * u1 - self.cos * u2
    }

    fn ratio(&self, y0: f64, y1: f64, lambda: f64) -> f64 {
        self.local(y0, lambda) / self.local(y1, lambda)
    }
}

/// -u'' + V u = λ u on [ε, π/2 - ε] in the Liouville variable t, x = (π/2)/(1 + e^{-t}),
/// u = x'(t)^{1/2} w: -w'' + Q w = λ x'² w with Q = V x'² + 1/4. Second-order central
/// differences on a uniform t grid; the end values are eliminated through the local
/// solutions selected by (α, β).
#[derive(Clone, Debug)]
pub struct DiscretizedProblem {
    pub params: OperatorParams,
    pub bc: SeparatedBC,
    pub epsilon: f64,
    pub n: usize,
    /// Step in t.
    pub h: f64,
    /// Interior nodes x_1, ..., x_{n-1}.
    pub x: Vec<f64>,
    /// V at the interior nodes.
    pub potential: Vec<f64>,
    q: Vec<f64>,
    rho: Vec<f64>,
    /// (x, π/2 - x, x') at the two nodes next to each end: [x_0, x_1, x_{n-1}, x_n].
    ends: [(f64, f64, f64); 4],
    left: End,
    right: End,
}

fn pt_potential(mu: f64, nu: f64, x: f64, y: f64) -> f64 {
    // y = π/2 - x, passed separately to keep cos x accurate near π/2
    let (s, c) = (x.sin(), y.sin());
    (mu * mu - 0.25) / (s * s) + (nu * nu - 0.25) / (c * c)
}

/// (x, π/2 - x, dx/dt) at t.
fn chart(t: f64) -> (f64, f64, f64) {
    let sig = 1.0 / (1.0 + (-t).exp());
    let cosig = 1.0 / (1.0 + t.exp());
    let x = FRAC_PI_2 * sig;
    let y = FRAC_PI_2 * cosig;
    (x, y, FRAC_PI_2 * sig * cosig)
}

impl DiscretizedProblem {
    pub fn new(params: &OperatorParams, bc: &SeparatedBC, n: usize, epsilon: f64) -> Result<Self> {
        let (mu, nu) = (params.mu.value, params.nu.value);
        if mu > MAX_INDEX || nu > MAX_INDEX {
            return Err(Error::Domain(format!("ill-conditioned: mu = {mu}, nu = {nu} too close to 1 (limit {MAX_INDEX})")));
        }
        if !(epsilon > 0.0 && epsilon <= 0.05) {
            return Err(Error::Domain(format!("epsilon = {epsilon} outside (0, 0.05]")));
        }
        if n < MIN_GRID {
            return Err(Error::Domain(format!("grid size {n} below {MIN_GRID}")));
        }
        let t_end = (FRAC_PI_2 / epsilon - 1.0).ln();
        let h = 2.0 * t_end / n as f64;
        let t = |i: usize| -t_end + i as f64 * h;
        let mut x = Vec::with_capacity(n - 1);
        let mut potential = Vec::with_capacity(n - 1);
        let mut q = Vec::with_capacity(n - 1);
        let mut rho = Vec::with_capacity(n - 1);
        for i in 1..n {
            let (xi, yi, dx) = chart(t(i));
            let v = pt_potential(mu, nu, xi, yi);
            x.push(xi);
            potential.push(v);
            q.push(v * dx * dx + 0.25);
            rho.push(dx * dx);
        }
        Ok(DiscretizedProblem {
            params: *params,
            bc: *bc,
            epsilon,
            n,
            h,
            x,
            potential,
            q,
            rho,
            ends: [chart(t(0)), chart(t(1)), chart(t(n - 1)), chart(t(n))],
            left: End::new(mu, &bc.alpha, nu),
            right: End::new(nu, &bc.beta, mu),
        })
    }

    /// w_0/w_1 and w_n/w_{n-1} from the local solutions at `lambda`.
    fn end_ratios(&self, lambda: f64) -> (f64, f64) {
        let [(x0, _, d0), (x1, _, d1), (_, y1, e1), (_, y0, e0)] = self.ends;
        let rl = self.left.ratio(x0, x1, lambda) * (d1 / d0).sqrt();
        let rr = self.right.ratio(y0, y1, lambda) * (e1 / e0).sqrt();
        (rl, rr)
    }

    /// Diagonal of A with the end rows frozen at `lambda`; the pencil is A - λ diag(ρ).
    fn diagonal(&self, lambda: f64) -> Vec<f64> {
        let k = 1.0 / (self.h * self.h);
        let mut d: Vec<f64> = self.q.iter().map(|v| v + 2.0 * k).collect();
        let (rl, rr) = self.end_ratios(lambda);
        let last = d.len() - 1;
        d[0] -= k * rl;
        d[last] -= k * rr;
        d
    }

    /// Number of pencil eigenvalues below z (inertia of the LDLᵀ pivots of A - z ρ).
    fn count_below(&self, d: &[f64], z: f64) -> usize {
        let e2 = (1.0 / (self.h * self.h)).powi(2);
        let mut p = 1.0;
        let mut count = 0;
        for (i, (di, ri)) in d.iter().zip(&self.rho).enumerate() {
            let a = di - z * ri;
            p = if i == 0 { a } else { a - e2 / p };
            if p == 0.0 {
                p = -f64::EPSILON * (a.abs() + 1.0);
            }
            if p < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn bisect(&self, d: &[f64], j: usize) -> f64 {
        let k = 1.0 / (self.h * self.h);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (di, ri) in d.iter().zip(&self.rho) {
            lo = lo.min((di - 2.0 * k) / ri);
            hi = hi.max((di + 2.0 * k) / ri);
        }
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if self.count_below(d, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The j-th eigenvalue (0-based), iterating the λ-dependent end rows to a fixed point.
    pub fn eigenvalue(&self, j: usize) -> Result<f64> {
        let mut lambda = self.bisect(&self.diagonal(0.0), j);
        let mut prev = f64::INFINITY;
        for _ in 0..60 {
            let next = self.bisect(&self.diagonal(lambda), j);
            let step = (next - lambda).abs();
            lambda = next;
            let scale = 1.0 + next.abs();
            // a stalled step at the level of the bisection resolution also ends the iteration
            if step <= 1e-11 * scale || (step >= 0.5 * prev && step <= 1e-8 * scale) {
                return Ok(lambda);
            }
            prev = step;
        }
        Err(Error::NonConvergence(format!("end-row fixed point for eigenvalue {j}")))
    }
}

/// An ε for which the local solutions have no zero near either end on the n and 2n grids.
fn usable_epsilon(params: &OperatorParams, bc: &SeparatedBC, n: usize, epsilon: f64) -> Result<f64> {
    let mut e = epsilon;
    for _ in 0..20 {
        let ok = [n, 2 * n].iter().all(|&m| {
            DiscretizedProblem::new(params, bc, m, e).is_ok_and(|p| {
                let (rl, rr) = p.end_ratios(0.0);
                [rl, rr].iter().all(|r| *r > 0.25 && *r < 4.0)
            })
        });
        if ok {
            return Ok(e);
        }
        e *= 0.8;
    }
    Err(Error::Domain(format!("no usable truncation point below epsilon = {epsilon}")))
}

/// Largest |λ_0| ε² kept: the local solutions at the ends are accurate to O((λ ε²)²).
const DEPTH_LIMIT: f64 = 1e-4;

/// Grid size and ε, with ε lowered (and the grid lengthened at fixed step) when the lowest
/// eigenvalue is a bound state deep enough to feel the truncation.
fn setup(params: &OperatorParams, bc: &SeparatedBC, grid_size: usize, epsilon: f64) -> Result<(usize, f64)> {
    if !(epsilon > 0.0 && epsilon <= 0.05) {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside (0, 0.05]")));
    }
    let t_range = |e: f64| (FRAC_PI_2 / e - 1.0).ln();
    let mut n = grid_size;
    let mut e = usable_epsilon(params, bc, n, epsilon)?;
    for _ in 0..4 {
        let l0 = DiscretizedProblem::new(params, bc, n, e)?.eigenvalue(0)?;
        if l0.abs() * e * e <= DEPTH_LIMIT {
            break;
        }
        let target = 0.5 * (DEPTH_LIMIT / l0.abs()).sqrt();
        n = (n as f64 * t_range(target) / t_range(e)).ceil() as usize;
        e = usable_epsilon(params, bc, n, target)?;
    }
    Ok((n, e))
}

/// Eigenvalue j on grids n, 2n and 4n.
pub fn grid_sequence(params: &OperatorParams, bc: &SeparatedBC, j: usize, grid_size: usize, epsilon: f64) -> Result<[f64; 3]> {
    let (grid_size, e) = setup(params, bc, grid_size, epsilon)?;
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = DiscretizedProblem::new(params, bc, grid_size << k, e)?.eigenvalue(j)?;
    }
    Ok(out)
}

/// (λ_n - λ_2n)/(λ_2n - λ_4n), close to 4 for a second-order scheme.
pub fn grid_doubling_ratio(params: &OperatorParams, bc: &SeparatedBC, j: usize, grid_size: usize, epsilon: f64) -> Result<f64> {
    let [a, b, c] = grid_sequence(params, bc, j, grid_size, epsilon)?;
    Ok((a - b) / (b - c))
}

/// Lowest `count` eigenvalues, Richardson-extrapolated from grids n and 2n.
/// `residuals` holds the size of the extrapolation correction.
pub fn oracle_eigenvalues(params: &OperatorParams, bc: &SeparatedBC, count: usize, grid_size: usize, epsilon: f64) -> Result<Spectrum> {
    if count == 0 || count > MAX_COUNT {
        return Err(Error::Domain(format!("count {count} outside 1..={MAX_COUNT}")));
    }
    let (grid_size, e) = setup(params, bc, grid_size, epsilon)?;
    let coarse = DiscretizedProblem::new(params, bc, grid_size, e)?;
    let fine = DiscretizedProblem::new(params, bc, 2 * grid_size, e)?;
    let mut eigenvalues = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    for j in 0..count {
        let (a, b) = (coarse.eigenvalue(j)?, fine.eigenvalue(j)?);
        eigenvalues.push((4.0 * b - a) / 3.0);
        residuals.push(((b - a) / 3.0).abs());
    }
    Ok(Spectrum {
        params: *params,
        bc: (*bc).into(),
        method: Method::Oracle,
        multiplicities: vec![1; count],
        eigenvalues,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::lowest_eigenvalues;

    fn sep(a: Angle, b: Angle) -> SeparatedBC {
        SeparatedBC::new(a, b).unwrap()
    }

    #[test]
    fn friedrichs_spectra() {
        let o = oracle_eigenvalues(&OperatorParams::new(0.5, 0.5).unwrap(), &SeparatedBC::friedrichs(), 3, 1000, 1e-3).unwrap();
        for (n, l) in o.eigenvalues.iter().enumerate() {
            assert!((l - (2.0 * n as f64 + 2.0).powi(2)).abs() < 1e-5, "{l}");
        }
        let o = oracle_eigenvalues(&OperatorParams::new(0.3, 0.7).unwrap(), &SeparatedBC::friedrichs(), 3, 1000, 1e-3).unwrap();
        for (n, l) in o.eigenvalues.iter().enumerate() {
            assert!((l - (2.0 * n as f64 + 2.0).powi(2)).abs() < 1e-4, "{l}");
        }
        assert_eq!(o.method, Method::Oracle);
    }

    #[test]
    fn second_order_convergence() {
        for (mu, nu, a, b) in [(0.3, 0.7, Angle::zero(), Angle::zero()), (0.4, 0.4, Angle::zero(), Angle::half_pi())] {
            let p = OperatorParams::new(mu, nu).unwrap();
            let r = grid_doubling_ratio(&p, &sep(a, b), 2, 600, 1e-3).unwrap();
            assert!((3.5..=4.5).contains(&r), "ratio {r}");
        }
    }

    #[test]
    fn matches_root_finding_in_the_log_case() {
        let cases = [
            (1.0 / 3.0, Angle::radians(1.0), Angle::radians(2.0)),
            (0.5, Angle::pi_ratio(1, 3), Angle::pi_ratio(1, 4)),
            // a bound state near -2.43e4 below the default scan floor
            (0.25, Angle::radians(0.2), Angle::radians(2.5)),
        ];
        for (nu, a, b) in cases {
            let p = OperatorParams::new(0.0, nu).unwrap();
            let o = oracle_eigenvalues(&p, &sep(a, b), 5, 2000, 1e-3).unwrap();
            let r = lowest_eigenvalues(&p, &sep(a, b).into(), 5, -2500.0).unwrap().expanded();
            for (x, y) in o.eigenvalues.iter().zip(&r) {
                assert!((x - y).abs() < 1e-4, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f = SeparatedBC::friedrichs();
        assert!(oracle_eigenvalues(&OperatorParams::new(0.97, 0.2).unwrap(), &f, 3, 1000, 1e-3).is_err());
        let p = OperatorParams::new(0.2, 0.2).unwrap();
        assert!(oracle_eigenvalues(&p, &f, 0, 1000, 1e-3).is_err());
        assert!(oracle_eigenvalues(&p, &f, 21, 1000, 1e-3).is_err());
        assert!(oracle_eigenvalues(&p, &f, 3, 100, 1e-3).is_err());
        assert!(oracle_eigenvalues(&p, &f, 3, 1000, 0.1).is_err());
    }
}
