//! Quadrature rules shared by the continuation layer.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Double-exponential (tanh-sinh) nodes on [0, 1], stored as (t, 1 - t, weight)
/// so that both endpoints are resolved without cancellation.
#[derive(Clone, Debug)]
pub struct TanhSinh {
    pub levels: Vec<Vec<(f64, f64, f64)>>,
    pub h0: f64,
}

impl TanhSinh {
    pub fn new(max_level: usize) -> Self {
        let h0 = 1.0;
        let tmax = 6.5;
        let mut levels = Vec::new();
        for level in 0..=max_level {
            let h = h0 / (1u64 << level) as f64;
            let mut nodes = Vec::new();
            let n = (tmax / h).ceil() as i64;
            for k in -n..=n {
                // level > 0 only adds the odd multiples of h
                if level > 0 && k % 2 == 0 {
                    continue;
                }
                let u = k as f64 * h;
                let s = std::f64::consts::FRAC_PI_2 * u.sinh();
                let c = std::f64::consts::FRAC_PI_2 * u.cosh();
                // t = (1 + tanh s)/2, 1 - t = 1/(1 + e^{2s})
                let e = (-2.0 * s.abs()).exp();
                let small = e / (1.0 + e);
                let (t, tc) = if s >= 0.0 { (1.0 - small, small) } else { (small, 1.0 - small) };
                let w = 0.5 * h * c / s.cosh().powi(2);
                if w < 1e-300 || t <= 0.0 || tc <= 0.0 {
                    continue;
                }
                nodes.push((t, tc, w));
            }
            levels.push(nodes);
        }
        TanhSinh { levels, h0 }
    }

    /// Estimates at each level, halving the step: level k uses all nodes of levels 0..=k.
    pub fn estimates<F: FnMut(f64, f64) -> Complex64>(&self, mut f: F) -> Vec<Complex64> {
        let mut sums = Vec::new();
        let mut acc = Complex64::new(0.0, 0.0);
        for (level, nodes) in self.levels.iter().enumerate() {
            let part: Complex64 = nodes.iter().map(|&(t, tc, w)| f(t, tc) * w).sum();
            if level == 0 {
                acc = part;
            } else {
                acc = acc * 0.5 + part;
            }
            sums.push(acc);
        }
        sums
    }

    /// ∫₀¹ f(t) dt with f receiving (t, 1 - t).
    pub fn integrate<F: FnMut(f64, f64) -> Complex64>(&self, f: F, tol: f64) -> Result<(Complex64, f64)> {
        let est = self.estimates(f);
        let n = est.len();
        let val = est[n - 1];
        let err = (est[n - 1] - est[n - 2]).norm();
        if !val.re.is_finite() || !val.im.is_finite() {
            return Err(Error::Quadrature("non-finite tanh-sinh estimate".into()));
        }
        if err > tol * val.norm().max(1.0) {
            return Err(Error::Quadrature(format!("tanh-sinh did not converge: err {err:.3e}")));
        }
        Ok((val, err))
    }
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// The 15 Kronrod abscissae on [a, b] with Kronrod and embedded Gauss weights.
pub fn gk15_nodes(a: f64, b: f64) -> Vec<(f64, f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = Vec::with_capacity(15);
    for i in 0..8 {
        let wg = if i % 2 == 1 { WG[i / 2] } else { 0.0 };
        if i == 7 {
            out.push((c, WGK[7] * h, WG[3] * h));
        } else {
            out.push((c - h * XGK[i], WGK[i] * h, wg * h));
            out.push((c + h * XGK[i], WGK[i] * h, wg * h));
        }
    }
    out
}

/// Gauss–Kronrod 7/15 on one panel: (estimate, |K15 - G7|).
pub fn gk15<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64) -> (Complex64, f64) {
    let mut k = Complex64::new(0.0, 0.0);
    let mut g = Complex64::new(0.0, 0.0);
    for (x, wk, wg) in gk15_nodes(a, b) {
        let v = f(x);
        k += v * wk;
        g += v * wg;
    }
    (k, (k - g).norm())
}

/// Adaptive Gauss–Kronrod over [a, b] by panel bisection.
pub fn adaptive_gk<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<(Complex64, f64)> {
    let mut stack = vec![(a, b, 0u32)];
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let width = b - a;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e) = gk15(&mut f, lo, hi);
        if e <= tol * (hi - lo) / width || depth >= 40 {
            if depth >= 40 && e > tol {
                return Err(Error::Quadrature(format!("adaptive GK stalled on [{lo}, {hi}]")));
            }
            total += v;
            err += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok((total, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        let ts = TanhSinh::new(6);
        // ∫₀¹ t^{-0.9} dt = 10
        let (v, _) = ts.integrate(|t, _| Complex64::new(t.powf(-0.9), 0.0), 1e-8).unwrap();
        assert!((v.re - 10.0).abs() < 1e-8, "{v}");
        // ∫₀¹ ln(1-t) dt = -1 using the complement
        let (v, _) = ts.integrate(|_, tc| Complex64::new(tc.ln(), 0.0), 1e-12).unwrap();
        assert!((v.re + 1.0).abs() < 1e-13);
    }

    #[test]
    fn kronrod_is_exact_for_polynomials() {
        let (v, e) = gk15(|x| Complex64::new(x.powi(20), 0.0), 0.0, 1.0);
        assert!((v.re - 1.0 / 21.0).abs() < 1e-15 && e < 1e-3);
        let (v, _) = adaptive_gk(|x| Complex64::new((10.0 * x).sin(), 0.0), 0.0, 3.0, 1e-13).unwrap();
        assert!((v.re - (1.0 - 30f64.cos()) / 10.0).abs() < 1e-13);
    }
}
