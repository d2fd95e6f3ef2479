//! Complex log-gamma, reciprocal gamma and polygamma functions.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// B_{2k} / (2k (2k-1)) for k = 1..=20.
const STIRLING: [(i128, i128); 20] = [
    (1, 12),
    (-1, 360),
    (1, 1260),
    (-1, 1680),
    (1, 1188),
    (-691, 360360),
    (1, 156),
    (-3617, 122400),
    (43867, 244188),
    (-174611, 125400),
    (77683, 5796),
    (-236364091, 1506960),
    (657931, 300),
    (-3392780147, 93960),
    (1723168255201, 2492028),
    (-7709321041217, 505920),
    (151628697551, 396),
    (-26315271553053477373, 2418179400),
    (154210205991661, 444),
    (-261082718496449122051, 21106800),
];

/// B_{2k} for k = 1..=20 as (numerator, denominator).
const BERN2K: [(i128, i128); 20] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
    (-26315271553053477373, 1919190),
    (2929993913841559, 6),
    (-261082718496449122051, 13530),
];

pub(crate) fn from_i128<T: Real>(n: i128) -> T {
    let hi = n as f64;
    let lo = (n - hi as i128) as f64;
    T::lit(hi) + T::lit(lo)
}

fn frac<T: Real>(p: (i128, i128)) -> T {
    from_i128::<T>(p.0) / from_i128::<T>(p.1)
}

/// Shift threshold and number of asymptotic terms appropriate for `T`.
fn asymptotic_plan<T: Real>() -> (f64, usize) {
    let eps = T::epsilon().to_f64().unwrap();
    if eps < 1e-20 {
        (28.0, 20)
    } else if eps < 1e-10 {
        (12.0, 12)
    } else {
        (7.0, 6)
    }
}

fn is_nonpositive_integer<T: Real>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}

/// ln(1 + u) without cancellation for small |u|.
pub fn clog1p<T: Real>(u: Complex<T>) -> Complex<T> {
    let two = T::lit(2.0);
    let re = (two * u.re + u.re * u.re + u.im * u.im).ln_1p() / two;
    let im = u.im.atan2(T::one() + u.re);
    Complex::new(re, im)
}

fn stirling_series<T: Real>(z: Complex<T>, terms: usize) -> Complex<T> {
    let r = z.inv();
    let r2 = r * r;
    let mut pw = r;
    let mut sum = Complex::zero();
    let tiny = T::epsilon() * T::lit(0.1);
    for &c in STIRLING.iter().take(terms) {
        let t = pw * frac::<T>(c);
        sum = sum + t;
        if t.norm() < tiny * sum.norm() {
            break;
        }
        pw = pw * r2;
    }
    sum
}

fn ln_gamma_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    let (thr, terms) = asymptotic_plan::<T>();
    let thr = T::lit(thr);
    let mut w = z;
    let mut shift = Complex::<T>::zero();
    let mut pending: Option<Complex<T>> = None;
    while w.norm() < thr {
        pending = match pending {
            None => Some(w),
            Some(p) => {
                shift = shift + (p * w).ln();
                None
            }
        };
        w = w + T::one();
    }
    if let Some(p) = pending {
        shift = shift + p.ln();
    }
    let half = T::lit(0.5);
    let ln2pi = (T::PI() * T::lit(2.0)).ln();
    (w - half) * w.ln() - w + ln2pi * half + stirling_series(w, terms) - shift
}

/// ln sin(pi z) on the branch continuous in the closed upper half-plane.
fn ln_sin_pi_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    let pi = T::PI();
    let i = Complex::<T>::i();
    let e = (i * z * (pi * T::lit(2.0))).exp();
    Complex::new(-T::LN_2(), pi / T::lit(2.0)) - i * z * pi + clog1p(-e)
}

/// Principal branch of ln Γ(z).
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { function: "ln_gamma", at: format!("{}", z.re) });
    }
    if z.im < T::zero() {
        return ln_gamma(z.conj()).map(|v| v.conj());
    }
    if z.re < T::lit(0.5) {
        let one = Complex::<T>::one();
        let refl = ln_gamma_upper(one - z);
        return Ok(Complex::new(T::PI().ln(), T::zero()) - ln_sin_pi_upper(z) - refl);
    }
    Ok(ln_gamma_upper(z))
}

pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    ln_gamma(z).map(|l| l.exp())
}

/// Reciprocal gamma function, entire in z.
pub fn rgamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if is_nonpositive_integer(z) {
        return Complex::zero();
    }
    if z.re < T::lit(0.5) {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        let s = (z * T::PI()).sin();
        return s * ln_gamma_upper_any(Complex::<T>::one() - z).exp() / T::PI();
    }
    (-ln_gamma_upper_any(z)).exp()
}

fn ln_gamma_upper_any<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.im < T::zero() {
        ln_gamma_upper(z.conj()).conj()
    } else {
        ln_gamma_upper(z)
    }
}

/// Real gamma function for real arguments off the poles.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    if x <= T::zero() && x == x.round() {
        return Err(Error::Pole { function: "gamma", at: format!("{x}") });
    }
    let g = gamma(Complex::new(x, T::zero()))?;
    Ok(g.re)
}

fn digamma_asymptotic<T: Real>(w: Complex<T>, terms: usize) -> Complex<T> {
    let r = w.inv();
    let r2 = r * r;
    let mut pw = r2;
    let mut sum = w.ln() - r * T::lit(0.5);
    let tiny = T::epsilon() * T::lit(0.1);
    for (k, &b) in BERN2K.iter().take(terms).enumerate() {
        let t = pw * (frac::<T>(b) / T::int(2 * (k as i64 + 1)));
        sum = sum - t;
        if t.norm() < tiny * sum.norm() {
            break;
        }
        pw = pw * r2;
    }
    sum
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { function: "digamma", at: format!("{}", z.re) });
    }
    if z.im < T::zero() {
        return digamma(z.conj()).map(|v| v.conj());
    }
    let (thr, terms) = asymptotic_plan::<T>();
    if z.re < -T::lit(thr) {
        // ψ(z) = ψ(1-z) - π cot(πz)
        let one = Complex::<T>::one();
        return Ok(digamma(one - z)? - cot_pi_upper(z) * T::PI());
    }
    let mut w = z;
    let mut acc = Complex::<T>::zero();
    while w.norm() < T::lit(thr) || w.re < T::zero() {
        acc = acc + w.inv();
        w = w + T::one();
    }
    Ok(digamma_asymptotic(w, terms) - acc)
}

/// cot(π z) for Im z ≥ 0, stable for large Im z.
pub(crate) fn cot_pi_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    let i = Complex::<T>::i();
    let e = (i * z * (T::PI() * T::lit(2.0))).exp();
    i * (e + T::one()) / (e - T::one())
}

/// Polygamma ψ^{(n)}(z) for n ≥ 1.
pub fn polygamma<T: Real>(n: u32, z: Complex<T>) -> Result<Complex<T>> {
    if n == 0 {
        return digamma(z);
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { function: "polygamma", at: format!("{}", z.re) });
    }
    if z.im < T::zero() {
        return polygamma(n, z.conj()).map(|v| v.conj());
    }
    let (thr, terms) = asymptotic_plan::<T>();
    let mut nfact = T::one();
    for k in 2..=n {
        nfact = nfact * T::int(k as i64);
    }
    let sign = if n % 2 == 1 { T::one() } else { -T::one() };
    let mut w = z;
    let mut acc = Complex::<T>::zero();
    while w.norm() < T::lit(thr) || w.re < T::zero() {
        acc = acc + w.inv().powi(n as i32 + 1);
        w = w + T::one();
    }
    // (-1)^{n+1} [ (n-1)!/w^n + n!/(2 w^{n+1}) + Σ B_{2k} (2k+n-1)!/((2k)! w^{2k+n}) ]
    let r = w.inv();
    let nm1fact = nfact / T::int(n as i64);
    let mut sum = r.powi(n as i32) * nm1fact + r.powi(n as i32 + 1) * (nfact / T::lit(2.0));
    let r2 = r * r;
    let mut pw = r.powi(n as i32) * r2;
    // ratio (2k+n-1)!/(2k)!
    let tiny = T::epsilon() * T::lit(0.1);
    for (k, &b) in BERN2K.iter().take(terms).enumerate() {
        let kk = 2 * (k as i64 + 1);
        let mut ratio = T::one();
        for j in (kk + 1)..=(kk + n as i64 - 1) {
            ratio = ratio * T::int(j);
        }
        let t = pw * (frac::<T>(b) * ratio);
        sum = sum + t;
        if t.norm() < tiny * sum.norm() {
            break;
        }
        pw = pw * r2;
    }
    Ok((sum + acc * nfact) * sign)
}

pub fn trigamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    polygamma(1, z)
}

/// 1/Γ(w) · ψ(w), an entire function of w (equal to -d/dw 1/Γ(w)).
pub fn rgamma_digamma<T: Real>(w: Complex<T>) -> Complex<T> {
    if w.re < T::lit(0.5) {
        let one = Complex::<T>::one();
        let pi = T::PI();
        let g1 = ln_gamma_upper_any(one - w).exp();
        let s = (w * pi).sin();
        let c = (w * pi).cos();
        let psi1 = digamma(one - w).unwrap_or_else(|_| Complex::zero());
        return g1 * (s * psi1 - c * pi) / pi;
    }
    rgamma(w) * digamma(w).expect("digamma is regular for Re w >= 1/2")
}

/// ln Γ(x + a) - ln Γ(x + b) for Re x ≥ 0, free of cancellation at large |x|.
pub fn ln_gamma_ratio<T: Real>(x: Complex<T>, a: T, b: T) -> Result<Complex<T>> {
    let (thr, terms) = asymptotic_plan::<T>();
    let big = T::lit(2.0 * thr) + a.abs() + b.abs();
    if x.norm() < big {
        return Ok(ln_gamma(x + a)? - ln_gamma(x + b)?);
    }
    let half = T::lit(0.5);
    let la = clog1p(Complex::new(a, T::zero()) / x);
    let lb = clog1p(Complex::new(b, T::zero()) / x);
    let lead = x.ln() * (a - b) + (x + (a - half)) * la - (x + (b - half)) * lb - (a - b);
    Ok(lead + stirling_series(x + a, terms) - stirling_series(x + b, terms))
}

/// Pochhammer symbol (z)_n by iterated product.
pub fn pochhammer<T: Real>(z: Complex<T>, n: u32) -> Complex<T> {
    let mut p = Complex::<T>::one();
    for k in 0..n {
        p = p * (z + T::int(k as i64));
    }
    p
}
