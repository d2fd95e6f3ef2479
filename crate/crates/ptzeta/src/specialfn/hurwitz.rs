use num_complex::Complex;
use num_traits::{One, Zero};

use super::dd::DoubleDouble;
use super::gamma::from_i128;
use crate::error::{Error, Result};
use crate::real::Real;

/// B_{2j}/(2j)! for j = 1..=17 as (numerator, denominator).
const BERN_OVER_FACT: [(i128, i128); 17] = [
    (1, 12),
    (-1, 720),
    (1, 30240),
    (-1, 1209600),
    (1, 47900160),
    (-691, 1307674368000),
    (1, 74724249600),
    (-3617, 10670622842880000),
    (43867, 5109094217170944000),
    (-174611, 802857662698291200000),
    (77683, 14101100039391805440000),
    (-236364091, 1693824136731743669452800000),
    (657931, 186134520519971831808000000),
    (-3392780147, 37893265687455865519472640000000),
    (1723168255201, 759790291646040068357842010112000000),
    (-7709321041217, 134196726836183700385281186201600000000),
    (151628697551, 104199811425742637946218332815360000000),
];

/// ζ_H(s, a) (derivative_order = 0) or ∂_s ζ_H(s, a) (derivative_order = 1).
pub fn hurwitz_zeta<T: Real>(s: Complex<T>, a: T, derivative_order: u8) -> Result<Complex<T>> {
    if a <= T::zero() {
        return Err(Error::Domain(format!("hurwitz_zeta needs a > 0, got {a}")));
    }
    if derivative_order > 1 {
        return Err(Error::Domain("derivative_order must be 0 or 1".into()));
    }
    if s == Complex::one() {
        return Err(Error::Pole { function: "hurwitz_zeta", at: "s = 1".into() });
    }
    let eps = T::epsilon().to_f64().unwrap();
    let (base, terms) = if eps < 1e-20 { (40.0, 17) } else { (18.0, 12) };
    let m = (base + s.norm().to_f64().unwrap()).ceil() as i64;
    let one = Complex::<T>::one();
    let d = derivative_order == 1;
    let mut sum = Complex::<T>::zero();
    for k in 0..m {
        let x = T::int(k) + a;
        let t = (-s * x.ln()).exp();
        sum = sum + if d { -t * x.ln() } else { t };
    }
    let n = T::int(m) + a;
    let ln_n = n.ln();
    let n_pow = |e: Complex<T>| (e * ln_n).exp();
    let sm1 = s - one;
    let head = n_pow(-sm1) / sm1;
    let half = n_pow(-s) * T::lit(0.5);
    if d {
        sum = sum - head * ln_n - n_pow(-sm1) / (sm1 * sm1) - half * ln_n;
    } else {
        sum = sum + head + half;
    }
    // s(s+1)...(s+2j-2) and its s-derivative
    let mut p = s;
    let mut dp = one;
    let tiny = T::epsilon() * T::lit(0.01);
    for (j, &c) in BERN_OVER_FACT.iter().take(terms).enumerate() {
        let jj = j as i64 + 1;
        let coef = from_i128::<T>(c.0) / from_i128::<T>(c.1);
        let np = n_pow(-s - T::int(2 * jj - 1));
        let t = if d { np * (dp - p * ln_n) * coef } else { np * p * coef };
        sum = sum + t;
        if t.norm() < tiny * sum.norm() {
            break;
        }
        for i in [2 * jj - 1, 2 * jj] {
            let f = s + T::int(i);
            dp = dp * f + p;
            p = p * f;
        }
    }
    Ok(sum)
}

pub fn riemann_zeta<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    hurwitz_zeta(s, T::one(), 0)
}

/// [`hurwitz_zeta`] at f64 inputs, carried out in double-double when Re s < 0
/// where the Euler–Maclaurin head cancels.
pub fn hurwitz_zeta_f64(s: Complex<f64>, a: f64, derivative_order: u8) -> Result<Complex<f64>> {
    if s.re >= 0.0 {
        return hurwitz_zeta(s, a, derivative_order);
    }
    let dd = |x: f64| DoubleDouble::new(x, 0.0);
    let v = hurwitz_zeta(Complex::new(dd(s.re), dd(s.im)), dd(a), derivative_order)?;
    Ok(Complex::new(v.re.hi(), v.im.hi()))
}
