use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::One;

use super::logseries::{log1p_series, LogSeries};
use crate::specialfn::rational::{q, qi};
use crate::specialfn::{bernoulli_number, generalized_bernoulli, RatPoly};

/// Sign with which the Bernoulli sum C_k enters E_k.
///
/// `Minus` is the large-z expansion of the digamma sum; `Plus` reproduces the
/// tabulated 𝓟 and 𝓡 entries with l ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CSign {
    Minus,
    Plus,
}

fn y() -> RatPoly {
    RatPoly::x()
}

fn factorial(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |a, k| a * qi(k as i64))
}

fn binomial_int(n: usize, k: usize) -> BigRational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// binom(x, k) as a polynomial in the indeterminate of `x`.
fn binomial_poly(x: &RatPoly, k: usize) -> RatPoly {
    let mut r = RatPoly::constant(BigRational::one());
    for i in 0..k {
        r = &r * &(x - &RatPoly::constant(qi(i as i64)));
    }
    r.scale(&(BigRational::one() / factorial(k)))
}

/// G_k(1-y, y) = binom(1-2y, k) B_k^{(2-2y)}(1-y), a polynomial in y.
pub fn g_coefficient(k: usize) -> RatPoly {
    if k % 2 == 1 {
        return RatPoly::zero();
    }
    let x = RatPoly::linear(qi(1), qi(-2));
    let order = RatPoly::linear(qi(2), qi(-2));
    let arg = RatPoly::linear(qi(1), qi(-1));
    &binomial_poly(&x, k) * &generalized_bernoulli(k, &order, &arg)
}

/// C_m(y) = Σ_{j<m} binom(2m-1, 2j) 2^{2m} y^{2j} B_{2(m-j)} / (m-j).
pub fn c_coefficient(m: usize) -> RatPoly {
    assert!(m >= 1, "C_m needs m >= 1");
    let mut r = RatPoly::zero();
    let four_m = (0..m).fold(BigRational::one(), |a, _| a * qi(4));
    for j in 0..m {
        let c = binomial_int(2 * m - 1, 2 * j) * &four_m * bernoulli_number(2 * (m - j)) / qi((m - j) as i64);
        r = &r + &y().pow(2 * j as u32).scale(&c);
    }
    r
}

/// E_k(y) = 2(2y)^{2k-1} - (2y)^{2k}/k ∓ C_k(y).
pub fn e_coefficient_signed(k: usize, sign: CSign) -> RatPoly {
    assert!(k >= 1, "E_k needs k >= 1");
    let ty = y().scale(&qi(2));
    let base = &ty.pow(2 * k as u32 - 1).scale(&qi(2)) - &ty.pow(2 * k as u32).scale(&q(1, k as i64));
    match sign {
        CSign::Minus => &base - &c_coefficient(k),
        CSign::Plus => &base + &c_coefficient(k),
    }
}

pub fn e_coefficient(k: usize) -> RatPoly {
    e_coefficient_signed(k, CSign::Minus)
}

/// 𝓟_k(y) graded by (sin α / Λ): the l = 0 entry is 4^k G_{2k}, the l = 1 entry
/// Σ_{j≥1} 4^{k-j} G_{2(k-j)} E_j / 2.
pub fn p_coefficient_signed(k: usize, sign: CSign) -> LogSeries<RatPoly> {
    if k == 0 {
        return LogSeries::constant(RatPoly::constant(qi(1)));
    }
    let pow4 = |n: usize| (0..n).fold(BigRational::one(), |a, _| a * qi(4));
    let l0 = g_coefficient(2 * k).scale(&pow4(k));
    let mut l1 = RatPoly::zero();
    for j in 1..=k {
        let t = &g_coefficient(2 * (k - j)) * &e_coefficient_signed(j, sign);
        l1 = &l1 + &t.scale(&(pow4(k - j) * q(1, 2)));
    }
    LogSeries::new(vec![l0, l1])
}

pub fn p_coefficient(k: usize) -> LogSeries<RatPoly> {
    p_coefficient_signed(k, CSign::Minus)
}

type RCache = Mutex<Vec<(CSign, Vec<LogSeries<RatPoly>>)>>;

/// 𝓡_1..𝓡_n as log-series whose entries p_{m,l} are polynomials in ν.
pub fn r_coefficients_signed(n: usize, sign: CSign) -> Vec<LogSeries<RatPoly>> {
    static CACHE: OnceLock<RCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    if let Some((_, v)) = cache.lock().unwrap().iter().find(|(s, v)| *s == sign && v.len() >= n) {
        return v[..n].to_vec();
    }
    // y = (1 - ν)/2
    let sub = RatPoly::linear(q(1, 2), q(-1, 2));
    let p: Vec<LogSeries<RatPoly>> =
        (0..=n).map(|k| p_coefficient_signed(k, sign).map(|e| e.compose(&sub))).collect();
    let r = log1p_series(&p)[1..].to_vec();
    let mut c = cache.lock().unwrap();
    c.retain(|(s, _)| *s != sign);
    c.push((sign, r.clone()));
    r
}

pub fn r_coefficients(n: usize) -> Vec<LogSeries<RatPoly>> {
    r_coefficients_signed(n, CSign::Minus)
}

/// 𝓡_m for m ≥ 1.
pub fn r_coefficient(m: usize) -> LogSeries<RatPoly> {
    assert!(m >= 1, "R_m needs m >= 1");
    r_coefficients(m).pop().unwrap()
}

/// p ↦ p(-ν).
pub fn reflect(p: &RatPoly) -> RatPoly {
    p.compose(&RatPoly::linear(qi(0), qi(-1)))
}
