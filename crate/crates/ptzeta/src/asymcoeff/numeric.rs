use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

use super::exact::p_coefficient;
use super::logseries::{log1p_series, LogSeries};
use crate::error::{Error, Result};
use crate::operator::{Angle, Param};
use crate::real::Real;
use crate::specialfn::{gamma_real, RatPoly};

/// Value of a polynomial at a parameter, exactly when the parameter is a fraction.
pub(crate) fn eval_at<T: Real>(p: &RatPoly, x: &Param, reflect: bool) -> T {
    match x.exact {
        Some((n, d)) => {
            let v = BigRational::new(BigInt::from(if reflect { -n } else { n }), BigInt::from(d));
            T::from_rational(&p.eval(&v))
        }
        None => {
            let v: T = x.get();
            p.eval_real(if reflect { -v } else { v })
        }
    }
}

/// 𝓟_k((1 ± ν)/2) with numeric entries.
fn p_at<T: Real>(k: usize, nu: &Param, plus: bool) -> LogSeries<Complex<T>> {
    let sub = if plus {
        RatPoly::linear(BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 2.into()))
    } else {
        RatPoly::linear(BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into()))
    };
    p_coefficient(k).map(|e| Complex::new(eval_at::<T>(&e.compose(&sub), nu, false), T::zero()))
}

/// Ω₀ = 2^{2ν+1} Γ(1+ν)/Γ(-ν) cot β e^{iπν}.
pub fn omega0<T: Real>(nu: &Param, beta: &Angle) -> Result<Complex<T>> {
    if beta.is_zero() {
        return Err(Error::Domain("Omega_0 needs beta in (0, pi)".into()));
    }
    if nu.is_zero() {
        return Err(Error::Unsupported("Omega_0 needs nu in (0, 1)".into()));
    }
    let v: T = nu.get();
    let (c, s) = beta.cos_sin::<T>();
    let g = gamma_real(T::one() + v)? / gamma_real(-v)?;
    let amp = T::lit(2.0).powf(T::int(2) * v + T::one()) * g * c / s;
    Ok(Complex::from_polar(amp, T::PI() * v))
}

/// Ω_0, ..., Ω_n from Ω₀ 𝓟_k((1+ν)/2) = Σ_{l≤k} 𝓟_{k-l}((1-ν)/2) Ω_l.
pub fn omega_coefficients<T: Real>(nu: &Param, beta: &Angle, n: usize) -> Result<Vec<LogSeries<Complex<T>>>> {
    let o0 = omega0::<T>(nu, beta)?;
    let pm: Vec<_> = (0..=n).map(|k| p_at::<T>(k, nu, false)).collect();
    let mut out: Vec<LogSeries<Complex<T>>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = p_at::<T>(k, nu, true).scale_by(&o0);
        for (l, om) in out.iter().enumerate() {
            acc = acc.sub(&pm[k - l].mul(om));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Nonnegative solutions (l, k) of l p + k q = m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineSet {
    pub m: u64,
    pub p: u64,
    pub q: u64,
    pub solutions: Vec<(u64, u64)>,
}

impl DiophantineSet {
    /// Largest k among the solutions.
    pub fn order(&self) -> Option<u64> {
        self.solutions.iter().map(|&(_, k)| k).max()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }
}

pub fn diophantine_set(m: u64, p: u64, q: u64) -> DiophantineSet {
    assert!(p > 0 && q > 0, "p and q must be positive");
    let solutions = (0..=m / p).filter(|l| (m - l * p) % q == 0).map(|l| (l, (m - l * p) / q)).collect();
    DiophantineSet { m, p, q, solutions }
}

/// 𝓢_0, ..., 𝓢_{count-1}: 𝓢_m is the coefficient of x^{m+p} in ln(1 + Σ_k Ω_k x^{kq+p}).
pub fn s_coefficients<T: Real>(p: u64, q: u64, beta: &Angle, count: usize) -> Result<Vec<LogSeries<Complex<T>>>> {
    let nu = Param::ratio(p as i64, q as i64)?;
    let (p, q) = (p as usize, q as usize);
    let len = count + p;
    let kmax = (len - 1).saturating_sub(p) / q;
    let om = omega_coefficients::<T>(&nu, beta, kmax)?;
    let c: Vec<LogSeries<Complex<T>>> = (0..len)
        .map(|j| if j >= p && (j - p) % q == 0 { om[(j - p) / q].clone() } else { LogSeries::zero() })
        .collect();
    let d = log1p_series(&c);
    Ok(d[p..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymcoeff::logseries::exp_series;
    use num_complex::Complex64;

    #[test]
    fn omega0_values() {
        let nu = Param::ratio(1, 2).unwrap();
        let o = omega0::<f64>(&nu, &Angle::pi_ratio(1, 4)).unwrap();
        assert!((o - Complex64::new(0.0, -1.0)).norm() < 1e-14, "{o}");
        let o = omega_coefficients::<f64>(&nu, &Angle::half_pi(), 3).unwrap();
        assert!(o.iter().all(|s| s.is_zero()));
        for (p, q) in [(1, 2), (1, 3), (2, 3), (3, 7)] {
            for b in [Angle::pi_ratio(1, 4), Angle::pi_ratio(2, 3)] {
                assert!(omega0::<f64>(&Param::ratio(p, q).unwrap(), &b).unwrap().norm() > 0.0);
            }
        }
    }

    #[test]
    fn diophantine_sets() {
        assert_eq!(diophantine_set(0, 1, 2).solutions, vec![(0, 0)]);
        assert!(diophantine_set(1, 2, 3).is_empty());
        let mut s = diophantine_set(2, 1, 2).solutions;
        s.sort();
        assert_eq!(s, vec![(0, 1), (2, 0)]);
        for (p, q) in [(1, 2), (2, 3), (3, 5)] {
            for m in 0..40u64 {
                let brute: Vec<_> =
                    (0..=m).flat_map(|l| (0..=m).map(move |k| (l, k))).filter(|&(l, k)| l * p + k * q == m).collect();
                assert_eq!(diophantine_set(m, p, q).solutions, brute);
            }
        }
    }

    #[test]
    fn s_special_values() {
        let beta = Angle::pi_ratio(1, 4);
        for (p, q) in [(1u64, 2u64), (1, 3), (2, 3), (2, 5)] {
            let o0 = omega0::<f64>(&Param::ratio(p as i64, q as i64).unwrap(), &beta).unwrap();
            let s = s_coefficients::<f64>(p, q, &beta, 4 * q as usize).unwrap();
            assert!((s[0].entry(0) - o0).norm() < 1e-14);
            for l in 0..q {
                let m = (l * p) as usize;
                let want = o0.powu(l as u32 + 1) * (if l % 2 == 0 { 1.0 } else { -1.0 } / (l + 1) as f64);
                assert!((s[m].entry(0) - want).norm() < 1e-12 * want.norm().max(1.0), "{p}/{q} l={l}");
                assert_eq!(s[m].order(), 0);
            }
            for m in 1..p as usize {
                assert!(s[m].is_zero());
            }
            for (m, sm) in s.iter().enumerate() {
                let set = diophantine_set(m as u64, p, q);
                if set.is_empty() {
                    assert!(sm.is_zero(), "{p}/{q} m={m}");
                } else {
                    assert!(!sm.is_zero(), "{p}/{q} m={m}");
                }
                // E_k(y) = E_k(1-y) makes every Ω_k, hence every 𝓢_m, free of Λ
                assert!(sm.entries().iter().skip(1).all(|c| c.norm() < 1e-12 * sm.entry(0).norm()), "{p}/{q} m={m}");
            }
        }
    }

    /// exp(Σ 𝓢_m x^{m+p}) = 1 + Σ Ω_k x^{kq+p} with Λ replaced by a number.
    #[test]
    fn s_exponentiates_back() {
        let beta = Angle::pi_ratio(1, 4);
        let (p, q) = (1usize, 2usize);
        let s = s_coefficients::<f64>(p as u64, q as u64, &beta, 6).unwrap();
        let om = omega_coefficients::<f64>(&Param::ratio(1, 2).unwrap(), &beta, 3).unwrap();
        let lam = Complex64::new(-0.3, 0.8);
        let eval = |ls: &LogSeries<Complex64>| ls.entries().iter().enumerate().fold(Complex64::new(0.0, 0.0), |a, (l, c)| a + c / lam.powu(l as u32));
        let mut d = vec![LogSeries::zero(); 7];
        for (m, sm) in s.iter().enumerate() {
            if m + p < 7 {
                d[m + p] = LogSeries::constant(eval(sm));
            }
        }
        let e = exp_series(&d, Complex64::new(1.0, 0.0));
        for j in 1..7 {
            let want = if j >= p && (j - p) % q == 0 { eval(&om[(j - p) / q]) } else { Complex64::new(0.0, 0.0) };
            assert!((eval(&e[j]) - want).norm() < 1e-13, "j = {j}");
        }
    }
}
