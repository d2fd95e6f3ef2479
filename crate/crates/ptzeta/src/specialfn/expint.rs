use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

fn check<T: Real>(k: u32, z: Complex<T>) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("exponential integral order must be >= 1".into()));
    }
    if z.is_zero() {
        return Err(Error::Pole { function: "expint", at: "z = 0".into() });
    }
    if z.im.is_zero() && z.re < T::zero() {
        return Err(Error::BranchCut { function: "expint", at: format!("z = {}", z.re) });
    }
    Ok(())
}

fn use_series<T: Real>(z: Complex<T>) -> bool {
    let r = z.norm();
    r <= T::int(2) || (z.re < T::zero() && r < T::int(40))
}

fn series<T: Real>(k: u32, z: Complex<T>) -> Result<Complex<T>> {
    let km1 = (k - 1) as i64;
    // ψ(k) = -γ + H_{k-1}
    let mut psi = -T::euler_gamma();
    for j in 1..k {
        psi += T::int(1) / T::int(j as i64);
    }
    let mz = -z;
    let mut term = Complex::<T>::one(); // (-z)^m / m!
    let mut sum = Complex::<T>::zero();
    let mut lead = Complex::<T>::zero();
    let eps = T::epsilon();
    for m in 0..4000i64 {
        if m > 0 {
            term = term * mz / T::int(m);
        }
        if m == km1 {
            lead = term * (Complex::new(psi, T::zero()) - z.ln());
        } else {
            let t = term / T::int(m - km1);
            sum = sum - t;
            if m > km1 && m as f64 > z.norm().to_f64().unwrap() && t.norm() <= eps * sum.norm() {
                return Ok(lead + sum);
            }
        }
    }
    Err(Error::NonConvergence(format!("expint series at z = {z}")))
}

/// e^z E_k(z) by the modified Lentz continued fraction.
fn continued_fraction<T: Real>(k: u32, z: Complex<T>) -> Result<Complex<T>> {
    let tiny = T::min_positive_value().sqrt();
    let eps = T::epsilon();
    let kk = T::int(k as i64);
    let mut b = z + kk;
    let mut c = Complex::new(T::one() / tiny, T::zero());
    let mut d = Complex::<T>::one() / b;
    let mut h = d;
    for i in 1..100_000i64 {
        let an = -T::int(i) * (kk - T::one() + T::int(i));
        b = b + T::int(2);
        d = Complex::<T>::one() / (d * an + b);
        c = b + Complex::new(an, T::zero()) / c;
        if c.norm() < tiny {
            c = Complex::new(tiny, T::zero());
        }
        let del = c * d;
        h = h * del;
        if (del - Complex::one()).norm() < eps {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence(format!("expint continued fraction at z = {z}")))
}

/// Principal-branch generalized exponential integral E_k(z), k >= 1.
pub fn expint<T: Real>(k: u32, z: Complex<T>) -> Result<Complex<T>> {
    check(k, z)?;
    if use_series(z) {
        series(k, z)
    } else {
        Ok(continued_fraction(k, z)? * (-z).exp())
    }
}

/// e^z E_k(z), which stays finite where E_k itself under- or overflows.
pub fn expint_scaled<T: Real>(k: u32, z: Complex<T>) -> Result<Complex<T>> {
    check(k, z)?;
    if use_series(z) {
        Ok(series(k, z)? * z.exp())
    } else {
        continued_fraction(k, z)
    }
}
