use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::{qi, RatPoly};

fn cache() -> &'static RwLock<Vec<BigRational>> {
    static CACHE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// Bernoulli number B_n with B_1 = -1/2.
pub fn bernoulli_number(n: usize) -> BigRational {
    if let Some(b) = cache().read().unwrap().get(n) {
        return b.clone();
    }
    let mut tab = cache().write().unwrap();
    while tab.len() <= n {
        let m = tab.len();
        let mut s = BigRational::zero();
        for (k, b) in tab.iter().enumerate() {
            s += b * BigRational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(k)));
        }
        tab.push(-s / qi(m as i64 + 1));
    }
    tab[n].clone()
}

/// B_n(x)
pub fn bernoulli_polynomial(n: usize) -> RatPoly {
    let c = (0..=n)
        .map(|k| {
            bernoulli_number(n - k) * BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
        })
        .collect();
    RatPoly::new(c)
}

fn factorial(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |a, k| a * qi(k as i64))
}

/// Generalized Bernoulli polynomial B_k^{(l)}(x), where both the order l and the
/// argument x are polynomials in a common indeterminate. Defined by
/// (t/(e^t-1))^l e^{xt} = Σ B_k^{(l)}(x) t^k / k!.
pub fn generalized_bernoulli(k: usize, order: &RatPoly, x: &RatPoly) -> RatPoly {
    // log of the generating function: (x - l/2) t + Σ_{n>=2} -l B_n t^n / (n n!)
    let mut a = vec![RatPoly::zero(); k + 1];
    if k >= 1 {
        a[1] = x - &order.scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    }
    for (n, an) in a.iter_mut().enumerate().skip(2) {
        let c = -bernoulli_number(n) / (qi(n as i64) * factorial(n));
        *an = order.scale(&c);
    }
    // e_0 = 1, n e_n = Σ_{j=1}^n j a_j e_{n-j}
    let mut e = vec![RatPoly::constant(BigRational::one())];
    for n in 1..=k {
        let mut s = RatPoly::zero();
        for j in 1..=n {
            if a[j].is_zero() {
                continue;
            }
            s = &s + &(&a[j] * &e[n - j]).scale(&qi(j as i64));
        }
        e.push(s.scale(&(BigRational::one() / qi(n as i64))));
    }
    e[k].scale(&factorial(k))
}

/// B_k^{(l)}(x) at rational l and x.
pub fn generalized_bernoulli_value(k: usize, order: &BigRational, x: &BigRational) -> BigRational {
    generalized_bernoulli(k, &RatPoly::constant(order.clone()), &RatPoly::constant(x.clone())).coeff(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::rational::q;

    #[test]
    fn numbers() {
        assert_eq!(bernoulli_number(1), q(-1, 2));
        assert_eq!(bernoulli_number(2), q(1, 6));
        assert_eq!(bernoulli_number(12), q(-691, 2730));
        assert_eq!(bernoulli_number(13), qi(0));
        assert_eq!(bernoulli_number(30), BigRational::new(BigInt::from(8615841276005i64), BigInt::from(14322)));
    }

    #[test]
    fn polynomials() {
        assert_eq!(bernoulli_polynomial(2), RatPoly::new(vec![q(1, 6), qi(-1), qi(1)]));
        // order 1 reduces to the ordinary polynomial
        for k in 0..8 {
            assert_eq!(generalized_bernoulli(k, &RatPoly::constant(qi(1)), &RatPoly::x()), bernoulli_polynomial(k));
        }
        // B_2^{(l)}(x) = x^2 - l x + l(3l-1)/12
        let l = q(5, 3);
        let x = q(-2, 7);
        let want = &x * &x - &l * &x + &l * (qi(3) * &l - qi(1)) / qi(12);
        assert_eq!(generalized_bernoulli_value(2, &l, &x), want);
        // B_k^{(0)}(x) = x^k
        assert_eq!(generalized_bernoulli_value(5, &qi(0), &q(1, 2)), q(1, 32));
    }
}
