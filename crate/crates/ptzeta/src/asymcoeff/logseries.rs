use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::real::Real;
use crate::specialfn::RatPoly;

/// Coefficient ring of a [`LogSeries`].
pub trait Coefficient: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::from_integer(1.into())))
    }
}

impl Coefficient for RatPoly {
    fn zero() -> Self {
        RatPoly::zero()
    }
    fn is_zero(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        RatPoly::scale(self, c)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl<T: Real> Coefficient for Complex<T> {
    fn zero() -> Self {
        <Complex<T> as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * T::from_rational(c)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

/// Σ_l c_l (sin α / Λ)^l, a polynomial in the formal variable sin α / Λ.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries<C> {
    entries: Vec<C>,
}

impl<C: Coefficient> LogSeries<C> {
    pub fn new(mut entries: Vec<C>) -> Self {
        while entries.last().is_some_and(|c| c.is_zero()) {
            entries.pop();
        }
        LogSeries { entries }
    }

    pub fn zero() -> Self {
        LogSeries { entries: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// c (sin α / Λ)^l.
    pub fn monomial(c: C, l: usize) -> Self {
        let mut e = vec![C::zero(); l + 1];
        e[l] = c;
        Self::new(e)
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    pub fn entry(&self, l: usize) -> C {
        self.entries.get(l).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest l with a nonzero entry (0 for the zero series).
    pub fn order(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.entries.len().max(other.entries.len());
        Self::new((0..n).map(|l| self.entry(l).add(&other.entry(l))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.entries.len().max(other.entries.len());
        Self::new((0..n).map(|l| self.entry(l).sub(&other.entry(l))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut e = vec![C::zero(); self.entries.len() + other.entries.len() - 1];
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in other.entries.iter().enumerate() {
                e[i + j] = e[i + j].add(&a.mul(b));
            }
        }
        Self::new(e)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.entries.iter().map(|e| e.scale(c)).collect())
    }

    pub fn scale_by(&self, c: &C) -> Self {
        Self::new(self.entries.iter().map(|e| e.mul(c)).collect())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LogSeries<D> {
        LogSeries::new(self.entries.iter().map(f).collect())
    }
}

/// Coefficients d_j of ln(1 + Σ_{j≥1} c_j x^j) = Σ_{j≥1} d_j x^j, for j < c.len().
/// `c[0]` is ignored.
pub fn log1p_series<C: Coefficient>(c: &[LogSeries<C>]) -> Vec<LogSeries<C>> {
    let mut d: Vec<LogSeries<C>> = vec![LogSeries::zero(); c.len()];
    for j in 1..c.len() {
        let mut acc = c[j].clone();
        for l in 1..j {
            let t = c[j - l].mul(&d[l]).scale(&BigRational::new(l.into(), j.into()));
            acc = acc.sub(&t);
        }
        d[j] = acc;
    }
    d
}

/// Coefficients e_j of exp(Σ_{j≥1} d_j x^j) = Σ_{j≥0} e_j x^j, for j < d.len().
pub fn exp_series<C: Coefficient>(d: &[LogSeries<C>], one: C) -> Vec<LogSeries<C>> {
    let mut e: Vec<LogSeries<C>> = vec![LogSeries::zero(); d.len()];
    if d.is_empty() {
        return e;
    }
    e[0] = LogSeries::constant(one);
    for n in 1..d.len() {
        let mut acc = LogSeries::zero();
        for k in 1..=n {
            acc = acc.add(&d[k].mul(&e[n - k]).scale(&BigRational::from_integer(k.into())));
        }
        e[n] = acc.scale(&BigRational::new(1.into(), n.into()));
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::rational::{q, qi};

    #[test]
    fn log_exp_round_trip() {
        let c: Vec<LogSeries<RatPoly>> = (0..7)
            .map(|j| LogSeries::new(vec![RatPoly::constant(q(j, 3)), RatPoly::linear(qi(1), q(-1, j + 1))]))
            .collect();
        let d = log1p_series(&c);
        let e = exp_series(&d, RatPoly::constant(qi(1)));
        for j in 1..7 {
            assert_eq!(e[j], c[j]);
        }
        // ln(1 + x) = x - x²/2 + x³/3
        let c: Vec<LogSeries<RatPoly>> =
            vec![LogSeries::zero(), LogSeries::constant(RatPoly::constant(qi(1))), LogSeries::zero(), LogSeries::zero()];
        let d = log1p_series(&c);
        assert_eq!(d[3].entry(0), RatPoly::constant(q(1, 3)));
        assert_eq!(d[2].entry(0), RatPoly::constant(q(-1, 2)));
    }
}
