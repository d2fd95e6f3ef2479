use num_integer::Integer;

use crate::error::{Error, Result};
use crate::real::Real;

/// A real number in [0, 1) with an optional exact reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Param {
    pub value: f64,
    pub exact: Option<(i64, i64)>,
}

impl Param {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&value) {
            return Err(Error::Domain(format!("parameter {value} outside [0, 1)")));
        }
        Ok(Param { value, exact: None })
    }

    pub fn ratio(p: i64, q: i64) -> Result<Self> {
        if q <= 0 || p < 0 || p >= q {
            return Err(Error::Domain(format!("parameter {p}/{q} outside [0, 1)")));
        }
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        Ok(Param { value: p as f64 / q as f64, exact: Some((p, q)) })
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0.0
    }

    pub fn get<T: Real>(&self) -> T {
        match self.exact {
            Some((p, q)) => T::ratio(p, q),
            None => T::lit(self.value),
        }
    }
}

/// The pair (μ, ν) of τ = -d² + (μ²-1/4)/sin²x + (ν²-1/4)/cos²x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorParams {
    pub mu: Param,
    pub nu: Param,
}

impl OperatorParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        Ok(OperatorParams { mu: exactify(mu)?, nu: exactify(nu)? })
    }

    pub fn from_params(mu: Param, nu: Param) -> Self {
        OperatorParams { mu, nu }
    }

    /// μ = 0 and ν = p/q.
    pub fn log_case(p: i64, q: i64) -> Result<Self> {
        Ok(OperatorParams { mu: Param::ratio(0, 1)?, nu: Param::ratio(p, q)? })
    }

    pub fn mu<T: Real>(&self) -> T {
        self.mu.get()
    }

    pub fn nu<T: Real>(&self) -> T {
        self.nu.get()
    }

    /// (p, q) when ν is an exact nonzero fraction.
    pub fn nu_fraction(&self) -> Option<(i64, i64)> {
        self.nu.exact.filter(|&(p, _)| p > 0)
    }

    /// Parameters of the operator seen from the other endpoint (x -> π/2 - x).
    pub fn mirrored(&self) -> Self {
        OperatorParams { mu: self.nu, nu: self.mu }
    }
}

/// Recognizes decimals that are small exact fractions (0, 1/2, 1/3, ...).
fn exactify(v: f64) -> Result<Param> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::Domain(format!("parameter {v} outside [0, 1)")));
    }
    for q in 1..=64i64 {
        let p = (v * q as f64).round();
        if (p / q as f64 - v).abs() == 0.0 {
            return Param::ratio(p as i64, q);
        }
    }
    Ok(Param { value: v, exact: None })
}

/// An angle stored as an exact multiple of π when possible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    pub value: f64,
    pub pi_frac: Option<(i64, i64)>,
}

impl Angle {
    pub fn pi_ratio(n: i64, d: i64) -> Self {
        assert!(d > 0, "angle denominator must be positive");
        let g = n.gcd(&d).max(1);
        let (n, d) = (n / g, d / g);
        Angle { value: std::f64::consts::PI * n as f64 / d as f64, pi_frac: Some((n, d)) }
    }

    pub fn zero() -> Self {
        Angle::pi_ratio(0, 1)
    }

    pub fn half_pi() -> Self {
        Angle::pi_ratio(1, 2)
    }

    pub fn radians(value: f64) -> Self {
        if value == 0.0 {
            return Angle::zero();
        }
        if value == std::f64::consts::FRAC_PI_2 {
            return Angle::half_pi();
        }
        Angle { value, pi_frac: None }
    }

    pub fn is_zero(&self) -> bool {
        self.pi_frac.map_or(self.value == 0.0, |(n, _)| n == 0)
    }

    pub fn is_half_pi(&self) -> bool {
        self.pi_frac == Some((1, 2))
    }

    pub fn get<T: Real>(&self) -> T {
        match self.pi_frac {
            Some((n, d)) => T::ratio(n, d) * T::PI(),
            None => T::lit(self.value),
        }
    }

    /// (cos, sin) with exact values at multiples of π/2.
    pub fn cos_sin<T: Real>(&self) -> (T, T) {
        if let Some((n, d)) = self.pi_frac {
            let (z, o) = (T::zero(), T::one());
            match (n.rem_euclid(2 * d), d) {
                (0, _) => return (o, z),
                (1, 2) => return (z, o),
                (1, 1) => return (-o, z),
                (3, 2) => return (z, -o),
                _ => {}
            }
        }
        let a: T = self.get();
        (a.cos(), a.sin())
    }

    pub fn in_range(&self) -> bool {
        (0.0..std::f64::consts::PI).contains(&self.value)
            || self.pi_frac.is_some_and(|(n, d)| n >= 0 && n < d)
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.pi_frac {
            Some((0, _)) => write!(f, "0"),
            Some((1, 1)) => write!(f, "pi"),
            Some((n, 1)) => write!(f, "{n}*pi"),
            Some((1, d)) => write!(f, "pi/{d}"),
            Some((n, d)) => write!(f, "{n}*pi/{d}"),
            None => write!(f, "{}", self.value),
        }
    }
}

/// Separated conditions g̃(0)cos α + g̃'(0) sin α = 0, g̃(π/2) cos β - g̃'(π/2) sin β = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparatedBC {
    pub alpha: Angle,
    pub beta: Angle,
}

impl SeparatedBC {
    pub fn new(alpha: Angle, beta: Angle) -> Result<Self> {
        for (name, a) in [("alpha", alpha), ("beta", beta)] {
            if !a.in_range() {
                return Err(Error::Domain(format!("{name} = {a} outside [0, pi)")));
            }
        }
        Ok(SeparatedBC { alpha, beta })
    }

    pub fn friedrichs() -> Self {
        SeparatedBC { alpha: Angle::zero(), beta: Angle::zero() }
    }
}

/// Coupled conditions (g̃(π/2), g̃'(π/2)) = e^{iφ} R (g̃(0), g̃'(0)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoupledBC {
    pub phi: Angle,
    pub r: [[f64; 2]; 2],
}

impl CoupledBC {
    pub fn new(phi: Angle, r: [[f64; 2]; 2]) -> Result<Self> {
        let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
        if (det - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("coupling matrix has determinant {det}, expected 1")));
        }
        if !phi.in_range() {
            return Err(Error::Domain(format!("phi = {phi} outside [0, pi)")));
        }
        Ok(CoupledBC { phi, r })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryCondition {
    Separated(SeparatedBC),
    Coupled(CoupledBC),
}

impl From<SeparatedBC> for BoundaryCondition {
    fn from(b: SeparatedBC) -> Self {
        BoundaryCondition::Separated(b)
    }
}

impl From<CoupledBC> for BoundaryCondition {
    fn from(b: CoupledBC) -> Self {
        BoundaryCondition::Coupled(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_detection() {
        let p = OperatorParams::new(0.5, 0.25).unwrap();
        assert_eq!(p.mu.exact, Some((1, 2)));
        assert_eq!(p.nu.exact, Some((1, 4)));
        assert!(OperatorParams::new(1.0, 0.0).is_err());
        assert_eq!(Param::ratio(2, 6).unwrap().exact, Some((1, 3)));
        let a = Angle::half_pi();
        assert_eq!(a.cos_sin::<f64>(), (0.0, 1.0));
        assert!(Angle::pi_ratio(2, 4).is_half_pi());
        assert!(CoupledBC::new(Angle::half_pi(), [[2.0, 0.0], [0.0, 0.4]]).is_err());
        assert_eq!(format!("{}", Angle::pi_ratio(3, 4)), "3*pi/4");
    }
}
