use num_complex::Complex64;
use num_integer::Integer;
use std::f64::consts::PI;

use crate::asymcoeff::{assemble_l_asy, s_coefficients, AsyExpansion};
use crate::eigen::closed_form_shift;
use crate::error::{Error, Result};
use crate::operator::{zero_mode_multiplicity, OperatorParams, SeparatedBC};

/// An exact rational point num/den of the s-plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub num: i64,
    pub den: i64,
}

impl Location {
    pub fn new(num: i64, den: i64) -> Self {
        let g = num.gcd(&den).max(1);
        let sg = if den < 0 { -1 } else { 1 };
        Location { num: sg * num / g, den: sg * den / g }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Proven,
    Generic,
    /// Coincides with another catalogued point; the combined kind is not determined.
    Coincident,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Proven => "proven",
            Status::Generic => "generic",
            Status::Coincident => "coincident",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub location: Location,
    /// Computed from the large-z expansion when it reaches this far.
    pub residue: Option<Complex64>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchPoint {
    pub location: Location,
    pub kind: &'static str,
    pub status: Status,
    /// Largest |g_{m,j}|, j ≥ 1, behind a generic entry.
    pub witness: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    /// Which part of the case split applies: "i", "ii", "iii" or "iv".
    pub case: &'static str,
    /// Entries are listed for Re s > -depth.
    pub depth: usize,
    pub poles: Vec<Pole>,
    pub branch_points: Vec<BranchPoint>,
    pub notes: Vec<String>,
}

impl StructureReport {
    /// Real locations of every catalogued singularity.
    pub fn locations(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.poles.iter().map(|p| p.location.value()).collect();
        v.extend(self.branch_points.iter().map(|b| b.location.value()));
        v
    }
}

/// Res_{s=-ρ} ζ from the l = 0 terms of the expansion with exponent ρ.
pub(crate) fn residue_from_expansion(exp: &AsyExpansion<f64>, loc: Location) -> Option<Complex64> {
    let rho = (-loc.num, loc.den);
    if loc.num == 1 && loc.den == 2 {
        return Some(Complex64::new(0.25, 0.0));
    }
    let reach = exp.n as i64 + 1;
    if rho.0 >= reach * rho.1 {
        return None;
    }
    let r = rho.0 as f64 / rho.1 as f64;
    let c: Complex64 = exp.terms.iter().filter(|t| t.l == 0 && t.rho == rho).map(|t| t.coef).sum();
    let s = (PI * r).sin();
    Some(c * r * Complex64::from_polar(1.0, -PI * r) * s / PI)
}

fn half() -> Location {
    Location::new(1, 2)
}

/// The singularity catalogue of ζ(s; T^{(α,β)}_{μ,ν}) for Re s > -depth.
pub fn structure_report(params: &OperatorParams, bc: &SeparatedBC, depth: usize) -> Result<StructureReport> {
    let depth = depth.max(1);
    let d = depth as i64;
    let mut notes = Vec::new();
    let (a0, b0, bh) = (bc.alpha.is_zero(), bc.beta.is_zero(), bc.beta.is_half_pi());
    let closed = closed_form_shift(params, &(*bc).into());
    if closed.is_some() {
        notes.push("closed-form family: 2^{-2s} zeta_H(2s, a)".into());
        return Ok(StructureReport {
            case: "i",
            depth,
            poles: vec![Pole { location: half(), residue: Some(Complex64::new(0.25, 0.0)), status: Status::Proven }],
            branch_points: Vec::new(),
            notes,
        });
    }
    if !params.mu.is_zero() {
        return Err(Error::Unsupported("structure catalogue needs mu = 0 outside the closed-form families".into()));
    }
    let nu = params.nu;
    if nu.is_zero() {
        return Err(Error::Unsupported("structure catalogue needs nu in (0, 1)".into()));
    }
    let m0 = zero_mode_multiplicity(params, &(*bc).into())?.m0;
    let exp = assemble_l_asy::<f64>(params, bc, m0, depth)?;
    let mut poles = vec![Pole { location: half(), residue: Some(Complex64::new(0.25, 0.0)), status: Status::Proven }];
    let mut branch_points = Vec::new();
    let log_points = |bp: &mut Vec<BranchPoint>| {
        for j in 0..d {
            bp.push(BranchPoint { location: Location::new(-j, 1), kind: "log", status: Status::Proven, witness: None });
        }
    };
    if b0 || bh {
        if a0 {
            notes.push("alpha = 0 with beta in {0, pi/2}: Hurwitz family".into());
            return Ok(StructureReport { case: "i", depth, poles, branch_points, notes });
        }
        log_points(&mut branch_points);
        return Ok(StructureReport { case: "ii", depth, poles, branch_points, notes });
    }
    let (p, q) = nu.exact.ok_or_else(|| Error::Unsupported("beta outside {0, pi/2} needs rational nu = p/q".into()))?;
    for m in 1..q {
        let loc = Location::new(-m * p, q);
        if loc.value() > -(d as f64) {
            poles.push(Pole { location: loc, residue: residue_from_expansion(&exp, loc), status: Status::Proven });
        }
    }
    // M ≥ q with -(M+p)/q > -depth
    let m_max = d * q - p;
    let count = (m_max.max(q) + 1) as usize;
    let s = s_coefficients::<f64>(p as u64, q as u64, &bc.beta, count)?;
    let witness = |mm: i64| {
        let e = &s[mm as usize];
        (1..=e.order()).map(|j| e.entry(j).norm()).fold(0.0, f64::max)
    };
    let excluded_jp = |mm: i64| (0..q).any(|j| mm == j * p);
    let mut zero_witness = Vec::new();
    for mm in q..m_max {
        if excluded_jp(mm) {
            continue;
        }
        let loc = Location::new(-(mm + p), q);
        let integer = loc.is_integer();
        if a0 {
            if integer {
                continue;
            }
            poles.push(Pole { location: loc, residue: residue_from_expansion(&exp, loc), status: Status::Generic });
        } else {
            let w = witness(mm);
            let status = if integer { Status::Coincident } else { Status::Generic };
            if integer {
                notes.push(format!("s = {loc} coincides with a branch point at a negative integer: kind undetermined"));
            } else if w <= 1e-10 * s[mm as usize].entry(0).norm().max(1.0) {
                zero_witness.push(loc);
                if let Some(r) = residue_from_expansion(&exp, loc) {
                    notes.push(format!("s = {loc}: log coefficients vanish; the l = 0 term leaves a simple pole, residue {r:.6e}"));
                }
            }
            branch_points.push(BranchPoint { location: loc, kind: "log", status, witness: Some(w) });
        }
    }
    if !zero_witness.is_empty() {
        let list: Vec<String> = zero_witness.iter().map(|l| l.to_string()).collect();
        notes.push(format!("computed g_(m,j), j >= 1, vanish at s = {}", list.join(", ")));
    }
    if a0 {
        Ok(StructureReport { case: "iii", depth, poles, branch_points, notes })
    } else {
        log_points(&mut branch_points);
        branch_points.sort_by(|x, y| y.location.value().total_cmp(&x.location.value()));
        Ok(StructureReport { case: "iv", depth, poles, branch_points, notes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::Angle;

    fn bc(a: Angle, b: Angle) -> SeparatedBC {
        SeparatedBC::new(a, b).unwrap()
    }

    #[test]
    fn friedrichs_neumann_has_only_the_half_pole() {
        let r = structure_report(&OperatorParams::new(0.0, 0.3).unwrap(), &bc(Angle::zero(), Angle::half_pi()), 4).unwrap();
        assert_eq!(r.case, "i");
        assert_eq!(r.poles.len(), 1);
        assert!(r.branch_points.is_empty());
    }

    #[test]
    fn case_ii_branch_points() {
        let p = OperatorParams::new(0.0, 0.41).unwrap();
        let r = structure_report(&p, &bc(Angle::half_pi(), Angle::half_pi()), 3).unwrap();
        assert_eq!(r.case, "ii");
        let locs: Vec<_> = r.branch_points.iter().map(|b| b.location.num).collect();
        assert_eq!(locs, vec![0, -1, -2]);
    }

    #[test]
    fn case_iv_catalogue() {
        let p = OperatorParams::log_case(1, 3).unwrap();
        let r = structure_report(&p, &bc(Angle::pi_ratio(1, 4), Angle::pi_ratio(1, 4)), 3).unwrap();
        assert_eq!(r.case, "iv");
        let poles: Vec<_> = r.poles.iter().map(|x| x.location).collect();
        assert_eq!(poles, vec![Location::new(1, 2), Location::new(-1, 3), Location::new(-2, 3)]);
        for pole in &r.poles[1..] {
            assert!(pole.residue.unwrap().im.abs() < 1e-12 * pole.residue.unwrap().norm());
        }
        let generic: Vec<_> = r.branch_points.iter().filter(|b| b.status != Status::Proven).map(|b| b.location).collect();
        // M = 3, 4, 5, 6, 7 give -(M+1)/3; M = 5 lands on s = -2
        assert_eq!(generic, vec![Location::new(-4, 3), Location::new(-5, 3), Location::new(-2, 1), Location::new(-7, 3), Location::new(-8, 3)]);
        assert!(r.branch_points.iter().any(|b| b.status == Status::Coincident));
    }

    #[test]
    fn case_iii_excludes_integer_points() {
        let p = OperatorParams::log_case(1, 2).unwrap();
        let r = structure_report(&p, &bc(Angle::zero(), Angle::pi_ratio(1, 3)), 4).unwrap();
        assert_eq!(r.case, "iii");
        assert!(r.branch_points.is_empty());
        let poles: Vec<_> = r.poles.iter().map(|x| x.location).collect();
        assert_eq!(poles, vec![Location::new(1, 2), Location::new(-1, 2), Location::new(-3, 2), Location::new(-5, 2), Location::new(-7, 2)]);
    }
}
