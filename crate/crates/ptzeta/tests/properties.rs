use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use ptzeta::continuation::{residue_at, shifted_zeta, structure_report, zeta_closed_form, ContinuedZeta, ShiftedZeta};
use ptzeta::determinant::{agree_mod_2pi_i, det_regularized};
use ptzeta::eigen::{lowest_eigenvalues, DEFAULT_FLOOR};
use ptzeta::oracle::oracle_eigenvalues;
use ptzeta::specialfn::{hurwitz_zeta_f64, ln_gamma};
use ptzeta::{Angle, BoundaryCondition, ContinuationConfig, OperatorParams, SeparatedBC};

fn sep(a: f64, b: f64) -> SeparatedBC {
    SeparatedBC::new(Angle::radians(a), Angle::radians(b)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parameters_outside_the_range_are_rejected(nu in 1.0f64..5.0) {
        prop_assert!(OperatorParams::new(0.0, nu).is_err());
        prop_assert!(OperatorParams::new(nu, 0.0).is_err());
    }

    #[test]
    fn hurwitz_shift(re in -3.0f64..4.0, im in -2.0f64..2.0, a in 0.1f64..3.0) {
        let s = Complex64::new(re, im);
        prop_assume!((s - 1.0).norm() > 0.05);
        let lhs = hurwitz_zeta_f64(s, a, 0).unwrap() - hurwitz_zeta_f64(s, a + 1.0, 0).unwrap();
        let rhs = (-s * a.ln()).exp();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn gamma_recurrence(re in 0.1f64..20.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let d = ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap();
        prop_assert!(agree_mod_2pi_i(d, z.ln(), 1e-11 * z.norm().max(1.0)));
    }

    #[test]
    fn agreement_ignores_multiples_of_two_pi_i(re in -5.0f64..5.0, im in -5.0f64..5.0, k in -4i32..4) {
        let a = Complex64::new(re, im);
        prop_assert!(agree_mod_2pi_i(a, a + Complex64::new(0.0, 2.0 * PI * k as f64), 1e-12));
        prop_assert!(!agree_mod_2pi_i(a, a + Complex64::new(0.0, PI), 1e-3));
    }

    #[test]
    fn shift_relation_on_hurwitz_families(s in 0.8f64..2.5, a in 0.6f64..0.95, f in 0.05f64..0.6) {
        // Σ ((n + a)² + d)^{-s} from Σ (n + a)^{-2s}
        let d = f * a * a;
        let zeta0 = |w: Complex64| hurwitz_zeta_f64(w * 2.0, a, 0);
        let shift = ShiftedZeta { a1: 4.0, a2: 0.0, m0: 0, lambda1: a * a };
        prop_assert!(shifted_zeta(zeta0, &shift, Complex64::new(s, 0.0), 30).is_err());
        let shift = ShiftedZeta { a1: 1.0, a2: d, m0: 0, lambda1: a * a };
        let v = shifted_zeta(|w| zeta0(w), &shift, Complex64::new(s, 0.0), 60).unwrap();
        let direct: f64 = (0..400_000).map(|n| ((n as f64 + a).powi(2) + d).powf(-s)).sum();
        let tail = ((400_000.0 + a).powf(1.0 - 2.0 * s)) / (2.0 * s - 1.0);
        prop_assert!((v.value.re - direct - tail).abs() < 1e-6 * direct, "{} vs {}", v.value.re, direct + tail);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn friedrichs_root_finding_matches_the_closed_form(mu in 0.05f64..0.95, nu in 0.05f64..0.95) {
        let p = OperatorParams::new(mu, nu).unwrap();
        let bc: BoundaryCondition = SeparatedBC::friedrichs().into();
        let ev = lowest_eigenvalues(&p, &bc, 8, DEFAULT_FLOOR).unwrap().expanded();
        for (n, l) in ev.iter().enumerate() {
            let e = (2.0 * n as f64 + 1.0 + mu + nu).powi(2);
            prop_assert!((l - e).abs() <= 1e-10 * e, "{l} vs {e}");
        }
        let z = zeta_closed_form(&p, &bc, Complex64::new(0.0, 0.0)).unwrap().value;
        // ζ_H(0, a) = 1/2 - a
        prop_assert!((z.re - (0.5 - 0.5 * (1.0 + mu + nu))).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_increase_with_the_angle(nu in 0.3f64..0.9, a in 0.8f64..2.8, b1 in 0.6f64..2.0, db in 0.05f64..0.5) {
        let p = OperatorParams::new(0.0, nu).unwrap();
        let lo = lowest_eigenvalues(&p, &sep(a, b1).into(), 4, DEFAULT_FLOOR).unwrap().expanded();
        let hi = lowest_eigenvalues(&p, &sep(a, b1 + db).into(), 4, DEFAULT_FLOOR).unwrap().expanded();
        for (x, y) in lo.iter().zip(&hi) {
            prop_assert!(y > x || (x - y).abs() < 1e-9, "{lo:?} vs {hi:?}");
        }
    }

    #[test]
    fn determinant_is_the_exponential(nu in 0.05f64..0.95, a in 0.1f64..3.0, neumann in any::<bool>()) {
        let n = OperatorParams::new(0.0, nu).unwrap().nu;
        let b = if neumann { Angle::half_pi() } else { Angle::zero() };
        for alpha in [Angle::zero(), Angle::radians(a)] {
            if alpha.is_zero() && b.is_zero() {
                continue;
            }
            let r = det_regularized(n, alpha, b).unwrap();
            prop_assert_eq!(r.det, (-r.zeta_prime_zero).exp());
            prop_assert_eq!(r.regularized, !alpha.is_zero());
        }
    }

    #[test]
    fn structure_reports_are_well_formed(k in 0usize..3, a in 0.0f64..3.0, b in 0.1f64..3.0, depth in 1usize..5) {
        let (p, q) = [(1, 2), (1, 3), (2, 3)][k];
        let params = OperatorParams::log_case(p, q).unwrap();
        let r = structure_report(&params, &sep(if a < 0.5 { 0.0 } else { a }, b), depth).unwrap();
        prop_assert_eq!(r.poles[0].residue, Some(Complex64::new(0.25, 0.0)));
        for x in r.locations() {
            prop_assert!(x > -(depth as f64) && x <= 0.5);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn continued_zeta_is_independent_of_psi(k in 0usize..3, a in 0.0f64..3.0, b in 0.0f64..3.0, re in -1.8f64..0.9, im in -1.0f64..1.0, psi in 1.65f64..2.95) {
        let (p, q) = [(1, 2), (1, 3), (2, 3)][k];
        let params = OperatorParams::log_case(p, q).unwrap();
        let bc = sep(if a < 0.3 { 0.0 } else { a }, if b < 0.3 { 0.0 } else { b });
        let s = Complex64::new(re, im);
        let base = ContinuedZeta::new(&params, &bc, &ContinuationConfig::default()).unwrap();
        prop_assume!(base.singular_points().iter().all(|&x| (s - x).norm() > 0.05));
        let z0 = base.eval(s).unwrap().value;
        let z1 = ContinuedZeta::new(&params, &bc, &ContinuationConfig { psi, ..Default::default() }).unwrap().eval(s).unwrap().value;
        prop_assert!((z0 - z1).norm() <= 1e-7 * z0.norm().max(1.0), "{z0} vs {z1}");
    }

    #[test]
    fn continued_zeta_is_real_on_the_real_axis_without_bound_states(k in 0usize..3, a in 2.7f64..3.05, b in 1.7f64..2.9, s in 0.55f64..0.95) {
        let (p, q) = [(1, 2), (1, 3), (2, 3)][k];
        let params = OperatorParams::log_case(p, q).unwrap();
        let bc = sep(a, b);
        let ev = lowest_eigenvalues(&params, &bc.into(), 1, DEFAULT_FLOOR).unwrap().eigenvalues;
        prop_assume!(ev[0] > 0.0);
        let z = ContinuedZeta::new(&params, &bc, &ContinuationConfig::default()).unwrap().eval(Complex64::new(s, 0.0)).unwrap().value;
        prop_assert!(z.im.abs() < 1e-10 * z.norm().max(1.0), "{z}");
    }

    #[test]
    fn residue_at_one_half_is_universal(k in 0usize..3, a in 0.0f64..3.0, b in 0.0f64..3.0) {
        let (p, q) = [(1, 2), (1, 3), (2, 3)][k];
        let params = OperatorParams::log_case(p, q).unwrap();
        let z = ContinuedZeta::new(&params, &sep(a, b), &ContinuationConfig::default()).unwrap();
        let r = residue_at(|s| Ok(z.eval_raw(s)?.value), 0.5, 0.2).unwrap();
        prop_assert!((r.value - 0.25).norm() < 1e-8, "{}", r.value);
    }

    #[test]
    fn oracle_tracks_the_root_finder(nu in 0.1f64..0.8, a in 0.8f64..2.8, b in 0.8f64..2.8) {
        let p = OperatorParams::new(0.0, nu).unwrap();
        let bc = sep(a, b);
        let o = oracle_eigenvalues(&p, &bc, 3, 2000, 1e-3).unwrap();
        let r = lowest_eigenvalues(&p, &bc.into(), 3, DEFAULT_FLOOR).unwrap().expanded();
        prop_assert!(o.eigenvalues.windows(2).all(|w| w[0] < w[1]));
        for (x, y) in o.eigenvalues.iter().zip(&r) {
            prop_assert!((x - y).abs() < 2e-4 * y.abs().max(1.0), "{x} vs {y}");
        }
    }
}
