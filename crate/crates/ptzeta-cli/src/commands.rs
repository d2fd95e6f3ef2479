use num_complex::Complex64;
use ptzeta::acceptance;
use ptzeta::asymcoeff::{
    c_coefficient, e_coefficient_signed, g_coefficient, p_coefficient_signed, r_coefficients_signed, s_coefficients, CSign,
};
use ptzeta::continuation::{structure_report, zeta_closed_form, zeta_direct, ContinuedZeta};
use ptzeta::determinant::{agree_mod_2pi_i, det_friedrichs, det_regularized, numeric_zeta_prime};
use ptzeta::eigen::{closed_form_shift, closed_form_spectrum, find_eigenvalues, lowest_eigenvalues};
use ptzeta::oracle::oracle_eigenvalues;
use ptzeta::specialfn::RatPoly;
use ptzeta::{
    Angle, BoundaryCondition, ContinuationConfig, CoupledBC, Error, OperatorParams, SeparatedBC, Spectrum, ZetaValue,
};

use crate::output::{Out, Table, SCHEMA};
use crate::parse::{self, show_param};
use crate::{Cli, CoeffKind, Command, ContArgs, CSignArg, EigMethod, Format, OpArgs, ZetaMethodArg};

#[derive(Debug)]
pub enum CliError {
    /// Malformed or out-of-range input (exit code 2).
    Input(String),
    /// A computation that could not be completed (exit code 1).
    Compute(String),
    /// A complete report whose verdict is failure (exit code 1).
    Failed(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn compute(e: Error) -> CliError {
    let hint = match e {
        Error::Pole { .. } => "; `ptzeta structure` lists the catalogued singularities",
        _ => "",
    };
    CliError::Compute(format!("{e}{hint}"))
}

struct Operator {
    params: OperatorParams,
    bc: BoundaryCondition,
}

impl Operator {
    fn separated(&self) -> CliResult<SeparatedBC> {
        match self.bc {
            BoundaryCondition::Separated(s) => Ok(s),
            BoundaryCondition::Coupled(_) => Err(CliError::Input("this command needs a separated extension (no --phi)".into())),
        }
    }

    fn describe(&self) -> Out {
        let bc = match self.bc {
            BoundaryCondition::Separated(s) => {
                Out::obj().with("type", "separated").with("alpha", s.alpha.to_string()).with("beta", s.beta.to_string())
            }
            BoundaryCondition::Coupled(c) => Out::obj()
                .with("type", "coupled")
                .with("phi", c.phi.to_string())
                .with("r", Out::Arr(c.r.iter().map(|row| Out::nums(row)).collect())),
        };
        Out::obj().with("mu", show_param(&self.params.mu)).with("nu", show_param(&self.params.nu)).with("bc", bc)
    }
}

fn operator(a: &OpArgs) -> CliResult<Operator> {
    let mu = parse::param(&a.mu, "mu").map_err(CliError::Input)?;
    let nu = parse::param(&a.nu, "nu").map_err(CliError::Input)?;
    let params = OperatorParams::from_params(mu, nu);
    let bc = match &a.phi {
        Some(phi) => {
            let phi = parse::angle(phi, "phi").map_err(CliError::Input)?;
            let r = [[a.r11.unwrap_or(1.0), a.r12.unwrap_or(0.0)], [a.r21.unwrap_or(0.0), a.r22.unwrap_or(1.0)]];
            CoupledBC::new(phi, r).map_err(input)?.into()
        }
        None => {
            let alpha = parse::angle(&a.alpha, "alpha").map_err(CliError::Input)?;
            let beta = parse::angle(&a.beta, "beta").map_err(CliError::Input)?;
            SeparatedBC::new(alpha, beta).map_err(input)?.into()
        }
    };
    Ok(Operator { params, bc })
}

fn config(c: &ContArgs) -> CliResult<ContinuationConfig> {
    let d = ContinuationConfig::default();
    let cfg = ContinuationConfig {
        psi: c.psi.unwrap_or(d.psi),
        n: c.order.unwrap_or(d.n),
        split: c.split.unwrap_or(d.split),
        cutoff: c.cutoff.or(d.cutoff),
        guard: c.guard.unwrap_or(d.guard),
        direct_terms: c.direct_terms.unwrap_or(d.direct_terms),
        abs_tol: c.abs_tol.unwrap_or(d.abs_tol),
        rel_tol: c.rel_tol.unwrap_or(d.rel_tol),
        ..d
    };
    cfg.validate().map_err(input)?;
    Ok(cfg)
}

fn header(command: &str) -> Out {
    Out::obj().with("schema", SCHEMA).with("command", command)
}

fn merge(a: Out, b: Out) -> Out {
    match (a, b) {
        (Out::Obj(mut x), Out::Obj(y)) => {
            x.extend(y);
            Out::Obj(x)
        }
        (a, _) => a,
    }
}

pub fn run(cli: &Cli) -> CliResult<String> {
    let (json, table) = match &cli.command {
        Command::Eigs { op, count, window, method, floor, oracle, grid, epsilon } => {
            eigs(&operator(op)?, *count, window.as_deref(), *method, *floor, *oracle, *grid, *epsilon)?
        }
        Command::Zeta { op, s, method, cont } => {
            let s = parse::complex(s).map_err(CliError::Input)?;
            zeta(&operator(op)?, s, *method, &config(cont)?)?
        }
        Command::Structure { op, depth } => structure(&operator(op)?, *depth)?,
        Command::Det { op, numeric, h, cont } => det(&operator(op)?, *numeric, *h, &config(cont)?)?,
        Command::Coeffs { kind, m, c_sign, nu, beta } => coeffs(*kind, *m, *c_sign, nu.as_deref(), beta.as_deref())?,
        Command::Verify { suite } => return verify(suite, cli.format),
    };
    Ok(match cli.format {
        Format::Json => json.to_json(),
        Format::Csv => table.to_csv(),
    })
}

#[allow(clippy::too_many_arguments)]
fn eigs(
    op: &Operator,
    count: usize,
    window: Option<&str>,
    method: EigMethod,
    floor: f64,
    with_oracle: bool,
    grid: usize,
    epsilon: f64,
) -> CliResult<(Out, Table)> {
    if count == 0 {
        return Err(CliError::Input("count must be positive".into()));
    }
    let spec: Spectrum = match (window, method) {
        (Some(w), EigMethod::Auto | EigMethod::Root) => {
            let (lo, hi) = parse::window(w).map_err(CliError::Input)?;
            find_eigenvalues(&op.params, &op.bc, lo, hi).map_err(compute)?
        }
        (Some(_), _) => return Err(CliError::Input("--window works with the root finder only".into())),
        (None, EigMethod::Closed) => closed_form_spectrum(&op.params, &op.bc, count).map_err(compute)?,
        (None, EigMethod::Auto) if closed_form_shift(&op.params, &op.bc).is_some() => {
            closed_form_spectrum(&op.params, &op.bc, count).map_err(compute)?
        }
        (None, EigMethod::Auto | EigMethod::Root) => lowest_eigenvalues(&op.params, &op.bc, count, floor).map_err(compute)?,
        (None, EigMethod::Oracle) => oracle_eigenvalues(&op.params, &op.separated()?, count, grid, epsilon).map_err(compute)?,
    };
    let mut json = merge(header("eigs"), op.describe())
        .with("method", spec.method.as_str())
        .with("eigenvalues", Out::nums(&spec.eigenvalues))
        .with("multiplicities", spec.multiplicities.clone())
        .with("residuals", Out::nums(&spec.residuals));
    let mut table = Table::new(&["index", "eigenvalue", "multiplicity", "residual"]);
    for (i, ((l, m), r)) in spec.eigenvalues.iter().zip(&spec.multiplicities).zip(&spec.residuals).enumerate() {
        table.push(vec![i.to_string(), crate::output::num(*l), m.to_string(), crate::output::num(*r)]);
    }
    if with_oracle {
        let ev = spec.expanded();
        let n = ev.len().min(ptzeta::oracle::MAX_COUNT);
        if n == 0 {
            return Err(CliError::Compute("no eigenvalues to compare with the oracle".into()));
        }
        let o = oracle_eigenvalues(&op.params, &op.separated()?, n, grid, epsilon).map_err(compute)?;
        let dev = o.eigenvalues.iter().zip(&ev).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        json = json.with("oracle_eigenvalues", Out::nums(&o.eigenvalues)).with("max_oracle_deviation", dev);
    }
    Ok((json, table))
}

fn value_out(v: &ZetaValue) -> Out {
    Out::obj().with("method", v.method.as_str()).with("value", v.value).with("err", v.err_estimate)
}

fn zeta(op: &Operator, s: Complex64, method: ZetaMethodArg, cfg: &ContinuationConfig) -> CliResult<(Out, Table)> {
    let closed = || zeta_closed_form(&op.params, &op.bc, s);
    let direct = || zeta_direct(&op.params, &op.bc, s, cfg.direct_terms);
    let continued = || -> ptzeta::Result<ZetaValue> {
        let sb = match op.bc {
            BoundaryCondition::Separated(sb) => sb,
            BoundaryCondition::Coupled(_) => return Err(Error::Unsupported("continuation needs a separated extension".into())),
        };
        ContinuedZeta::new(&op.params, &sb, cfg)?.eval(s)
    };
    let mut values = Vec::new();
    let mut skipped = Vec::new();
    match method {
        ZetaMethodArg::Closed => values.push(closed().map_err(compute)?),
        ZetaMethodArg::Direct => values.push(direct().map_err(compute)?),
        ZetaMethodArg::Continued => values.push(continued().map_err(compute)?),
        ZetaMethodArg::Auto => {
            let tries: [(&str, &dyn Fn() -> ptzeta::Result<ZetaValue>); 3] =
                [("closed-form", &closed), ("continued", &continued), ("direct", &direct)];
            for (name, f) in tries {
                match f() {
                    Ok(v) => values.push(v),
                    Err(e @ (Error::Pole { .. } | Error::Singularity { .. })) => return Err(compute(e)),
                    Err(e) => skipped.push(Out::obj().with("method", name).with("reason", e.to_string())),
                }
            }
            if values.is_empty() {
                let reasons: Vec<String> = skipped
                    .iter()
                    .filter_map(|o| match o {
                        Out::Obj(m) => m.iter().find(|(k, _)| k == "reason").and_then(|(_, v)| match v {
                            Out::Str(r) => Some(r.clone()),
                            _ => None,
                        }),
                        _ => None,
                    })
                    .collect();
                return Err(CliError::Compute(format!("no method applies at s = {s}: {}", reasons.join("; "))));
            }
        }
    }
    let best = values[0];
    let agreement = if values.len() > 1 {
        let mut d = 0.0f64;
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                d = d.max((values[i].value - values[j].value).norm());
            }
        }
        Some(d)
    } else {
        None
    };
    let json = merge(header("zeta"), op.describe())
        .with("s", s)
        .with("value", best.value)
        .with("err", best.err_estimate)
        .with("method", best.method.as_str())
        .with("methods", Out::Arr(values.iter().map(value_out).collect()))
        .with("agreement", agreement)
        .with("skipped", Out::Arr(skipped));
    let mut table = Table::new(&["method", "re", "im", "err"]);
    for v in &values {
        table.push(vec![
            v.method.as_str().into(),
            crate::output::num(v.value.re),
            crate::output::num(v.value.im),
            crate::output::num(v.err_estimate),
        ]);
    }
    Ok((json, table))
}

fn structure(op: &Operator, depth: usize) -> CliResult<(Out, Table)> {
    let r = structure_report(&op.params, &op.separated()?, depth).map_err(compute)?;
    let mut table = Table::new(&["type", "location", "value", "kind", "status", "residue_re", "residue_im", "witness"]);
    let poles: Vec<Out> = r
        .poles
        .iter()
        .map(|p| {
            table.push(vec![
                "pole".into(),
                p.location.to_string(),
                crate::output::num(p.location.value()),
                "simple".into(),
                p.status.as_str().into(),
                p.residue.map_or(String::new(), |z| crate::output::num(z.re)),
                p.residue.map_or(String::new(), |z| crate::output::num(z.im)),
                String::new(),
            ]);
            Out::obj()
                .with("location", p.location.to_string())
                .with("value", p.location.value())
                .with("residue", p.residue)
                .with("status", p.status.as_str())
        })
        .collect();
    let branch: Vec<Out> = r
        .branch_points
        .iter()
        .map(|b| {
            table.push(vec![
                "branch-point".into(),
                b.location.to_string(),
                crate::output::num(b.location.value()),
                b.kind.into(),
                b.status.as_str().into(),
                String::new(),
                String::new(),
                b.witness.map_or(String::new(), crate::output::num),
            ]);
            Out::obj()
                .with("location", b.location.to_string())
                .with("value", b.location.value())
                .with("kind", b.kind)
                .with("status", b.status.as_str())
                .with("witness", b.witness)
        })
        .collect();
    let json = merge(header("structure"), op.describe())
        .with("case", r.case)
        .with("depth", r.depth)
        .with("poles", Out::Arr(poles))
        .with("branch_points", Out::Arr(branch))
        .with("notes", r.notes.clone());
    Ok((json, table))
}

fn det(op: &Operator, numeric: bool, h: f64, cfg: &ContinuationConfig) -> CliResult<(Out, Table)> {
    let sb = op.separated()?;
    let r = if sb.alpha.is_zero() && sb.beta.is_zero() {
        det_friedrichs(op.params.mu.value, op.params.nu.value).map_err(compute)?
    } else if op.params.mu.is_zero() {
        det_regularized(op.params.nu, sb.alpha, sb.beta).map_err(compute)?
    } else {
        return Err(CliError::Compute("determinants outside the Friedrichs family need mu = 0".into()));
    };
    let mut json = merge(header("det"), op.describe())
        .with("zeta_prime_zero", r.zeta_prime_zero)
        .with("det", r.det)
        .with("regularized", r.regularized)
        .with("limit_constant", r.limit_constant)
        .with("m0", r.m0);
    let mut table = Table::new(&["quantity", "re", "im"]);
    let n = crate::output::num;
    table.push(vec!["zeta_prime_zero".into(), n(r.zeta_prime_zero.re), n(r.zeta_prime_zero.im)]);
    table.push(vec!["det".into(), n(r.det.re), n(r.det.im)]);
    if numeric {
        if !op.params.mu.is_zero() {
            return Err(CliError::Compute("the numerical derivative needs mu = 0".into()));
        }
        if !(h > 0.0 && h < 0.1) {
            return Err(CliError::Input(format!("h = {h} must lie in (0, 0.1)")));
        }
        let d = numeric_zeta_prime(op.params.nu, sb.alpha, sb.beta, h, cfg).map_err(compute)?;
        let k = ((r.zeta_prime_zero - d).im / (2.0 * std::f64::consts::PI)).round();
        let diff = (r.zeta_prime_zero - d - Complex64::new(0.0, 2.0 * std::f64::consts::PI * k)).norm();
        json = json
            .with("numeric_zeta_prime_zero", d)
            .with("numeric_difference_mod_2pi_i", diff)
            .with("agrees_mod_2pi_i", agree_mod_2pi_i(r.zeta_prime_zero, d, 1e-4));
        table.push(vec!["numeric_zeta_prime_zero".into(), n(d.re), n(d.im)]);
    }
    Ok((json, table))
}

/// An exact coefficient as "num/den", also when den = 1.
fn rational<T: std::fmt::Display>(c: &T) -> String {
    let t = c.to_string();
    if t.contains('/') {
        t
    } else {
        format!("{t}/1")
    }
}

fn poly_out(p: &RatPoly) -> Out {
    Out::Arr(p.coeffs().iter().map(|c| Out::Str(rational(c))).collect())
}

fn coeffs(kind: CoeffKind, m: usize, sign: CSignArg, nu: Option<&str>, beta: Option<&str>) -> CliResult<(Out, Table)> {
    let sign = match sign {
        CSignArg::Minus => CSign::Minus,
        CSignArg::Plus => CSign::Plus,
    };
    let sign_name = if sign == CSign::Minus { "minus" } else { "plus" };
    let mut table = Table::new(&["m", "l", "power", "coefficient"]);
    let (name, variable, entries): (&str, &str, Vec<RatPoly>) = match kind {
        CoeffKind::R => {
            if m == 0 {
                return Err(CliError::Input("R_m needs m >= 1".into()));
            }
            let r = r_coefficients_signed(m, sign).pop().unwrap();
            ("R", "nu", (0..=r.order()).map(|l| r.entry(l)).collect())
        }
        CoeffKind::P => {
            let p = p_coefficient_signed(m, sign);
            ("P", "y", (0..=p.order()).map(|l| p.entry(l)).collect())
        }
        CoeffKind::E => {
            if m == 0 {
                return Err(CliError::Input("E_k needs k >= 1".into()));
            }
            ("E", "y", vec![e_coefficient_signed(m, sign)])
        }
        CoeffKind::C => {
            if m == 0 {
                return Err(CliError::Input("C_m needs m >= 1".into()));
            }
            ("C", "y", vec![c_coefficient(m)])
        }
        CoeffKind::G => ("G", "y", vec![g_coefficient(m)]),
        CoeffKind::S => return s_table(m, nu, beta),
    };
    for (l, e) in entries.iter().enumerate() {
        for (k, c) in e.coeffs().iter().enumerate() {
            table.push(vec![m.to_string(), l.to_string(), k.to_string(), rational(c)]);
        }
    }
    let json = header("coeffs")
        .with("kind", name)
        .with("m", m)
        .with("variable", variable)
        .with("c_sign", sign_name)
        .with("entries", Out::Arr(entries.iter().enumerate().map(|(l, e)| Out::obj().with("l", l).with("coefficients", poly_out(e))).collect()));
    Ok((json, table))
}

fn s_table(m: usize, nu: Option<&str>, beta: Option<&str>) -> CliResult<(Out, Table)> {
    let nu = parse::param(nu.ok_or_else(|| CliError::Input("kind S needs --nu p/q".into()))?, "nu").map_err(CliError::Input)?;
    let (p, q) = nu.exact.filter(|&(p, _)| p > 0).ok_or_else(|| CliError::Input("kind S needs a nonzero rational nu".into()))?;
    let beta: Angle = parse::angle(beta.ok_or_else(|| CliError::Input("kind S needs --beta".into()))?, "beta").map_err(CliError::Input)?;
    let s = s_coefficients::<f64>(p as u64, q as u64, &beta, m + 1).map_err(compute)?;
    let e = &s[m];
    let mut table = Table::new(&["m", "l", "re", "im"]);
    let n = crate::output::num;
    let entries: Vec<Out> = e
        .entries()
        .iter()
        .enumerate()
        .map(|(l, z)| {
            table.push(vec![m.to_string(), l.to_string(), n(z.re), n(z.im)]);
            Out::obj().with("l", l).with("value", *z)
        })
        .collect();
    let json = header("coeffs").with("kind", "S").with("m", m).with("nu", show_param(&nu)).with("beta", beta.to_string()).with("entries", Out::Arr(entries));
    Ok((json, table))
}

fn verify(suite: &str, format: Format) -> CliResult<String> {
    let ids: Vec<usize> = if suite.trim() == "all" {
        (1..=acceptance::TITLES.len()).collect()
    } else {
        suite
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|i| (1..=acceptance::TITLES.len()).contains(i))
                    .ok_or_else(|| CliError::Input(format!("suite: '{t}' is not a criterion number 1..=13 or 'all'")))
            })
            .collect::<CliResult<_>>()?
    };
    let outcomes: Vec<acceptance::Outcome> = ids.into_iter().map(acceptance::run).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let text = match format {
        Format::Json => header("verify")
            .with("passed", outcomes.len() - failed)
            .with("failed", failed)
            .with(
                "results",
                Out::Arr(
                    outcomes
                        .iter()
                        .map(|o| {
                            Out::obj()
                                .with("id", o.id)
                                .with("title", o.title)
                                .with("status", if o.passed { "PASS" } else { "FAIL" })
                                .with("detail", o.detail.clone())
                                .with("seconds", o.seconds)
                        })
                        .collect(),
                ),
            )
            .to_json(),
        Format::Csv => {
            let mut t = Table::new(&["id", "title", "status", "seconds", "detail"]);
            for o in &outcomes {
                t.push(vec![
                    o.id.to_string(),
                    o.title.into(),
                    if o.passed { "PASS" } else { "FAIL" }.into(),
                    format!("{:.3}", o.seconds),
                    o.detail.clone(),
                ]);
            }
            t.to_csv()
        }
    };
    if failed > 0 {
        Err(CliError::Failed(text))
    } else {
        Ok(text)
    }
}
