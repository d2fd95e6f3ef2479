mod commands;
mod output;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const SUBCOMMANDS: [&str; 6] = ["eigs", "zeta", "structure", "det", "coeffs", "verify"];

#[derive(Parser, Debug)]
#[command(name = "ptzeta", version, about = "Spectral zeta functions of the Poschl-Teller operator", args_override_self = true)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// JSON file whose keys are flag names (without dashes); explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// The operator and its self-adjoint extension.
#[derive(Args, Debug, Clone)]
pub struct OpArgs {
    /// μ as "p/q" or a decimal in [0, 1).
    #[arg(long, default_value = "0")]
    pub mu: String,
    /// ν as "p/q" or a decimal in [0, 1).
    #[arg(long, default_value = "0")]
    pub nu: String,
    /// Angle at x = 0: radians or "k*pi/n".
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    /// Angle at x = π/2.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
    /// Coupled extension: phase φ; the R entries default to the identity.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r11: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r12: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r21: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r22: Option<f64>,
}

/// Overrides of the continuation settings.
#[derive(Args, Debug, Clone, Default)]
pub struct ContArgs {
    /// Branch-cut direction Ψ ∈ (π/2, π).
    #[arg(long)]
    pub psi: Option<f64>,
    /// Truncation order N of the large-z expansion.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub split: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Refusal radius around catalogued singularities.
    #[arg(long)]
    pub guard: Option<f64>,
    #[arg(long)]
    pub direct_terms: Option<usize>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EigMethod {
    Auto,
    Root,
    Closed,
    Oracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZetaMethodArg {
    Auto,
    Closed,
    Direct,
    Continued,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffKind {
    R,
    P,
    E,
    C,
    G,
    S,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CSignArg {
    Minus,
    Plus,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues: the lowest `count`, or all inside `window`.
    Eigs {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// "lo:hi"; replaces --count.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        method: EigMethod,
        /// Lower end of the scan for negative eigenvalues.
        #[arg(long, allow_hyphen_values = true, default_value_t = ptzeta::eigen::DEFAULT_FLOOR)]
        floor: f64,
        /// Also run the finite-difference oracle and report the largest deviation.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
    },
    /// ζ(s) by every applicable method, or by the one requested.
    Zeta {
        #[command(flatten)]
        op: OpArgs,
        /// Complex point "a+bi".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: ZetaMethodArg,
        #[command(flatten)]
        cont: ContArgs,
    },
    /// Poles and branch points of ζ (separated extensions).
    Structure {
        #[command(flatten)]
        op: OpArgs,
        /// List singularities with Re s > -depth.
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// ζ'(0) (regularized when α ≠ 0) and the determinant.
    Det {
        #[command(flatten)]
        op: OpArgs,
        /// Compare with a numerical derivative of the continued ζ.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
        #[command(flatten)]
        cont: ContArgs,
    },
    /// Exact coefficient tables of the large-z expansion.
    Coeffs {
        #[arg(long, value_enum, ignore_case = true)]
        kind: CoeffKind,
        #[arg(long)]
        m: usize,
        /// Sign of the Bernoulli sum in E_k; `plus` reproduces the printed tables.
        #[arg(long, value_enum, default_value = "minus")]
        c_sign: CSignArg,
        /// ν = p/q for kind S.
        #[arg(long)]
        nu: Option<String>,
        /// β for kind S.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Runs acceptance criteria: "all" or a comma-separated list of numbers.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Inserts the keys of the config file as flags right after the subcommand, so that
/// explicit flags (parsed later) override them.
fn expand_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("config {path}: {e}"))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("config {path}: {e}"))?;
    let obj = v.as_object().ok_or_else(|| format!("config {path}: expected a JSON object"))?;
    let mut extra = Vec::new();
    for (k, val) in obj {
        let flag = format!("--{}", k.replace('_', "-"));
        match val {
            serde_json::Value::Bool(true) => extra.push(flag),
            serde_json::Value::Bool(false) | serde_json::Value::Null => {}
            serde_json::Value::String(s) => extra.extend([flag, s.clone()]),
            serde_json::Value::Number(n) => extra.extend([flag, n.to_string()]),
            _ => return Err(format!("config {path}: value of '{k}' must be a string, number or boolean")),
        }
    }
    let Some(at) = args.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())) else {
        return Ok(args);
    };
    let mut out = args[..=at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at + 1..]);
    Ok(out)
}

fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn main() -> ExitCode {
    let args = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(commands::CliError::Input(m)) => {
            eprintln!("input error: {m}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Compute(m)) => {
            eprintln!("computation failed: {m}");
            ExitCode::from(1)
        }
        Err(commands::CliError::Failed(text)) => {
            emit(&text);
            ExitCode::from(1)
        }
    }
}
