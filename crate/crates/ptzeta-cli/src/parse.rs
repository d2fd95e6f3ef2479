//! Text forms of parameters, angles and complex numbers.

use num_complex::Complex64;
use ptzeta::{Angle, Param};

pub type ParseResult<T> = std::result::Result<T, String>;

fn int(t: &str, what: &str) -> ParseResult<i64> {
    t.trim().parse::<i64>().map_err(|_| format!("{what}: '{t}' is not an integer"))
}

fn float(t: &str, what: &str) -> ParseResult<f64> {
    let v = t.trim().parse::<f64>().map_err(|_| format!("{what}: '{t}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("{what}: '{t}' is not finite"));
    }
    Ok(v)
}

/// "p/q" or a decimal in [0, 1).
pub fn param(t: &str, what: &str) -> ParseResult<Param> {
    let t = t.trim();
    if let Some((p, q)) = t.split_once('/') {
        let (p, q) = (int(p, what)?, int(q, what)?);
        return Param::ratio(p, q).map_err(|e| format!("{what}: {e}"));
    }
    let v = float(t, what)?;
    ptzeta::OperatorParams::new(v, 0.0).map(|o| o.mu).map_err(|e| format!("{what}: {e}"))
}

/// "0", "pi", "pi/n", "k*pi", "k*pi/n" or radians.
pub fn angle(t: &str, what: &str) -> ParseResult<Angle> {
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if s.contains("pi") {
        let (num, den) = match s.split_once('/') {
            Some((a, d)) => (a.to_string(), int(d, what)?),
            None => (s.clone(), 1),
        };
        let k = match num.strip_suffix("pi").map(|k| k.trim_end_matches('*')) {
            Some("") => 1,
            Some("-") => -1,
            Some(k) => int(k, what)?,
            None => return Err(format!("{what}: cannot read angle '{t}'")),
        };
        if den <= 0 {
            return Err(format!("{what}: denominator of '{t}' must be positive"));
        }
        return Ok(Angle::pi_ratio(k, den));
    }
    Ok(Angle::radians(float(&s, what)?))
}

/// "a", "bi", "a+bi", "a-bi", optionally in parentheses.
pub fn complex(t: &str) -> ParseResult<Complex64> {
    let mut s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if s.starts_with('(') && s.ends_with(')') {
        s = s[1..s.len() - 1].to_string();
    }
    let bad = || format!("s: cannot read complex number '{t}'");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex64::new(float(&s, "s")?, 0.0));
    };
    // split at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let mut cut = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            cut = Some(k);
            break;
        }
    }
    let imag = |x: &str| -> ParseResult<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => float(x, "s").map_err(|_| bad()),
        }
    };
    match cut {
        Some(k) => Ok(Complex64::new(float(&body[..k], "s").map_err(|_| bad())?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// "lo:hi".
pub fn window(t: &str) -> ParseResult<(f64, f64)> {
    let (a, b) = t.split_once(':').ok_or_else(|| format!("window: expected lo:hi, got '{t}'"))?;
    let (a, b) = (float(a, "window")?, float(b, "window")?);
    if !(a < b) {
        return Err(format!("window: need lo < hi, got {a}:{b}"));
    }
    Ok((a, b))
}

pub fn show_param(p: &Param) -> String {
    match p.exact {
        Some((n, 1)) => format!("{n}"),
        Some((n, d)) => format!("{n}/{d}"),
        None => format!("{}", p.value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_decimals() {
        assert_eq!(param("1/3", "nu").unwrap().exact, Some((1, 3)));
        assert_eq!(param("0.5", "nu").unwrap().exact, Some((1, 2)));
        assert_eq!(param("2/4", "nu").unwrap().exact, Some((1, 2)));
        assert!(param("5/3", "nu").unwrap_err().contains("outside [0, 1)"));
        assert!(param("abc", "nu").is_err());
        assert_eq!(show_param(&param("1/3", "nu").unwrap()), "1/3");
    }

    #[test]
    fn angles() {
        assert!(angle("pi/2", "alpha").unwrap().is_half_pi());
        assert_eq!(angle("3*pi/4", "beta").unwrap().pi_frac, Some((3, 4)));
        assert_eq!(angle("2pi/6", "beta").unwrap().pi_frac, Some((1, 3)));
        assert_eq!(angle("pi", "beta").unwrap().pi_frac, Some((1, 1)));
        assert!(angle("0", "alpha").unwrap().is_zero());
        assert_eq!(angle("1.25", "alpha").unwrap().value, 1.25);
        assert!(angle("pi/0", "alpha").is_err());
        assert!(angle("x*pi", "alpha").is_err());
    }

    #[test]
    fn complex_numbers() {
        assert_eq!(complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(complex("0.5+2i").unwrap(), Complex64::new(0.5, 2.0));
        assert_eq!(complex("(-1.5-0.25i)").unwrap(), Complex64::new(-1.5, -0.25));
        assert_eq!(complex("1e-3-2e-2i").unwrap(), Complex64::new(1e-3, -2e-2));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert_eq!(complex("2.5e+1").unwrap(), Complex64::new(25.0, 0.0));
        assert!(complex("1+").is_err());
        assert!(complex("").is_err());
    }

    #[test]
    fn windows() {
        assert_eq!(window("-10:60").unwrap(), (-10.0, 60.0));
        assert!(window("5:1").is_err());
        assert!(window("5").is_err());
    }
}
