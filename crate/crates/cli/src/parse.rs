//! Parsing of exact numbers from command-line strings.

use euler_pade::bounds::Sign;
use euler_pade::rug::ops::Pow;
use euler_pade::rug::{Integer, Rational};

/// Integer in decimal notation.
pub fn integer(s: &str) -> Result<Integer, String> {
    s.trim().parse::<Integer>().map_err(|_| format!("'{s}' is not an integer"))
}

/// Exact rational from `n`, `n/d` or a terminating decimal such as `-0.25`.
pub fn rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("'{s}' is not a rational number (use n, n/d or a decimal)");
    if s.contains('/') {
        let r = s.parse::<Rational>().map_err(|_| bad())?;
        return Ok(r);
    }
    let Some((int_part, frac_part)) = s.split_once('.') else {
        return integer(s).map(Rational::from).map_err(|_| bad());
    };
    let (negative, int_digits) = match int_part.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
    };
    let all_digits = |x: &str| x.chars().all(|c| c.is_ascii_digit());
    if !all_digits(int_digits) || !all_digits(frac_part) || (int_digits.is_empty() && frac_part.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int_digits}{frac_part}");
    let numer = if digits.is_empty() { Integer::new() } else { digits.parse::<Integer>().map_err(|_| bad())? };
    let denom = Integer::from(10).pow(frac_part.len() as u32);
    let r = Rational::from((numer, denom));
    Ok(if negative { -r } else { r })
}

/// `+` / `-` (also `plus` / `minus`).
pub fn sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(format!("sign must be + or -, got '{other}'")),
    }
}
