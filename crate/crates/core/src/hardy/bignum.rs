use std::fmt;

use rug::ops::Pow;
use rug::{Complex, Float, Integer};

/// Guard bits carried above the requested decimal precision.
pub const GUARD_BITS: u32 = 32;

const ERR_PREC: u32 = 64;

/// Working precision in bits for `digits` decimal digits.
pub fn working_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

/// `10^{-digits}` at low precision.
pub fn decimal_tolerance(digits: u32) -> Float {
    Float::with_val(ERR_PREC, Float::u_pow_u(10, digits)).recip()
}

/// A real value at working precision with an absolute error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct BigReal {
    value: Float,
    err: Float,
}

impl BigReal {
    pub fn new(value: Float, err: Float) -> Self {
        BigReal { value, err: Float::with_val(ERR_PREC, err.abs()) }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    /// Estimated absolute error.
    pub fn error_bound(&self) -> &Float {
        &self.err
    }

    pub fn precision_bits(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Fixed-point decimal string with `frac_digits` digits after the point.
    pub fn to_fixed(&self, frac_digits: u32) -> String {
        format_fixed(&self.value, frac_digits)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        f.write_str(&self.to_fixed(digits))
    }
}

/// A complex value at working precision with an absolute error estimate
/// (bounding the modulus of the error).
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    value: Complex,
    err: Float,
}

impl BigComplex {
    pub fn new(value: Complex, err: Float) -> Self {
        BigComplex { value, err: Float::with_val(ERR_PREC, err.abs()) }
    }

    pub fn value(&self) -> &Complex {
        &self.value
    }

    pub fn re(&self) -> &Float {
        self.value.real()
    }

    pub fn im(&self) -> &Float {
        self.value.imag()
    }

    pub fn error_bound(&self) -> &Float {
        &self.err
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.value.prec().0, self.value.abs_ref())
    }

    pub fn to_fixed(&self, frac_digits: u32) -> (String, String) {
        (format_fixed(self.re(), frac_digits), format_fixed(self.im(), frac_digits))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        let (re, im) = self.to_fixed(digits);
        match im.strip_prefix('-') {
            Some(mag) => write!(f, "{re} - {mag}i"),
            None => write!(f, "{re} + {im}i"),
        }
    }
}

/// Round `x * 10^d` to the nearest integer and place the decimal point.
pub fn format_fixed(x: &Float, frac_digits: u32) -> String {
    let bits = x.prec() + working_bits(frac_digits);
    let scale = Float::with_val(bits, Integer::from(10).pow(frac_digits));
    let scaled = Float::with_val(bits, x * &scale);
    let n = scaled
        .round()
        .to_integer()
        .unwrap_or_default();
    let negative = n < 0;
    let mut digits = n.abs().to_string();
    let width = frac_digits as usize + 1;
    if digits.len() < width {
        digits = format!("{}{digits}", "0".repeat(width - digits.len()));
    }
    let split = digits.len() - frac_digits as usize;
    let (int_part, frac_part) = digits.split_at(split);
    let sign = if negative { "-" } else { "" };
    if frac_digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}
