use rug::{Float, Rational};

use super::bignum::{working_bits, BigReal};

/// Euler's constant γ by the Brent–McMillan recurrence, to `bits` bits.
///
/// With `A_0 = -ln n`, `B_0 = 1`:
/// `B_k = B_{k-1} n^2 / k^2`, `A_k = (A_{k-1} n^2 / k + B_k) / k`, and
/// `γ ≈ Σ A_k / Σ B_k` with error below `π e^{-4n}`.
pub(crate) fn gamma_bits(bits: u32) -> Float {
    let prec = bits + 32;
    let n = ((f64::from(bits) * std::f64::consts::LN_2 + 4.0) / 4.0).ceil() as u32 + 1;
    let n2 = Float::with_val(prec, n) * n;
    let mut a = -Float::with_val(prec, n).ln();
    let mut b = Float::with_val(prec, 1);
    let mut u = a.clone();
    let mut v = b.clone();
    let mut k = 1u32;
    loop {
        b *= &n2;
        b /= k;
        b /= k;
        a *= &n2;
        a /= k;
        a += &b;
        a /= k;
        u += &a;
        v += &b;
        if k > n {
            let small = Float::with_val(prec, &v >> (prec as i32));
            if b < small && Float::with_val(prec, a.abs_ref()) < small {
                break;
            }
        }
        k += 1;
    }
    Float::with_val(bits, u / v)
}

/// `Σ_{n>=1} x^n / (n n!)`, summed until the terms fall below `2^{-bits}`
/// past `n = 2|x|`.
pub(crate) fn ein_series(x: &Float, bits: u32) -> Float {
    let mut sum = Float::with_val(bits, 0);
    let mut term = Float::with_val(bits, 1);
    let threshold = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    let turn = 2.0 * x.to_f64().abs() + 2.0;
    let mut n = 1u32;
    loop {
        term *= x;
        term /= n;
        sum += Float::with_val(bits, &term / n);
        if f64::from(n) > turn && Float::with_val(bits, term.abs_ref()) < threshold {
            break;
        }
        n += 1;
    }
    sum
}

/// Euler's constant γ to `digits` decimal digits.
pub fn euler_gamma(digits: u32) -> BigReal {
    let bits = working_bits(digits);
    let value = gamma_bits(bits);
    let err = Float::with_val(64, Float::i_exp(1, -(bits as i32) + 4));
    BigReal::new(value, err)
}

/// The Euler–Gompertz constant `δ = -e (γ + Σ (-1)^n / (n n!))`.
pub fn euler_gompertz(digits: u32) -> BigReal {
    let bits = working_bits(digits) + 8;
    let gamma = gamma_bits(bits);
    let s = ein_series(&Float::with_val(bits, -1), bits);
    let e = Float::with_val(bits, 1).exp();
    let value = -(e * (gamma + s));
    let err = Float::with_val(64, Float::i_exp(1, -(bits as i32) + 8));
    BigReal::new(Float::with_val(working_bits(digits), value), err)
}

/// Exact rational as a float at `bits` bits.
pub(crate) fn rat_float(x: &Rational, bits: u32) -> Float {
    Float::with_val(bits, x)
}
