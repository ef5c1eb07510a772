//! The Hardy integral `ℋ(t) = ∫_0^∞ e^{-s} / (1 - ts) ds` and its
//! continuation past the positive real axis.
//!
//! Three independent routes are provided:
//!
//! * [`hardy_negative`]: quadrature along `[0, ∞)` for `t < 0`;
//! * [`hardy_ray`]: quadrature along the rotated ray `s = y(1 + bi)`, which
//!   avoids the pole at `s = 1/t` and continues ℋ to `t > 0`;
//! * [`hardy_explicit`]: the closed form
//!   `e^{-1/t}/t (γ + Log(-1/t) + 2πik + Σ t^{-n}/(n n!))` on branch `k`.
//!
//! The remainder integrals of the Padé identity `Q_l ℋ - P_l = ℛ_l` and the
//! rotated Gamma integral are evaluated by the same machinery.
//!
//! Quadrature splits the half-line at a cutoff `Y` where an analytic tail
//! bound falls below the tolerance, integrates `[0, Y]` on geometrically
//! growing tanh-sinh panels, and works `32` bits above the requested
//! precision. Error estimates are relative to a natural scale of each
//! integral (the bound from the corresponding estimate).

mod bignum;
mod constants;
mod quad;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

pub use bignum::{decimal_tolerance, format_fixed, working_bits, BigComplex, BigReal, GUARD_BITS};
pub use constants::{euler_gamma, euler_gompertz};

use crate::arith::factorial;
use crate::error::{Error, Result};
use constants::{ein_series, gamma_bits, rat_float};

/// Largest supported decimal precision.
pub const MAX_DIGITS: u32 = 280;

/// Direction parameter of the ray `s = y(1 + bi)`, `y ≥ 0`, with `b > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayParam {
    b: Float,
}

impl RayParam {
    pub fn new(b: Float) -> Result<Self> {
        if !(b.is_finite() && b > 0) {
            return Err(Error::InvalidArgument(format!("ray parameter b must be positive, got {b}")));
        }
        Ok(RayParam { b })
    }

    pub fn from_rational(b: &Rational) -> Result<Self> {
        // The integral does not depend on b, so any faithful rounding will do.
        RayParam::new(Float::with_val(256, b))
    }

    pub fn b(&self) -> &Float {
        &self.b
    }

    /// `β = arctan b`, in `(0, π/2)`.
    pub fn angle(&self) -> Float {
        Float::with_val(self.b.prec(), self.b.atan_ref())
    }
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::InvalidArgument(format!("precision must be in 1..={MAX_DIGITS} digits")));
    }
    Ok(())
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| f64::from(k).ln()).sum()
}

/// Quadrature of `f` over `[0, ∞)` with tail `scale * exp(log_tail_rel(Y))`
/// beyond `Y`. Returns the value and its absolute error estimate.
fn half_line<F, T>(
    f: &F,
    features: &[f64],
    log_tail_rel: T,
    min_cutoff: f64,
    scale: f64,
    digits: u32,
    bits: u32,
) -> Result<(Complex, f64)>
where
    F: Fn(&Float) -> Complex,
    T: Fn(f64) -> f64,
{
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidArgument(format!("integral scale {scale} out of range")));
    }
    let tol_rel = 10f64.powi(-(digits as i32 + 4));
    let upper = quad::cutoff(&log_tail_rel, tol_rel / 4.0, min_cutoff);
    let pts = quad::breakpoints(features, upper, bits);
    let q = quad::over_panels(f, &pts, bits, tol_rel * scale / 2.0)?;
    let tail = log_tail_rel(upper).exp() * scale;
    let rounding = scale * 2f64.powi(-(bits as i32) + 12);
    Ok((q.value, q.err + tail + rounding))
}

fn complex_err(value: Complex, err: f64) -> BigComplex {
    BigComplex::new(value, Float::with_val(64, err))
}

fn real_part(value: Complex, err: f64) -> BigReal {
    let (re, _) = value.into_real_imag();
    BigReal::new(re, Float::with_val(64, err))
}

fn require_negative(t: &Rational) -> Result<()> {
    if *t >= 0 {
        return Err(Error::InvalidArgument(format!(
            "t = {t}: the integral over [0, ∞) needs t < 0; use the ray or explicit route"
        )));
    }
    Ok(())
}

fn require_positive(t: &Rational) -> Result<()> {
    if *t <= 0 {
        return Err(Error::InvalidArgument(format!("t = {t}: the ray route needs t > 0")));
    }
    Ok(())
}

/// `ℋ(t)` for `t < 0` by quadrature over `[0, ∞)`.
pub fn hardy_negative(t: &Rational, digits: u32) -> Result<BigReal> {
    check_digits(digits)?;
    require_negative(t)?;
    let bits = working_bits(digits);
    let tf = rat_float(t, bits);
    let f = |s: &Float| {
        let den = Float::with_val(bits, 1) - Float::with_val(bits, &tf * s);
        let num = Float::with_val(bits, -s).exp();
        Complex::with_val(bits, num / den)
    };
    let scale_pt = 1.0 / t.to_f64().abs();
    let (value, err) = half_line(&f, &[scale_pt], |y| -y, 1.0, 1.0, digits, bits)?;
    Ok(real_part(value, err))
}

/// `ℛ_l(t) = l! t^{2l} ∫_0^∞ s^l e^{-s} / (1 - ts)^{l+1} ds` for `t < 0`.
pub fn remainder_negative(l: u32, t: &Rational, digits: u32) -> Result<BigReal> {
    check_digits(digits)?;
    require_negative(t)?;
    let bits = working_bits(digits);
    let tf = rat_float(t, bits);
    let abs_t = t.to_f64().abs();
    let f = |s: &Float| {
        let den = Float::with_val(bits, 1) - Float::with_val(bits, &tf * s);
        let den = Float::with_val(bits, den.pow(l + 1));
        let num = Float::with_val(bits, -s).exp() * Float::with_val(bits, s.pow(l));
        Complex::with_val(bits, num / den)
    };
    // max_s s^l / (1+|t|s)^{l+1} = |t|^{-l} l^l / (l+1)^{l+1}
    let lf = f64::from(l);
    let peak = if l == 0 { 1.0 } else { (lf * lf.ln() - (lf + 1.0) * (lf + 1.0).ln()).exp() / abs_t.powi(l as i32) };
    let log_peak = peak.ln();
    // Tail: ∫_Y s^l e^{-s} ds <= 2 Y^l e^{-Y} for Y >= 2l + 2.
    let log_tail = |y: f64| std::f64::consts::LN_2 + lf * y.ln() - y - log_peak;
    let (value, err) = half_line(
        &f,
        &[1.0 / abs_t, lf.max(1.0)],
        log_tail,
        2.0 * lf + 2.0,
        peak,
        digits,
        bits,
    )?;
    let pref = Float::with_val(bits, factorial(l)) * Float::with_val(bits, tf.pow(2 * l));
    let pref_f = pref.to_f64().abs();
    Ok(real_part(value * &pref, err * pref_f))
}

fn ray_direction(ray: &RayParam, bits: u32) -> Complex {
    Complex::with_val(bits, (1, ray.b()))
}

/// Point of the ray closest to the pole `1/t`, as a value of `y`.
fn pole_foot(t: f64, b: f64) -> f64 {
    1.0 / (t * (1.0 + b * b))
}

/// `ℋ_{-β}(t) = ∫_τ e^{-s} / (1 - ts) ds` along `s = y(1 + bi)`, for `t > 0`.
pub fn hardy_ray(t: &Rational, ray: &RayParam, digits: u32) -> Result<BigComplex> {
    check_digits(digits)?;
    require_positive(t)?;
    let bits = working_bits(digits);
    let tf = rat_float(t, bits);
    let dir = ray_direction(ray, bits);
    let f = |y: &Float| {
        let s = Complex::with_val(bits, &dir * y);
        let den = Complex::with_val(bits, 1) - Complex::with_val(bits, &s * &tf);
        let num = Complex::with_val(bits, -s).exp() * &dir;
        num / den
    };
    let b = ray.b().to_f64();
    let scale = b + 1.0 / b;
    let (value, err) = half_line(&f, &[pole_foot(t.to_f64(), b)], |y| -y, 1.0, scale, digits, bits)?;
    Ok(complex_err(value, err))
}

/// `ℛ_l^τ(t) = l! t^{2l} ∫_τ e^{-s} s^l / (1 - ts)^{l+1} ds`, for `t > 0`.
pub fn remainder_ray(l: u32, t: &Rational, ray: &RayParam, digits: u32) -> Result<BigComplex> {
    check_digits(digits)?;
    require_positive(t)?;
    let bits = working_bits(digits);
    let tf = rat_float(t, bits);
    let dir = ray_direction(ray, bits);
    let f = |y: &Float| {
        let s = Complex::with_val(bits, &dir * y);
        let den = Complex::with_val(bits, 1) - Complex::with_val(bits, &s * &tf);
        let den = Complex::with_val(bits, den.pow(l + 1));
        let num = Complex::with_val(bits, (-s.clone()).exp()) * Complex::with_val(bits, s.pow(l)) * &dir;
        num / den
    };
    let (b, tv, lf) = (ray.b().to_f64(), t.to_f64(), f64::from(l));
    // |integrand| <= e^{-y} (1+b^2)^{(l+2)/2} / (t^l b^{l+1})
    let log_scale = 0.5 * (lf + 2.0) * (1.0 + b * b).ln() - lf * tv.ln() - (lf + 1.0) * b.ln();
    let (value, err) = half_line(
        &f,
        &[pole_foot(tv, b), lf.max(1.0)],
        |y| -y,
        1.0,
        log_scale.exp(),
        digits,
        bits,
    )?;
    let pref = Float::with_val(bits, factorial(l)) * Float::with_val(bits, tf.pow(2 * l));
    let pref_f = pref.to_f64();
    Ok(complex_err(value * &pref, err * pref_f))
}

/// `∫_τ e^{-s} s^n ds` along `s = y(1 + bi)`; equals `n!`.
pub fn gamma_ray_check(n: u32, ray: &RayParam, digits: u32) -> Result<BigComplex> {
    check_digits(digits)?;
    let bits = working_bits(digits);
    let dir = ray_direction(ray, bits);
    let f = |y: &Float| {
        let s = Complex::with_val(bits, &dir * y);
        let pow = Complex::with_val(bits, s.clone().pow(n));
        Complex::with_val(bits, (-s).exp()) * pow * &dir
    };
    let (b, nf) = (ray.b().to_f64(), f64::from(n));
    let log_r = 0.5 * (nf + 1.0) * (1.0 + b * b).ln();
    let scale = (log_r + ln_factorial(n)).exp();
    // ∫_Y |.| <= (1+b^2)^{(n+1)/2} 2 Y^n e^{-Y} for Y >= 2n + 2
    let log_tail = |y: f64| log_r + std::f64::consts::LN_2 + nf * y.ln() - y - scale.ln();
    let (value, err) = half_line(&f, &[nf.max(1.0)], log_tail, 2.0 * nf + 2.0, scale, digits, bits)?;
    Ok(complex_err(value, err))
}

/// `e^{-1/t}/t (γ + Log(-1/t) + 2πik + Σ_{n>=1} t^{-n}/(n n!))`.
///
/// `Log` is the principal branch, so for `t > 0` it contributes
/// `log(1/t) + iπ`; `k` selects the sheet of the logarithm.
pub fn hardy_explicit(t: &Rational, branch: i64, digits: u32) -> Result<BigComplex> {
    check_digits(digits)?;
    if t.is_zero() {
        return Err(Error::InvalidArgument("t = 0 has no explicit formula".into()));
    }
    let out_bits = working_bits(digits);
    let x_abs = t.to_f64().recip().abs();
    // For t < 0 the series alternates with terms up to e^{|x|} while the
    // bracket is of size e^{-|x|}.
    let extra = if *t < 0 { (2.0 * x_abs * std::f64::consts::LOG2_E).ceil() as u32 + 16 } else { 16 };
    let bits = out_bits + extra;
    let inv = Rational::from(t.recip_ref());
    let x = rat_float(&inv, bits);
    let neg_x = Float::with_val(bits, -&x);
    let log = if neg_x > 0 {
        Complex::with_val(bits, (neg_x.ln(), 0))
    } else {
        let pi = Float::with_val(bits, Constant::Pi);
        Complex::with_val(bits, (x.clone().ln(), pi))
    };
    let two_pi_k = Float::with_val(bits, Constant::Pi) * 2u32 * branch;
    let mut bracket = log + Complex::with_val(bits, (0, two_pi_k));
    bracket += gamma_bits(bits) + ein_series(&x, bits);
    let pref = Float::with_val(bits, -&x).exp() * &x;
    let value = Complex::with_val(out_bits, bracket * pref);
    let mag = Float::with_val(64, value.abs_ref()).to_f64().max(1.0);
    let err = mag * 2f64.powi(-(out_bits as i32) + 8);
    Ok(complex_err(value, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn diff_real(a: &Float, b: &Float) -> f64 {
        Float::with_val(a.prec(), a - b).abs().to_f64()
    }

    fn diff_complex(a: &Complex, b: &Complex) -> f64 {
        Float::with_val(64, Complex::with_val(a.prec().0, a - b).abs_ref()).to_f64()
    }

    const DELTA_10: &str = "0.5963473623";

    #[test]
    fn gompertz_from_integral() {
        let h = hardy_negative(&rat(-1, 1), 30).unwrap();
        assert_eq!(h.to_fixed(10), DELTA_10);
        let d = euler_gompertz(30);
        assert!(diff_real(h.value(), d.value()) < 1e-30);
        assert!(h.error_bound().to_f64() < 1e-30);
    }

    #[test]
    fn explicit_at_minus_one_is_real() {
        let h = hardy_explicit(&rat(-1, 1), 0, 40).unwrap();
        assert!(h.im().is_zero());
        assert_eq!(format_fixed(h.re(), 10), DELTA_10);
    }

    #[test]
    fn negative_routes_agree() {
        for t in [rat(-1, 2), rat(-1, 1), rat(-2, 1), rat(-10, 1)] {
            let q = hardy_negative(&t, 30).unwrap();
            let e = hardy_explicit(&t, 0, 30).unwrap();
            let d = diff_real(q.value(), e.re());
            assert!(d < 1e-25, "t = {t}: {d:e}");
        }
    }

    #[test]
    fn branch_step_is_two_pi_i_over_e() {
        let h0 = hardy_explicit(&rat(1, 1), 0, 30).unwrap();
        let h1 = hardy_explicit(&rat(1, 1), 1, 30).unwrap();
        let step = Complex::with_val(200, h1.value() - h0.value());
        let expect = Float::with_val(200, Constant::Pi) * 2u32 / Float::with_val(200, 1).exp();
        assert!(step.real().to_f64().abs() < 1e-30);
        assert!(diff_real(step.imag(), &expect) < 1e-30);
    }

    /// The rotated ray lies in the upper half plane, so it continues ℋ from
    /// `Im t > 0`, where `-1/t` approaches the negative axis from above and
    /// the principal logarithm gives `+iπ`: the ray value is branch `k = 0`.
    #[test]
    fn ray_branch_is_principal() {
        let ray = RayParam::from_rational(&rat(1, 1)).unwrap();
        let r = hardy_ray(&rat(1, 1), &ray, 30).unwrap();
        let k0 = hardy_explicit(&rat(1, 1), 0, 30).unwrap();
        let km1 = hardy_explicit(&rat(1, 1), -1, 30).unwrap();
        assert!(diff_complex(r.value(), k0.value()) < 1e-25);
        assert!(diff_complex(r.value(), km1.value()) > 1.0);
        assert!(r.im().to_f64() > 0.0);
        let pi_over_e = std::f64::consts::PI / std::f64::consts::E;
        assert!((r.im().to_f64() - pi_over_e).abs() < 1e-14);
    }

    #[test]
    fn ray_independent_of_b() {
        for t in [rat(1, 2), rat(1, 1), rat(3, 1)] {
            let vals: Vec<_> = [rat(1, 2), rat(1, 1), rat(2, 1)]
                .iter()
                .map(|b| hardy_ray(&t, &RayParam::from_rational(b).unwrap(), 25).unwrap())
                .collect();
            for v in &vals[1..] {
                assert!(diff_complex(v.value(), vals[0].value()) < 1e-20, "t = {t}");
            }
            // |ℋ_{-β}(t)| <= b + 1/b
            for (v, b) in vals.iter().zip([2.5, 2.0, 2.5]) {
                assert!(v.abs().to_f64() <= b);
            }
        }
    }

    #[test]
    fn gamma_along_rays() {
        for b in [rat(1, 2), rat(1, 1), rat(2, 1)] {
            let ray = RayParam::from_rational(&b).unwrap();
            for n in [0u32, 5, 10, 12] {
                let g = gamma_ray_check(n, &ray, 25).unwrap();
                let exact = factorial(n).to_f64();
                assert!((g.re().to_f64() - exact).abs() / exact < 1e-15, "n={n} b={b}");
                assert!(g.im().to_f64().abs() / exact < 1e-15);
            }
        }
    }

    #[test]
    fn remainder_identity_negative_axis() {
        use crate::pade::{p_poly, q_poly};
        let t = rat(-1, 1);
        let h = hardy_negative(&t, 30).unwrap();
        for l in [0u32, 1, 4, 10] {
            let r = remainder_negative(l, &t, 30).unwrap();
            assert!(*r.value() > 0);
            let q = Float::with_val(200, q_poly(l).eval(&t));
            let p = Float::with_val(200, p_poly(l).eval(&t));
            let lhs = q * h.value() - p;
            assert!(diff_real(&lhs, r.value()) < 1e-20, "l = {l}");
        }
    }

    #[test]
    fn remainder_identity_ray() {
        use crate::pade::{p_poly, q_poly};
        let t = rat(1, 1);
        let ray = RayParam::from_rational(&rat(1, 1)).unwrap();
        let h = hardy_ray(&t, &ray, 30).unwrap();
        let r0 = remainder_ray(0, &t, &ray, 30).unwrap();
        assert!(diff_complex(r0.value(), h.value()) < 1e-25);
        for l in [1u32, 3, 6] {
            let r = remainder_ray(l, &t, &ray, 30).unwrap();
            let q = Float::with_val(200, q_poly(l).eval(&t));
            let p = Float::with_val(200, p_poly(l).eval(&t));
            let lhs = Complex::with_val(200, h.value() * q) - p;
            assert!(diff_complex(&lhs, r.value()) < 1e-20, "l = {l}");
        }
    }

    #[test]
    fn rejects_wrong_half_line() {
        assert!(hardy_negative(&rat(1, 1), 20).is_err());
        assert!(hardy_negative(&rat(0, 1), 20).is_err());
        let ray = RayParam::from_rational(&rat(1, 1)).unwrap();
        assert!(hardy_ray(&rat(-1, 1), &ray, 20).is_err());
        assert!(hardy_explicit(&rat(0, 1), 0, 20).is_err());
        assert!(RayParam::from_rational(&rat(0, 1)).is_err());
    }
}
