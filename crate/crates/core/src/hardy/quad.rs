//! Tanh-sinh (double exponential) quadrature in MPFR arithmetic.
//!
//! A finite panel `[a, b]` is mapped by `y = (a+b)/2 + (b-a)/2 tanh(π/2 sinh u)`.
//! Levels halve the step `h = 2^{-k}`; each level reuses all previous nodes
//! and only evaluates the odd multiples of `h`. A panel is accepted once two
//! successive levels agree to the tolerance.

use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};

const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 14;

/// Result of one quadrature: value and absolute error estimate.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: Complex,
    pub err: f64,
    pub evaluations: usize,
}

/// Largest `u` worth sampling: beyond it the weights fall below `2^{-bits}`
/// relative to the panel length.
fn u_max(bits: u32) -> f64 {
    let target = -(f64::from(bits) * std::f64::consts::LN_2) - 20.0;
    let mut u: f64 = 0.5;
    loop {
        let s = std::f64::consts::FRAC_PI_2 * u.sinh();
        let log_w = (std::f64::consts::PI * u.cosh()).ln() - 2.0 * s;
        if log_w < target {
            return u;
        }
        u += 0.0625;
    }
}

/// Node offsets and weights for the symmetric pair at `u >= 0`, for a panel
/// of half-length `half`: returns `(distance from each end, weight)`.
fn node(u: &Float, half: &Float, bits: u32) -> (Float, Float) {
    let pi = Float::with_val(bits, Constant::Pi);
    let s = Float::with_val(bits, u.sinh_ref()) * &pi / 2u32;
    // e = exp(-2s), 1 - tanh(s) = 2e / (1 + e), sech^2(s) = 4e / (1 + e)^2
    let e = Float::with_val(bits, -(s * 2u32)).exp();
    let one_plus = Float::with_val(bits, 1u32 + &e);
    let dist = Float::with_val(bits, half * &e) * 2u32 / &one_plus;
    let cosh_u = Float::with_val(bits, u.cosh_ref());
    let sq = Float::with_val(bits, one_plus.square_ref());
    let weight = Float::with_val(bits, half * &pi) * cosh_u * &e * 2u32 / sq;
    (dist, weight)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn tanh_sinh<F>(f: &F, a: &Float, b: &Float, bits: u32, tol: f64) -> Result<Quadrature>
where
    F: Fn(&Float) -> Complex,
{
    let half = Float::with_val(bits, b - a) / 2u32;
    let mid = Float::with_val(bits, a + b) / 2u32;
    let umax = u_max(bits);
    let mut sum = Complex::with_val(bits, 0);
    {
        let (_, w0) = node(&Float::with_val(bits, 0), &half, bits);
        sum += f(&mid) * &w0;
    }
    let evaluations = std::cell::Cell::new(1usize);

    let eval_pair = |u: &Float, acc: &mut Complex| {
        let (dist, w) = node(u, &half, bits);
        let left = Float::with_val(bits, a + &dist);
        let right = Float::with_val(bits, b - &dist);
        let mut pair = f(&left);
        pair += f(&right);
        evaluations.set(evaluations.get() + 2);
        *acc += pair * &w;
    };

    // Level 0: h = 1, nodes at integers.
    let mut j = 1u32;
    while f64::from(j) <= umax {
        eval_pair(&Float::with_val(bits, j), &mut sum);
        j += 1;
    }
    let mut prev = sum.clone();
    let mut prev_diff = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        let h = Float::with_val(bits, Float::i_exp(1, -(level as i32)));
        let steps = 1u64 << level;
        let mut j = 1u64;
        while (j as f64) / (steps as f64) <= umax {
            let u = Float::with_val(bits, &h * j);
            eval_pair(&u, &mut sum);
            j += 2;
        }
        let estimate = Complex::with_val(bits, &sum * &h);
        let prev_estimate = Complex::with_val(bits, &prev * Float::with_val(bits, &h * 2u32));
        let diff = Complex::with_val(bits, &estimate - &prev_estimate);
        let diff = Float::with_val(53, diff.abs_ref()).to_f64();
        if level >= MIN_LEVEL && diff <= tol {
            // The double exponential error roughly squares per level, so the
            // last difference bounds the remaining error generously.
            return Ok(Quadrature { value: estimate, err: diff.min(prev_diff), evaluations: evaluations.get() });
        }
        prev_diff = diff;
        prev = sum.clone();
    }
    Err(Error::Quadrature(format!(
        "panel [{}, {}] did not converge by level {MAX_LEVEL} (last difference {prev_diff:e})",
        a.to_f64(),
        b.to_f64()
    )))
}

/// Integrate over consecutive panels `[x_0, x_1], [x_1, x_2], ...`.
pub fn over_panels<F>(f: &F, breakpoints: &[Float], bits: u32, tol: f64) -> Result<Quadrature>
where
    F: Fn(&Float) -> Complex,
{
    let panels = breakpoints.len().saturating_sub(1).max(1) as f64;
    let mut value = Complex::with_val(bits, 0);
    let mut err = 0.0;
    let mut evaluations = 0;
    for w in breakpoints.windows(2) {
        let q = tanh_sinh(f, &w[0], &w[1], bits, tol / panels)?;
        value += &q.value;
        err += q.err;
        evaluations += q.evaluations;
    }
    Ok(Quadrature { value, err, evaluations })
}

/// Breakpoints `0 = x_0 < ... < x_n = upper`: the optional `features`
/// (points where the integrand changes scale), then geometric growth by 4.
pub fn breakpoints(features: &[f64], upper: f64, bits: u32) -> Vec<Float> {
    let mut pts: Vec<f64> = vec![0.0];
    let mut inner: Vec<f64> = features.iter().copied().filter(|&x| x > 0.0 && x < upper).collect();
    inner.sort_by(f64::total_cmp);
    for x in inner {
        if x > 1.5 * pts[pts.len() - 1] {
            pts.push(x);
        }
    }
    if pts.len() == 1 {
        pts.push(1.0f64.min(upper / 4.0));
    }
    let mut x = pts[pts.len() - 1];
    loop {
        x *= 4.0;
        if x >= 0.75 * upper {
            break;
        }
        pts.push(x);
    }
    pts.push(upper);
    pts.into_iter().map(|p| Float::with_val(bits, p)).collect()
}

/// Smallest cutoff `Y >= lower` with `log_tail(Y) <= ln(tol)`.
pub fn cutoff<T: Fn(f64) -> f64>(log_tail: T, tol: f64, lower: f64) -> f64 {
    let target = tol.ln();
    let mut y = lower.max(1.0);
    while log_tail(y) > target {
        y += 1.0;
    }
    y.ceil()
}
