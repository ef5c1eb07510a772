//! Padé data for Euler's factorial series `E(t) = Σ k! t^k`.
//!
//! `Q_l` and `P_l` satisfy `Q_l(t) E(t) - P_l(t) = R_l(t)` with
//! `ord_{t=0} R_l = 2l`. `P_l` is built from its definition as the
//! truncation `[Q_l E]_{l-1}`; the three-term recurrence is kept as an
//! independent construction for cross-checking.

use rug::{Integer, Rational};

use crate::arith::{binomial, factorial, Poly, SeriesPrefix};
use crate::error::{Error, Result};

/// `(0!, 1!, ..., m!)`.
pub fn euler_prefix(m: usize) -> SeriesPrefix {
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut f = Integer::from(1);
    for k in 0..=m {
        if k > 0 {
            f *= k as u32;
        }
        coeffs.push(Rational::from(f.clone()));
    }
    SeriesPrefix::new(coeffs)
}

/// `Q_l(t) = Σ_{h=0}^{l} h! C(l,h)^2 (-t)^h`.
pub fn q_poly(l: u32) -> Poly {
    Poly::from_ints((0..=l).map(|h| {
        let c = binomial(l, i64::from(h));
        let term = factorial(h) * c.square();
        if h % 2 == 1 {
            -term
        } else {
            term
        }
    }))
}

/// `P_l(t) = [Q_l(t) E(t)]_{l-1}`; zero for `l = 0`.
pub fn p_poly(l: u32) -> Poly {
    if l == 0 {
        return Poly::zero();
    }
    let m = l as usize - 1;
    euler_prefix(m).mul_poly(&q_poly(l)).to_poly()
}

/// Prefix of `R_l(t) = l!^2 t^{2l} Σ_k k! C(l+k,k)^2 t^k` through degree
/// `2l + extra`.
pub fn r_prefix(l: u32, extra: u32) -> SeriesPrefix {
    let lead = factorial(l).square();
    let start = 2 * l as usize;
    let mut coeffs = vec![Rational::new(); start + extra as usize + 1];
    for k in 0..=extra {
        let c = binomial(l + k, i64::from(k));
        let v = (&lead * factorial(k)) * c.square();
        coeffs[start + k as usize] = Rational::from(v);
    }
    SeriesPrefix::new(coeffs)
}

/// `L_n(t) = e^t D^n(e^{-t} t^n) = Σ_k (n-k)! C(n,k)^2 (-t)^k`.
pub fn laguerre_l(n: u32) -> Poly {
    Poly::from_ints((0..=n).map(|k| {
        let c = binomial(n, i64::from(k));
        let term = factorial(n - k) * c.square();
        if k % 2 == 1 {
            -term
        } else {
            term
        }
    }))
}

/// Multiplier `1 - (2l-1) t` of the Padé recurrence.
fn recurrence_b(l: u32) -> Poly {
    Poly::from_ints([1i64, -(2 * i64::from(l) - 1)])
}

/// `(l-1)^2 t^2`, subtracted in the Padé recurrence.
fn recurrence_a(l: u32) -> Poly {
    let k = i64::from(l) - 1;
    Poly::monomial(Rational::from(k * k), 2)
}

/// `(P_l, Q_l)` from `C_l = (1 - (2l-1)t) C_{l-1} - (l-1)^2 t^2 C_{l-2}`
/// with `P_0 = 0, P_1 = 1, Q_0 = 1, Q_1 = 1 - t`.
pub fn pade_by_recurrence(l: u32) -> (Poly, Poly) {
    let mut p = (Poly::zero(), Poly::one());
    let mut q = (Poly::one(), Poly::from_ints([1, -1]));
    if l == 0 {
        return (p.0, q.0);
    }
    for k in 2..=l {
        let b = recurrence_b(k);
        let a = recurrence_a(k);
        let p_next = &(&b * &p.1) - &(&a * &p.0);
        let q_next = &(&b * &q.1) - &(&a * &q.0);
        p = (p.1, p_next);
        q = (q.1, q_next);
    }
    (p.1, q.1)
}

/// `L_l = (2l-1-t) L_{l-1} - (l-1)^2 L_{l-2}`, `L_0 = 1`, `L_1 = 1 - t`.
pub fn laguerre_by_recurrence(n: u32) -> Poly {
    let mut prev = Poly::one();
    let mut cur = Poly::from_ints([1, -1]);
    if n == 0 {
        return prev;
    }
    for l in 2..=n {
        let b = Poly::from_ints([2 * i64::from(l) - 1, -1]);
        let a = Rational::from((i64::from(l) - 1).pow(2));
        let next = &(&b * &cur) - &prev.scale(&a);
        prev = cur;
        cur = next;
    }
    cur
}

/// Padé data at level `l`, with the remainder known through `2l + extra`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadeTriple {
    pub level: u32,
    pub q: Poly,
    pub p: Poly,
    pub r_prefix: SeriesPrefix,
}

/// Builds `(Q_l, P_l, R_l)` and checks `[Q_l E - P_l]_{2l+extra}` against
/// the closed-form remainder before returning.
pub fn pade_triple(l: u32, extra: u32) -> Result<PadeTriple> {
    let q = q_poly(l);
    let p = p_poly(l);
    let r = r_prefix(l, extra);
    let m = r.order();
    let lhs = euler_prefix(m).mul_poly(&q).sub_poly(&p);
    if lhs != r {
        let first_bad = (0..=m).find(|&i| lhs.coeff(i) != r.coeff(i)).unwrap_or(0);
        return Err(Error::Inconsistent(format!(
            "Padé identity fails at level {l}, degree {first_bad}: {} != {}",
            lhs.coeff(first_bad),
            r.coeff(first_bad)
        )));
    }
    if !q.is_integral() || !p.is_integral() {
        return Err(Error::Inconsistent(format!("non-integral Padé polynomial at level {l}")));
    }
    Ok(PadeTriple { level: l, q, p, r_prefix: r })
}

/// `Q_l P_{l+1} - Q_{l+1} P_l`, which equals `l!^2 t^{2l}`.
pub fn determinant(l: u32) -> Poly {
    let (q0, p0) = (q_poly(l), p_poly(l));
    let (q1, p1) = (q_poly(l + 1), p_poly(l + 1));
    &(&q0 * &p1) - &(&q1 * &p0)
}
