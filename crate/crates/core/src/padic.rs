//! p-adic evaluation of Euler's series and of the linear form
//! `Λ_p = d E_p(t) - c`.
//!
//! Values are p-adic integers known modulo `p^N`. The evaluation point is
//! an integer divisible by `p`, so the terms `n! t^n` have valuation at
//! least `n v_p(t)` and the sum can be cut off at `ceil(N / v_p(t))`.

use std::fmt;

use rug::{Complete, Integer, Rational};

use crate::arith::{p_power_rational, vp_factorial, vp_integer, Prime, Valuation};
use crate::error::{Error, Result};
use crate::pade::{p_poly, q_poly};

/// Prime together with a working precision `N` (residues mod `p^N`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicContext {
    p: Prime,
    precision: u32,
    modulus: Integer,
}

impl PadicContext {
    pub fn new(p: Prime, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidArgument("p-adic precision must be at least 1".into()));
        }
        Ok(PadicContext { p, precision, modulus: p.pow(precision) })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^N`.
    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn reduce(&self, x: &Integer) -> Integer {
        x.modulo_ref(&self.modulus).complete()
    }

    pub fn element(&self, x: &Integer) -> PadicApprox {
        PadicApprox { residue: self.reduce(x), ctx: self.clone() }
    }

    /// Image of a rational whose denominator is a p-adic unit.
    pub fn element_rational(&self, x: &Rational) -> Result<PadicApprox> {
        let inv = x
            .denom()
            .invert_ref(&self.modulus)
            .map(Integer::from)
            .ok_or_else(|| Error::NonUnit(format!("{} (denominator of {x})", self.modulus)))?;
        Ok(self.element(&(inv * x.numer())))
    }
}

/// A p-adic integer known modulo `p^N`; the residue lies in `[0, p^N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicApprox {
    residue: Integer,
    ctx: PadicContext,
}

impl PadicApprox {
    pub fn residue(&self) -> &Integer {
        &self.residue
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn add(&self, other: &PadicApprox) -> PadicApprox {
        self.ctx.element(&(&self.residue + &other.residue).complete())
    }

    pub fn sub(&self, other: &PadicApprox) -> PadicApprox {
        self.ctx.element(&(&self.residue - &other.residue).complete())
    }

    pub fn mul(&self, other: &PadicApprox) -> PadicApprox {
        self.ctx.element(&(&self.residue * &other.residue).complete())
    }

    /// Division by a p-adic unit.
    pub fn div(&self, other: &PadicApprox) -> Result<PadicApprox> {
        let inv = other
            .residue
            .invert_ref(&self.ctx.modulus)
            .map(Integer::from)
            .ok_or_else(|| Error::NonUnit(self.ctx.modulus.to_string()))?;
        Ok(self.ctx.element(&(inv * &self.residue)))
    }

    /// Valuation as far as the precision can tell.
    pub fn valuation(&self) -> ValuationResult {
        match vp_integer(&self.residue, self.ctx.p) {
            Valuation::Infinite => ValuationResult::AtLeast(u64::from(self.ctx.precision)),
            Valuation::Finite(v) => ValuationResult::Exact(v as u64),
        }
    }

    /// Reduce to a lower precision `m <= N`.
    pub fn reduce_to(&self, m: u32) -> Result<PadicApprox> {
        if m > self.ctx.precision {
            return Err(Error::InvalidArgument(format!(
                "cannot raise precision from {} to {m}",
                self.ctx.precision
            )));
        }
        let ctx = PadicContext::new(self.ctx.p, m)?;
        Ok(ctx.element(&self.residue))
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.ctx.p, self.ctx.precision)
    }
}

/// Valuation of a quantity known modulo `p^N`: either determined exactly,
/// or only known to be at least `N` because the residue vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationResult {
    Exact(u64),
    AtLeast(u64),
}

impl fmt::Display for ValuationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationResult::Exact(v) => write!(f, "Exact({v})"),
            ValuationResult::AtLeast(n) => write!(f, "AtLeast({n})"),
        }
    }
}

/// `v_p(t)` for a nonzero integer divisible by `p`.
fn point_valuation(t: &Integer, p: Prime) -> Result<u64> {
    match vp_integer(t, p) {
        Valuation::Infinite => Err(Error::InvalidArgument("evaluation point t = 0".into())),
        Valuation::Finite(0) => Err(Error::NotInDisc { t: t.to_string(), p: p.get() }),
        Valuation::Finite(v) => Ok(v as u64),
    }
}

/// Number of terms of `Σ n! t^n` that can be nonzero modulo `p^N`.
pub fn euler_terms_needed(t: &Integer, ctx: &PadicContext) -> Result<u64> {
    let v = point_valuation(t, ctx.p)?;
    Ok(u64::from(ctx.precision).div_ceil(v))
}

/// `E_p(t) mod p^N` for an integer `t` with `v_p(t) >= 1`.
pub fn eval_euler_padic(t: &Integer, ctx: &PadicContext) -> Result<PadicApprox> {
    let n0 = euler_terms_needed(t, ctx)?;
    let t_mod = ctx.reduce(t);
    let mut sum = Integer::new();
    let mut term = Integer::from(1);
    for n in 0..n0 {
        if n > 0 {
            term *= n;
            term *= &t_mod;
            term = ctx.reduce(&term);
        }
        sum += &term;
    }
    Ok(ctx.element(&sum))
}

/// `v_p(d E_p(t) - c)` as far as precision `N` resolves it.
pub fn linear_form_valuation(
    c: &Integer,
    d: &Integer,
    t: &Integer,
    ctx: &PadicContext,
) -> Result<ValuationResult> {
    if d.is_zero() {
        return Err(Error::InvalidArgument("d must be nonzero".into()));
    }
    let e = eval_euler_padic(t, ctx)?;
    let lambda = e.mul(&ctx.element(d)).sub(&ctx.element(c));
    Ok(lambda.valuation())
}

/// Exponent `e` of the remainder bound `|R_l(t)|_p <= p^{-e}`, with
/// `e = 2 v_p(l!) + 2 l v_p(t)`. Exact for `t = ±p^a`.
pub fn remainder_padic_exponent(l: u32, t: &Integer, p: Prime) -> Result<u64> {
    let v = point_valuation(t, p)?;
    Ok(2 * vp_factorial(u64::from(l), p) + 2 * u64::from(l) * v)
}

/// `|l!^2 t^{2l}|_p` as an exact power of `p`.
pub fn remainder_padic_norm(l: u32, t: &Integer, p: Prime) -> Result<Rational> {
    let e = remainder_padic_exponent(l, t, p)?;
    Ok(p_power_rational(p, -(e as i64)))
}

/// `W_l = d P_l(t) - c Q_l(t)`.
pub fn w_integer(l: u32, c: &Integer, d: &Integer, t: &Integer) -> Integer {
    let pl = p_poly(l).eval_integer(t).expect("P_l has integer coefficients");
    let ql = q_poly(l).eval_integer(t).expect("Q_l has integer coefficients");
    d * pl - c * ql
}
