//! Generalized continued fractions `b_0 + a_1/(b_1 + a_2/(b_2 + ...))`.
//!
//! Convergents `A_n/B_n` follow `C_n = b_n C_{n-1} + a_n C_{n-2}` from
//! `A_{-1} = 1, A_0 = b_0, B_{-1} = 0, B_0 = 1`. The recurrence only adds
//! and multiplies, so it runs unchanged over polynomials, rationals,
//! high-precision reals and p-adic residues; the final quotient is taken in
//! the target domain.
//!
//! Euler's continued fraction has `a_1 = 1`, `b_1 = 1 - t`,
//! `a_k = -(k-1)^2 t^2` and `b_k = 1 - (2k-1) t`; its convergents are the
//! Padé pairs `(P_l, Q_l)`.

use rug::{Float, Integer, Rational};

use crate::arith::{Poly, Prime};
use crate::error::{Error, Result};
use crate::hardy::{working_bits, BigReal};
use crate::padic::{remainder_padic_norm, PadicApprox, PadicContext};

/// Ring operations the convergent recurrence needs.
pub trait CfDomain {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn integer(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// True only when `a` is known to be zero.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool;
}

/// Polynomials in `t` with rational coefficients.
#[derive(Debug, Clone, Copy, Default)]
pub struct PolyDomain;

impl CfDomain for PolyDomain {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn integer(&self, n: i64) -> Poly {
        Poly::constant(n)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
    fn is_exact_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

/// Exact rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalDomain;

impl CfDomain for RationalDomain {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::new()
    }
    fn one(&self) -> Rational {
        Rational::from(1)
    }
    fn integer(&self, n: i64) -> Rational {
        Rational::from(n)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a + b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }
    fn is_exact_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// MPFR floats at a fixed precision.
#[derive(Debug, Clone, Copy)]
pub struct RealDomain {
    pub bits: u32,
}

impl CfDomain for RealDomain {
    type Elem = Float;

    fn zero(&self) -> Float {
        Float::new(self.bits)
    }
    fn one(&self) -> Float {
        Float::with_val(self.bits, 1)
    }
    fn integer(&self, n: i64) -> Float {
        Float::with_val(self.bits, n)
    }
    fn add(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.bits, a + b)
    }
    fn mul(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.bits, a * b)
    }
    fn is_exact_zero(&self, a: &Float) -> bool {
        a.is_zero()
    }
}

/// Residues modulo `p^N`.
#[derive(Debug, Clone)]
pub struct PadicDomain {
    pub ctx: PadicContext,
}

impl CfDomain for PadicDomain {
    type Elem = PadicApprox;

    fn zero(&self) -> PadicApprox {
        self.ctx.element(&Integer::new())
    }
    fn one(&self) -> PadicApprox {
        self.ctx.element(&Integer::from(1))
    }
    fn integer(&self, n: i64) -> PadicApprox {
        self.ctx.element(&Integer::from(n))
    }
    fn add(&self, a: &PadicApprox, b: &PadicApprox) -> PadicApprox {
        a.add(b)
    }
    fn mul(&self, a: &PadicApprox, b: &PadicApprox) -> PadicApprox {
        a.mul(b)
    }
    fn is_exact_zero(&self, _: &PadicApprox) -> bool {
        // A vanishing residue only says the valuation is at least N.
        false
    }
}

type PairFn<E> = dyn Fn(u32) -> (E, E) + Send + Sync;

/// Coefficient stream `(a_k, b_k)`, `k >= 1`, with an optional `b_0`.
pub struct CfCoeffs<E> {
    b0: Option<E>,
    pairs: Box<PairFn<E>>,
}

impl<E: Clone> CfCoeffs<E> {
    pub fn new<F>(b0: Option<E>, pairs: F) -> Self
    where
        F: Fn(u32) -> (E, E) + Send + Sync + 'static,
    {
        CfCoeffs { b0, pairs: Box::new(pairs) }
    }

    pub fn b0(&self) -> Option<&E> {
        self.b0.as_ref()
    }

    /// `(a_k, b_k)` for `k >= 1`.
    pub fn pair(&self, k: u32) -> (E, E) {
        assert!(k >= 1, "partial quotients start at k = 1");
        (self.pairs)(k)
    }
}

impl<E> std::fmt::Debug for CfCoeffs<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CfCoeffs").field("has_b0", &self.b0.is_some()).finish_non_exhaustive()
    }
}

/// `A_n / B_n`, unreduced.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergent<E> {
    pub index: u32,
    pub numerator: E,
    pub denominator: E,
}

/// Iterator over `Convergent`s `n = 0, 1, 2, ...`, keeping only the two
/// previous pairs.
pub struct Convergents<'a, D: CfDomain> {
    domain: &'a D,
    coeffs: &'a CfCoeffs<D::Elem>,
    next: u32,
    prev: (D::Elem, D::Elem),
    prev2: (D::Elem, D::Elem),
    failed: bool,
}

impl<'a, D: CfDomain> Convergents<'a, D> {
    pub fn new(domain: &'a D, coeffs: &'a CfCoeffs<D::Elem>) -> Self {
        let b0 = coeffs.b0.clone().unwrap_or_else(|| domain.zero());
        Convergents {
            domain,
            coeffs,
            next: 0,
            prev: (b0, domain.one()),
            prev2: (domain.one(), domain.zero()),
            failed: false,
        }
    }
}

impl<D: CfDomain> Iterator for Convergents<'_, D> {
    type Item = Result<Convergent<D::Elem>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let n = self.next;
        if n > 0 {
            let (a, b) = self.coeffs.pair(n);
            if self.domain.is_exact_zero(&a) {
                self.failed = true;
                return Some(Err(Error::ZeroPartialNumerator(n)));
            }
            let d = self.domain;
            let num = d.add(&d.mul(&b, &self.prev.0), &d.mul(&a, &self.prev2.0));
            let den = d.add(&d.mul(&b, &self.prev.1), &d.mul(&a, &self.prev2.1));
            self.prev2 = std::mem::replace(&mut self.prev, (num, den));
        }
        self.next += 1;
        Some(Ok(Convergent { index: n, numerator: self.prev.0.clone(), denominator: self.prev.1.clone() }))
    }
}

/// The `n`-th convergent.
pub fn convergent<D: CfDomain>(domain: &D, coeffs: &CfCoeffs<D::Elem>, n: u32) -> Result<Convergent<D::Elem>> {
    Convergents::new(domain, coeffs)
        .nth(n as usize)
        .expect("the convergent iterator only stops after an error")
}

/// Euler's continued fraction at `t` in `domain`.
pub fn euler_cf_coeffs<D>(domain: &D, t: D::Elem) -> CfCoeffs<D::Elem>
where
    D: CfDomain + Clone + Send + Sync + 'static,
    D::Elem: Send + Sync + 'static,
{
    let d = domain.clone();
    CfCoeffs::new(None, move |k| {
        let k = i64::from(k);
        if k == 1 {
            let b = d.add(&d.one(), &d.mul(&d.integer(-1), &t));
            return (d.one(), b);
        }
        let tt = d.mul(&t, &t);
        let a = d.mul(&d.integer(-(k - 1) * (k - 1)), &tt);
        let b = d.add(&d.one(), &d.mul(&d.integer(1 - 2 * k), &t));
        (a, b)
    })
}

/// Euler's continued fraction with `t` an indeterminate.
pub fn euler_cf_symbolic() -> CfCoeffs<Poly> {
    euler_cf_coeffs(&PolyDomain, Poly::monomial(1, 1))
}

/// Euler's continued fraction at a nonzero rational `t`.
pub fn euler_cf_rational(t: &Rational) -> Result<CfCoeffs<Rational>> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("t = 0 makes a_k = 0 for k >= 2".into()));
    }
    Ok(euler_cf_coeffs(&RationalDomain, t.clone()))
}

/// `|l!^2 t^{2l}|_p`, the exact p-adic distance `|E_p(t) - A_l(t)/B_l(t)|_p`
/// for `t = ±p^a`.
pub fn cf_padic_error(l: u32, t: &Integer, p: Prime) -> Result<Rational> {
    remainder_padic_norm(l, t, p)
}

/// `A_l(t) / B_l(t)` modulo `p^N`, for an integer `t` divisible by `p`.
///
/// `B_l(t) ≡ 1 (mod p)`, so the quotient exists.
pub fn cf_padic_value(l: u32, t: &Integer, ctx: &PadicContext) -> Result<PadicApprox> {
    let p = ctx.prime().to_integer();
    if t.is_zero() || !t.is_divisible(&p) {
        return Err(Error::NotInDisc { t: t.to_string(), p: p.to_u64().unwrap_or_default() });
    }
    let domain = PadicDomain { ctx: ctx.clone() };
    let coeffs = euler_cf_coeffs(&domain, ctx.element(t));
    let c = convergent(&domain, &coeffs, l)?;
    c.numerator.div(&c.denominator)
}

/// `l^l / (l+1)^{l+1}`, bounding `|ℋ(t) - A_l(t)/B_l(t)|` for `t <= 0`.
pub fn cf_real_error_bound(l: u32) -> Rational {
    let num = rug::ops::Pow::pow(Integer::from(l), l);
    let den = rug::ops::Pow::pow(Integer::from(l + 1), l + 1);
    Rational::from((num, den))
}

/// `A_l(t) / B_l(t)` for real `t <= 0` to `digits` decimal digits.
///
/// At `t = 0` the fraction terminates after `a_1`, giving `1` for `l >= 1`.
pub fn cf_real_value(t: &Float, l: u32, digits: u32) -> Result<BigReal> {
    if !(t.is_finite() && *t <= 0) {
        return Err(Error::InvalidArgument(format!("t = {t}: real convergence needs t <= 0")));
    }
    let bits = working_bits(digits);
    let domain = RealDomain { bits };
    let depth = if t.is_zero() { l.min(1) } else { l };
    let coeffs = euler_cf_coeffs(&domain, Float::with_val(bits, t));
    let c = convergent(&domain, &coeffs, depth)?;
    let value = Float::with_val(bits, &c.numerator / &c.denominator);
    // Each step of the recurrence loses at most a few ulps relative to the
    // positive denominator.
    let err = Float::with_val(64, Float::i_exp(1, -(bits as i32) + 8)) * (u64::from(l) + 1);
    Ok(BigReal::new(value, err))
}
