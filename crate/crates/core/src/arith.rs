//! Exact arithmetic substrate: big integers and rationals, dense
//! polynomials, truncated power series and p-adic valuations.
//!
//! Integers and rationals are GMP-backed ([`rug::Integer`],
//! [`rug::Rational`]); rationals are always kept in lowest terms with a
//! positive denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = Integer;
/// Arbitrary-precision rational in lowest terms.
pub type ExactRat = Rational;

/// A rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_integer(self) -> Integer {
        Integer::from(self.0)
    }

    /// `p^e` as an exact integer.
    pub fn pow(self, e: u32) -> Integer {
        rug::ops::Pow::pow(Integer::from(self.0), e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// p-adic valuation of a number. Zero has infinite valuation, kept as its
/// own variant so it can never leak into a bound as a finite exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).complete()
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u32, k: i64) -> Integer {
    if k < 0 || k > i64::from(n) {
        return Integer::new();
    }
    Integer::from(n).binomial(k as u32)
}

/// `v_p(n!)` by Legendre's sum `Σ floor(n / p^i)`.
pub fn vp_factorial(n: u64, p: Prime) -> u64 {
    let p = p.get();
    let mut total = 0u64;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// `v_p(n!)` as `(n - s_p(n)) / (p - 1)`, where `s_p` is the base-p digit sum.
pub fn vp_factorial_digit_sum(n: u64, p: Prime) -> u64 {
    let p = p.get();
    let mut digits = 0u64;
    let mut q = n;
    while q > 0 {
        digits += q % p;
        q /= p;
    }
    (n - digits) / (p - 1)
}

pub fn vp_integer(x: &Integer, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let (_, count) = x.remove_factor_ref(&p.to_integer()).complete();
    Valuation::Finite(i64::from(count))
}

/// Valuation `v` with `|x|_p = p^{-v}`.
pub fn vp_rational(x: &Rational, p: Prime) -> Valuation {
    match (vp_integer(x.numer(), p), vp_integer(x.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => Valuation::Infinite,
    }
}

/// `|x|_p` as an exact rational; zero for `x = 0`.
pub fn padic_norm(x: &Rational, p: Prime) -> Rational {
    match vp_rational(x, p) {
        Valuation::Infinite => Rational::new(),
        Valuation::Finite(v) => p_power_rational(p, -v),
    }
}

/// `p^e` for a signed exponent.
pub fn p_power_rational(p: Prime, e: i64) -> Rational {
    let mag = p.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from(mag)
    } else {
        Rational::from((Integer::from(1), mag))
    }
}

/// Dense univariate polynomial with rational coefficients; index = degree.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::from(1))
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Poly::new(vec![c.into()])
    }

    /// `c * t^deg`.
    pub fn monomial(c: impl Into<Rational>, deg: usize) -> Self {
        let mut coeffs = vec![Rational::new(); deg + 1];
        coeffs[deg] = c.into();
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<Integer>,
    {
        Poly::new(
            coeffs
                .into_iter()
                .map(|c| Rational::from(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    /// Integer coefficients, if all coefficients are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs
            .iter()
            .map(|c| (*c.denom() == 1).then(|| c.numer().clone()))
            .collect()
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Evaluation at an integer point; the polynomial must have integer
    /// coefficients.
    pub fn eval_integer(&self, x: &Integer) -> Option<Integer> {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            if *c.denom() != 1 {
                return None;
            }
            acc *= x;
            acc += c.numer();
        }
        Some(acc)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| (c * k).complete()).collect())
    }

    /// Keep the terms of degree `<= m`.
    pub fn truncate(&self, m: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(m + 1).cloned().collect())
    }

    /// `t^n * f(1/t)`; requires `n >= deg f`.
    pub fn reverse(&self, n: usize) -> Poly {
        assert!(self.degree().is_none_or(|d| d <= n), "reversal length below degree");
        let mut coeffs = vec![Rational::new(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// `f(-t)`.
    pub fn negate_variable(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { (-c).complete() } else { c.clone() })
                .collect(),
        )
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += (a * b).complete();
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| (-c).complete()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, deg: usize) -> fmt::Result {
    let negative = *c < 0;
    let mag = Rational::from(c.abs_ref());
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let unit = mag == 1;
    match deg {
        0 => write!(f, "{mag}"),
        1 if unit => f.write_str("t"),
        1 => write!(f, "{mag}*t"),
        _ if unit => write!(f, "t^{deg}"),
        _ => write!(f, "{mag}*t^{deg}"),
    }
}

/// Ascending order, e.g. `1 - 4*t + 2*t^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, deg)?;
            first = false;
        }
        Ok(())
    }
}

/// Truncated power series `Σ_{k<=m} f_k t^k` known exactly through degree
/// `m` (the truncation order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    coeffs: Vec<Rational>,
}

impl SeriesPrefix {
    /// The series is known through degree `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series prefix needs at least one coefficient");
        SeriesPrefix { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<Integer>,
    {
        SeriesPrefix::new(
            coeffs
                .into_iter()
                .map(|c| Rational::from(c.into()))
                .collect(),
        )
    }

    /// Prefix of a polynomial through degree `m`.
    pub fn from_poly(p: &Poly, m: usize) -> Self {
        SeriesPrefix::new((0..=m).map(|i| p.coeff(i)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// Restrict to degrees `<= m`; `m` may not exceed the known order.
    pub fn truncate(&self, m: usize) -> SeriesPrefix {
        assert!(m <= self.order(), "cannot truncate beyond the known order");
        SeriesPrefix::new(self.coeffs[..=m].to_vec())
    }

    /// Product known through `min` of the two orders.
    pub fn mul_truncate(&self, other: &SeriesPrefix) -> SeriesPrefix {
        let m = self.order().min(other.order());
        let mut out = vec![Rational::new(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] += (a * b).complete();
            }
        }
        SeriesPrefix::new(out)
    }

    /// `poly * self`, known through the order of `self`.
    pub fn mul_poly(&self, p: &Poly) -> SeriesPrefix {
        self.mul_truncate(&SeriesPrefix::from_poly(p, self.order()))
    }

    pub fn sub_poly(&self, p: &Poly) -> SeriesPrefix {
        SeriesPrefix::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c - &p.coeff(i)).complete())
                .collect(),
        )
    }

    /// The prefix viewed as a polynomial (drops the truncation order).
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

impl fmt::Display for SeriesPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_poly(), self.order() + 1)
    }
}
