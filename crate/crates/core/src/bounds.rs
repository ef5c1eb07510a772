//! Explicit polynomial bounds and certified lower bounds for
//! `|d E_p(t) - c|_p`.
//!
//! If `H 2 (l+1)! B(l+1,t) |t|^{l+1} e^{2√((l+1)/|t|)} |t|_p^{2l} < 1` with
//! `B(l,t) = (l|t|/4)^{1/4} + (l|t|/4)^{-1/4}`, then
//! `|d E_p(t) - c|_p >= |t|_p^{2l}` for every `c, d` with `|c| + |d| <= H`,
//! `d != 0`. The left side is evaluated with every operation rounded
//! upward and a further factor `1 + 2^{-20}`, so a reported certificate
//! never rests on rounding.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::arith::{factorial, vp_integer, Prime, Valuation};
use crate::error::{Error, Result};
use crate::hardy::BigReal;
use crate::padic::{linear_form_valuation, PadicContext, ValuationResult};

/// Working precision of the certification arithmetic.
pub const CERT_BITS: u32 = 128;

/// The condition must hold after multiplying by `1 + 2^{-SLACK_EXP}`.
pub const SLACK_EXP: i32 = 20;

/// Extra p-adic digits the default cross-check may add while escalating.
pub const DEFAULT_CEILING_EXTRA: u64 = 64;

fn up<T>(v: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(CERT_BITS, v, Round::Up).0
}

fn down<T>(v: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(CERT_BITS, v, Round::Down).0
}

fn exact(v: Float) -> BigReal {
    BigReal::new(v, Float::new(64))
}

/// Upper bound for `x^{1/4} + x^{-1/4}`, `x > 0`.
fn b_of(x: &Rational) -> Float {
    let mut hi = up(x);
    hi.root_round(4, Round::Up);
    let mut lo = down(x);
    lo.root_round(4, Round::Down);
    lo.recip_round(Round::Up);
    up(&hi + &lo)
}

/// Upper bound for `e^{2√(n/x)}`, `x > 0`.
fn exp_sqrt_factor(n: u32, x: &Rational) -> Float {
    let mut s = up(Rational::from(n) / x);
    s.sqrt_round(Round::Up);
    s *= 2u32;
    s.exp_round(Round::Up);
    s
}

/// Upper bound for `n! x^n e^{2√(n/x)}`.
fn core_bound(n: u32, x: &Rational) -> Float {
    let fact = up(&factorial(n));
    let pow = up(&x.clone().pow(n as i32));
    let fe = up(&fact * &pow);
    up(&fe * &exp_sqrt_factor(n, x))
}

fn require_positive(x: &Rational) -> Result<()> {
    if *x <= 0 {
        return Err(Error::InvalidArgument(format!("|t| must be positive, got {x}")));
    }
    Ok(())
}

/// `B(l, t) = (l|t|/4)^{1/4} + (l|t|/4)^{-1/4}`, rounded up.
pub fn b_factor(l: u32, t_abs: &Rational) -> Result<BigReal> {
    require_positive(t_abs)?;
    if l == 0 {
        return Err(Error::InvalidArgument("B(l, t) needs l >= 1".into()));
    }
    let x = Rational::from(l) * t_abs / 4u32;
    Ok(exact(b_of(&x)))
}

/// Upper bound `n! |t|^n e^{2√(n/|t|)}` for `|Q_n(t)|`.
pub fn q_bound(n: u32, t_abs: &Rational) -> Result<BigReal> {
    require_positive(t_abs)?;
    Ok(exact(core_bound(n, t_abs)))
}

/// Upper bound for `|P_n(t)|`: `2 n! |t|^n e^{2√(n/|t|)}` for `t < 0`, with
/// an extra factor `B(n, t)` for `t > 0`. `P_0 = 0`, and `n = 0` returns `2`.
pub fn p_bound(n: u32, t: &Rational) -> Result<BigReal> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("p_bound needs t != 0".into()));
    }
    let t_abs = Rational::from(t.abs_ref());
    let mut bound = core_bound(n, &t_abs) * 2u32;
    if *t > 0 && n > 0 {
        let x = Rational::from(n) * &t_abs / 4u32;
        bound = up(&bound * &b_of(&x));
    }
    Ok(exact(bound))
}

/// Sign of the evaluation point `t = ±p^a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// The data of one certification problem: `Λ = d E_p(±p^a) - c` with
/// `|c| + |d| <= H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEnv {
    h: Integer,
    p: Prime,
    a: u32,
    sign: Sign,
    c: Integer,
    d: Integer,
}

impl BoundEnv {
    /// `h` defaults to `|c| + |d|`.
    pub fn new(p: Prime, a: u32, sign: Sign, c: Integer, d: Integer, h: Option<Integer>) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidArgument("a must be at least 1".into()));
        }
        if d.is_zero() {
            return Err(Error::InvalidArgument("d must be nonzero".into()));
        }
        let height = Integer::from(c.abs_ref()) + Integer::from(d.abs_ref());
        let h = h.unwrap_or_else(|| height.clone());
        if h < height {
            return Err(Error::InvalidArgument(format!("H = {h} is below |c| + |d| = {height}")));
        }
        Ok(BoundEnv { h, p, a, sign, c, d })
    }

    pub fn h(&self) -> &Integer {
        &self.h
    }
    pub fn p(&self) -> Prime {
        self.p
    }
    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn sign(&self) -> Sign {
        self.sign
    }
    pub fn c(&self) -> &Integer {
        &self.c
    }
    pub fn d(&self) -> &Integer {
        &self.d
    }

    /// `p^a`.
    pub fn p_pow_a(&self) -> Integer {
        self.p.pow(self.a)
    }

    /// `t = ±p^a`.
    pub fn t(&self) -> Integer {
        self.p_pow_a() * self.sign.as_i32()
    }
}

/// Outcome of evaluating the certification condition at one level `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionValue {
    /// Rigorous upper estimate of the left side, including the slack factor.
    pub lhs_upper: BigReal,
    pub holds: bool,
}

/// Condition at a general integer `t` with `p | t`.
pub fn theorem_condition_at(h: &Integer, p: Prime, t: &Integer, l: u32) -> Result<ConditionValue> {
    if l == 0 {
        return Err(Error::InvalidArgument("the condition needs l >= 1".into()));
    }
    if *h <= 0 {
        return Err(Error::InvalidArgument("H must be positive".into()));
    }
    let v = match vp_integer(t, p) {
        Valuation::Infinite => return Err(Error::InvalidArgument("t must be nonzero".into())),
        Valuation::Finite(0) => return Err(Error::NotInDisc { t: t.to_string(), p: p.get() }),
        Valuation::Finite(v) => v as u64,
    };
    let t_abs = Rational::from(Integer::from(t.abs_ref()));
    let l1 = l + 1;
    let x = Rational::from(l1) * &t_abs / 4u32;
    // |t|^{l+1} |t|_p^{2l} is an exact rational.
    let e = 2 * u64::from(l) * v;
    let pw = Rational::from((t_abs.numer().clone().pow(l1), p.to_integer().pow(e as u32)));
    let mut lhs = up(h);
    lhs = up(&lhs * &up(&factorial(l1)));
    lhs *= 2u32;
    lhs = up(&lhs * &b_of(&x));
    lhs = up(&lhs * &up(&pw));
    lhs = up(&lhs * &exp_sqrt_factor(l1, &t_abs));
    let slack = up(1u32 + Float::with_val(CERT_BITS, Float::i_exp(1, -SLACK_EXP)));
    lhs = up(&lhs * &slack);
    let holds = lhs < 1u32;
    Ok(ConditionValue { lhs_upper: exact(lhs), holds })
}

/// Condition at `t = ±p^a` with height `H` from `env`.
pub fn theorem_condition(env: &BoundEnv, l: u32) -> Result<ConditionValue> {
    theorem_condition_at(&env.h, env.p, &env.t(), l)
}

/// How the level `l` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Explicit(u32),
    /// `l = ⌊ln H / 16⌋`.
    Remmal,
    /// `l = ⌈(16/11) ln(2H)⌉`.
    Minimizer,
    /// Smallest `l` in `1..=L_max` satisfying the condition.
    SearchMinimal,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Explicit(l) => write!(f, "explicit({l})"),
            Strategy::Remmal => f.write_str("remmal"),
            Strategy::Minimizer => f.write_str("minimizer"),
            Strategy::SearchMinimal => f.write_str("search"),
        }
    }
}

/// Which simplified sufficient conditions hold. These are recorded for
/// information; certification uses the direct condition only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CorollaryGuards {
    /// `p^a > (H 2 (l+1)! B(l+1,p^a) e^{2√((l+1)/p^a)})^{1/(l-1)}` at the
    /// chosen `l`; `None` when `l < 2`.
    pub level: Option<bool>,
    /// `p^a > (ln H)^4` and `ln H >= e^8`.
    pub remmal: bool,
    /// `H >= 4` and `p^a > (16/11) e^{(11 + 6 ln 4 + ln 5 + 4√10)/11} ln(2H e^{11/16})`;
    /// `None` when `H < 4`.
    pub minimizer: Option<bool>,
}

/// Result of [`certify`].
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub env: BoundEnv,
    pub strategy: Strategy,
    /// Chosen level; for an unsuccessful search, the level minimizing the
    /// left side.
    pub l: u32,
    /// `None` when no level `>= 1` was available.
    pub condition_lhs_upper: Option<BigReal>,
    pub certified: bool,
    /// The strategy's level fell below its admissible range.
    pub blocked_by_guard: bool,
    /// `2al`, so that `|Λ|_p >= p^{-2al}`; present only when certified.
    pub certified_exponent: Option<u64>,
    pub guards: CorollaryGuards,
    pub cross_check: Option<ValuationResult>,
}

impl CertificationReport {
    /// Runs [`cross_check`] and stores its result.
    pub fn with_cross_check(mut self, slack: u64) -> Result<Self> {
        self.cross_check = Some(cross_check(&self, slack)?);
        Ok(self)
    }
}

fn ln_integer(x: &Integer) -> Float {
    Float::with_val(CERT_BITS, x).ln()
}

/// `⌊ln H / 16⌋`.
pub fn remmal_level(h: &Integer) -> u32 {
    let v = ln_integer(h) / 16u32;
    v.floor().to_u32_saturating().unwrap_or(0)
}

/// `⌈(16/11) ln(2H)⌉`.
pub fn minimizer_level(h: &Integer) -> u32 {
    let v = ln_integer(&(h.clone() * 2u32)) * 16u32 / 11u32;
    v.ceil().to_u32_saturating().unwrap_or(u32::MAX)
}

/// `⌈10 (a ln p + ln H + 10)⌉`.
pub fn search_limit(env: &BoundEnv) -> u32 {
    let ln_p = Float::with_val(CERT_BITS, env.p.get()).ln();
    let v = (ln_p * env.a + ln_integer(&env.h) + 10u32) * 10u32;
    v.ceil().to_u32_saturating().unwrap_or(u32::MAX)
}

fn level_guard(env: &BoundEnv, l: u32) -> Option<bool> {
    if l < 2 {
        return None;
    }
    let pa = Rational::from(env.p_pow_a());
    let x = Rational::from(l + 1) * &pa / 4u32;
    let mut rhs = up(&env.h);
    rhs = up(&rhs * &up(&factorial(l + 1))) * 2u32;
    rhs = up(&rhs * &b_of(&x));
    rhs = up(&rhs * &exp_sqrt_factor(l + 1, &pa));
    // p^a > rhs^{1/(l-1)}  <=>  p^{a(l-1)} > rhs
    Some(rhs < env.p.pow(env.a * (l - 1)))
}

fn corollary_guards(env: &BoundEnv, l: u32) -> CorollaryGuards {
    let pa = Float::with_val(CERT_BITS, env.p_pow_a());
    let ln_h = ln_integer(&env.h);
    let e8 = Float::with_val(CERT_BITS, 8).exp();
    let remmal = ln_h >= e8 && pa > Float::with_val(CERT_BITS, ln_h.clone().pow(4u32));
    let minimizer = (env.h >= 4).then(|| {
        let f = |x: u32| Float::with_val(CERT_BITS, x);
        let expo = (f(11) + f(6) * f(4).ln() + f(5).ln() + f(4) * f(10).sqrt()) / 11u32;
        let ln_term = f(2).ln() + &ln_h + f(11) / 16u32;
        let rhs = f(16) / 11u32 * expo.exp() * ln_term;
        pa > rhs
    });
    CorollaryGuards { level: level_guard(env, l), remmal, minimizer }
}

/// Choose `l` by `strategy` and decide the certification condition there.
pub fn certify(env: &BoundEnv, strategy: Strategy) -> Result<CertificationReport> {
    let mut blocked = false;
    let (l, cond) = match strategy {
        Strategy::Explicit(l) => {
            if l < 1 {
                return Err(Error::InvalidArgument("explicit level must be at least 1".into()));
            }
            (l, Some(theorem_condition(env, l)?))
        }
        Strategy::Remmal => {
            let l = remmal_level(&env.h);
            blocked = l < 4;
            let cond = if l >= 1 { Some(theorem_condition(env, l)?) } else { None };
            (l, cond)
        }
        Strategy::Minimizer => {
            let l = minimizer_level(&env.h).max(1);
            (l, Some(theorem_condition(env, l)?))
        }
        Strategy::SearchMinimal => {
            let mut best: Option<(u32, ConditionValue)> = None;
            let mut found = None;
            for l in 1..=search_limit(env) {
                let c = theorem_condition(env, l)?;
                if c.holds {
                    found = Some((l, c));
                    break;
                }
                if best.as_ref().is_none_or(|(_, b)| c.lhs_upper.value() < b.lhs_upper.value()) {
                    best = Some((l, c));
                }
            }
            let (l, c) = found.or(best).expect("the search range is never empty");
            (l, Some(c))
        }
    };
    let certified = !blocked && cond.as_ref().is_some_and(|c| c.holds);
    let exponent = 2 * u64::from(env.a) * u64::from(l);
    Ok(CertificationReport {
        env: env.clone(),
        strategy,
        l,
        condition_lhs_upper: cond.map(|c| c.lhs_upper),
        certified,
        blocked_by_guard: blocked,
        certified_exponent: certified.then_some(exponent),
        guards: corollary_guards(env, l),
        cross_check: None,
    })
}

/// Compare `v_p(d E_p(t) - c)` with the exponent `2al` at level `l`,
/// starting at precision `2al + slack` and raising it up to `ceiling`.
pub fn audit_level(env: &BoundEnv, l: u32, slack: u64, ceiling: u64) -> Result<ValuationResult> {
    let bound = 2 * u64::from(env.a) * u64::from(l);
    let t = env.t();
    let mut n = bound + slack;
    loop {
        if n == 0 || n > ceiling {
            return Err(Error::Unresolved(ceiling));
        }
        let prec = u32::try_from(n).map_err(|_| Error::Unresolved(ceiling))?;
        let ctx = PadicContext::new(env.p, prec)?;
        match linear_form_valuation(&env.c, &env.d, &t, &ctx)? {
            ValuationResult::Exact(v) if v <= bound => return Ok(ValuationResult::Exact(v)),
            ValuationResult::Exact(v) => {
                return Err(Error::SoundnessViolation(format!(
                    "v_{}({} E({t}) - {}) = {v} exceeds the certified exponent {bound}",
                    env.p, env.d, env.c
                )))
            }
            ValuationResult::AtLeast(m) if m > bound => {
                return Err(Error::SoundnessViolation(format!(
                    "v_{}({} E({t}) - {}) >= {m} exceeds the certified exponent {bound}",
                    env.p, env.d, env.c
                )))
            }
            ValuationResult::AtLeast(_) => n = (bound + 1).max(n + 1),
        }
    }
}

/// Confirm a certificate by direct p-adic computation.
///
/// Returns `Exact(v)` with `v <= 2al`. A valuation above `2al` is a
/// [`Error::SoundnessViolation`]; if precision `2al + slack + 64` does not
/// settle the question the result is [`Error::Unresolved`].
pub fn cross_check(report: &CertificationReport, slack: u64) -> Result<ValuationResult> {
    cross_check_with_ceiling(report, slack, DEFAULT_CEILING_EXTRA)
}

/// [`cross_check`] with the escalation ceiling `2al + slack + extra`.
pub fn cross_check_with_ceiling(report: &CertificationReport, slack: u64, extra: u64) -> Result<ValuationResult> {
    if !report.certified {
        return Err(Error::InvalidArgument("only certified reports can be cross-checked".into()));
    }
    let bound = 2 * u64::from(report.env.a) * u64::from(report.l);
    audit_level(&report.env, report.l, slack, bound + slack + extra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::{p_poly, q_poly};
    use crate::padic::w_integer;
    use proptest::prelude::*;
    use super::Strategy;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn env(p: u64, a: u32, sign: Sign, c: i64, d: i64, h: Option<i64>) -> BoundEnv {
        BoundEnv::new(Prime::new(p).unwrap(), a, sign, Integer::from(c), Integer::from(d), h.map(Integer::from)).unwrap()
    }

    #[test]
    fn b_factor_examples() {
        let b = b_factor(4, &r(1)).unwrap();
        assert!(*b.value() >= 2 && b.to_f64() - 2.0 < 1e-30);
        let b = b_factor(1, &r(4)).unwrap();
        assert!(*b.value() >= 2 && b.to_f64() - 2.0 < 1e-30);
        let b = b_factor(3, &r(1024)).unwrap().to_f64();
        let expect = 768f64.powf(0.25) + 768f64.powf(-0.25);
        assert!((b - expect).abs() < 1e-12);
        assert!((b - 5.4543).abs() < 1e-3);
    }

    #[test]
    fn q_bound_examples() {
        assert_eq!(q_bound(0, &r(7)).unwrap().to_f64(), 1.0);
        let e2 = q_bound(1, &r(1)).unwrap();
        let exact = Float::with_val(CERT_BITS, 2).exp();
        assert!(*e2.value() >= exact);
        assert!(Float::with_val(CERT_BITS, e2.value() - &exact) < 1e-30);
        let b = q_bound(5, &r(3)).unwrap();
        for t in [3, -3] {
            assert!(*b.value() >= q_poly(5).eval(&r(t)).abs());
        }
    }

    #[test]
    fn p_bound_examples() {
        assert!(*p_bound(3, &r(-2)).unwrap().value() >= p_poly(3).eval(&r(-2)).abs());
        assert!(*p_bound(3, &r(2)).unwrap().value() >= p_poly(3).eval(&r(2)).abs());
        let b = p_bound(1, &r(-1)).unwrap().to_f64();
        assert!((b - 2.0 * 1f64.exp().powi(2)).abs() < 1e-12);
        assert!(p_bound(2, &r(0)).is_err());
    }

    #[test]
    fn size_bounds_on_exact_values() {
        for t in [1i64, -1, 2, -2, 3, -3, 1024, -1024] {
            let tr = r(t);
            let t_abs = r(t.abs());
            for n in 1..=40u32 {
                let q = q_poly(n).eval(&tr).abs();
                let p = p_poly(n).eval(&tr).abs();
                assert!(*q_bound(n, &t_abs).unwrap().value() >= q, "Q_{n}({t})");
                assert!(*p_bound(n, &tr).unwrap().value() >= p, "P_{n}({t})");
            }
        }
    }

    #[test]
    fn worked_condition() {
        let e = env(2, 10, Sign::Plus, 1, 1, Some(2));
        let c = theorem_condition(&e, 2).unwrap();
        assert!(c.holds);
        let lhs = c.lhs_upper.to_f64();
        assert!(lhs > 0.142 && lhs < 0.143, "{lhs}");
        let independent = 2.0 * 2.0 * 6.0 * (768f64.powf(0.25) + 768f64.powf(-0.25)) * 2f64.powi(-10)
            * (2.0 * (3.0f64 / 1024.0).sqrt()).exp();
        assert!((lhs - independent).abs() < 1e-6);
    }

    #[test]
    fn condition_fails_for_large_height() {
        let e = env(2, 1, Sign::Plus, 1, 1, Some(1_000_000));
        let c = theorem_condition(&e, 2).unwrap();
        assert!(!c.holds);
        assert!(c.lhs_upper.to_f64() > 1e6);
    }

    #[test]
    fn general_point_condition() {
        let h = Integer::from(2);
        let two = Prime::new(2).unwrap();
        let a = theorem_condition_at(&h, two, &Integer::from(1024), 2).unwrap();
        let b = theorem_condition(&env(2, 10, Sign::Minus, 1, 1, None), 2).unwrap();
        assert_eq!(a, b);
        let c = theorem_condition_at(&h, two, &Integer::from(3 * 1024), 2).unwrap();
        assert!(c.lhs_upper.value() > a.lhs_upper.value());
        assert!(theorem_condition_at(&h, two, &Integer::from(3), 2).is_err());
        assert!(theorem_condition_at(&h, two, &Integer::from(4), 0).is_err());
    }

    #[test]
    fn certify_examples() {
        let e = env(2, 10, Sign::Plus, 1, 1, None);
        let rep = certify(&e, Strategy::Explicit(2)).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.certified_exponent, Some(40));
        assert_eq!(rep.guards.level, Some(true));
        let search = certify(&e, Strategy::SearchMinimal).unwrap();
        assert!(search.certified);
        assert!(search.l <= 2);
        for l in 1..search.l {
            assert!(!theorem_condition(&e, l).unwrap().holds);
        }

        let e3 = env(3, 1, Sign::Plus, 0, 1, Some(1));
        let rep = certify(&e3, Strategy::Explicit(1)).unwrap();
        assert!(!rep.certified);
        assert!(rep.condition_lhs_upper.unwrap().to_f64() >= 1.0);
        assert!(certify(&e3, Strategy::Explicit(0)).is_err());
    }

    #[test]
    fn remmal_below_range_is_blocked() {
        let e = env(2, 10, Sign::Plus, 1, 1, None);
        let rep = certify(&e, Strategy::Remmal).unwrap();
        assert!(rep.blocked_by_guard);
        assert!(!rep.certified);
        assert_eq!(rep.l, 0);
        assert!(!rep.guards.remmal);
    }

    #[test]
    fn minimizer_level_window() {
        for h in [1i64, 2, 3, 4, 10, 100, 12345, 1_000_000_007] {
            let l = f64::from(minimizer_level(&Integer::from(h)));
            let base = 16.0 / 11.0 * (2.0 * h as f64).ln();
            assert!(base <= l && l < base + 1.0, "H = {h}");
            assert!(l < 16.0 / 11.0 * (2.0 * h as f64 * (11.0f64 / 16.0).exp()).ln());
        }
        let e = env(2, 20, Sign::Plus, 2, 2, None);
        let rep = certify(&e, Strategy::Minimizer).unwrap();
        assert_eq!(rep.l, minimizer_level(&Integer::from(4)));
    }

    #[test]
    fn minimizer_guard_threshold() {
        // (16/11) e^{(11 + 6 ln 4 + ln 5 + 4√10)/11} ln(2H e^{11/16}) for H = 4.
        let expo = (11.0 + 6.0 * 4f64.ln() + 5f64.ln() + 4.0 * 10f64.sqrt()) / 11.0;
        let rhs = 16.0 / 11.0 * expo.exp() * (8.0f64.ln() + 11.0 / 16.0);
        let a_needed = (rhs.log2()).floor() as u32 + 1;
        let yes = corollary_guards(&env(2, a_needed, Sign::Plus, 2, 2, None), 1);
        let no = corollary_guards(&env(2, a_needed - 1, Sign::Plus, 2, 2, None), 1);
        assert_eq!(yes.minimizer, Some(true));
        assert_eq!(no.minimizer, Some(false));
        assert_eq!(corollary_guards(&env(2, 5, Sign::Plus, 1, 1, None), 1).minimizer, None);
    }

    #[test]
    fn cross_check_examples() {
        let e = env(2, 10, Sign::Plus, 1, 1, None);
        let rep = certify(&e, Strategy::Explicit(2)).unwrap();
        match cross_check(&rep, 5).unwrap() {
            ValuationResult::Exact(v) => assert!(v <= 40),
            other => panic!("unexpected {other}"),
        }
        // Zero slack starts at precision 2al and must escalate before deciding.
        assert!(matches!(cross_check(&rep, 0).unwrap(), ValuationResult::Exact(v) if v <= 40));

        // E_2(2) ≡ 11 (mod 16): v_2(E_2(2) - 11) = 4 = 2al at l = 2.
        let e = env(2, 1, Sign::Plus, 11, 1, None);
        assert!(!certify(&e, Strategy::Explicit(2)).unwrap().certified);
        assert_eq!(audit_level(&e, 2, 4, 100).unwrap(), ValuationResult::Exact(4));
        assert!(matches!(audit_level(&e, 1, 4, 100), Err(Error::SoundnessViolation(_))));
        assert_eq!(audit_level(&e, 2, 0, 3), Err(Error::Unresolved(3)));

        let uncertified = certify(&env(2, 1, Sign::Plus, 11, 1, None), Strategy::Explicit(1)).unwrap();
        assert!(cross_check(&uncertified, 5).is_err());
    }

    #[test]
    fn soundness_sweep() {
        let mut certified = 0;
        for p in [2u64, 3, 5] {
            for a in 1..=6u32 {
                for c in (-20i64..=20).step_by(3) {
                    for d in [-20i64, -7, -1, 1, 2, 13, 20] {
                        for sign in [Sign::Plus, Sign::Minus] {
                            let e = env(p, a, sign, c, d, None);
                            let rep = certify(&e, Strategy::SearchMinimal).unwrap();
                            if !rep.certified {
                                continue;
                            }
                            certified += 1;
                            let v = cross_check(&rep, 4).unwrap();
                            assert!(matches!(v, ValuationResult::Exact(x) if x <= 2 * u64::from(a * rep.l)));
                            let (cc, dd, t) = (e.c().clone(), e.d().clone(), e.t());
                            let w0 = w_integer(rep.l, &cc, &dd, &t);
                            let w1 = w_integer(rep.l + 1, &cc, &dd, &t);
                            assert!(!(w0.is_zero() && w1.is_zero()));
                        }
                    }
                }
            }
        }
        assert!(certified > 100, "only {certified} certificates");
    }

    proptest! {
        #[test]
        fn raising_a_keeps_condition(p in prop::sample::select(vec![2u64, 3, 5, 7]), a in 1u32..12, l in 2u32..8, h in 1i64..10_000) {
            let e1 = env(p, a, Sign::Plus, 0, 1, Some(h));
            let e2 = env(p, a + 1, Sign::Plus, 0, 1, Some(h));
            if theorem_condition(&e1, l).unwrap().holds {
                prop_assert!(theorem_condition(&e2, l).unwrap().holds);
            }
        }
    }
}
