//! Built-in consistency checks, runnable from the command line.

use std::fmt;
use std::time::Instant;

use rug::{Float, Integer, Rational};

use crate::arith::{factorial, vp_factorial, vp_factorial_digit_sum, Poly, Prime};
use crate::bounds::{certify, cross_check, p_bound, q_bound, BoundEnv, Sign, Strategy};
use crate::cf::{cf_padic_value, euler_cf_symbolic, Convergents, PolyDomain};
use crate::hardy::{decimal_tolerance, euler_gompertz, hardy_explicit, hardy_negative, hardy_ray, RayParam};
use crate::pade::{determinant, p_poly, pade_by_recurrence, pade_triple, q_poly};
use crate::padic::{eval_euler_padic, PadicContext, ValuationResult};

/// How much work the self-test does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    Quick,
    Full,
}

impl Level {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

/// Deliberate corruption, used to confirm that the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to the constant coefficient of `Q_2` wherever the checks
    /// read Padé denominators.
    CorruptCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestSummary {
    pub level: Level,
    pub checks: Vec<CheckOutcome>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for SelftestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {:<28} {:>6} ms  {}", c.name, c.millis, c.detail)?;
        }
        write!(f, "{} of {} checks passed", self.checks.len() - self.failures(), self.checks.len())
    }
}

type Check = fn(Level, Option<Fault>) -> std::result::Result<String, String>;

fn q_read(l: u32, fault: Option<Fault>) -> Poly {
    let q = q_poly(l);
    match fault {
        Some(Fault::CorruptCoefficient) if l == 2 => &q + &Poly::one(),
        _ => q,
    }
}

fn check_determinant(level: Level, fault: Option<Fault>) -> std::result::Result<String, String> {
    let top = level.pick(15, 40);
    for l in 0..=top {
        let det = &(&q_read(l, fault) * &p_poly(l + 1)) - &(&q_read(l + 1, fault) * &p_poly(l));
        let expect = Poly::monomial(factorial(l).square(), 2 * l as usize);
        if det != expect || determinant(l) != expect {
            return Err(format!("level {l}: {det}"));
        }
    }
    Ok(format!("l <= {top}"))
}

fn check_recurrence(level: Level, fault: Option<Fault>) -> std::result::Result<String, String> {
    let top = level.pick(15, 40);
    for l in 0..=top {
        let (p, q) = pade_by_recurrence(l);
        if p != p_poly(l) || q != q_read(l, fault) {
            return Err(format!("level {l}"));
        }
    }
    Ok(format!("l <= {top}"))
}

fn check_continued_fraction(level: Level, fault: Option<Fault>) -> std::result::Result<String, String> {
    let top = level.pick(15, 40);
    let cf = euler_cf_symbolic();
    for (l, c) in Convergents::new(&PolyDomain, &cf).take(top as usize + 1).enumerate() {
        let c = c.map_err(|e| e.to_string())?;
        let l = l as u32;
        if c.numerator != p_poly(l) || c.denominator != q_read(l, fault) {
            return Err(format!("convergent {l}"));
        }
    }
    Ok(format!("l <= {top}"))
}

fn check_pade_order(level: Level, _: Option<Fault>) -> std::result::Result<String, String> {
    let top = level.pick(10, 30);
    for l in 0..=top {
        pade_triple(l, l).map_err(|e| e.to_string())?;
    }
    Ok(format!("l <= {top}"))
}

fn check_legendre(level: Level, _: Option<Fault>) -> std::result::Result<String, String> {
    let top = level.pick(200u64, 1000);
    for p in [2u64, 3, 5, 7, 97] {
        let prime = Prime::new(p).map_err(|e| e.to_string())?;
        for n in 0..=top {
            if vp_factorial(n, prime) != vp_factorial_digit_sum(n, prime) {
                return Err(format!("v_{p}({n}!)"));
            }
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_padic_convergence(level: Level, _: Option<Fault>) -> std::result::Result<String, String> {
    let (primes, top): (&[u64], u32) = level.pick((&[2, 3], 6), (&[2, 3, 5], 10));
    for &p in primes {
        let prime = Prime::new(p).map_err(|e| e.to_string())?;
        for a in 1..=2u32 {
            let t = prime.pow(a);
            for l in 0..=top {
                let expect = 2 * vp_factorial(u64::from(l), prime) + 2 * u64::from(a * l);
                let ctx = PadicContext::new(prime, expect as u32 + 6).map_err(|e| e.to_string())?;
                let e = eval_euler_padic(&t, &ctx).map_err(|e| e.to_string())?;
                let approx = cf_padic_value(l, &t, &ctx).map_err(|e| e.to_string())?;
                if e.sub(&approx).valuation() != ValuationResult::Exact(expect) {
                    return Err(format!("p = {p}, a = {a}, l = {l}"));
                }
            }
        }
    }
    Ok(format!("l <= {top}"))
}

fn check_hardy_routes(level: Level, _: Option<Fault>) -> std::result::Result<String, String> {
    let digits = level.pick(20, 30);
    let tol = decimal_tolerance(digits - 5);
    let ts: Vec<Rational> = level.pick(
        vec![Rational::from(-1)],
        vec![Rational::from((-1, 2)), Rational::from(-1), Rational::from(-2), Rational::from(-10)],
    );
    for t in &ts {
        let q = hardy_negative(t, digits).map_err(|e| e.to_string())?;
        let e = hardy_explicit(t, 0, digits).map_err(|e| e.to_string())?;
        let diff = Float::with_val(q.precision_bits(), q.value() - e.re()).abs();
        if diff > tol {
            return Err(format!("t = {t}: routes differ by {}", diff.to_f64()));
        }
    }
    let delta = euler_gompertz(digits);
    let h = hardy_negative(&Rational::from(-1), digits).map_err(|e| e.to_string())?;
    if Float::with_val(delta.precision_bits(), delta.value() - h.value()).abs() > tol {
        return Err("Euler–Gompertz constant".into());
    }
    let one = Rational::from(1);
    let ray = RayParam::from_rational(&one).map_err(|e| e.to_string())?;
    let r = hardy_ray(&one, &ray, digits).map_err(|e| e.to_string())?;
    let x = hardy_explicit(&one, 0, digits).map_err(|e| e.to_string())?;
    let diff = rug::Complex::with_val(r.value().prec().0, r.value() - x.value());
    if Float::with_val(64, diff.abs_ref()) > tol {
        return Err("ray route at t = 1".into());
    }
    Ok(format!("{} points, {digits} digits", ts.len() + 1))
}

fn check_bounds(level: Level, _: Option<Fault>) -> std::result::Result<String, String> {
    let top = level.pick(15, 40);
    for t in [1i64, -1, 2, -2, 3, -3, 1024, -1024] {
        let tr = Rational::from(t);
        let t_abs = Rational::from(t.abs());
        for n in 1..=top {
            let qb = q_bound(n, &t_abs).map_err(|e| e.to_string())?;
            let pb = p_bound(n, &tr).map_err(|e| e.to_string())?;
            if *qb.value() < q_poly(n).eval(&tr).abs() || *pb.value() < p_poly(n).eval(&tr).abs() {
                return Err(format!("n = {n}, t = {t}"));
            }
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_certificate(level: Level, _: Option<Fault>) -> std::result::Result<String, String> {
    let two = Prime::new(2).map_err(|e| e.to_string())?;
    let env = BoundEnv::new(two, 10, Sign::Plus, Integer::from(1), Integer::from(1), Some(Integer::from(2)))
        .map_err(|e| e.to_string())?;
    let rep = certify(&env, Strategy::Explicit(2)).map_err(|e| e.to_string())?;
    if !rep.certified {
        return Err("worked example not certified".into());
    }
    cross_check(&rep, 5).map_err(|e| e.to_string())?;
    let mut count = 1;
    if level == Level::Full {
        for p in [2u64, 3, 5] {
            let prime = Prime::new(p).map_err(|e| e.to_string())?;
            for a in 1..=6u32 {
                for c in -5i64..=5 {
                    for d in [-3i64, 1, 4] {
                        let env = BoundEnv::new(prime, a, Sign::Plus, Integer::from(c), Integer::from(d), None)
                            .map_err(|e| e.to_string())?;
                        let rep = certify(&env, Strategy::SearchMinimal).map_err(|e| e.to_string())?;
                        if rep.certified {
                            cross_check(&rep, 4).map_err(|e| e.to_string())?;
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("cross-checked: {count}"))
}

const CHECKS: &[(&str, Check)] = &[
    ("determinant", check_determinant),
    ("recurrence", check_recurrence),
    ("continued fraction", check_continued_fraction),
    ("pade order", check_pade_order),
    ("legendre", check_legendre),
    ("padic convergence", check_padic_convergence),
    ("hardy routes", check_hardy_routes),
    ("size bounds", check_bounds),
    ("certificates", check_certificate),
];

/// Runs every check at `level`, optionally with an injected fault.
pub fn run(level: Level, fault: Option<Fault>) -> SelftestSummary {
    let checks = CHECKS
        .iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let outcome = check(level, fault);
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(detail) => CheckOutcome { name, passed: true, detail, millis },
                Err(detail) => CheckOutcome { name, passed: false, detail, millis },
            }
        })
        .collect();
    SelftestSummary { level, checks }
}
