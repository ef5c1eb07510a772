//! Command implementations behind the `euler-pade` binary.

pub mod args;
pub mod output;
pub mod parse;

use std::fmt::Write as _;

use serde::Serialize;

use euler_pade::arith::{Poly, Prime};
use euler_pade::bounds::{certify, cross_check, BoundEnv, CertificationReport, Strategy};
use euler_pade::cf::{
    cf_padic_error, cf_real_error_bound, cf_real_value, convergent, euler_cf_coeffs, euler_cf_rational,
    euler_cf_symbolic, PadicDomain, PolyDomain, RationalDomain, RealDomain,
};
use euler_pade::hardy::{
    format_fixed, hardy_explicit, hardy_negative, hardy_ray, working_bits, BigComplex, RayParam, MAX_DIGITS,
};
use euler_pade::pade::pade_triple;
use euler_pade::padic::{eval_euler_padic, euler_terms_needed, PadicContext};
use euler_pade::rug::float::Round;
use euler_pade::rug::{Float, Integer, Rational};
use euler_pade::selftest::{self, Fault, Level};
use euler_pade::Error;

use args::{CertifyArgs, CfArgs, Cli, Command, Domain, EvalPadicArgs, Format, HardyArgs, LevelArg, PadeArgs, Route};
use args::{SelftestArgs, StrategyArg};
use output::*;

/// Environment variable overriding the default decimal precision.
pub const DIGITS_ENV: &str = "EULER_PADE_DIGITS";
pub const DEFAULT_DIGITS: u32 = 50;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_CERTIFIED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_SOUNDNESS: u8 = 3;

/// A failed command: message for standard error and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPrime(_)
            | Error::InvalidArgument(_)
            | Error::NotInDisc { .. }
            | Error::NonUnit(_)
            | Error::ZeroPartialNumerator(_) => EXIT_USAGE,
            Error::SoundnessViolation(_) => EXIT_SOUNDNESS,
            Error::Inconsistent(_) | Error::Quadrature(_) | Error::Unresolved(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Rendered output of a successful command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

type CmdResult = Result<Outcome, Failure>;

struct Report<I, R> {
    envelope: Envelope<I, R>,
    text: String,
    code: u8,
}

impl<I: Serialize, R: Serialize> Report<I, R> {
    fn new(command: &str, inputs: I, result: R, metadata: Metadata, text: String, code: u8) -> Self {
        let envelope = Envelope { command: command.to_string(), inputs, result, metadata };
        Report { envelope, text, code }
    }

    fn render(self, format: Format) -> Outcome {
        let output = match format {
            Format::Text => self.text,
            Format::Json => {
                // serde_json's map keeps keys sorted.
                let value = serde_json::to_value(&self.envelope).expect("payloads are plain data");
                let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
                s.push('\n');
                s
            }
        };
        Outcome { output, code: self.code }
    }
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Pade(a) => Ok(cmd_pade(a)?.render(cli.format)),
        Command::EvalPadic(a) => Ok(cmd_eval_padic(a)?.render(cli.format)),
        Command::Hardy(a) => Ok(cmd_hardy(a)?.render(cli.format)),
        Command::Cf(a) => Ok(cmd_cf(a)?.render(cli.format)),
        Command::Certify(a) => Ok(cmd_certify(a)?.render(cli.format)),
        Command::Selftest(a) => Ok(cmd_selftest(a).render(cli.format)),
    }
}

fn default_digits() -> Result<u32, Failure> {
    match std::env::var(DIGITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{DIGITS_ENV}='{v}' is not a positive integer"))),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn digits_or_default(prec: Option<u32>) -> Result<u32, Failure> {
    let d = match prec {
        Some(d) => d,
        None => default_digits()?,
    };
    if d == 0 || d > MAX_DIGITS {
        return Err(Failure::usage(format!("precision must be in 1..={MAX_DIGITS} digits")));
    }
    Ok(d)
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Ok(Prime::new(p)?)
}

fn coeff_strings(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(Rational::to_string).collect()
}

fn cmd_pade(args: &PadeArgs) -> Result<Report<PadeInputs, PadeResult>, Failure> {
    let l = args.l;
    let triple = pade_triple(l, args.extra)?;
    let start = 2 * l as usize;
    let r: Vec<String> = triple.r_prefix.coeffs()[start..].iter().map(Rational::to_string).collect();
    let text = format!(
        "P_{l}(t) = {}\nQ_{l}(t) = {}\nR_{l}(t) = {}\n",
        triple.p, triple.q, triple.r_prefix
    );
    let result = PadeResult { p: coeff_strings(&triple.p), q: coeff_strings(&triple.q), r_start: start, r_prefix: r };
    let inputs = PadeInputs { l, extra: args.extra };
    Ok(Report::new("pade", inputs, result, Metadata::exact(), text, EXIT_OK))
}

fn cmd_eval_padic(args: &EvalPadicArgs) -> Result<Report<EvalPadicInputs, EvalPadicResult>, Failure> {
    let p = prime(args.p)?;
    let ctx = PadicContext::new(p, args.prec)?;
    let e = eval_euler_padic(&args.t, &ctx)?;
    let terms = euler_terms_needed(&args.t, &ctx)?;
    let mut text = format!("E_{p}({}) = {e}\n", args.t);
    let linear_form = match (&args.c, &args.d) {
        (Some(c), Some(d)) => {
            if d.is_zero() {
                return Err(Failure::usage("d must be nonzero"));
            }
            let lambda = e.mul(&ctx.element(d)).sub(&ctx.element(c));
            let v = lambda.valuation();
            writeln!(text, "{d}*E_{p}({}) - {c} = {lambda}", args.t).unwrap();
            writeln!(text, "v_{p} = {v}").unwrap();
            Some(LinearForm { residue: lambda.residue().to_string(), valuation: v.into() })
        }
        _ => None,
    };
    let result = EvalPadicResult {
        residue: e.residue().to_string(),
        modulus: ctx.modulus().to_string(),
        terms,
        linear_form,
    };
    let inputs = EvalPadicInputs {
        p: args.p,
        t: args.t.to_string(),
        prec: args.prec,
        c: args.c.as_ref().map(Integer::to_string),
        d: args.d.as_ref().map(Integer::to_string),
    };
    Ok(Report::new("eval-padic", inputs, result, Metadata::padic(args.prec), text, EXIT_OK))
}

fn sci(x: &Float) -> String {
    format!("{:.3e}", x.to_f64())
}

fn complex_text(v: &BigComplex, digits: u32) -> (String, String) {
    (format_fixed(v.re(), digits), format_fixed(v.im(), digits))
}

fn cmd_hardy(args: &HardyArgs) -> Result<Report<HardyInputs, HardyResult>, Failure> {
    let digits = digits_or_default(args.prec)?;
    let t = &args.t;
    let route = match args.route {
        Route::Auto if *t < 0 => Route::Quadrature,
        Route::Auto if *t > 0 => Route::Ray,
        Route::Auto => return Err(Failure::usage("t = 0: choose a route explicitly")),
        r => r,
    };
    if args.branch.is_some() && route != Route::Explicit {
        return Err(Failure::usage("--branch applies to the explicit route only"));
    }
    if args.b.is_some() && route != Route::Ray {
        return Err(Failure::usage("--b applies to the ray route only"));
    }
    let (name, re, im, err) = match route {
        Route::Quadrature => {
            let v = hardy_negative(t, digits)?;
            ("quadrature", v.to_fixed(digits), None, sci(v.error_bound()))
        }
        Route::Explicit => {
            let v = hardy_explicit(t, args.branch.unwrap_or(0), digits)?;
            let (re, im) = complex_text(&v, digits);
            ("explicit", re, Some(im), sci(v.error_bound()))
        }
        Route::Ray => {
            let b = args.b.clone().unwrap_or_else(|| Rational::from(1));
            let v = hardy_ray(t, &RayParam::from_rational(&b)?, digits)?;
            let (re, im) = complex_text(&v, digits);
            ("ray", re, Some(im), sci(v.error_bound()))
        }
        Route::Auto => unreachable!("auto is resolved above"),
    };
    let value = match &im {
        Some(im) => match im.strip_prefix('-') {
            Some(mag) => format!("{re} - {mag}i"),
            None => format!("{re} + {im}i"),
        },
        None => re.clone(),
    };
    let text = format!("H({t}) = {value}\nroute {name}, {digits} digits, error estimate {err}\n");
    let inputs = HardyInputs {
        t: t.to_string(),
        route: format!("{:?}", args.route).to_lowercase(),
        b: args.b.as_ref().map(Rational::to_string),
        branch: args.branch,
    };
    let result = HardyResult { route: name.into(), re, im, error_estimate: err };
    Ok(Report::new("hardy", inputs, result, Metadata::real(digits), text, EXIT_OK))
}

fn cmd_cf(args: &CfArgs) -> Result<Report<CfInputs, CfResult>, Failure> {
    let l = args.l;
    let domain = args.domain.unwrap_or(if args.t.is_some() { Domain::Rational } else { Domain::Symbolic });
    let need_t = || args.t.clone().ok_or_else(|| Failure::usage("this domain needs --t"));
    if domain != Domain::Padic && args.p.is_some() {
        return Err(Failure::usage("--p applies to the padic domain only"));
    }
    if matches!(domain, Domain::Symbolic | Domain::Rational) && args.prec.is_some() {
        return Err(Failure::usage("--prec applies to the real and padic domains only"));
    }
    if let Some(t) = &args.t {
        if t.is_zero() {
            return Err(Failure::usage("t = 0 makes the partial numerators vanish"));
        }
    }
    let mut metadata = Metadata::exact();
    let (numerator, denominator, value, bound) = match domain {
        Domain::Symbolic => {
            if args.t.is_some() {
                return Err(Failure::usage("the symbolic domain takes no --t"));
            }
            let c = convergent(&PolyDomain, &euler_cf_symbolic(), l)?;
            (c.numerator.to_string(), c.denominator.to_string(), None, None)
        }
        Domain::Rational => {
            let t = need_t()?;
            let c = convergent(&RationalDomain, &euler_cf_rational(&t)?, l)?;
            let value = (!c.denominator.is_zero()).then(|| Rational::from(&c.numerator / &c.denominator).to_string());
            (c.numerator.to_string(), c.denominator.to_string(), value, None)
        }
        Domain::Real => {
            let t = need_t()?;
            let digits = digits_or_default(args.prec)?;
            let bits = working_bits(digits);
            let tf = Float::with_val(bits, &t);
            let v = cf_real_value(&tf, l, digits)?;
            let c = convergent(&RealDomain { bits }, &euler_cf_coeffs(&RealDomain { bits }, tf), l)?;
            metadata = Metadata::real(digits);
            let (a, b) = (format_fixed(&c.numerator, digits), format_fixed(&c.denominator, digits));
            (a, b, Some(v.to_fixed(digits)), Some(cf_real_error_bound(l).to_string()))
        }
        Domain::Padic => {
            let t = need_t()?;
            let p = prime(args.p.ok_or_else(|| Failure::usage("the padic domain needs --p"))?)?;
            let n = args.prec.ok_or_else(|| Failure::usage("the padic domain needs --prec"))?;
            if *t.denom() != 1 {
                return Err(Failure::usage("the padic domain needs an integer t"));
            }
            let t = t.numer().clone();
            let ctx = PadicContext::new(p, n)?;
            let value = euler_pade::cf::cf_padic_value(l, &t, &ctx)?;
            let dom = PadicDomain { ctx: ctx.clone() };
            let c = convergent(&dom, &euler_cf_coeffs(&dom, ctx.element(&t)), l)?;
            metadata = Metadata::padic(n);
            let bound = cf_padic_error(l, &t, p)?.to_string();
            let res = |x: &euler_pade::padic::PadicApprox| x.residue().to_string();
            (res(&c.numerator), res(&c.denominator), Some(res(&value)), Some(bound))
        }
    };
    let suffix = match (domain, args.p, args.prec) {
        (Domain::Padic, Some(p), Some(n)) => format!(" (mod {p}^{n})"),
        _ => String::new(),
    };
    let mut text = format!("A_{l} = {numerator}{suffix}\nB_{l} = {denominator}{suffix}\n");
    match &value {
        Some(v) => writeln!(text, "A_{l}/B_{l} = {v}{suffix}").unwrap(),
        None if domain == Domain::Rational => writeln!(text, "A_{l}/B_{l} undefined (B_{l} = 0)").unwrap(),
        None => {}
    }
    match (&bound, domain) {
        (Some(_), Domain::Real) => {
            let b = Float::with_val_round(64, cf_real_error_bound(l), Round::Up).0;
            let b = b.to_string_radix_round(10, Some(6), Round::Up);
            writeln!(text, "distance to the limit <= {b}").unwrap();
        }
        (Some(b), _) => writeln!(text, "distance to the limit <= {b}").unwrap(),
        (None, _) => {}
    }
    let inputs = CfInputs {
        t: args.t.as_ref().map(Rational::to_string),
        l,
        domain: format!("{domain:?}").to_lowercase(),
        p: args.p,
        prec: args.prec,
    };
    let result = CfResult { numerator, denominator, value, distance_bound: bound };
    Ok(Report::new("cf", inputs, result, metadata, text, EXIT_OK))
}

fn strategy_of(args: &CertifyArgs) -> Strategy {
    match (args.l, args.strategy) {
        (Some(l), _) => Strategy::Explicit(l),
        (None, Some(StrategyArg::Remmal)) => Strategy::Remmal,
        (None, Some(StrategyArg::Minimizer)) => Strategy::Minimizer,
        (None, Some(StrategyArg::Search) | None) => Strategy::SearchMinimal,
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn certify_text(rep: &CertificationReport, lhs: &Option<String>, check: &Option<Valuation>, check_err: &Option<String>) -> String {
    let env = &rep.env;
    let p = env.p();
    let mut text = format!("t = {}, H = {}, strategy {}, l = {}\n", env.t(), env.h(), rep.strategy, rep.l);
    match lhs {
        Some(v) => writeln!(text, "condition LHS <= {v}").unwrap(),
        None => writeln!(text, "condition not evaluated").unwrap(),
    }
    let lam = format!("|{}*E_{p}({}) - {}|_{p}", env.d(), env.t(), env.c());
    match rep.certified_exponent {
        Some(e) => writeln!(text, "certified: {lam} >= {p}^-{e}").unwrap(),
        None if rep.blocked_by_guard => writeln!(text, "not certified: level below the strategy's range").unwrap(),
        None => writeln!(text, "not certified").unwrap(),
    }
    let g = rep.guards;
    writeln!(
        text,
        "guards: level {}, remmal {}, minimizer {}",
        yes_no(g.level),
        yes_no(Some(g.remmal)),
        yes_no(g.minimizer)
    )
    .unwrap();
    if let Some(v) = check {
        let v = match v {
            Valuation::Exact(n) => format!("Exact({n})"),
            Valuation::AtLeast(n) => format!("AtLeast({n})"),
        };
        writeln!(text, "cross-check: v_{p} = {v}").unwrap();
    }
    if let Some(e) = check_err {
        writeln!(text, "cross-check failed: {e}").unwrap();
    }
    text
}

fn cmd_certify(args: &CertifyArgs) -> Result<Report<CertifyInputs, CertifyResult>, Failure> {
    let p = prime(args.p)?;
    let env = BoundEnv::new(p, args.a, args.sign, args.c.clone(), args.d.clone(), args.h.clone())?;
    let strategy = strategy_of(args);
    let rep = certify(&env, strategy)?;
    let mut code = if rep.certified { EXIT_OK } else { EXIT_NOT_CERTIFIED };
    let (mut check, mut check_err) = (None, None);
    if args.cross_check && rep.certified {
        match cross_check(&rep, args.slack) {
            Ok(v) => check = Some(Valuation::from(v)),
            Err(e) => {
                let f = Failure::from(e);
                code = if f.code == EXIT_SOUNDNESS { EXIT_SOUNDNESS } else { EXIT_NOT_CERTIFIED };
                eprintln!("error: {}", f.message);
                check_err = Some(f.message);
            }
        }
    }
    let lhs = rep
        .condition_lhs_upper
        .as_ref()
        .map(|v| v.value().to_string_radix_round(10, Some(12), Round::Up));
    let text = certify_text(&rep, &lhs, &check, &check_err);
    let g = rep.guards;
    let result = CertifyResult {
        t: env.t().to_string(),
        h: env.h().to_string(),
        strategy: rep.strategy.to_string(),
        l: rep.l,
        condition_lhs_upper: lhs,
        certified: rep.certified,
        blocked_by_guard: rep.blocked_by_guard,
        certified_exponent: rep.certified_exponent,
        lower_bound: rep.certified_exponent.map(|e| format!("{p}^-{e}")),
        guards: Guards { level: g.level, remmal: g.remmal, minimizer: g.minimizer },
        cross_check: check,
        cross_check_error: check_err,
    };
    let inputs = CertifyInputs {
        p: args.p,
        a: args.a,
        sign: args.sign.to_string(),
        c: args.c.to_string(),
        d: args.d.to_string(),
        h: args.h.as_ref().map(Integer::to_string),
        strategy: strategy.to_string(),
        cross_check: args.cross_check,
        slack: args.slack,
    };
    Ok(Report::new("certify", inputs, result, Metadata::exact(), text, code))
}

fn cmd_selftest(args: &SelftestArgs) -> Report<SelftestInputs, SelftestResult> {
    let level = match args.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let fault = args.inject_fault.then_some(Fault::CorruptCoefficient);
    let summary = selftest::run(level, fault);
    let code = if summary.passed() { EXIT_OK } else { 1 };
    let checks = summary
        .checks
        .iter()
        .map(|c| Check {
            name: c.name.to_string(),
            passed: c.passed,
            detail: c.detail.clone(),
        })
        .collect();
    let mut text = String::new();
    for c in &summary.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        writeln!(text, "{mark} {:<20} {}", c.name, c.detail).unwrap();
    }
    let passed = summary.checks.len() - summary.failures();
    writeln!(text, "{passed} of {} checks passed", summary.checks.len()).unwrap();
    let inputs = SelftestInputs { level: format!("{:?}", args.level).to_lowercase() };
    let result = SelftestResult { passed: summary.passed(), checks };
    Report::new("selftest", inputs, result, Metadata::exact(), text, code)
}
