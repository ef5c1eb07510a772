use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use euler_pade::bounds::Sign;
use euler_pade::rug::{Integer, Rational};

use crate::parse;

/// Padé approximations of Euler's factorial series: exact construction,
/// p-adic and real evaluation, and certified p-adic lower bounds.
#[derive(Debug, Parser)]
#[command(name = "euler-pade", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the output to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print P_l, Q_l and the leading coefficients of R_l.
    Pade(PadeArgs),
    /// Evaluate E_p(t) modulo p^N, and optionally v_p(d E_p(t) - c).
    EvalPadic(EvalPadicArgs),
    /// Evaluate the Hardy integral H(t).
    Hardy(HardyArgs),
    /// Convergent A_l/B_l of Euler's continued fraction.
    Cf(CfArgs),
    /// Certify a lower bound for |d E_p(±p^a) - c|_p.
    Certify(CertifyArgs),
    /// Run the built-in consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct PadeArgs {
    /// Level l.
    pub l: u32,
    /// Remainder coefficients beyond degree 2l.
    #[arg(long, default_value_t = 0)]
    pub extra: u32,
}

#[derive(Debug, Args)]
pub struct EvalPadicArgs {
    #[arg(long)]
    pub p: u64,
    /// Evaluation point, an integer divisible by p.
    #[arg(long, value_parser = parse::integer, allow_hyphen_values = true)]
    pub t: Integer,
    /// p-adic precision N.
    #[arg(long)]
    pub prec: u32,
    #[arg(long, value_parser = parse::integer, allow_hyphen_values = true, requires = "d")]
    pub c: Option<Integer>,
    #[arg(long, value_parser = parse::integer, allow_hyphen_values = true, requires = "c")]
    pub d: Option<Integer>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Quadrature for t < 0, ray for t > 0.
    Auto,
    Quadrature,
    Explicit,
    Ray,
}

#[derive(Debug, Args)]
pub struct HardyArgs {
    /// Point t (integer, n/d or decimal).
    #[arg(long, value_parser = parse::rational, allow_hyphen_values = true)]
    pub t: Rational,
    /// Decimal digits [default: $EULER_PADE_DIGITS or 50].
    #[arg(long)]
    pub prec: Option<u32>,
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    pub route: Route,
    /// Ray direction s = y(1 + b i), b > 0 [default: 1].
    #[arg(long, value_parser = parse::rational)]
    pub b: Option<Rational>,
    /// Sheet of the logarithm for the explicit route [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Symbolic,
    Rational,
    Real,
    Padic,
}

#[derive(Debug, Args)]
pub struct CfArgs {
    /// Point t; omit for the symbolic fraction.
    #[arg(long, value_parser = parse::rational, allow_hyphen_values = true)]
    pub t: Option<Rational>,
    #[arg(long)]
    pub l: u32,
    /// [default: symbolic without --t, rational with it]
    #[arg(long, value_enum)]
    pub domain: Option<Domain>,
    /// Prime for the p-adic domain.
    #[arg(long)]
    pub p: Option<u64>,
    /// p-adic precision N, or decimal digits for the real domain.
    #[arg(long)]
    pub prec: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Remmal,
    Minimizer,
    Search,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub a: u32,
    #[arg(long, value_parser = parse::sign, allow_hyphen_values = true, default_value = "+")]
    pub sign: Sign,
    #[arg(long, value_parser = parse::integer, allow_hyphen_values = true)]
    pub c: Integer,
    #[arg(long, value_parser = parse::integer, allow_hyphen_values = true)]
    pub d: Integer,
    /// Height bound H >= |c| + |d| [default: |c| + |d|].
    #[arg(long = "H", value_parser = parse::integer)]
    pub h: Option<Integer>,
    /// Use this level.
    #[arg(long, conflicts_with = "strategy")]
    pub l: Option<u32>,
    /// Choose the level [default: search].
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Confirm a certificate by direct p-adic computation.
    #[arg(long)]
    pub cross_check: bool,
    /// Extra p-adic digits for the cross-check.
    #[arg(long, default_value_t = 8)]
    pub slack: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
    pub level: LevelArg,
    /// Corrupt a Padé coefficient to exercise the failure path.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
