//! Serializable payloads. Exact integers and rationals travel as decimal
//! strings; real numbers as fixed-point strings with their digit count in
//! the metadata.

use serde::{Deserialize, Serialize};

use euler_pade::padic::ValuationResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub euler_pade: String,
    pub euler_pade_cli: String,
}

impl Versions {
    pub fn current() -> Self {
        Versions {
            euler_pade: euler_pade::VERSION.to_string(),
            euler_pade_cli: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    /// Decimal digits of real-valued results.
    pub digits: Option<u32>,
    /// Exponent `N` of p-adic results known modulo `p^N`.
    pub padic_precision: Option<u32>,
    pub versions: Versions,
}

impl Metadata {
    pub fn exact() -> Self {
        Metadata { digits: None, padic_precision: None, versions: Versions::current() }
    }

    pub fn real(digits: u32) -> Self {
        Metadata { digits: Some(digits), ..Metadata::exact() }
    }

    pub fn padic(n: u32) -> Self {
        Metadata { padic_precision: Some(n), ..Metadata::exact() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<I, R> {
    pub command: String,
    pub inputs: I,
    pub result: R,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Valuation {
    Exact(u64),
    AtLeast(u64),
}

impl From<ValuationResult> for Valuation {
    fn from(v: ValuationResult) -> Self {
        match v {
            ValuationResult::Exact(n) => Valuation::Exact(n),
            ValuationResult::AtLeast(n) => Valuation::AtLeast(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadeInputs {
    pub l: u32,
    pub extra: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadeResult {
    /// Coefficients of `P_l` and `Q_l`, lowest degree first.
    pub p: Vec<String>,
    pub q: Vec<String>,
    /// Coefficients of `R_l` from degree `r_start = 2l` on.
    pub r_start: usize,
    pub r_prefix: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalPadicInputs {
    pub p: u64,
    pub t: String,
    pub prec: u32,
    pub c: Option<String>,
    pub d: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    pub residue: String,
    pub valuation: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalPadicResult {
    pub residue: String,
    pub modulus: String,
    pub terms: u64,
    pub linear_form: Option<LinearForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardyInputs {
    pub t: String,
    pub route: String,
    pub b: Option<String>,
    pub branch: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardyResult {
    pub route: String,
    pub re: String,
    pub im: Option<String>,
    /// Estimated absolute error, in scientific notation.
    pub error_estimate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfInputs {
    pub t: Option<String>,
    pub l: u32,
    pub domain: String,
    pub p: Option<u64>,
    pub prec: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfResult {
    pub numerator: String,
    pub denominator: String,
    /// `A_l / B_l` in the chosen domain; absent for the symbolic fraction.
    pub value: Option<String>,
    /// Bound on the distance to the limit (`l^l/(l+1)^{l+1}` for reals,
    /// the exact p-adic distance for p-adic values).
    pub distance_bound: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyInputs {
    pub p: u64,
    pub a: u32,
    pub sign: String,
    pub c: String,
    pub d: String,
    pub h: Option<String>,
    pub strategy: String,
    pub cross_check: bool,
    pub slack: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    pub level: Option<bool>,
    pub remmal: bool,
    pub minimizer: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyResult {
    pub t: String,
    pub h: String,
    pub strategy: String,
    pub l: u32,
    /// Upper estimate of the condition's left side, rounded up.
    pub condition_lhs_upper: Option<String>,
    pub certified: bool,
    pub blocked_by_guard: bool,
    pub certified_exponent: Option<u64>,
    /// `p^-(2al)` when certified.
    pub lower_bound: Option<String>,
    pub guards: Guards,
    pub cross_check: Option<Valuation>,
    pub cross_check_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestInputs {
    pub level: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestResult {
    pub passed: bool,
    pub checks: Vec<Check>,
}
