//! Padé approximations of Euler's factorial series `E(t) = Σ k! t^k` and
//! what they give: exact Padé data, p-adic evaluation, the Hardy integral
//! on both half-lines, Euler's continued fraction, and certified lower
//! bounds for `|d E_p(±p^a) - c|_p`.
//!
//! ```
//! use euler_pade::pade::{p_poly, q_poly};
//!
//! assert_eq!(q_poly(2).to_string(), "1 - 4*t + 2*t^2");
//! assert_eq!(p_poly(2).to_string(), "1 - 3*t");
//! ```

pub mod arith;
pub mod bounds;
pub mod cf;
pub mod error;
pub mod hardy;
pub mod pade;
pub mod padic;
pub mod selftest;

pub use error::{Error, Result};
pub use rug;

/// Version of this crate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/pade.md")]
    mod pade {}
    #[doc = include_str!("../../../book/src/padic.md")]
    mod padic {}
    #[doc = include_str!("../../../book/src/hardy.md")]
    mod hardy {}
    #[doc = include_str!("../../../book/src/continued-fractions.md")]
    mod continued_fractions {}
    #[doc = include_str!("../../../book/src/certification.md")]
    mod certification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
