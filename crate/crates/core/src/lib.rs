//! Periods of second-order recurrences modulo `p` and `p^2`, Wall-Sun-Sun
//! primes, and the dimension-2 cyclic codes over `F_p` and `Z_{p^2}` that
//! their check polynomials define.
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod codes;
pub mod error;
pub mod inverse;
pub mod modnum;
pub mod pell;
pub mod quadpoly;
pub mod recurrence;
pub mod tables;

pub use error::{Error, Result};

// The book's snippets run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/modular.md")]
    mod modular {}
    #[doc = include_str!("../../../book/src/quadratics.md")]
    mod quadratics {}
    #[doc = include_str!("../../../book/src/pell.md")]
    mod pell {}
    #[doc = include_str!("../../../book/src/periods.md")]
    mod periods {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/inverse.md")]
    mod inverse {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
