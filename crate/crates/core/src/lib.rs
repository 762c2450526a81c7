//! Exact p-adic series computations for supersingular primes: trace ladders,
//! their limits, half-logarithms, and the decomposition map on `Λ_n ⊕ Λ_n`.
//!
//! See the guide under `book/` for a walk through the modules.

pub mod arith;
pub mod curves;
pub mod decompose;
pub mod error;
pub mod identities;
pub mod padic;
pub mod report;
pub mod series;
pub mod theta;
pub mod trace;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod ch00 {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod ch01 {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod ch02 {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod ch03 {}
    #[doc = include_str!("../../../book/src/ladders.md")]
    mod ch04 {}
    #[doc = include_str!("../../../book/src/infinity.md")]
    mod ch05 {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod ch06 {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod ch07 {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod ch08 {}
}
