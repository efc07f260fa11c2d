//! Exact computer algebra for G-braided spaces, G-Frobenius algebras and
//! the A_n / D_n singularity Frobenius manifolds.
//!
//! Everything is computed over ℚ with arbitrary-precision integers, so every
//! identity is checked by exact equality.

pub mod braided;
pub mod error;
pub mod fixtures;
pub mod frobenius;
pub mod group;
pub mod groupoid;
pub mod json;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod rational;
pub mod reference;
pub mod report;
pub mod singularity;

pub use error::{Error, Result};
pub use group::{cyclic_group, symmetric_group, Elem, FiniteGroup};
pub use groupoid::{Component, GTuple, GroupoidArrow};
pub use matrix::Matrix;
pub use poly::MultiPoly;
pub use rational::{q, qi, QStr, Rational};
pub use report::{Check, Report};

/// Default bound on `|G|^n · n!` for groupoid enumeration.
pub const DEFAULT_SIZE_LIMIT: u64 = 1_000_000;

/// Enumeration guard, overridable through `GFROB_SIZE_LIMIT`.
pub fn size_limit() -> u64 {
    std::env::var("GFROB_SIZE_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_LIMIT)
}
