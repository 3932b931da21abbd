//! Exact computations for double covers of P¹×P² branched along a
//! (2,2)-divisor Z = {t₀²Q₁ + 2t₀t₁Q₂ + t₁²Q₃ = 0}.
//!
//! The crate decides smoothness of Z and of its discriminant quartic
//! Δ = Q₂² − Q₁Q₃, which automorphisms of Δ lift to P¹×P² preserving Z,
//! the resulting order of the automorphism group of the double cover, and
//! certificates for (non-)linearizability of finite group actions. All
//! arithmetic is exact, over cyclotomic fields Q(ζₙ) and at most one
//! further square root.

pub mod arith;
pub mod error;
pub mod lifting;
pub mod linalg;
pub mod linearize;
pub mod poly;
pub mod surface;
pub mod workbench;

pub use arith::{adjoin_sqrt, CycNum, ExtNum, QuadExt, Rat};
pub use error::{Error, Result};
pub use linalg::{Matrix, ProjMat};
pub use poly::{MPoly, Monomial, Var};
pub use surface::Surface22;
