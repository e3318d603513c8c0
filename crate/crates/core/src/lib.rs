//! Exact-arithmetic kernel for Hopf 2-cocycles of Nichols algebras of Cartan
//! type A2.
//!
//! The crate computes, over cyclotomic fields `Q(zeta_L)`:
//!   * PBW normal forms and products in the free algebra, the distinguished
//!     pre-Nichols algebra, the Nichols algebra `B_q` and its cleft objects
//!     `E_lambda` ([`algebra`]),
//!   * braided coproducts in closed and oracle form ([`coproduct`]),
//!   * sections `gamma_lambda : B_q -> E_lambda` ([`section`]),
//!   * Hopf 2-cocycles `sigma_lambda`, the convolution-unit orbit action and
//!     full cocycle tables ([`cocycle`]),
//!   * invariant Hochschild 2-cocycles, convolution exponentials and the
//!     purity classification for the atypical `N = 3` case ([`hochschild`]).
//!
//! All arithmetic is exact; there are no floating point approximations.

pub mod algebra;
pub mod cocycle;
pub mod coproduct;
pub mod hochschild;
pub mod linear;
pub mod scalar;
pub mod section;
pub mod session;

pub use algebra::{
    AlgebraElement, BraidingMatrix, Case, Ctx, DeformationParams, Model, Mono,
    RealizationConstraints,
};
pub use cocycle::{Bifunctional, CocycleTable, Functional};
pub use hochschild::{HochschildCocycle, PurityVerdict};
pub use scalar::Cyclotomic;
pub use section::SectionMap;
pub use session::SessionConfig;

/// Crate-wide error type.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("q-binomial index out of range: k={k} > n={n}")]
    BinomialRange { n: u32, k: u32 },
    #[error("algebra context mismatch: {0} vs {1}")]
    ContextMismatch(&'static str, &'static str),
    #[error("operation requires {0} context")]
    WrongContext(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a convolution unit: f(1) = 0")]
    NotInvertibleFunctional,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
