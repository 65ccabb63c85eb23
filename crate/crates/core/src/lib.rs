//! Numerical workbench for reduced crossed products `C*_r(A ⋊_α G)`.
//!
//! The crate provides:
//!
//! * [`groups`]: word groups with exact normal forms (free groups, free
//!   abelian groups, free products of finite cyclic groups), word length,
//!   cancellation numbers and exhaustive sphere enumeration;
//! * [`propj`]: geodesic-prefix factorizations and the solution-count bound
//!   that make up property (J), checked on ball truncations;
//! * [`coeffalg`]: the matrix coefficient algebra `M_n(C)` with group actions
//!   by `*`-automorphisms;
//! * [`crossed`]: finitely supported elements `X = Σ L_g X_g` with twisted
//!   convolution, adjoint, Hadamard product, multipliers and the algebraic
//!   norms;
//! * [`repnorm`]: compressions to `ℓ²(B_R) ⊗ C^n` and certified lower bounds
//!   for the operator norm;
//! * [`harness`]: seeded trials for each rapid-decay inequality, plus probes
//!   for the statements that are open or known to fail;
//! * [`cli`]: the `rdlab` command line.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory, e.g.
//! `cargo run --release --example haagerup_free_group`.

pub mod cli;
pub mod coeffalg;
pub mod crossed;
pub mod error;
pub mod groups;
pub mod harness;
pub mod propj;
pub mod repnorm;

pub use coeffalg::{CoeffOp, GroupAction, C64};
pub use crossed::{CpElement, MultiplierSymbol};
pub use error::{Error, Result};
pub use groups::{Group, GroupElement, GroupKind, SphereIndex};
pub use repnorm::{NormEstimate, NormOptions};

/// Default element budget for ball enumeration.
pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Element budget, overridable through `RDLAB_BUDGET`.
pub fn budget_from_env() -> usize {
    std::env::var("RDLAB_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
