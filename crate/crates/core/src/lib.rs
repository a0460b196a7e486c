//! Exact computations on additive arithmetical semigroups.
//!
//! The crate is layered bottom-up:
//!
//! * [`series`]: truncated formal power series over exact rationals,
//!   including the Euler product `Π_m (Σ_k a_k x^{km})^{t_m}`.
//! * [`polyasym`]: expansions `Σ_s p_s(n) q^{-sn}` with polynomial coefficients.
//! * [`triples`]: the recursions linking a count sequence, its prime counts
//!   and a prime-power weight sequence, plus identity and growth diagnostics.
//! * [`semigroups`]: unlabeled graphs, graphs with an even number of edges,
//!   and polynomials over a finite field modulo scalars.
//! * [`arithfun`]: prime-independent multiplicative functions, their degree
//!   totals and exact normalized moments.
//! * [`asymptotics`]: the `ξ`, `ν` and `τ` pipeline and residual checks
//!   against exact moments.
//!
//! Everything outside [`semigroups::wright_log_profile`] is exact.

pub mod arithfun;
pub mod asymptotics;
pub mod diagnostics;
mod error;
pub mod golden;
pub mod polyasym;
pub mod rat;
pub mod semigroups;
pub mod series;
pub mod triples;

pub use error::{Error, Result};
pub use rat::Rat;
