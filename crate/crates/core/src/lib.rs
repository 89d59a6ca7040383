//! Exact combinatorics engine for West's stack-sorting map.
//!
//! The crate provides:
//!
//! - [`perm`]: permutations in one-line notation, normalization, descent/peak
//!   statistics, classical and vincular pattern containment, and plot geometry
//!   (hooks, tails, tail-bound descents).
//! - [`sort`]: the stack-sorting map `s`, its iterates, exact preimage
//!   enumeration, and fertility counting both by direct recursion and by the
//!   hook decomposition at a tail-bound descent.
//! - [`classes`]: enumeration of pattern-avoidance classes, class fertilities
//!   (optionally refined by tail length and descent count), the associated
//!   recurrence tables, and closed-form counts.
//! - [`series`]: truncated formal power series over exact rationals in one,
//!   two, and three variables, the named generating functions, kernel-method
//!   roots, and residual checks for the functional equations.
//! - [`comps`]: integer compositions under the dominance order, order-ideal
//!   sizes computed two independent ways, and the Catalan/Young's-lattice
//!   identity.
//! - [`checks`]: the verification suites driven by the CLI and the acceptance
//!   tests.
//!
//! All counters are arbitrary-precision integers and all series coefficients
//! are exact rationals; there is no floating point anywhere in the crate.

pub mod checks;
pub mod classes;
pub mod comps;
pub mod error;
pub mod numbers;
pub mod perm;
pub mod series;
pub mod sort;

pub use error::Error;
pub use perm::{Hook, Permutation, VincularPattern};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
