//! Exact-arithmetic toolkit for Ein components of the moduli spaces M(e, n)
//! of stable rank-2 bundles on P^3.
//!
//! Two workloads share one rank engine over a prime field F_p:
//!
//! - **Integer side** ([`moduli`]): enumerate the components N(e, a, b, c) of
//!   M(e, n), compute their dimensions and derived invariants in closed form,
//!   and classify each as rational or (at least) stably rational.
//! - **Linear-algebra side** ([`monad`], [`cohomology`]): build explicit
//!   generalized null correlation monads from seeded random forms, certify
//!   base-point-freeness and smoothness by Macaulay-bound surjectivity of
//!   multiplication matrices, and compute the sheaf cohomology of the
//!   cohomology bundle from ranks of those matrices.
//!
//! Computations run over F_p (default p = 32003) as a generic-fiber proxy for
//! characteristic 0; every randomized verification is seeded and reproducible.

pub mod cohomology;
pub mod error;
pub mod fp;
pub mod moduli;
pub mod monad;
pub mod poly;
pub mod seed;

pub use error::Error;
pub use fp::{FpMatrix, PrimeField};
pub use monad::EinParams;
