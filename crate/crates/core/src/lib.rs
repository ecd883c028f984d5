//! Deterministic root finding for polynomials over prime fields `F_p`, plus
//! the character-sum quantities that govern how far the shift sweeps must go.
//!
//! The crate is organised bottom-up:
//!
//! - [`fp`]: scalar arithmetic, primality, Legendre symbol and order-`d`
//!   multiplicative characters.
//! - [`poly`]: dense polynomial arithmetic (Karatsuba multiplication,
//!   division, gcd, modular powering, Taylor shift).
//! - [`refine`]: coprime-basis factor refinement with exponent tracking.
//! - [`roots`]: split-part extraction, the all-roots sweep, and the
//!   degree-halving one-root algorithm.
//! - [`charsum`]: `T_chi(I, S)`, the `W` counters, Weil sums and bound reports.
//! - [`oracle`]: brute-force baselines used by tests.
//! - [`corpus`] and [`experiment`]: seeded instance generators and the
//!   experiment sweeps the CLI writes out as CSV.

pub mod charsum;
pub mod corpus;
pub mod error;
pub mod experiment;
pub mod fp;
pub mod oracle;
pub mod poly;
pub mod refine;
pub mod roots;

pub use charsum::{Interval, SpacedSet, WTable};
pub use error::{Error, Result};
pub use fp::{CharKind, CharValue, Character, FieldElement, PrimeField};
pub use poly::Poly;
pub use refine::{factor_refine, RefinedBasis};
pub use roots::{find_all_roots, find_one_root, RootFindConfig, SweepStats};
