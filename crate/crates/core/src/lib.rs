//! Exact finite-model laboratory for conditional expectation operators on
//! Riesz spaces.
//!
//! The ambient space is `E = R^Ω` for a finite set `Ω` carrying strictly
//! positive rational weights. A partition of `Ω` induces a strictly positive
//! conditional expectation `T` (blockwise weighted averaging) whose range
//! `R(T)` consists of block-constant vectors. On top of that the crate
//! provides:
//!
//! * [`space`]: lattice operations, components, band projections, canonical
//!   partial inverses and powers (exact rationals throughout);
//! * [`freudenthal`]: dyadic monotone approximation by step functions;
//! * [`condexp`]: `T`, `R(T)`, `R(T)`-valued `L^p` norms and Hölder
//!   certificates;
//! * [`charge`]: `R(T)`-valued charges on components, their lattice and
//!   norms, `T`-absolute continuity and the Lebesgue decomposition;
//! * [`integration`]: step functions with `R(T)` coefficients and the
//!   integral against `T`-absolutely continuous charges;
//! * [`duality`]: `T`-strong dual norms and the representations of the duals
//!   of `L^1(T)`, `L^2(T)` and `L^∞(T)`;
//! * [`product`]: the decomposition of duals and charges along the blocks;
//! * [`conjecture`]: a floating point probe of the `L^p`/`L^q` duality for
//!   `p ∈ (1, ∞)`.
//!
//! Points of `Ω` are 0-based indices in the API. Text formats (reports,
//! `Display` impls, the CLI spec files) use 1-based indices.

pub mod charge;
pub mod check;
pub mod condexp;
pub mod conjecture;
pub mod duality;
pub mod error;
pub mod freudenthal;
pub mod integration;
pub mod operator;
pub mod product;
pub mod random;
pub mod rational;
pub mod space;

pub use charge::{Charge, RawChargeTable};
pub use check::{CheckOutcome, CheckReport};
pub use condexp::{CondExp, DegenerateCondExp, Partition, RtVector};
pub use duality::{DualExponent, DualFunctional};
pub use error::{Error, Result};
pub use integration::{StandardRep, StepFunction};
pub use rational::Rational;
pub use space::{Component, FiniteSpace, Vector};
