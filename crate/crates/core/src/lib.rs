//! Exact calculus of collections over the semigroup `S = N^r \ {0}` and its
//! application to Donaldson-Thomas invariants of quivers.
//!
//! A *collection* is a map from finite ordered tuples of dimension vectors to
//! rationals.  Collections compose under plethysm, act on graded 1-collections
//! via the star action, and the named families (Harder-Narasimhan, exponential,
//! logarithmic, geometric, attractor) all come with exact closed-form
//! evaluators.  On top of the calculus sits a pipeline computing stacky,
//! rational and attractor DT invariants in the quantum affine plane, attractor
//! tree formulas, and a flow tree evaluator over binary trees.
//!
//! All arithmetic is exact: arbitrary-precision rationals, Laurent polynomials
//! and canonical rational functions in one variable `y`.

pub mod collections;
pub mod exact;
pub mod lie;
pub mod pipeline;
pub mod quiver;
pub mod selftest;
pub mod semigroup;
pub mod series;
pub mod stability;
pub mod trees;

pub use exact::{LaurentPoly, RatFunc, Rational};
pub use semigroup::{DimVector, Surjection, Tuple};
pub use stability::{CentralCharge, PerturbedScalar, SkewForm};
