//! Exact computer algebra over prime fields for the homotopy nilpotency of
//! p-compact groups of product-of-spheres type.
//!
//! The crate has three layers:
//!
//! * exact arithmetic: prime fields, sparse graded polynomials, the Steenrod
//!   operation `P^1`, quotient normal forms and ring maps
//!   ([`fp`], [`poly`], [`quotient`], [`linalg`]);
//! * the computations behind the classification: symmetric-function
//!   identities ([`symmetric`]), modular invariant theory of reflection
//!   groups ([`reflection`]), the restriction suites for the two largest
//!   exceptional groups ([`cohomology`]), p-primary Samelson arithmetic
//!   ([`samelson`]) and finite-group commutator tests ([`finite_group`]);
//! * the decision procedure ([`decider`]) and a named-check verification
//!   registry ([`verify`]).
//!
//! See the `book/` directory for a guided tour; its code snippets run as
//! doc-tests.

pub mod cohomology;
pub mod decider;
pub mod fp;
pub mod finite_group;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod quotient;
pub mod reflection;
pub mod samelson;
pub mod symmetric;
pub mod verify;

mod dense;
mod mbasis;

pub use fp::{Fp, FpError};
pub use linalg::{solve_linear, LinalgError};
pub use poly::{GradedPoly, Monomial, PolyError, VarContext};
pub use quotient::{QuotientPresentation, RingMap};
pub use samelson::SphereType;

#[cfg(doctest)]
mod booktests {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub struct Polynomials;
    #[doc = include_str!("../../../book/src/steenrod.md")]
    pub struct Steenrod;
    #[doc = include_str!("../../../book/src/symmetric-functions.md")]
    pub struct SymmetricFunctions;
    #[doc = include_str!("../../../book/src/reflection-groups.md")]
    pub struct ReflectionGroups;
    #[doc = include_str!("../../../book/src/quotients-and-restrictions.md")]
    pub struct QuotientsAndRestrictions;
    #[doc = include_str!("../../../book/src/samelson-products.md")]
    pub struct SamelsonProducts;
    #[doc = include_str!("../../../book/src/decision-procedure.md")]
    pub struct DecisionProcedure;
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub struct CommandLine;
}
