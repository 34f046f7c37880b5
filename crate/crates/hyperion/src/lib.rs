//! Exact computational algebra over hyperfields.
//!
//! Hyperfields generalize fields by letting addition be multivalued: the sum
//! of two elements is a nonempty subset of the carrier. This crate implements
//! the arithmetic exactly, with multivalued sums represented as canonical
//! unions of primitive regions (points, down-rays, circle arcs, disks), plus
//! the layers built on top of it:
//!
//! - a catalog of concrete hyperfields (`K`, `S`, `T`, `P`, `TC`, `Qtriv`)
//!   and the homomorphisms between them (`eta`, `sgn`, `ph`, `toK:*`),
//! - sparse multivariate polynomials, set-valued evaluation, coefficientwise
//!   push-forwards and restriction to a line,
//! - root enumeration and certification per carrier, recursive root
//!   multiplicities with backtracking factorization, and empirical checks of
//!   the multiplicity-bound and inheritance properties,
//! - the constructive lifting pipeline along `eta: TC → T` that realizes
//!   tropical roots as certified complex roots, in any number of variables.
//!
//! The core is generic over the floating-point scalar; the `*64` aliases at
//! the crate root fix `f64`, which is what the CLI uses.

pub mod catalog;
pub mod element;
pub mod error;
pub mod hyperfield;
pub mod lift;
pub mod oracle;
pub mod poly;
pub mod region;
pub mod roots;
pub mod sample;
pub mod scalar;

pub use element::{Element, Family, FiniteSym, PhasePoint, Polar};
pub use error::{Error, Result};
pub use hyperfield::{AxiomCheck, AxiomReport, Hyperfield};
pub use region::{CircleArc, ComplexRegion, PhaseRegion, TropRegion, ValueSet};
pub use scalar::{default_tolerance, Real, Tolerance};

/// Concrete aliases over `f64`, the scalar type used by the CLI.
pub type Element64 = Element<f64>;
pub type ValueSet64 = ValueSet<f64>;
pub type Hyperfield64 = Hyperfield<f64>;
pub type Polynomial64 = poly::Polynomial<f64>;
pub type Homomorphism64 = catalog::Homomorphism<f64>;
pub type LiftContext64 = lift::LiftContext<f64>;
