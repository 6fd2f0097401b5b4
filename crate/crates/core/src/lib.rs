//! Exact-arithmetic divisor class groups for normal monoid rings and
//! hyperbola rings.
//!
//! The crate computes divisor class groups `Cl` and affine class groups
//! `ACl` of affine toric varieties (normal monoid rings) and of hyperbola
//! rings `R[X,Y]/(XY - U_1^{d_1} ... U_r^{d_r})`, and decides whether a
//! Weil divisor is coaffine, strongly coaffine, or affine trivial.
//! All arithmetic is over unbounded integers and exact rationals; there is
//! no floating point anywhere.
//!
//! Module map:
//! - [`lattice`] — integer matrices, Hermite/Smith normal forms, cokernels,
//!   finitely generated abelian groups, integer linear systems.
//! - [`cone`] — rational polyhedral cones (dual descriptions) and exact
//!   integer-point feasibility for mixed equality/inequality systems.
//! - [`monoid`] — class groups and divisor classification on monoid rings.
//! - [`hyperbola`] — the same for hyperbola rings over a factorial base.
//! - [`catalog`] — closed-form results for determinantal rings and other
//!   catalogued ring classes.
//! - [`oracle`] — independent brute-force enumeration oracles used to
//!   cross-check every decision procedure at small scale.

pub mod catalog;
pub mod cone;
pub mod hyperbola;
pub mod lattice;
pub mod monoid;
pub mod oracle;

pub use catalog::{CatalogError, CatalogReport, DeterminantalDatum};
pub use cone::{ConeError, FeasibilityQuery, RationalCone};
pub use hyperbola::{HyperbolaDatum, HyperbolaDivisor, HyperbolaError, ToricModel};
pub use lattice::{AffineLattice, FGAbelianGroup, IntegerMatrix, LatticeError, SmithForm};
pub use monoid::{MonoidError, MonoidRing, SectionGenerators, SupportSet, ToricDivisor};
pub use oracle::{BoxBound, CrossModelReport};
