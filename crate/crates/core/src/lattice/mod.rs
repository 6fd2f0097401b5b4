//! Exact unbounded-integer linear algebra.
//!
//! Hermite and Smith normal forms, kernels, cokernels presented as
//! finitely generated abelian groups, and full integer solution sets of
//! linear systems. Everything here is a pure function over immutable
//! values; entries are arbitrary-precision integers.

mod group;
mod matrix;
mod normal_form;
mod system;

pub use group::FGAbelianGroup;
pub use matrix::IntegerMatrix;
pub use normal_form::SmithForm;
pub use system::AffineLattice;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dot product of two integer vectors. Panics on length mismatch.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * a = h`,
/// `u` unimodular, pivot entries positive and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    normal_form::hermite_normal_form(a)
}

/// Smith normal form with transforms: `u * a * v = s`, `u` and `v`
/// unimodular, `s` diagonal with a nonnegative divisibility chain.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    normal_form::smith_normal_form(a)
}

/// The cokernel `Z^rows / image(a)` of `a` viewed as a map
/// `Z^cols -> Z^rows`, read off the invariant factors.
pub fn cokernel(a: &IntegerMatrix) -> FGAbelianGroup {
    group::cokernel(a)
}

/// Drops the torsion part of a finitely generated abelian group.
pub fn torsion_free_quotient(g: &FGAbelianGroup) -> FGAbelianGroup {
    FGAbelianGroup::new(g.free_rank(), Vec::new())
}

/// Whether the class of `v` in `coker(a)` is a torsion element, i.e.
/// whether some positive multiple of `v` lies in the column image of `a`.
pub fn is_torsion_class(a: &IntegerMatrix, v: &[BigInt]) -> Result<bool, LatticeError> {
    group::is_torsion_class(a, v)
}

/// The smallest `k >= 1` with `k * v` in the column image of `a`, when the
/// class of `v` is torsion in `coker(a)`.
pub fn torsion_order(a: &IntegerMatrix, v: &[BigInt]) -> Result<Option<BigInt>, LatticeError> {
    group::torsion_order(a, v)
}

/// The full integer solution set of `a * x = b` as an affine lattice
/// (emptiness is a value, not an error).
pub fn solve_integer_system(a: &IntegerMatrix, b: &[BigInt]) -> AffineLattice {
    system::solve_integer_system(a, b)
}

/// A basis of the integer kernel `{x : a * x = 0}`.
pub fn kernel_basis(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let smith = smith_normal_form(a);
    let k = smith.nonzero_count();
    (k..a.cols()).map(|j| smith.v().column(j)).collect()
}

/// The rank of `a` over the rationals.
pub fn rank(a: &IntegerMatrix) -> usize {
    smith_normal_form(a).nonzero_count()
}
