//! Closed-form class group facts for catalogued ring classes.

use thiserror::Error;

use crate::lattice::FGAbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("minor size must satisfy 1 < k <= min(m, n)")]
    InvalidRange,
    #[error("affine class groups are torsion free; input has torsion")]
    TorsionInput,
}

/// A generic determinantal ring: the quotient of the polynomial ring on an
/// `m x n` matrix of indeterminates by the ideal of its `k`-minors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeterminantalDatum {
    pub m: u64,
    pub n: u64,
    pub k: u64,
}

impl DeterminantalDatum {
    pub fn new(m: u64, n: u64, k: u64) -> Result<Self, CatalogError> {
        if m < 1 || n < 1 || k <= 1 || k > m.min(n) {
            return Err(CatalogError::InvalidRange);
        }
        Ok(DeterminantalDatum { m, n, k })
    }
}

/// Closed-form invariants of a catalogued ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogReport {
    pub dimension: u64,
    pub ideal_height: u64,
    pub class_group: FGAbelianGroup,
    pub affine_class_group: FGAbelianGroup,
    pub witness_height: u64,
    pub notes: String,
}

/// Determinantal rings have `Cl = ACl = Z`, generated by the ideal of
/// `(k-1)`-minors of the first `k-1` rows; the non-affine complement is
/// certified by specializing the last rows to zero, where that ideal
/// acquires height `n - k + 2 >= 2`.
pub fn determinantal_report(d: &DeterminantalDatum) -> CatalogReport {
    let DeterminantalDatum { m, n, k } = *d;
    let dimension = (m + n - k + 1) * (k - 1);
    let ideal_height = m * n - dimension;
    let witness_height = n - k + 2;
    assert!(witness_height >= 2);
    CatalogReport {
        dimension,
        ideal_height,
        class_group: FGAbelianGroup::free(1),
        affine_class_group: FGAbelianGroup::free(1),
        witness_height,
        notes: format!(
            "generator: the height-one prime of (k-1)-minors of the first {} row(s); \
             specializing rows {}..{} to zero lifts its height to {}",
            k - 1,
            k,
            m,
            witness_height
        ),
    }
}

/// Affine class groups are invariant under adjoining a polynomial
/// variable. The input must already be an affine class group, hence
/// torsion free.
pub fn polynomial_extension_acl(g: &FGAbelianGroup) -> Result<FGAbelianGroup, CatalogError> {
    if !g.is_torsion_free() {
        return Err(CatalogError::TorsionInput);
    }
    Ok(g.clone())
}

/// The affine cone over a geometrically ruled surface with a normal
/// homogeneous coordinate ring has affine class group `Z`, however large
/// the divisor class group is.
pub fn ruled_surface_cone_acl() -> FGAbelianGroup {
    FGAbelianGroup::free(1)
}
