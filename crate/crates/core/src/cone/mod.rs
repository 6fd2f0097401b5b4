//! Rational polyhedral cone geometry.
//!
//! Pointed, full-dimensional rational cones with both descriptions kept in
//! canonical form: primitive extreme rays and primitive inner facet
//! normals, each sorted lexicographically. Conversion between the two
//! descriptions enumerates kernels of `(d-1)`-subsets of defining rows,
//! which is exact and complete at the scales this crate targets.

mod feasibility;
pub(crate) mod fm;

pub use feasibility::FeasibilityQuery;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::lattice::{self, IntegerMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("input contains a zero vector")]
    ZeroRay,
    #[error("cone is not pointed (it contains a line)")]
    NotPointed,
    #[error("cone is not full-dimensional in the ambient lattice")]
    NotFullDimensional,
}

/// A pointed, full-dimensional rational polyhedral cone in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    ambient_rank: usize,
    generators: Vec<Vec<BigInt>>,
    facet_normals: Vec<Vec<BigInt>>,
}

impl RationalCone {
    /// Builds the cone spanned by `rays`, computing its facet normals.
    /// Redundant rays are dropped; the stored generators are the primitive
    /// extreme rays in lexicographic order.
    pub fn from_generators(rank: usize, rays: &[Vec<BigInt>]) -> Result<Self, ConeError> {
        let rays = prepare_vectors(rank, rays)?;
        if rays.is_empty() {
            return Err(ConeError::NotFullDimensional);
        }

        // Pointed iff some functional is strictly positive on every ray.
        let one = BigInt::one();
        let strict: Vec<fm::Ineq> = rays.iter().map(|r| fm::Ineq::from_int(r, &one)).collect();
        if !fm::feasible(rank, &strict) {
            return Err(ConeError::NotPointed);
        }

        let ray_matrix = IntegerMatrix::from_rows(rays.clone());
        if lattice::rank(&ray_matrix) < rank {
            return Err(ConeError::NotFullDimensional);
        }

        let facet_normals = extreme_rays_of_halfspaces(rank, &rays);
        let generators = extreme_rays_of_halfspaces(rank, &facet_normals);
        debug_assert!(rays.iter().all(|r| facet_normals
            .iter()
            .all(|n| !lattice::dot(n, r).is_negative())));
        Ok(RationalCone {
            ambient_rank: rank,
            generators,
            facet_normals,
        })
    }

    /// Builds the cone `{x : n . x >= 0 for all normals n}`, computing its
    /// extreme rays. Redundant normals are dropped; stored facet normals
    /// are primitive and sorted lexicographically.
    pub fn from_normals(rank: usize, normals: &[Vec<BigInt>]) -> Result<Self, ConeError> {
        let normals = prepare_vectors(rank, normals)?;
        if normals.is_empty() {
            return Err(ConeError::NotPointed);
        }

        let normal_matrix = IntegerMatrix::from_rows(normals.clone());
        if lattice::rank(&normal_matrix) < rank {
            return Err(ConeError::NotPointed);
        }

        let one = BigInt::one();
        let interior: Vec<fm::Ineq> = normals
            .iter()
            .map(|n| fm::Ineq::from_int(n, &one))
            .collect();
        if !fm::feasible(rank, &interior) {
            return Err(ConeError::NotFullDimensional);
        }

        let generators = extreme_rays_of_halfspaces(rank, &normals);
        let facet_normals = extreme_rays_of_halfspaces(rank, &generators);
        Ok(RationalCone {
            ambient_rank: rank,
            generators,
            facet_normals,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Primitive inner facet normals in the canonical (lexicographic)
    /// order; this order indexes divisor coefficient vectors.
    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.facet_normals
    }

    pub fn facet_count(&self) -> usize {
        self.facet_normals.len()
    }

    /// The `r x d` matrix whose i-th row is the i-th facet normal, viewed
    /// as the map sending a lattice point to its vector of facet values.
    /// Full column rank is forced by pointedness and full dimension.
    pub fn valuation_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.facet_normals.clone())
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.facet_normals
            .iter()
            .all(|n| !lattice::dot(n, x).is_negative())
    }
}

/// Validates lengths, rejects zero vectors, reduces to primitive vectors,
/// and deduplicates preserving nothing but the set.
fn prepare_vectors(rank: usize, vectors: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>, ConeError> {
    if rank == 0 {
        return Err(ConeError::NotFullDimensional);
    }
    let mut out = BTreeSet::new();
    for v in vectors {
        assert_eq!(v.len(), rank, "vector length must equal the ambient rank");
        if v.iter().all(Zero::is_zero) {
            return Err(ConeError::ZeroRay);
        }
        out.insert(primitive(v));
    }
    Ok(out.into_iter().collect())
}

/// Divides out the gcd of the entries; the zero vector is not allowed.
pub(crate) fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    assert!(!g.is_zero(), "zero vector has no primitive form");
    v.iter().map(|x| x / &g).collect()
}

/// Extreme rays of the pointed full-dimensional cone
/// `{x : row . x >= 0 for all rows}`: kernels of `(d-1)`-subsets of rows
/// of rank `d-1`, oriented into the cone, primitive, sorted.
fn extreme_rays_of_halfspaces(rank: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for subset in combinations(rows.len(), rank - 1) {
        let kernel = if subset.is_empty() {
            vec![vec![BigInt::one(); 1]]
        } else {
            let sub = IntegerMatrix::from_rows(subset.iter().map(|&i| rows[i].clone()).collect());
            lattice::kernel_basis(&sub)
        };
        if kernel.len() != 1 {
            continue;
        }
        let v = primitive(&kernel[0]);
        if rows.iter().all(|r| !lattice::dot(r, &v).is_negative()) {
            found.insert(v);
        } else {
            let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
            if rows.iter().all(|r| !lattice::dot(r, &neg).is_negative()) {
                found.insert(neg);
            }
        }
    }
    found.into_iter().collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn first_quadrant() {
        let c = RationalCone::from_generators(2, &vs(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(c.facet_normals(), &vs(&[&[0, 1], &[1, 0]])[..]);
        assert_eq!(c.generators(), &vs(&[&[0, 1], &[1, 0]])[..]);
        assert_eq!(c.facet_count(), 2);
    }

    #[test]
    fn a1_cone() {
        let c = RationalCone::from_generators(2, &vs(&[&[0, 1], &[2, -1]])).unwrap();
        assert_eq!(c.facet_normals(), &vs(&[&[1, 0], &[1, 2]])[..]);
        for n in c.facet_normals() {
            let vanishing = c
                .generators()
                .iter()
                .filter(|g| lattice::dot(n, g).is_zero())
                .count();
            assert_eq!(vanishing, 1, "each normal vanishes on one extreme ray");
            assert!(c
                .generators()
                .iter()
                .all(|g| !lattice::dot(n, g).is_negative()));
        }
    }

    #[test]
    fn line_is_not_pointed() {
        assert_eq!(
            RationalCone::from_generators(2, &vs(&[&[1, 0], &[-1, 0]])),
            Err(ConeError::NotPointed)
        );
    }

    #[test]
    fn low_dimensional_input_rejected() {
        assert_eq!(
            RationalCone::from_generators(2, &vs(&[&[1, 1]])),
            Err(ConeError::NotFullDimensional)
        );
        assert_eq!(
            RationalCone::from_generators(3, &vs(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])),
            Err(ConeError::NotFullDimensional)
        );
    }

    #[test]
    fn zero_ray_rejected() {
        assert_eq!(
            RationalCone::from_generators(2, &vs(&[&[0, 0], &[1, 0]])),
            Err(ConeError::ZeroRay)
        );
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = RationalCone::from_generators(2, &vs(&[&[1, 0], &[1, 1], &[0, 1]])).unwrap();
        assert_eq!(c.generators(), &vs(&[&[0, 1], &[1, 0]])[..]);
    }

    #[test]
    fn from_normals_quadrant_and_a1() {
        let c = RationalCone::from_normals(2, &vs(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(c.generators(), &vs(&[&[0, 1], &[1, 0]])[..]);

        let c = RationalCone::from_normals(2, &vs(&[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(c.generators(), &vs(&[&[0, 1], &[2, -1]])[..]);
    }

    #[test]
    fn cone_over_square_from_normals() {
        let c =
            RationalCone::from_normals(3, &vs(&[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 1], &[0, -1, 1]]))
                .unwrap();
        assert_eq!(c.generators().len(), 4);
        assert_eq!(c.facet_count(), 4);
        // duality round-trip through the other constructor
        let back = RationalCone::from_generators(3, c.generators()).unwrap();
        assert_eq!(&back, &c);
    }

    #[test]
    fn valuation_matrix_shape_and_rank() {
        // identity up to the canonical facet order, which sorts (0,1) first
        let quadrant = RationalCone::from_generators(2, &vs(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            quadrant.valuation_matrix(),
            IntegerMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])
        );

        let square = RationalCone::from_generators(
            3,
            &vs(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]),
        )
        .unwrap();
        let nu = square.valuation_matrix();
        assert_eq!((nu.rows(), nu.cols()), (4, 3));
        assert_eq!(lattice::rank(&nu), 3);
    }

    #[test]
    fn duality_round_trip_on_samples() {
        let samples: Vec<(usize, Vec<Vec<BigInt>>)> = vec![
            (1, vs(&[&[3]])),
            (2, vs(&[&[1, 0], &[0, 1]])),
            (2, vs(&[&[0, 1], &[2, -1]])),
            (2, vs(&[&[1, 2], &[3, -1]])),
            (3, vs(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])),
            (3, vs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[3, 3, -1]])),
        ];
        for (rank, rays) in samples {
            let c = RationalCone::from_generators(rank, &rays).unwrap();
            let back = RationalCone::from_normals(rank, c.facet_normals()).unwrap();
            assert_eq!(&back, &c, "round-trip must reproduce the cone");
            for n in c.facet_normals() {
                assert_eq!(primitive(n), *n, "normals must be primitive");
            }
            for g in c.generators() {
                assert!(c.contains(g));
            }
        }
    }
}
