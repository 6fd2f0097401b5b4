//! Divisor theory on normal monoid rings.
//!
//! A monoid ring is presented by a pointed full-dimensional rational cone:
//! the monoid is the set of lattice points on which every facet valuation
//! is nonnegative. Weil divisors are integer coefficient vectors indexed
//! by facets in the canonical order; the class group is the cokernel of
//! the valuation matrix. Coaffineness reduces to the finitely many support
//! patterns of effective representatives: the complement of an effective
//! divisor is affine exactly when its support is the support of a
//! monomial.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

use crate::cone::{ConeError, FeasibilityQuery, RationalCone};
use crate::lattice::{self, FGAbelianGroup, IntegerMatrix};
use crate::oracle::box_points;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("lattice point has a negative facet valuation (not in the monoid)")]
    NotInMonoid,
    #[error("divisor is not effective")]
    NotEffective,
    #[error("divisor has {got} coefficients but the ring has {expected} facets")]
    CoefficientCountMismatch { expected: usize, got: usize },
}

/// The monoid ring of a pointed full-dimensional rational cone.
#[derive(Clone, Debug)]
pub struct MonoidRing {
    cone: RationalCone,
    nu: IntegerMatrix,
}

/// A Weil divisor as facet coefficients in the ring's canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ToricDivisor(Vec<BigInt>);

impl ToricDivisor {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: i64) -> ToricDivisor {
        let k = BigInt::from(k);
        ToricDivisor(self.0.iter().map(|c| c * &k).collect())
    }

    pub fn plus(&self, other: &ToricDivisor) -> ToricDivisor {
        assert_eq!(self.len(), other.len(), "divisor length mismatch");
        ToricDivisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> ToricDivisor {
        ToricDivisor(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for ToricDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "ToricDivisor({})", coeffs.join(","))
    }
}

/// A set of facet indices, e.g. the support of a monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SupportSet(BTreeSet<usize>);

impl SupportSet {
    pub fn empty() -> Self {
        SupportSet(BTreeSet::new())
    }

    pub fn full(r: usize) -> Self {
        SupportSet((0..r).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<usize> for SupportSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        SupportSet(iter.into_iter().collect())
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

/// Minimal monomial generators of a section module, found by bounded
/// enumeration. `complete` is false when a generator touches the
/// enumeration box (or nothing was found at all), in which case the list
/// may be missing generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionGenerators {
    pub generators: Vec<Vec<BigInt>>,
    pub complete: bool,
}

impl MonoidRing {
    pub fn new(cone: RationalCone) -> Self {
        let nu = cone.valuation_matrix();
        MonoidRing { cone, nu }
    }

    pub fn from_generators(rank: usize, rays: &[Vec<BigInt>]) -> Result<Self, ConeError> {
        Ok(Self::new(RationalCone::from_generators(rank, rays)?))
    }

    pub fn from_normals(rank: usize, normals: &[Vec<BigInt>]) -> Result<Self, ConeError> {
        Ok(Self::new(RationalCone::from_normals(rank, normals)?))
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    /// The facet valuation matrix: row i sends a lattice point to its
    /// value along the i-th prime divisor.
    pub fn valuations(&self) -> &IntegerMatrix {
        &self.nu
    }

    pub fn lattice_rank(&self) -> usize {
        self.cone.ambient_rank()
    }

    pub fn facet_count(&self) -> usize {
        self.cone.facet_count()
    }

    pub fn divisor(&self, coefficients: Vec<BigInt>) -> Result<ToricDivisor, MonoidError> {
        if coefficients.len() != self.facet_count() {
            return Err(MonoidError::CoefficientCountMismatch {
                expected: self.facet_count(),
                got: coefficients.len(),
            });
        }
        Ok(ToricDivisor(coefficients))
    }

    pub fn divisor_from_i64(&self, coefficients: &[i64]) -> ToricDivisor {
        self.divisor(coefficients.iter().map(|&c| BigInt::from(c)).collect())
            .expect("coefficient count mismatch")
    }

    /// The divisor of the monomial `gamma`: its vector of facet values.
    pub fn principal_divisor(&self, gamma: &[BigInt]) -> ToricDivisor {
        ToricDivisor(self.nu.mul_vec(gamma))
    }

    /// The divisor class group: the cokernel of the valuation map.
    pub fn class_group(&self) -> FGAbelianGroup {
        lattice::cokernel(&self.nu)
    }

    /// The class group modulo torsion.
    pub fn affine_class_group(&self) -> FGAbelianGroup {
        lattice::torsion_free_quotient(&self.class_group())
    }

    /// Facets on which the monomial `gamma` has strictly positive value.
    pub fn monomial_support(&self, gamma: &[BigInt]) -> Result<SupportSet, MonoidError> {
        let values = self.nu.mul_vec(gamma);
        if values.iter().any(Signed::is_negative) {
            return Err(MonoidError::NotInMonoid);
        }
        Ok(values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_positive())
            .map(|(i, _)| i)
            .collect())
    }

    /// A monomial whose support is exactly `s`, when one exists.
    pub fn support_witness(&self, s: &SupportSet) -> Option<Vec<BigInt>> {
        assert!(
            s.indices().all(|i| i < self.facet_count()),
            "support index out of range"
        );
        let mut query = FeasibilityQuery::new(self.lattice_rank());
        for i in 0..self.facet_count() {
            let row = self.nu.row(i);
            if s.contains(i) {
                query.add_strict(row, BigInt::zero());
            } else {
                query.add_equality(row, BigInt::zero());
            }
        }
        query.integer_feasible()
    }

    pub fn is_realizable_support(&self, s: &SupportSet) -> bool {
        self.support_witness(s).is_some()
    }

    /// Whether the complement of the effective divisor `n` is affine:
    /// true exactly when the support of `n` is the support of a monomial.
    pub fn is_complement_affine(&self, n: &ToricDivisor) -> Result<bool, MonoidError> {
        self.check_divisor(n);
        if !n.is_effective() {
            return Err(MonoidError::NotEffective);
        }
        let support: SupportSet = n
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_positive())
            .map(|(i, _)| i)
            .collect();
        Ok(self.is_realizable_support(&support))
    }

    /// All support patterns of effective divisors linearly equivalent to
    /// `n`, i.e. of the divisors `n + div(gamma) >= 0`.
    pub fn effective_supports(&self, n: &ToricDivisor) -> BTreeSet<SupportSet> {
        self.check_divisor(n);
        let r = self.facet_count();
        assert!(
            r <= 20,
            "support-pattern enumeration is limited to 20 facets"
        );
        let mut out = BTreeSet::new();
        for mask in 0u64..(1 << r) {
            let s: SupportSet = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            if self.effective_support_witness(n, &s).is_some() {
                out.insert(s);
            }
        }
        out
    }

    /// A monomial `gamma` with `n + div(gamma)` effective of support
    /// pattern exactly `s`.
    fn effective_support_witness(&self, n: &ToricDivisor, s: &SupportSet) -> Option<Vec<BigInt>> {
        let mut query = FeasibilityQuery::new(self.lattice_rank());
        for i in 0..self.facet_count() {
            let row = self.nu.row(i);
            let rhs = -n.coefficients()[i].clone();
            if s.contains(i) {
                query.add_strict(row, rhs);
            } else {
                query.add_equality(row, rhs);
            }
        }
        query.integer_feasible()
    }

    /// A divisor is coaffine when every linearly equivalent effective
    /// divisor has affine complement. Affineness of the complement only
    /// depends on the support pattern, so the check runs over the finite
    /// set of effective support patterns. Classes without any effective
    /// representative are coaffine vacuously.
    pub fn is_coaffine(&self, n: &ToricDivisor) -> bool {
        self.coaffine_obstruction(n).is_none()
    }

    /// The first effective support pattern of `n` that is not the support
    /// of any monomial, together with the monomial shifting `n` onto that
    /// representative; `None` when `n` is coaffine.
    pub fn coaffine_obstruction(&self, n: &ToricDivisor) -> Option<(SupportSet, Vec<BigInt>)> {
        self.check_divisor(n);
        let r = self.facet_count();
        assert!(
            r <= 20,
            "support-pattern enumeration is limited to 20 facets"
        );
        for mask in 0u64..(1 << r) {
            let s: SupportSet = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            if self.is_realizable_support(&s) {
                continue;
            }
            if let Some(gamma) = self.effective_support_witness(n, &s) {
                return Some((s, gamma));
            }
        }
        None
    }

    /// Whether `n` is the divisor of a monomial, i.e. lies in the image
    /// of the valuation map.
    pub fn is_principal(&self, n: &ToricDivisor) -> bool {
        self.check_divisor(n);
        !lattice::solve_integer_system(&self.nu, n.coefficients()).is_empty()
    }

    /// Affine triviality is equivalent to a multiple being principal,
    /// i.e. to the class of `n` being torsion.
    pub fn is_affine_trivial(&self, n: &ToricDivisor) -> bool {
        self.check_divisor(n);
        lattice::is_torsion_class(&self.nu, n.coefficients()).expect("divisor length was validated")
    }

    /// The least `k >= 1` with `k * n` principal, when the class of `n`
    /// is torsion.
    pub fn principal_multiple(&self, n: &ToricDivisor) -> Option<BigInt> {
        self.check_divisor(n);
        lattice::torsion_order(&self.nu, n.coefficients()).expect("divisor length was validated")
    }

    /// Strong coaffineness coincides with affine triviality on monoid
    /// rings; the quantified form over all multiples lives in the oracle
    /// suite.
    pub fn is_strongly_coaffine(&self, n: &ToricDivisor) -> bool {
        self.is_affine_trivial(n)
    }

    /// Whether the number of facets equals the lattice rank.
    pub fn is_simplicial(&self) -> bool {
        self.facet_count() == self.lattice_rank()
    }

    /// Whether the affine class group vanishes; equivalent to
    /// simpliciality on every valid ring.
    pub fn acl_vanishes(&self) -> bool {
        self.affine_class_group().is_trivial()
    }

    /// Minimal monomial generators of the section module
    /// `{gamma : div(gamma) >= -n}`, enumerated inside the coordinate box
    /// `[-bound, bound]^d` and pruned of monoid multiples of one another.
    pub fn section_generators(&self, n: &ToricDivisor, bound: u32) -> SectionGenerators {
        self.check_divisor(n);
        assert!(bound >= 1, "enumeration bound must be at least 1");
        let d = self.lattice_rank();
        let in_module = |gamma: &[BigInt]| {
            self.nu
                .mul_vec(gamma)
                .iter()
                .zip(n.coefficients())
                .all(|(v, c)| !(v + c).is_negative())
        };
        let members: Vec<Vec<BigInt>> = box_points(d, bound).filter(|g| in_module(g)).collect();
        if members.is_empty() {
            return SectionGenerators {
                generators: Vec::new(),
                complete: false,
            };
        }
        let in_monoid = |diff: &[BigInt]| self.nu.mul_vec(diff).iter().all(|v| !v.is_negative());
        let mut generators = Vec::new();
        'candidates: for gamma in &members {
            for other in &members {
                if other == gamma {
                    continue;
                }
                let diff: Vec<BigInt> = gamma.iter().zip(other).map(|(a, b)| a - b).collect();
                if in_monoid(&diff) {
                    continue 'candidates;
                }
            }
            generators.push(gamma.clone());
        }
        let b = BigInt::from(bound);
        let complete = generators.iter().all(|g| g.iter().all(|c| c.abs() < b));
        SectionGenerators {
            generators,
            complete,
        }
    }

    fn check_divisor(&self, n: &ToricDivisor) {
        assert_eq!(
            n.len(),
            self.facet_count(),
            "divisor does not match the ring's facet count"
        );
    }
}
