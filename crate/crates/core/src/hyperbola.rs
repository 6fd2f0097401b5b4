//! Divisor theory on hyperbola rings `R[X,Y]/(XY - U_1^{d_1}...U_r^{d_r})`
//! over a noetherian factorial base with pairwise non-associated primes
//! `U_i`.
//!
//! Divisor classes are represented by coefficient vectors on the height
//! one primes `p_i = (U_i, X)`; two vectors are equivalent exactly when
//! they differ by an integer multiple of the exponent vector `d`, so the
//! class group is `Z^r/(d)`. Over a local base, a class is coaffine iff it
//! is principal or has a representative with `0 < n_i < d_i` for all `i`,
//! and it is affine trivial iff it is rationally proportional to `d`. Over
//! a non-local base only the vanishing criterion for deviation from local
//! Q-factoriality is available, driven by pairwise comaximality of the
//! `U_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

use crate::cone::ConeError;
use crate::lattice::{self, FGAbelianGroup, IntegerMatrix};
use crate::monoid::{MonoidRing, ToricDivisor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperbolaError {
    #[error("exponent vector must be non-empty")]
    EmptyExponents,
    #[error("all exponents must be at least 1")]
    NonPositiveExponent,
    #[error("operation requires a local base ring")]
    NonLocalBase,
    #[error("comaximality data is required for a non-local base")]
    MissingComaximalData,
    #[error("comaximal matrix must be symmetric with one row per exponent")]
    ComaximalShape,
    #[error("divisor has {got} coefficients but the ring has {expected} exponents")]
    CoefficientCountMismatch { expected: usize, got: usize },
}

/// The hyperbola ring datum: exponents `d_i >= 1`, whether the base is
/// local, and (for non-local bases) which pairs `U_i, U_j` generate the
/// unit ideal.
#[derive(Clone, Debug)]
pub struct HyperbolaDatum {
    exponents: Vec<BigInt>,
    base_is_local: bool,
    comaximal: Option<Vec<Vec<bool>>>,
}

/// A divisor class representative `n_1 p_1 + ... + n_r p_r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperbolaDivisor(Vec<BigInt>);

impl HyperbolaDivisor {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: i64) -> HyperbolaDivisor {
        let k = BigInt::from(k);
        HyperbolaDivisor(self.0.iter().map(|c| c * &k).collect())
    }

    pub fn plus(&self, other: &HyperbolaDivisor) -> HyperbolaDivisor {
        assert_eq!(self.len(), other.len(), "divisor length mismatch");
        HyperbolaDivisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> HyperbolaDivisor {
        HyperbolaDivisor(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for HyperbolaDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "HyperbolaDivisor({})", coeffs.join(","))
    }
}

impl HyperbolaDatum {
    /// Datum over a local factorial base.
    pub fn local(exponents: Vec<BigInt>) -> Result<Self, HyperbolaError> {
        Self::validate_exponents(&exponents)?;
        Ok(HyperbolaDatum {
            exponents,
            base_is_local: true,
            comaximal: None,
        })
    }

    pub fn local_from_i64(exponents: &[i64]) -> Result<Self, HyperbolaError> {
        Self::local(exponents.iter().map(|&d| BigInt::from(d)).collect())
    }

    /// Datum over a non-local base; `comaximal[i][j]` states whether `U_i`
    /// and `U_j` generate the unit ideal. Diagonal entries are ignored.
    pub fn non_local(
        exponents: Vec<BigInt>,
        comaximal: Vec<Vec<bool>>,
    ) -> Result<Self, HyperbolaError> {
        Self::validate_exponents(&exponents)?;
        let r = exponents.len();
        if comaximal.len() != r || comaximal.iter().any(|row| row.len() != r) {
            return Err(HyperbolaError::ComaximalShape);
        }
        for (i, row) in comaximal.iter().enumerate() {
            for (j, &flag) in row.iter().enumerate() {
                if i != j && flag != comaximal[j][i] {
                    return Err(HyperbolaError::ComaximalShape);
                }
            }
        }
        Ok(HyperbolaDatum {
            exponents,
            base_is_local: false,
            comaximal: Some(comaximal),
        })
    }

    fn validate_exponents(exponents: &[BigInt]) -> Result<(), HyperbolaError> {
        if exponents.is_empty() {
            return Err(HyperbolaError::EmptyExponents);
        }
        if exponents.iter().any(|d| d < &BigInt::one()) {
            return Err(HyperbolaError::NonPositiveExponent);
        }
        Ok(())
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn base_is_local(&self) -> bool {
        self.base_is_local
    }

    pub fn divisor(&self, coefficients: Vec<BigInt>) -> Result<HyperbolaDivisor, HyperbolaError> {
        if coefficients.len() != self.rank() {
            return Err(HyperbolaError::CoefficientCountMismatch {
                expected: self.rank(),
                got: coefficients.len(),
            });
        }
        Ok(HyperbolaDivisor(coefficients))
    }

    pub fn divisor_from_i64(&self, coefficients: &[i64]) -> HyperbolaDivisor {
        self.divisor(coefficients.iter().map(|&c| BigInt::from(c)).collect())
            .expect("coefficient count mismatch")
    }

    /// `Cl = Z^r/(d)`: the cokernel of `1 -> d`.
    pub fn class_group(&self) -> FGAbelianGroup {
        lattice::cokernel(&IntegerMatrix::column_vector(&self.exponents))
    }

    /// `Cl` modulo torsion, i.e. `Z^{r-1}`; only established over a local
    /// base.
    pub fn affine_class_group_local(&self) -> Result<FGAbelianGroup, HyperbolaError> {
        self.require_local()?;
        Ok(lattice::torsion_free_quotient(&self.class_group()))
    }

    /// Whether `n` is an integer multiple of `d`.
    pub fn is_principal(&self, n: &HyperbolaDivisor) -> bool {
        self.check_divisor(n);
        self.principal_factor(n).is_some()
    }

    fn principal_factor(&self, n: &HyperbolaDivisor) -> Option<BigInt> {
        let (q, r) = n.coefficients()[0].div_rem(&self.exponents[0]);
        if !r.is_zero() {
            return None;
        }
        let matches = n
            .coefficients()
            .iter()
            .zip(&self.exponents)
            .all(|(ni, di)| ni == &(&q * di));
        matches.then_some(q)
    }

    /// The unique shift `k` with `0 < n_i - k d_i < d_i` for all `i`, when
    /// one exists. Each coordinate with `d_i` not dividing `n_i` forces
    /// `k = floor(n_i / d_i)`; a divisible coordinate rules the shift out.
    pub fn coaffine_shift(&self, n: &HyperbolaDivisor) -> Result<Option<BigInt>, HyperbolaError> {
        self.require_local()?;
        self.check_divisor(n);
        let mut shift: Option<BigInt> = None;
        for (ni, di) in n.coefficients().iter().zip(&self.exponents) {
            let (q, r) = ni.div_mod_floor(di);
            if r.is_zero() {
                return Ok(None);
            }
            match &shift {
                None => shift = Some(q),
                Some(k) if *k == q => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(shift)
    }

    /// Coaffine iff principal or shiftable into the open box `(0, d)`.
    pub fn is_coaffine(&self, n: &HyperbolaDivisor) -> Result<bool, HyperbolaError> {
        self.require_local()?;
        self.check_divisor(n);
        Ok(self.is_principal(n) || self.coaffine_shift(n)?.is_some())
    }

    /// Affine trivial iff some positive multiple of `n` is a multiple of
    /// `d`, i.e. iff `n` and `d` are proportional; decided by
    /// cross-multiplication.
    pub fn is_affine_trivial(&self, n: &HyperbolaDivisor) -> Result<bool, HyperbolaError> {
        self.require_local()?;
        self.check_divisor(n);
        let c = n.coefficients();
        let d = &self.exponents;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if &c[i] * &d[j] != &c[j] * &d[i] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The least `k >= 1` with `k * n` principal, when there is one.
    pub fn principal_multiple(
        &self,
        n: &HyperbolaDivisor,
    ) -> Result<Option<BigInt>, HyperbolaError> {
        if !self.is_affine_trivial(n)? {
            return Ok(None);
        }
        if n.is_zero() {
            return Ok(Some(BigInt::one()));
        }
        // n = (p/q) d in lowest terms; the least multiple is q
        let i = n
            .coefficients()
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero divisor");
        let g = n.coefficients()[i].gcd(&self.exponents[i]);
        Ok(Some(&self.exponents[i] / g))
    }

    /// Strong coaffineness coincides with affine triviality over a local
    /// base; the quantified form over all multiples lives in the oracle
    /// suite.
    pub fn is_strongly_coaffine(&self, n: &HyperbolaDivisor) -> Result<bool, HyperbolaError> {
        self.is_affine_trivial(n)
    }

    /// Over a non-local base the affine class group vanishes iff every
    /// pair `U_i, U_j` generates the unit ideal.
    pub fn acl_vanishes_nonlocal(&self) -> Result<bool, HyperbolaError> {
        if self.base_is_local {
            return Err(HyperbolaError::MissingComaximalData);
        }
        let comaximal = self
            .comaximal
            .as_ref()
            .ok_or(HyperbolaError::MissingComaximalData)?;
        let all_pairs = comaximal
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().skip(i + 1).all(|&flag| flag));
        Ok(all_pairs)
    }

    /// The monomial model of the hyperbola over a polynomial base: the
    /// cone in `Z^{r+1}` generated by the unit vectors together with
    /// `(d_1, ..., d_r, -1)` (the exponent vector of `Y = U^d X^{-1}`).
    /// Facets carry the primes `p_i` and `q_i`, identified by the
    /// valuations of `U_i`, `X` and `Y`.
    pub fn toric_model_labeled(&self) -> Result<ToricModel, ConeError> {
        let r = self.rank();
        let mut rays: Vec<Vec<BigInt>> = (0..=r)
            .map(|i| {
                let mut e = vec![BigInt::zero(); r + 1];
                e[i] = BigInt::one();
                e
            })
            .collect();
        let mut y_ray = self.exponents.clone();
        y_ray.push(-BigInt::one());
        rays.push(y_ray.clone());

        let ring = MonoidRing::from_generators(r + 1, &rays)?;
        let nu = ring.valuations();
        let mut p_facet = vec![usize::MAX; r];
        let mut q_facet = vec![usize::MAX; r];
        for f in 0..ring.facet_count() {
            let normal = nu.row(f);
            let positives: Vec<usize> = (0..r).filter(|&i| normal[i].is_positive()).collect();
            assert_eq!(positives.len(), 1, "facet must see exactly one base prime");
            let i = positives[0];
            let val_x = &normal[r];
            let val_y = lattice::dot(&normal, &y_ray);
            if val_x.is_positive() {
                assert_eq!(p_facet[i], usize::MAX);
                p_facet[i] = f;
            } else {
                assert!(val_y.is_positive(), "facet must meet X or Y");
                assert_eq!(q_facet[i], usize::MAX);
                q_facet[i] = f;
            }
        }
        assert!(
            p_facet.iter().chain(&q_facet).all(|&f| f != usize::MAX),
            "every prime must have both facets"
        );
        Ok(ToricModel {
            ring,
            p_facet,
            q_facet,
        })
    }

    /// The monomial model without facet labels.
    pub fn toric_model(&self) -> Result<MonoidRing, ConeError> {
        Ok(self.toric_model_labeled()?.ring)
    }

    fn require_local(&self) -> Result<(), HyperbolaError> {
        if self.base_is_local {
            Ok(())
        } else {
            Err(HyperbolaError::NonLocalBase)
        }
    }

    fn check_divisor(&self, n: &HyperbolaDivisor) {
        assert_eq!(
            n.len(),
            self.rank(),
            "divisor does not match the ring's exponent count"
        );
    }
}

/// A hyperbola's monomial model with the facet indices of the primes
/// `p_i = (U_i, X)` and `q_i = (U_i, Y)`.
#[derive(Clone, Debug)]
pub struct ToricModel {
    ring: MonoidRing,
    p_facet: Vec<usize>,
    q_facet: Vec<usize>,
}

impl ToricModel {
    pub fn ring(&self) -> &MonoidRing {
        &self.ring
    }

    pub fn p_facets(&self) -> &[usize] {
        &self.p_facet
    }

    pub fn q_facets(&self) -> &[usize] {
        &self.q_facet
    }

    /// `sum n_i p_i` as a facet coefficient vector of the model.
    pub fn to_model_divisor(&self, n: &HyperbolaDivisor) -> ToricDivisor {
        let mut coeffs = vec![BigInt::zero(); self.ring.facet_count()];
        for (i, c) in n.coefficients().iter().enumerate() {
            coeffs[self.p_facet[i]] = c.clone();
        }
        self.ring.divisor(coeffs).expect("model facet count")
    }

    /// Reads a model divisor back as a class representative on the
    /// `p_i`, using `q_i = div(U_i) - p_i`.
    pub fn to_hyperbola_class(&self, n: &ToricDivisor) -> HyperbolaDivisor {
        let coeffs = n.coefficients();
        HyperbolaDivisor(
            self.p_facet
                .iter()
                .zip(&self.q_facet)
                .map(|(&p, &q)| &coeffs[p] - &coeffs[q])
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(exps: &[i64]) -> HyperbolaDatum {
        HyperbolaDatum::local_from_i64(exps).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            HyperbolaDatum::local(vec![]),
            Err(HyperbolaError::EmptyExponents)
        ));
        assert!(matches!(
            HyperbolaDatum::local_from_i64(&[2, 0]),
            Err(HyperbolaError::NonPositiveExponent)
        ));
        assert!(matches!(
            HyperbolaDatum::non_local(vec![BigInt::from(2)], vec![]),
            Err(HyperbolaError::ComaximalShape)
        ));
        let h = d(&[3, 3]);
        assert!(matches!(
            h.divisor(vec![BigInt::one()]),
            Err(HyperbolaError::CoefficientCountMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn class_groups() {
        assert_eq!(
            d(&[3, 3]).class_group(),
            FGAbelianGroup::new(1, vec![BigInt::from(3)])
        );
        assert_eq!(d(&[1, 1]).class_group(), FGAbelianGroup::free(1));
        assert_eq!(
            d(&[5]).class_group(),
            FGAbelianGroup::new(0, vec![BigInt::from(5)])
        );
    }

    #[test]
    fn affine_class_groups() {
        assert_eq!(
            d(&[3, 3]).affine_class_group_local().unwrap(),
            FGAbelianGroup::free(1)
        );
        assert!(d(&[5]).affine_class_group_local().unwrap().is_trivial());
        assert_eq!(
            d(&[1, 1, 1]).affine_class_group_local().unwrap(),
            FGAbelianGroup::free(2)
        );
        // free rank r-1, no torsion, across a small sweep
        for exps in [vec![2], vec![2, 4], vec![1, 2, 3], vec![3, 3, 3, 3]] {
            let h = HyperbolaDatum::local_from_i64(&exps).unwrap();
            let acl = h.affine_class_group_local().unwrap();
            assert_eq!(acl.free_rank(), exps.len() - 1);
            assert!(acl.is_torsion_free());
        }
    }

    #[test]
    fn non_local_gates() {
        let comax = vec![vec![false, true], vec![true, false]];
        let h = HyperbolaDatum::non_local(vec![BigInt::from(2), BigInt::from(3)], comax).unwrap();
        assert_eq!(
            h.affine_class_group_local(),
            Err(HyperbolaError::NonLocalBase)
        );
        assert_eq!(
            h.is_coaffine(&h.divisor_from_i64(&[1, 1])),
            Err(HyperbolaError::NonLocalBase)
        );
        assert_eq!(h.acl_vanishes_nonlocal(), Ok(true));

        let blocked = HyperbolaDatum::non_local(
            vec![BigInt::from(2), BigInt::from(3), BigInt::from(1)],
            vec![
                vec![false, true, true],
                vec![true, false, false],
                vec![true, false, false],
            ],
        )
        .unwrap();
        assert_eq!(blocked.acl_vanishes_nonlocal(), Ok(false));

        // r = 1 is vacuously comaximal
        let single = HyperbolaDatum::non_local(vec![BigInt::from(4)], vec![vec![false]]).unwrap();
        assert_eq!(single.acl_vanishes_nonlocal(), Ok(true));

        assert_eq!(
            d(&[2]).acl_vanishes_nonlocal(),
            Err(HyperbolaError::MissingComaximalData)
        );
    }

    #[test]
    fn coaffine_classification_d33() {
        let h = d(&[3, 3]);
        assert_eq!(h.is_coaffine(&h.divisor_from_i64(&[1, 2])), Ok(true));
        assert_eq!(h.is_coaffine(&h.divisor_from_i64(&[2, 3])), Ok(false));
        assert_eq!(h.is_coaffine(&h.divisor_from_i64(&[3, 3])), Ok(true));
        assert_eq!(h.is_coaffine(&h.divisor_from_i64(&[0, 0])), Ok(true));
        assert_eq!(h.is_coaffine(&h.divisor_from_i64(&[-1, -2])), Ok(true));
        assert_eq!(h.is_coaffine(&h.divisor_from_i64(&[0, 3])), Ok(false));
    }

    #[test]
    fn affine_triviality_d33() {
        let h = d(&[3, 3]);
        assert_eq!(h.is_affine_trivial(&h.divisor_from_i64(&[1, 1])), Ok(true));
        assert_eq!(h.is_affine_trivial(&h.divisor_from_i64(&[1, 2])), Ok(false));
        assert_eq!(h.is_affine_trivial(&h.divisor_from_i64(&[0, 0])), Ok(true));
        assert_eq!(
            h.principal_multiple(&h.divisor_from_i64(&[1, 1])).unwrap(),
            Some(BigInt::from(3))
        );
        assert_eq!(
            h.principal_multiple(&h.divisor_from_i64(&[0, 0])).unwrap(),
            Some(BigInt::one())
        );
    }

    #[test]
    fn strong_coaffineness_is_strictly_stronger() {
        let h = d(&[3, 3]);
        let n = h.divisor_from_i64(&[1, 2]);
        assert_eq!(h.is_coaffine(&n), Ok(true));
        assert_eq!(h.is_strongly_coaffine(&n), Ok(false));
        let trivial = h.divisor_from_i64(&[1, 1]);
        assert_eq!(h.is_strongly_coaffine(&trivial), Ok(true));
        assert_eq!(
            h.is_strongly_coaffine(&h.divisor_from_i64(&[0, 0])),
            Ok(true)
        );
    }

    #[test]
    fn sum_of_coaffine_divisors_need_not_be_coaffine() {
        let h = d(&[3, 3]);
        let a = h.divisor_from_i64(&[1, 1]);
        let b = h.divisor_from_i64(&[1, 2]);
        assert_eq!(h.is_coaffine(&a), Ok(true));
        assert_eq!(h.is_coaffine(&b), Ok(true));
        assert_eq!(h.is_coaffine(&a.plus(&b)), Ok(false));
    }

    #[test]
    fn class_invariance_under_d_shifts() {
        for exps in [vec![3i64, 3], vec![2, 4], vec![1, 2, 3]] {
            let h = HyperbolaDatum::local_from_i64(&exps).unwrap();
            let dvec: Vec<i64> = exps.clone();
            for n0 in -3i64..=3 {
                for n1 in -3i64..=3 {
                    let mut coeffs = vec![n0, n1];
                    coeffs.truncate(exps.len());
                    while coeffs.len() < exps.len() {
                        coeffs.push(n0 + n1);
                    }
                    let n = h.divisor_from_i64(&coeffs);
                    for k in -4i64..=4 {
                        let shifted: Vec<i64> =
                            coeffs.iter().zip(&dvec).map(|(c, d)| c + k * d).collect();
                        let m = h.divisor_from_i64(&shifted);
                        assert_eq!(h.is_coaffine(&n), h.is_coaffine(&m));
                        assert_eq!(h.is_affine_trivial(&n), h.is_affine_trivial(&m));
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_divisors_form_a_subgroup() {
        let h = d(&[2, 4]);
        let trivials: Vec<HyperbolaDivisor> = (-4i64..=4)
            .flat_map(|a| (-4i64..=4).map(move |b| (a, b)))
            .map(|(a, b)| h.divisor_from_i64(&[a, b]))
            .filter(|n| h.is_affine_trivial(n).unwrap())
            .collect();
        assert!(trivials.len() > 1);
        for x in &trivials {
            assert_eq!(h.is_affine_trivial(&x.negated()), Ok(true));
            for y in &trivials {
                assert_eq!(h.is_affine_trivial(&x.plus(y)), Ok(true));
            }
        }
    }

    #[test]
    fn toric_models() {
        let m1 = d(&[1]).toric_model().unwrap();
        assert_eq!(m1.facet_count(), 2);
        assert!(m1.class_group().is_trivial());

        let m2 = d(&[2]).toric_model().unwrap();
        assert_eq!(
            m2.class_group(),
            FGAbelianGroup::new(0, vec![BigInt::from(2)])
        );
        assert_eq!(m2.class_group(), d(&[2]).class_group());

        let m11 = d(&[1, 1]).toric_model().unwrap();
        assert_eq!(m11.class_group(), FGAbelianGroup::free(1));
        assert_eq!(m11.class_group(), d(&[1, 1]).class_group());
    }

    #[test]
    fn model_translation_round_trip() {
        let h = d(&[3, 3]);
        let model = h.toric_model_labeled().unwrap();
        assert_eq!(model.ring().facet_count(), 4);
        for coeffs in [[0i64, 0], [1, 2], [2, 3], [-1, 4]] {
            let n = h.divisor_from_i64(&coeffs);
            let down = model.to_hyperbola_class(&model.to_model_divisor(&n));
            assert_eq!(down, n);
        }
        // the valuation of U_i is one on each of its two facets
        let nu = model.ring().valuations();
        for i in 0..2 {
            let mut u = vec![BigInt::zero(); 3];
            u[i] = BigInt::one();
            let vals = nu.mul_vec(&u);
            assert!(vals[model.p_facets()[i]].is_one());
            assert!(vals[model.q_facets()[i]].is_one());
        }
    }
}
