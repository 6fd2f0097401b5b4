//! Independent brute-force oracles.
//!
//! Everything here decides by exhaustive enumeration inside a coordinate
//! box, deliberately avoiding the feasibility engine and the elimination
//! code paths it checks. The oracles are complete only up to the box
//! bound; callers of the equivalence tests pick bounds large enough for
//! their fixtures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::hyperbola::{HyperbolaDatum, HyperbolaDivisor, HyperbolaError};
use crate::lattice::IntegerMatrix;
use crate::monoid::{MonoidRing, SupportSet, ToricDivisor};

/// An enumeration bound: coordinates range over `[-bound, bound]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxBound(u32);

impl BoxBound {
    pub fn new(bound: u32) -> Self {
        assert!(bound >= 1, "box bound must be at least 1");
        BoxBound(bound)
    }

    pub fn bound(&self) -> u32 {
        self.0
    }
}

/// All integer points of `[-bound, bound]^dim` in lexicographic order.
pub fn box_points(dim: usize, bound: u32) -> impl Iterator<Item = Vec<BigInt>> {
    let b = bound as i64;
    let mut current: Option<Vec<i64>> = Some(vec![-b; dim]);
    std::iter::from_fn(move || {
        let coords = current.take()?;
        let point = coords.iter().map(|&c| BigInt::from(c)).collect();
        let mut next = coords;
        for i in (0..dim).rev() {
            if next[i] < b {
                next[i] += 1;
                current = Some(next);
                return Some(point);
            }
            next[i] = -b;
        }
        if dim == 0 {
            current = None;
        }
        Some(point)
    })
}

/// Support patterns of all monoid elements inside the box.
pub fn oracle_realizable_supports(ring: &MonoidRing, b: BoxBound) -> BTreeSet<SupportSet> {
    let mut out = BTreeSet::new();
    for gamma in box_points(ring.lattice_rank(), b.bound()) {
        if let Ok(s) = ring.monomial_support(&gamma) {
            out.insert(s);
        }
    }
    out
}

/// Support patterns of the effective representatives `n + div(gamma) >= 0`
/// found inside the box.
pub fn oracle_effective_supports(
    ring: &MonoidRing,
    n: &ToricDivisor,
    b: BoxBound,
) -> BTreeSet<SupportSet> {
    let mut out = BTreeSet::new();
    for gamma in box_points(ring.lattice_rank(), b.bound()) {
        let rep: Vec<BigInt> = ring
            .valuations()
            .mul_vec(&gamma)
            .iter()
            .zip(n.coefficients())
            .map(|(v, c)| v + c)
            .collect();
        if rep.iter().any(Signed::is_negative) {
            continue;
        }
        out.insert(
            rep.iter()
                .enumerate()
                .filter(|(_, v)| v.is_positive())
                .map(|(i, _)| i)
                .collect(),
        );
    }
    out
}

/// Box version of the coaffineness test: every enumerated effective
/// representative must have the support of some enumerated monomial.
/// Exact whenever the box captures all effective support patterns.
pub fn oracle_is_coaffine(ring: &MonoidRing, n: &ToricDivisor, b: BoxBound) -> bool {
    let realizable = oracle_realizable_supports(ring, b);
    oracle_effective_supports(ring, n, b)
        .iter()
        .all(|s| realizable.contains(s))
}

/// The quantified form of strong coaffineness, sampled over multiples
/// `|k| <= kmax`: every multiple must be coaffine or principal.
pub fn oracle_hyperbola_strong(
    h: &HyperbolaDatum,
    n: &HyperbolaDivisor,
    kmax: u32,
) -> Result<bool, HyperbolaError> {
    let kmax = kmax as i64;
    for k in -kmax..=kmax {
        let multiple = n.scaled(k);
        if !h.is_coaffine(&multiple)? && !h.is_principal(&multiple) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of comparing a hyperbola datum against its monomial model.
#[derive(Clone, Debug)]
pub struct CrossModelReport {
    pub divisors_checked: usize,
    pub disagreements: Vec<String>,
}

impl CrossModelReport {
    pub fn is_consistent(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares the hyperbola formulas with the monomial-model decision
/// procedures on the shared ring over a polynomial base: class group,
/// affine class group, and the divisor predicates translated facet-wise in
/// both directions. Effective divisors range over `n_i <= 2 d_i` on the
/// hyperbola side and coefficients up to `d_i` per facet on the model
/// side.
pub fn oracle_cross_model(h: &HyperbolaDatum) -> Result<CrossModelReport, HyperbolaError> {
    if !h.base_is_local() {
        return Err(HyperbolaError::NonLocalBase);
    }
    let model = h
        .toric_model_labeled()
        .expect("positive exponents give a valid model cone");
    let ring = model.ring().clone();
    let mut disagreements = Vec::new();
    let mut checked = 0;

    if h.class_group() != ring.class_group() {
        disagreements.push(format!(
            "class group: formulas give {}, model gives {}",
            h.class_group(),
            ring.class_group()
        ));
    }
    if h.affine_class_group_local()? != ring.affine_class_group() {
        disagreements.push(format!(
            "affine class group: formulas give {}, model gives {}",
            h.affine_class_group_local()?,
            ring.affine_class_group()
        ));
    }

    // hyperbola -> model: effective class representatives up to 2d
    let limits: Vec<BigInt> = h.exponents().iter().map(|d| d * BigInt::from(2)).collect();
    for coeffs in mixed_radix(&limits) {
        let n = h.divisor(coeffs).expect("grid has the right length");
        let m = model.to_model_divisor(&n);
        checked += 1;
        compare_verdicts(h, &n, &ring, &m, &mut disagreements)?;
    }

    // model -> hyperbola: effective facet vectors up to d per prime
    let mut facet_limits = vec![BigInt::zero(); ring.facet_count()];
    for (i, d) in h.exponents().iter().enumerate() {
        facet_limits[model.p_facets()[i]] = d.clone();
        facet_limits[model.q_facets()[i]] = d.clone();
    }
    for coeffs in mixed_radix(&facet_limits) {
        let m = ring.divisor(coeffs).expect("grid has the right length");
        let n = model.to_hyperbola_class(&m);
        checked += 1;
        compare_verdicts(h, &n, &ring, &m, &mut disagreements)?;
    }

    Ok(CrossModelReport {
        divisors_checked: checked,
        disagreements,
    })
}

fn compare_verdicts(
    h: &HyperbolaDatum,
    n: &HyperbolaDivisor,
    ring: &MonoidRing,
    m: &ToricDivisor,
    disagreements: &mut Vec<String>,
) -> Result<(), HyperbolaError> {
    let formula = h.is_coaffine(n)?;
    let model = ring.is_coaffine(m);
    if formula != model {
        disagreements.push(format!(
            "coaffine({n:?}): formulas say {formula}, model says {model} for {m:?}"
        ));
    }
    let formula = h.is_affine_trivial(n)?;
    let model = ring.is_affine_trivial(m);
    if formula != model {
        disagreements.push(format!(
            "affine trivial({n:?}): formulas say {formula}, model says {model} for {m:?}"
        ));
    }
    Ok(())
}

/// All vectors `v` with `0 <= v_i <= limits_i`.
fn mixed_radix(limits: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for limit in limits {
        let mut next = Vec::new();
        for prefix in &out {
            let mut v = BigInt::zero();
            while &v <= limit {
                let mut row = prefix.clone();
                row.push(v.clone());
                next.push(row);
                v += BigInt::one();
            }
        }
        out = next;
    }
    out
}

/// Invariant factors from gcds of `k x k` minors (determinant divisors);
/// an elimination-free check on the Smith normal form.
pub fn invariant_factors_by_minor_gcd(a: &IntegerMatrix) -> Vec<BigInt> {
    let n = a.rows().min(a.cols());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=n {
        let mut g = BigInt::zero();
        for ri in combinations(a.rows(), k) {
            for ci in combinations(a.cols(), k) {
                let sub = IntegerMatrix::from_rows(
                    ri.iter()
                        .map(|&i| ci.iter().map(|&j| a.at(i, j).clone()).collect())
                        .collect(),
                );
                g = g.gcd(&sub.determinant());
            }
        }
        divisors.push(g);
    }
    (1..=n)
        .map(|k| {
            if divisors[k].is_zero() {
                BigInt::zero()
            } else {
                &divisors[k] / &divisors[k - 1]
            }
        })
        .collect()
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

    fn quadrant() -> MonoidRing {
        MonoidRing::from_generators(2, &vs(&[&[1, 0], &[0, 1]])).unwrap()
    }

    fn a1() -> MonoidRing {
        MonoidRing::from_generators(2, &vs(&[&[0, 1], &[2, -1]])).unwrap()
    }

    fn square_cone() -> MonoidRing {
        MonoidRing::from_generators(3, &vs(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]))
            .unwrap()
    }

    #[test]
    fn box_points_cover_the_box() {
        let pts: Vec<_> = box_points(2, 1).collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], vec![BigInt::from(-1), BigInt::from(-1)]);
        assert_eq!(pts[8], vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn quadrant_all_supports_realizable() {
        let supports = oracle_realizable_supports(&quadrant(), BoxBound::new(2));
        assert_eq!(supports.len(), 4);
    }

    #[test]
    fn a1_all_supports_realizable() {
        let supports = oracle_realizable_supports(&a1(), BoxBound::new(4));
        assert_eq!(supports.len(), 4);
    }

    #[test]
    fn square_cone_excludes_singletons() {
        let supports = oracle_realizable_supports(&square_cone(), BoxBound::new(8));
        for i in 0..4 {
            let singleton: SupportSet = [i].into_iter().collect();
            assert!(!supports.contains(&singleton));
        }
        // empty, four adjacent pairs, four triples, and the full set
        assert_eq!(supports.len(), 10);
    }

    #[test]
    fn monotone_in_the_bound() {
        for ring in [quadrant(), a1(), square_cone()] {
            let mut previous = BTreeSet::new();
            for b in 1..=8 {
                let current = oracle_realizable_supports(&ring, BoxBound::new(b));
                assert!(previous.is_subset(&current), "bound {b} lost a pattern");
                previous = current;
            }
            // saturated well inside the acceptance bound
            assert_eq!(
                previous,
                oracle_realizable_supports(&ring, BoxBound::new(9))
            );
        }
    }

    #[test]
    fn oracle_coaffine_basics() {
        let q = quadrant();
        assert!(oracle_is_coaffine(
            &q,
            &q.divisor_from_i64(&[0, 0]),
            BoxBound::new(8)
        ));
        let sq = square_cone();
        assert!(!oracle_is_coaffine(
            &sq,
            &sq.divisor_from_i64(&[1, 0, 0, 0]),
            BoxBound::new(8)
        ));
    }

    #[test]
    fn hyperbola_strong_oracle() {
        let h = HyperbolaDatum::local_from_i64(&[3, 3]).unwrap();
        assert_eq!(
            oracle_hyperbola_strong(&h, &h.divisor_from_i64(&[1, 1]), 6),
            Ok(true)
        );
        assert_eq!(
            oracle_hyperbola_strong(&h, &h.divisor_from_i64(&[1, 2]), 6),
            Ok(false)
        );
        assert_eq!(
            oracle_hyperbola_strong(&h, &h.divisor_from_i64(&[0, 0]), 6),
            Ok(true)
        );
    }

    #[test]
    fn cross_model_small_exponents() {
        for exps in [vec![2i64], vec![1, 1]] {
            let h = HyperbolaDatum::local_from_i64(&exps).unwrap();
            let report = oracle_cross_model(&h).unwrap();
            assert!(
                report.is_consistent(),
                "disagreements: {:?}",
                report.disagreements
            );
            assert!(report.divisors_checked > 0);
        }
    }

    #[test]
    fn minor_gcd_oracle_known_values() {
        let a = IntegerMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(
            invariant_factors_by_minor_gcd(&a),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        let col = IntegerMatrix::from_i64_rows(&[&[3], &[3]]);
        assert_eq!(invariant_factors_by_minor_gcd(&col), vec![BigInt::from(3)]);
    }
}
