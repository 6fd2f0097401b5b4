use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{smith_normal_form, IntegerMatrix};

/// The integer solution set of a linear system `a * x = b`: either empty,
/// or a base point plus the integer span of a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineLattice {
    Empty,
    Points {
        base_point: Vec<BigInt>,
        basis: Vec<Vec<BigInt>>,
    },
}

impl AffineLattice {
    pub fn is_empty(&self) -> bool {
        matches!(self, AffineLattice::Empty)
    }

    /// The point `base + sum(c_i * basis_i)` for integer coefficients `c`.
    pub fn point(&self, coeffs: &[BigInt]) -> Option<Vec<BigInt>> {
        match self {
            AffineLattice::Empty => None,
            AffineLattice::Points { base_point, basis } => {
                assert_eq!(coeffs.len(), basis.len(), "coefficient count mismatch");
                let mut p = base_point.clone();
                for (c, v) in coeffs.iter().zip(basis) {
                    for (pi, vi) in p.iter_mut().zip(v) {
                        *pi += c * vi;
                    }
                }
                Some(p)
            }
        }
    }
}

/// Solves `a * x = b` over the integers via the Smith transform: with
/// `u a v = s`, substitute `x = v y` and solve the diagonal system
/// `s y = u b` exactly.
pub fn solve_integer_system(a: &IntegerMatrix, b: &[BigInt]) -> AffineLattice {
    assert_eq!(b.len(), a.rows(), "right-hand side length mismatch");
    let smith = smith_normal_form(a);
    let c = smith.u().mul_vec(b);
    let k = smith.nonzero_count();

    // Rows past the rank force zero right-hand sides.
    if c[k..].iter().any(|x| !x.is_zero()) {
        return AffineLattice::Empty;
    }

    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..k {
        let s = &smith.invariant_factors()[i];
        let (q, r) = c[i].div_rem(s);
        if !r.is_zero() {
            return AffineLattice::Empty;
        }
        y[i] = q;
    }

    let base_point = smith.v().mul_vec(&y);
    let basis = (k..a.cols()).map(|j| smith.v().column(j)).collect();
    AffineLattice::Points { base_point, basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows)
    }

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_system() {
        let sol = solve_integer_system(&IntegerMatrix::identity(3), &iv(&[4, -1, 7]));
        match &sol {
            AffineLattice::Points { base_point, basis } => {
                assert_eq!(base_point, &iv(&[4, -1, 7]));
                assert!(basis.is_empty());
            }
            AffineLattice::Empty => panic!("expected solutions"),
        }
    }

    #[test]
    fn parity_obstruction() {
        assert_eq!(
            solve_integer_system(&m(&[&[2]]), &iv(&[1])),
            AffineLattice::Empty
        );
    }

    #[test]
    fn one_equation_two_unknowns() {
        let a = m(&[&[1, 1]]);
        let sol = solve_integer_system(&a, &iv(&[2]));
        let AffineLattice::Points { base_point, basis } = &sol else {
            panic!("expected solutions");
        };
        assert_eq!(a.mul_vec(base_point), iv(&[2]));
        assert_eq!(basis.len(), 1);

        // Coset structure against brute force: the parametrized points in a
        // coefficient range must reproduce exactly the box solutions.
        let brute: BTreeSet<Vec<BigInt>> = (-6..=6)
            .flat_map(|x| (-6..=6).map(move |y| iv(&[x, y])))
            .filter(|p| a.mul_vec(p) == iv(&[2]))
            .collect();
        let generated: BTreeSet<Vec<BigInt>> = (-20..=20)
            .map(|c| sol.point(&iv(&[c])).unwrap())
            .filter(|p| p.iter().all(|x| x.magnitude() <= &6u32.into()))
            .collect();
        assert_eq!(generated, brute);
    }

    #[test]
    fn sampled_points_solve_the_system() {
        let a = m(&[&[2, 4, -2], &[1, 1, 1]]);
        let b = iv(&[2, 3]);
        let sol = solve_integer_system(&a, &b);
        let AffineLattice::Points { basis, .. } = &sol else {
            panic!("expected solutions: (1, 1, 1) works");
        };
        assert_eq!(basis.len(), 1);
        for c in -5..=5 {
            let p = sol.point(&iv(&[c])).unwrap();
            assert_eq!(a.mul_vec(&p), b);
        }
    }

    #[test]
    fn inconsistent_system_is_empty() {
        // x + y = 1 and x + y = 2 simultaneously
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_integer_system(&a, &iv(&[1, 2])), AffineLattice::Empty);
    }
}
