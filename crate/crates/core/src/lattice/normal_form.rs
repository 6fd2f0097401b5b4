use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// A Smith decomposition `u * a * v = s` of an integer matrix.
///
/// `u` and `v` are unimodular; `s` is diagonal, its diagonal is
/// nonnegative, each entry divides the next, and zeros trail.
#[derive(Clone, Debug)]
pub struct SmithForm {
    u: IntegerMatrix,
    s: IntegerMatrix,
    v: IntegerMatrix,
    invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn u(&self) -> &IntegerMatrix {
        &self.u
    }

    pub fn s(&self) -> &IntegerMatrix {
        &self.s
    }

    pub fn v(&self) -> &IntegerMatrix {
        &self.v
    }

    /// Diagonal of `s`, including trailing zeros, length `min(rows, cols)`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Number of nonzero invariant factors (the rank of the source matrix).
    pub fn nonzero_count(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|f| !f.is_zero())
            .count()
    }
}

/// Position of the entry with smallest nonzero absolute value in the
/// trailing block starting at `(t, t)`; ties go to the lowest (row, col).
fn select_pivot(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let e = m.at(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(a.rows());
    let mut v = IntegerMatrix::identity(a.cols());
    let n = a.rows().min(a.cols());

    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = select_pivot(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'clear: loop {
            // Clear column t below the pivot.
            for i in t + 1..s.rows() {
                if s.at(i, t).is_zero() {
                    continue;
                }
                let (p, e) = (s.at(t, t).clone(), s.at(i, t).clone());
                let (q, r) = e.div_rem(&p);
                if r.is_zero() {
                    s.add_row_multiple(i, t, &(-q.clone()));
                    u.add_row_multiple(i, t, &(-q));
                } else {
                    // (p, e) -> (gcd, 0) by a 2x2 unimodular transform.
                    let eg = p.extended_gcd(&e);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let (pp, ee) = (&p / &g, &e / &g);
                    s.combine_rows(t, i, &x, &y, &(-ee.clone()), &pp);
                    u.combine_rows(t, i, &x, &y, &(-ee), &pp);
                }
            }
            // Clear row t right of the pivot; may dirty the column again.
            let mut dirtied = false;
            for j in t + 1..s.cols() {
                if s.at(t, j).is_zero() {
                    continue;
                }
                let (p, e) = (s.at(t, t).clone(), s.at(t, j).clone());
                let (q, r) = e.div_rem(&p);
                if r.is_zero() {
                    s.add_col_multiple(j, t, &(-q.clone()));
                    v.add_col_multiple(j, t, &(-q));
                } else {
                    let eg = p.extended_gcd(&e);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let (pp, ee) = (&p / &g, &e / &g);
                    s.combine_cols(t, j, &x, &y, &(-ee.clone()), &pp);
                    v.combine_cols(t, j, &x, &y, &(-ee), &pp);
                    dirtied = true;
                }
            }
            if dirtied {
                continue 'clear;
            }
            if (t + 1..s.rows()).any(|i| !s.at(i, t).is_zero()) {
                continue 'clear;
            }

            // Pivot must divide the whole trailing block; if not, fold the
            // offending row in and restart the clearing loop (the pivot's
            // absolute value strictly decreases, so this terminates).
            let p = s.at(t, t).clone();
            let offender = (t + 1..s.rows()).find_map(|i| {
                (t + 1..s.cols())
                    .find(|&j| !s.at(i, j).mod_floor(&p).is_zero())
                    .map(|_| i)
            });
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::from(1));
                    u.add_row_multiple(t, i, &BigInt::from(1));
                }
                None => break 'clear,
            }
        }

        if s.at(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..n).map(|i| s.at(i, i).clone()).collect();
    SmithForm {
        u,
        s,
        v,
        invariant_factors,
    }
}

pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(a.rows());
    let mut pivot_row = 0;

    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains.
        loop {
            let mut min: Option<(BigInt, usize)> = None;
            for i in pivot_row..h.rows() {
                let e = h.at(i, col);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                match &min {
                    Some((b, _)) if *b <= a => {}
                    _ => min = Some((a, i)),
                }
            }
            let Some((_, mi)) = min else {
                break;
            };
            h.swap_rows(pivot_row, mi);
            u.swap_rows(pivot_row, mi);
            let mut done = true;
            for i in pivot_row + 1..h.rows() {
                if h.at(i, col).is_zero() {
                    continue;
                }
                let q = h.at(i, col).div_floor(h.at(pivot_row, col));
                h.add_row_multiple(i, pivot_row, &(-q.clone()));
                u.add_row_multiple(i, pivot_row, &(-q));
                if !h.at(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        let p = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.at(i, col).div_floor(&p);
            if !q.is_zero() {
                h.add_row_multiple(i, pivot_row, &(-q.clone()));
                u.add_row_multiple(i, pivot_row, &(-q));
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows)
    }

    fn is_unimodular(m: &IntegerMatrix) -> bool {
        m.determinant().abs().is_one()
    }

    // Independent cross-check: invariant factors from gcds of k x k
    // minors (determinant divisors), no elimination involved.
    use crate::oracle::invariant_factors_by_minor_gcd;

    fn check_smith(a: &IntegerMatrix) -> SmithForm {
        let sm = smith_normal_form(a);
        assert_eq!(sm.u().mul(a).mul(sm.v()), *sm.s(), "u*a*v != s");
        assert!(is_unimodular(sm.u()), "u not unimodular");
        assert!(is_unimodular(sm.v()), "v not unimodular");
        let f = sm.invariant_factors();
        let mut seen_zero = false;
        for i in 0..f.len() {
            assert!(!f[i].is_negative(), "negative invariant factor");
            if f[i].is_zero() {
                seen_zero = true;
            } else {
                assert!(!seen_zero, "zeros must trail");
                if i + 1 < f.len() && !f[i + 1].is_zero() {
                    assert!(f[i + 1].mod_floor(&f[i]).is_zero(), "divisibility chain");
                }
            }
        }
        // s diagonal
        for i in 0..sm.s().rows() {
            for j in 0..sm.s().cols() {
                if i != j {
                    assert!(sm.s().at(i, j).is_zero(), "s not diagonal");
                }
            }
        }
        sm
    }

    #[test]
    fn smith_identity() {
        let sm = check_smith(&IntegerMatrix::identity(3));
        assert_eq!(
            sm.invariant_factors(),
            &[BigInt::one(), BigInt::one(), BigInt::one()]
        );
    }

    #[test]
    fn smith_column_vector() {
        // frozen via the minor-gcd oracle: gcd of entries is 3
        let a = m(&[&[3], &[3]]);
        let sm = check_smith(&a);
        assert_eq!(sm.invariant_factors(), &[BigInt::from(3)]);
        assert_eq!(invariant_factors_by_minor_gcd(&a), vec![BigInt::from(3)]);
    }

    #[test]
    fn smith_2x2() {
        // determinant-divisor oracle: d1 = gcd = 2, d1*d2 = |det| = 8
        let a = m(&[&[2, 4], &[6, 8]]);
        let sm = check_smith(&a);
        assert_eq!(sm.invariant_factors(), &[BigInt::from(2), BigInt::from(4)]);
        assert_eq!(
            invariant_factors_by_minor_gcd(&a),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn smith_zero_matrix() {
        let sm = check_smith(&IntegerMatrix::zero(2, 3));
        assert_eq!(sm.invariant_factors(), &[BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn hermite_identity_and_zero() {
        let (h, u) = hermite_normal_form(&IntegerMatrix::identity(2));
        assert_eq!(h, IntegerMatrix::identity(2));
        assert_eq!(u, IntegerMatrix::identity(2));

        let z = IntegerMatrix::zero(2, 2);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntegerMatrix::identity(2));
    }

    #[test]
    fn hermite_2x2() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a), h, "u*a != h");
        assert!(is_unimodular(&u));
        assert_eq!(h, m(&[&[2, 0], &[0, 4]]));
    }

    fn check_hermite(a: &IntegerMatrix) {
        let (h, u) = hermite_normal_form(a);
        assert_eq!(u.mul(a), h, "u*a != h");
        assert!(is_unimodular(&u), "u not unimodular");
        // echelon shape with positive pivots and reduced columns above
        let mut prev_col: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..h.rows() {
            let pivot = (0..h.cols()).find(|&j| !h.at(i, j).is_zero());
            match pivot {
                None => seen_zero_row = true,
                Some(j) => {
                    assert!(!seen_zero_row, "zero rows must trail");
                    if let Some(pc) = prev_col {
                        assert!(j > pc, "pivot columns must step right");
                    }
                    prev_col = Some(j);
                    assert!(h.at(i, j).is_positive(), "pivot must be positive");
                    for r in 0..i {
                        assert!(
                            !h.at(r, j).is_negative() && h.at(r, j) < h.at(i, j),
                            "entry above pivot not reduced"
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn smith_random(rows in 1usize..=6, cols in 1usize..=6,
                        seed in proptest::collection::vec(-9i64..=9, 36)) {
            let entries = seed[..rows * cols].iter().map(|&x| BigInt::from(x)).collect();
            let a = IntegerMatrix::new(rows, cols, entries);
            check_smith(&a);
        }

        #[test]
        fn hermite_random(rows in 1usize..=6, cols in 1usize..=6,
                          seed in proptest::collection::vec(-9i64..=9, 36)) {
            let entries = seed[..rows * cols].iter().map(|&x| BigInt::from(x)).collect();
            let a = IntegerMatrix::new(rows, cols, entries);
            check_hermite(&a);
        }

        #[test]
        fn smith_matches_minor_gcd_oracle(rows in 1usize..=4, cols in 1usize..=4,
                                          seed in proptest::collection::vec(-9i64..=9, 16)) {
            let entries = seed[..rows * cols].iter().map(|&x| BigInt::from(x)).collect();
            let a = IntegerMatrix::new(rows, cols, entries);
            let sm = smith_normal_form(&a);
            prop_assert_eq!(sm.invariant_factors().to_vec(), invariant_factors_by_minor_gcd(&a));
        }
    }
}
