//! Exact integer-point feasibility for systems mixing linear equalities,
//! strict inequalities, and lower bounds over a lattice.
//!
//! Strategy: equalities are eliminated first through the integer solution
//! lattice, strict rows are tightened to `>= rhs + 1` (exact for integer
//! forms), and the remaining inequality system is decided by recursion:
//! either a recession direction improves every row at once and a rounded
//! rational point can be pushed into the feasible set, or some row is
//! bounded above on the relaxation and its finitely many integer values
//! are branched on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{self, AffineLattice, IntegerMatrix};

use super::fm::{self, Ineq, Sup};

/// A feasibility query over `Z^vars`: find `x` with
/// `row . x = rhs` for every equality row,
/// `row . x > rhs` for every strict row, and
/// `row . x >= rhs` for every nonneg row.
#[derive(Clone, Debug, Default)]
pub struct FeasibilityQuery {
    vars: usize,
    equalities: Vec<(Vec<BigInt>, BigInt)>,
    stricts: Vec<(Vec<BigInt>, BigInt)>,
    nonnegs: Vec<(Vec<BigInt>, BigInt)>,
}

impl FeasibilityQuery {
    pub fn new(vars: usize) -> Self {
        FeasibilityQuery {
            vars,
            ..Default::default()
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_equality(&mut self, row: Vec<BigInt>, rhs: BigInt) {
        assert_eq!(row.len(), self.vars, "equality row length mismatch");
        self.equalities.push((row, rhs));
    }

    /// `row . x > rhs`, tightened internally to `row . x >= rhs + 1`.
    pub fn add_strict(&mut self, row: Vec<BigInt>, rhs: BigInt) {
        assert_eq!(row.len(), self.vars, "strict row length mismatch");
        self.stricts.push((row, rhs));
    }

    pub fn add_nonneg(&mut self, row: Vec<BigInt>, rhs: BigInt) {
        assert_eq!(row.len(), self.vars, "nonneg row length mismatch");
        self.nonnegs.push((row, rhs));
    }

    /// A witness satisfying every constraint, or `None` when no integer
    /// point exists. Deterministic: identical queries yield identical
    /// witnesses.
    pub fn integer_feasible(&self) -> Option<Vec<BigInt>> {
        let (rows, rhs): (Vec<Vec<BigInt>>, Vec<BigInt>) = self
            .stricts
            .iter()
            .map(|(r, b)| (r.clone(), b + BigInt::one()))
            .chain(self.nonnegs.iter().map(|(r, b)| (r.clone(), b.clone())))
            .unzip();

        if self.equalities.is_empty() {
            return feasible_integer_system(self.vars, &rows, &rhs);
        }

        let eq_matrix =
            IntegerMatrix::from_rows(self.equalities.iter().map(|(r, _)| r.clone()).collect());
        let eq_rhs: Vec<BigInt> = self.equalities.iter().map(|(_, b)| b.clone()).collect();
        match lattice::solve_integer_system(&eq_matrix, &eq_rhs) {
            AffineLattice::Empty => None,
            AffineLattice::Points { base_point, basis } => {
                let (sub_rows, sub_rhs) = substitute(&rows, &rhs, &base_point, &basis);
                let y = feasible_integer_system(basis.len(), &sub_rows, &sub_rhs)?;
                Some(apply_parametrization(&base_point, &basis, &y))
            }
        }
    }
}

/// Rewrites `row . x >= rhs` under `x = base + basis * y`.
fn substitute(
    rows: &[Vec<BigInt>],
    rhs: &[BigInt],
    base: &[BigInt],
    basis: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut out_rows = Vec::with_capacity(rows.len());
    let mut out_rhs = Vec::with_capacity(rows.len());
    for (row, b) in rows.iter().zip(rhs) {
        let new_row: Vec<BigInt> = basis.iter().map(|col| lattice::dot(row, col)).collect();
        out_rows.push(new_row);
        out_rhs.push(b - lattice::dot(row, base));
    }
    (out_rows, out_rhs)
}

fn apply_parametrization(base: &[BigInt], basis: &[Vec<BigInt>], y: &[BigInt]) -> Vec<BigInt> {
    let mut x = base.to_vec();
    for (c, col) in y.iter().zip(basis) {
        for (xi, vi) in x.iter_mut().zip(col) {
            *xi += c * vi;
        }
    }
    x
}

/// Decides `rows . x >= rhs` over `Z^nvars`.
fn feasible_integer_system(
    nvars: usize,
    rows: &[Vec<BigInt>],
    rhs: &[BigInt],
) -> Option<Vec<BigInt>> {
    // Constant rows are decided directly.
    let mut live_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut live_rhs: Vec<BigInt> = Vec::new();
    for (row, b) in rows.iter().zip(rhs) {
        if row.iter().all(Zero::is_zero) {
            if b.is_positive() {
                return None;
            }
        } else {
            live_rows.push(row.clone());
            live_rhs.push(b.clone());
        }
    }
    if nvars == 0 || live_rows.is_empty() {
        return Some(vec![BigInt::zero(); nvars]);
    }

    let cons: Vec<Ineq> = live_rows
        .iter()
        .zip(&live_rhs)
        .map(|(r, b)| Ineq::from_int(r, b))
        .collect();
    if !fm::feasible(nvars, &cons) {
        return None;
    }

    if let Some(u) = full_recession_direction(nvars, &live_rows) {
        // Round any rational point and push it along u until every row
        // clears its bound.
        let sample = fm::sample(nvars, &cons).expect("feasible system must admit a sample");
        let p: Vec<BigInt> = sample.iter().map(|x| x.floor().to_integer()).collect();
        let shift = live_rows
            .iter()
            .zip(&live_rhs)
            .map(|(row, b)| b - lattice::dot(row, &p))
            .max()
            .unwrap_or_else(BigInt::zero)
            .max(BigInt::zero());
        let witness: Vec<BigInt> = p.iter().zip(&u).map(|(pi, ui)| pi + &shift * ui).collect();
        debug_assert!(live_rows
            .iter()
            .zip(&live_rhs)
            .all(|(row, b)| lattice::dot(row, &witness) >= *b));
        return Some(witness);
    }

    // Some row cannot be improved along the recession cone; its value is
    // then bounded on the relaxation and can be branched on exactly.
    let j = (0..live_rows.len())
        .find(|&i| !row_improvable(nvars, &live_rows, i))
        .expect("no full recession direction implies an unimprovable row");
    let upper = match fm::sup(nvars, &cons, &live_rows[j]) {
        Sup::Finite(b) => b.floor().to_integer(),
        Sup::Empty => return None,
        Sup::Unbounded => unreachable!("unimprovable row is bounded above on the relaxation"),
    };

    let mut v = live_rhs[j].clone();
    while v <= upper {
        let eq = IntegerMatrix::from_rows(vec![live_rows[j].clone()]);
        if let AffineLattice::Points { base_point, basis } =
            lattice::solve_integer_system(&eq, &[v.clone()])
        {
            let (sub_rows, sub_rhs) = substitute(&live_rows, &live_rhs, &base_point, &basis);
            if let Some(y) = feasible_integer_system(basis.len(), &sub_rows, &sub_rhs) {
                return Some(apply_parametrization(&base_point, &basis, &y));
            }
        }
        v += BigInt::one();
    }
    None
}

/// An integer `u` with `rows . u >= 1` componentwise, if one exists.
fn full_recession_direction(nvars: usize, rows: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let one = BigInt::one();
    let cons: Vec<Ineq> = rows.iter().map(|r| Ineq::from_int(r, &one)).collect();
    let sample = fm::sample(nvars, &cons)?;
    Some(scale_to_integer(&sample))
}

/// Whether some recession vector (`rows . u >= 0`) strictly improves row
/// `i`.
fn row_improvable(nvars: usize, rows: &[Vec<BigInt>], i: usize) -> bool {
    let mut cons: Vec<Ineq> = rows
        .iter()
        .map(|r| Ineq::from_int(r, &BigInt::zero()))
        .collect();
    cons.push(Ineq::from_int(&rows[i], &BigInt::one()));
    fm::feasible(nvars, &cons)
}

/// Clears denominators; both the input and the output satisfy the same
/// homogeneous nonnegativity constraints.
fn scale_to_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}
