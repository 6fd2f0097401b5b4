//! Fourier-Motzkin elimination over exact rationals.
//!
//! Small decision kernel for linear relaxations: feasibility, a sample
//! point, and suprema of linear functionals over systems of non-strict
//! inequalities `coeffs . x >= rhs`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ineq {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Ineq {
    pub fn from_int(coeffs: &[BigInt], rhs: &BigInt) -> Self {
        Ineq {
            coeffs: coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
            rhs: BigRational::from_integer(rhs.clone()),
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scale so the first nonzero coefficient (or the rhs) has absolute
    /// value one; used only to deduplicate.
    fn canonical(&self) -> Ineq {
        let scale = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .or(if self.rhs.is_zero() {
                None
            } else {
                Some(&self.rhs)
            })
            .map(|c| c.abs());
        match scale {
            None => self.clone(),
            Some(s) => Ineq {
                coeffs: self.coeffs.iter().map(|c| c / &s).collect(),
                rhs: &self.rhs / &s,
            },
        }
    }
}

pub enum Sup {
    Empty,
    Finite(BigRational),
    Unbounded,
}

/// One elimination step. Returns `None` as soon as a contradictory
/// constant row appears.
fn eliminate(cons: &[Ineq], var: usize) -> Option<Vec<Ineq>> {
    let mut lower = Vec::new(); // positive coefficient on var
    let mut upper = Vec::new(); // negative coefficient
    let mut rest = Vec::new();
    for c in cons {
        let a = &c.coeffs[var];
        if a.is_zero() {
            if c.is_constant() && c.rhs.is_positive() {
                return None;
            }
            if !c.is_constant() || c.rhs.is_positive() {
                rest.push(c.clone());
            }
        } else if a.is_positive() {
            lower.push(c);
        } else {
            upper.push(c);
        }
    }
    for lo in &lower {
        for up in &upper {
            let a = &lo.coeffs[var];
            let b = up.coeffs[var].abs();
            let coeffs: Vec<BigRational> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(l, u)| l * &b + u * a)
                .collect();
            let rhs = &lo.rhs * &b + &up.rhs * a;
            let combined = Ineq { coeffs, rhs };
            if combined.is_constant() {
                if combined.rhs.is_positive() {
                    return None;
                }
            } else {
                rest.push(combined);
            }
        }
    }
    // prune duplicates to keep growth in check
    let mut canon: Vec<(Ineq, Ineq)> = rest.into_iter().map(|c| (c.canonical(), c)).collect();
    canon.sort_by(|a, b| a.0.cmp(&b.0));
    canon.dedup_by(|a, b| a.0 == b.0);
    Some(canon.into_iter().map(|(_, c)| c).collect())
}

/// Systems after eliminating variables `nvars-1, nvars-2, ..` in turn;
/// `stages[k]` constrains variables `0..k` only. `None` when infeasible.
fn stages(nvars: usize, cons: &[Ineq]) -> Option<Vec<Vec<Ineq>>> {
    let mut out = vec![Vec::new(); nvars + 1];
    let mut current = cons.to_vec();
    for c in &current {
        if c.is_constant() && c.rhs.is_positive() {
            return None;
        }
    }
    out[nvars] = current.clone();
    for var in (0..nvars).rev() {
        current = eliminate(&current, var)?;
        out[var] = current.clone();
    }
    Some(out)
}

pub fn feasible(nvars: usize, cons: &[Ineq]) -> bool {
    stages(nvars, cons).is_some()
}

/// Bounds implied for `x[var]` by constraints whose higher variables have
/// been eliminated, once `x[0..var]` is fixed to `point`.
fn bounds_for(
    cons: &[Ineq],
    var: usize,
    point: &[BigRational],
) -> (Option<BigRational>, Option<BigRational>) {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for c in cons {
        let a = &c.coeffs[var];
        if a.is_zero() {
            continue;
        }
        let fixed: BigRational = c.coeffs[..var]
            .iter()
            .zip(point)
            .map(|(ci, xi)| ci * xi)
            .sum();
        let b = (&c.rhs - fixed) / a;
        if a.is_positive() {
            lo = Some(match lo {
                Some(l) if l >= b => l,
                _ => b,
            });
        } else {
            hi = Some(match hi {
                Some(h) if h <= b => h,
                _ => b,
            });
        }
    }
    (lo, hi)
}

/// A deterministic point of the closed interval, preferring an integer.
fn pick(lo: &Option<BigRational>, hi: &Option<BigRational>) -> BigRational {
    match (lo, hi) {
        (None, None) => BigRational::zero(),
        (Some(l), None) => l.ceil(),
        (None, Some(h)) => h.floor(),
        (Some(l), Some(h)) => {
            let c = l.ceil();
            if &c <= h {
                c
            } else {
                l.clone()
            }
        }
    }
}

/// A rational point satisfying all constraints, found by back
/// substitution through the elimination stages.
pub fn sample(nvars: usize, cons: &[Ineq]) -> Option<Vec<BigRational>> {
    let stages = stages(nvars, cons)?;
    let mut point: Vec<BigRational> = Vec::with_capacity(nvars);
    for var in 0..nvars {
        let (lo, hi) = bounds_for(&stages[var + 1], var, &point);
        point.push(pick(&lo, &hi));
    }
    Some(point)
}

/// Exact supremum of `objective . x` over the solution set.
pub fn sup(nvars: usize, cons: &[Ineq], objective: &[BigInt]) -> Sup {
    // encode t = objective . x with an extra trailing variable
    let mut extended: Vec<Ineq> = cons
        .iter()
        .map(|c| {
            let mut coeffs = c.coeffs.clone();
            coeffs.push(BigRational::zero());
            Ineq {
                coeffs,
                rhs: c.rhs.clone(),
            }
        })
        .collect();
    let mut up: Vec<BigRational> = objective
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    up.push(-BigRational::one());
    let lo: Vec<BigRational> = up.iter().map(|c| -c).collect();
    extended.push(Ineq {
        coeffs: up,
        rhs: BigRational::zero(),
    }); // objective . x - t >= 0
    extended.push(Ineq {
        coeffs: lo,
        rhs: BigRational::zero(),
    }); // t - objective . x >= 0

    // eliminate x[0..nvars], keep t
    let mut current = extended;
    for var in 0..nvars {
        match eliminate(&current, var) {
            Some(next) => current = next,
            None => return Sup::Empty,
        }
    }
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for c in &current {
        let a = &c.coeffs[nvars];
        if a.is_negative() {
            // a*t >= rhs with a < 0  =>  t <= rhs/a
            let b = &c.rhs / a;
            hi = Some(match hi {
                Some(h) if h <= b => h,
                _ => b,
            });
        } else if a.is_positive() {
            let b = &c.rhs / a;
            lo = Some(match lo {
                Some(l) if l >= b => l,
                _ => b,
            });
        } else if c.rhs.is_positive() {
            return Sup::Empty;
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return Sup::Empty;
        }
    }
    match hi {
        Some(b) => Sup::Finite(b),
        None => Sup::Unbounded,
    }
}
