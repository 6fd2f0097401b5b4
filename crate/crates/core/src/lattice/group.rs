use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntegerMatrix, LatticeError};

/// A finitely generated abelian group in canonical form: a free rank plus
/// torsion invariants `>= 2` in a divisibility chain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion_invariants: Vec<BigInt>,
}

impl FGAbelianGroup {
    /// Canonicalizes on construction: unit factors are dropped and the
    /// divisibility chain is checked.
    pub fn new(free_rank: usize, torsion_invariants: Vec<BigInt>) -> Self {
        let torsion: Vec<BigInt> = torsion_invariants
            .into_iter()
            .filter(|t| !t.is_one())
            .collect();
        for t in &torsion {
            assert!(*t >= BigInt::from(2), "torsion invariant must be >= 2");
        }
        for w in torsion.windows(2) {
            assert!(
                w[1].mod_floor(&w[0]).is_zero(),
                "torsion invariants must form a divisibility chain"
            );
        }
        FGAbelianGroup {
            free_rank,
            torsion_invariants: torsion,
        }
    }

    pub fn trivial() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_invariants(&self) -> &[BigInt] {
        &self.torsion_invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_invariants.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_invariants.is_empty()
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion_invariants {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGAbelianGroup({self})")
    }
}

pub fn cokernel(a: &IntegerMatrix) -> FGAbelianGroup {
    let smith = smith_normal_form(a);
    let nonzero = smith.nonzero_count();
    let torsion = smith.invariant_factors()[..nonzero].to_vec();
    FGAbelianGroup::new(a.rows() - nonzero, torsion)
}

/// The class of `v` is torsion in `coker(a)` iff its coordinates over the
/// free part vanish, read off in Smith coordinates `w = u * v`.
pub fn is_torsion_class(a: &IntegerMatrix, v: &[BigInt]) -> Result<bool, LatticeError> {
    Ok(torsion_order(a, v)?.is_some())
}

/// Order of the class of `v` in the free-quotient sense: the least
/// `k >= 1` with `k * v` in the image of `a`, or `None` if no multiple is.
pub fn torsion_order(a: &IntegerMatrix, v: &[BigInt]) -> Result<Option<BigInt>, LatticeError> {
    if v.len() != a.rows() {
        return Err(LatticeError::DimensionMismatch {
            expected: a.rows(),
            got: v.len(),
        });
    }
    let smith = smith_normal_form(a);
    let w = smith.u().mul_vec(v);
    let nonzero = smith.nonzero_count();
    if w[nonzero..].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let mut order = BigInt::one();
    for (c, s) in w[..nonzero].iter().zip(smith.invariant_factors()) {
        // need k*c ≡ 0 (mod s): k must be a multiple of s / gcd(s, c)
        let need = s / s.gcd(c);
        order = order.lcm(&need);
    }
    Ok(Some(order))
}
