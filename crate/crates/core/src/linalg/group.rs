use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use super::snf::smith_diagonal;

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    #[serde(with = "crate::bigjson::vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Canonicalizes an arbitrary list of cyclic orders: `Z/1` vanishes and
    /// `Z/0` contributes to the free rank. Factors are recombined into the
    /// divisibility chain.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut free_rank = 0;
        let mut factors = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                factors.push(d);
            }
        }
        AbelianGroup {
            free_rank,
            torsion: invariant_factors(factors),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

/// Rewrites a list of positive cyclic orders as the invariant-factor chain of
/// their direct sum.
fn invariant_factors(mut factors: Vec<BigInt>) -> Vec<BigInt> {
    // Repeatedly replace (a, b) by (gcd, lcm) until the chain divides.
    let n = factors.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (factors[i].clone(), factors[j].clone());
            factors[i] = a.gcd(&b);
            factors[j] = a.lcm(&b);
        }
    }
    factors.retain(|d| !d.is_one());
    factors
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^n / im(m)` for a square `n x n` matrix, read off the Smith diagonal.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    assert!(m.is_square(), "cokernel expects a square matrix");
    AbelianGroup::from_cyclic_orders(smith_diagonal(m))
}
