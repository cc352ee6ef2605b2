use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// Least `lambda > 0` with `m * witness == lambda * b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinScalarSolution {
    #[serde(with = "crate::bigjson::scalar")]
    pub lambda: BigInt,
    #[serde(with = "crate::bigjson::vec")]
    pub witness: Vec<BigInt>,
}

impl MinScalarSolution {
    /// Re-checks `m * witness == lambda * b`.
    pub fn verify(&self, m: &IntMatrix, b: &[BigInt]) -> bool {
        self.lambda > BigInt::zero()
            && m.mul_vec(&self.witness)
                .iter()
                .zip(b)
                .all(|(lhs, bi)| *lhs == &self.lambda * bi)
    }
}

/// Smallest positive `lambda` such that `m x = lambda b` has an integral
/// solution, together with a witness `x`; `None` when no positive multiple of
/// `b` lies in the column lattice of `m`.
///
/// With `X m Y = D`, write `c = X b`. A solution exists iff `d_i | lambda c_i`
/// on the nonzero part of the diagonal and `c_i = 0` wherever `d_i = 0`.
pub fn solve_min_scalar(m: &IntMatrix, b: &[BigInt]) -> Option<MinScalarSolution> {
    assert_eq!(m.rows(), b.len(), "right-hand side has the wrong length");
    let snf = smith_normal_form(m);
    let c = snf.x.mul_vec(b);
    let diag = snf.d.diagonal_entries();

    let mut lambda = BigInt::one();
    for (i, ci) in c.iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_default();
        if di.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            lambda = lambda.lcm(&(&di / di.gcd(ci)));
        }
    }

    let y: Vec<BigInt> = (0..m.cols())
        .map(|j| match diag.get(j) {
            Some(dj) if !dj.is_zero() => &lambda * &c[j] / dj,
            _ => BigInt::zero(),
        })
        .collect();
    let witness = snf.y.mul_vec(&y);
    let solution = MinScalarSolution { lambda, witness };
    debug_assert!(solution.verify(m, b));
    Some(solution)
}
