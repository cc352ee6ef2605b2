use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use super::ops::{self, ElementaryOp};

/// `x * m * y == d` with `x`, `y` unimodular and `d` in Smith normal form.
#[derive(Clone, Debug, Serialize)]
pub struct SmithDecomposition {
    pub x: IntMatrix,
    pub d: IntMatrix,
    pub y: IntMatrix,
    /// Every elementary operation applied, in order.
    #[serde(skip)]
    pub log: Vec<ElementaryOp>,
}

impl SmithDecomposition {
    /// The diagonal `d_1 | d_2 | ... | d_r, 0, ..., 0`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal_entries()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Working state that mirrors every operation on `d` into the transforms.
struct Reduction {
    d: IntMatrix,
    x: IntMatrix,
    y: IntMatrix,
    log: Vec<ElementaryOp>,
}

impl Reduction {
    fn apply(&mut self, op: ElementaryOp) {
        self.d.apply(&op);
        if op.is_row_op() {
            self.x.apply(&op);
        } else {
            self.y.apply(&op);
        }
        self.log.push(op);
    }

    fn apply_opt(&mut self, op: Option<ElementaryOp>) {
        if let Some(op) = op {
            self.apply(op);
        }
    }

    /// Nonzero entry of least magnitude in the trailing block starting at `t`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let v = &self.d[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        if i != t {
            self.apply(ElementaryOp::SwapRows(t, i));
        }
        if j != t {
            self.apply(ElementaryOp::SwapCols(t, j));
        }
    }

    /// Clears row and column `t` with the pivot at `(t, t)`, then enforces
    /// that the pivot divides every remaining entry.
    fn reduce_pivot(&mut self, t: usize) {
        let (rows, cols) = (self.d.rows(), self.d.cols());
        loop {
            for i in t + 1..rows {
                let q = &self.d[(i, t)] / &self.d[(t, t)];
                self.apply_opt(ops::add_row(t, i, -q));
            }
            for j in t + 1..cols {
                let q = &self.d[(t, j)] / &self.d[(t, t)];
                self.apply_opt(ops::add_col(t, j, -q));
            }

            let leftover = (t + 1..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&p| !self.d[p].is_zero())
                .min_by_key(|&p| self.d[p].abs());
            if let Some(p) = leftover {
                self.move_to_pivot(t, p);
                continue;
            }

            let pivot = self.d[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !self.d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => self.apply(ElementaryOp::AddRow {
                    src: i,
                    dst: t,
                    factor: BigInt::from(1),
                }),
                None => break,
            }
        }
        if self.d[(t, t)].is_negative() {
            self.apply(ElementaryOp::NegateRow(t));
        }
    }
}

/// Smith normal form with unimodular witnesses, pivoting on the entry of least
/// magnitude.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut r = Reduction {
        d: m.clone(),
        x: IntMatrix::identity(m.rows()),
        y: IntMatrix::identity(m.cols()),
        log: Vec::new(),
    };
    for t in 0..m.rows().min(m.cols()) {
        let Some(p) = r.min_entry(t) else { break };
        r.move_to_pivot(t, p);
        r.reduce_pivot(t);
    }
    SmithDecomposition {
        x: r.x,
        d: r.d,
        y: r.y,
        log: r.log,
    }
}

/// The invariant factors of `m` (the Smith diagonal), without transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariant_factors()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.x * m) * &s.y, s.d);
        assert!(s.x.determinant().abs().is_one());
        assert!(s.y.determinant().abs().is_one());
        assert!(s.d.is_diagonal());
        let diag = s.invariant_factors();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        let mut replay = m.clone();
        for op in &s.log {
            replay.apply(op);
        }
        assert_eq!(replay, s.d);
        s
    }

    #[test]
    fn identity_is_its_own_form() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is not in normal form; the answer is diag(1, 6).
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn rectangular_and_zero() {
        let s = check(&IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 4, 6]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::zero()]);
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(s.rank(), 0);
    }

    proptest! {
        #[test]
        fn decomposition_is_valid(entries in prop::collection::vec(-6i64..=6, 16)) {
            let m = IntMatrix::from_fn(4, 4, |i, j| BigInt::from(entries[4 * i + j]));
            let s = check(&m);
            // d_1 is the gcd of all entries; the product is |det| when nonsingular.
            let g = entries.iter().fold(BigInt::zero(), |g, &e| g.gcd(&BigInt::from(e)));
            prop_assert_eq!(s.invariant_factors()[0].clone(), g);
            let det = m.determinant();
            let prod: BigInt = s.invariant_factors().iter().product();
            prop_assert_eq!(prod, det.abs());
        }
    }
}
