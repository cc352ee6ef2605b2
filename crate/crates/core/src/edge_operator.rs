//! The non-backtracking edge operator on oriented edges.
//!
//! Oriented edge `i < m` is geometric edge `i` in its stored direction and
//! `m + i` is its reversal. Row `e` of the matrix lists the continuations of
//! `e`: `A[e][f] = 1` iff `t(e) = o(f)` and `f` is not the reversal of `e`.
//! The operator acts on basis vectors by `T(e) = row e`, so on column vectors
//! it is `A^t`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::linalg::IntMatrix;
use crate::multigraph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedEdge {
    pub index: usize,
    pub origin: usize,
    pub terminus: usize,
}

/// Index of the reversed oriented edge, for a graph with `m` geometric edges.
#[inline]
pub fn reversal(i: usize, m: usize) -> usize {
    if i < m {
        i + m
    } else {
        i - m
    }
}

pub fn oriented_edges(g: &Multigraph) -> Vec<OrientedEdge> {
    let forward = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| OrientedEdge {
            index: i,
            origin: u,
            terminus: v,
        });
    let m = g.edge_count();
    let backward = g
        .edges()
        .iter()
        .enumerate()
        .map(move |(i, &(u, v))| OrientedEdge {
            index: m + i,
            origin: v,
            terminus: u,
        });
    forward.chain(backward).collect()
}

/// The `2m x 2m` 0/1 matrix of the edge operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeMatrix {
    m: usize,
    bits: Vec<bool>,
}

impl EdgeMatrix {
    /// Number of oriented edges (`2m`).
    #[inline]
    pub fn size(&self) -> usize {
        2 * self.m
    }

    /// Number of geometric edges.
    #[inline]
    pub fn geometric_edges(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, e: usize, f: usize) -> bool {
        self.bits[e * self.size() + f]
    }

    /// Toggles one entry. Only meant for fault-injection in test harnesses.
    pub fn flip(&mut self, e: usize, f: usize) {
        let n = self.size();
        self.bits[e * n + f] ^= true;
    }

    pub fn row_sum(&self, e: usize) -> usize {
        (0..self.size()).filter(|&f| self.get(e, f)).count()
    }

    pub fn col_sum(&self, f: usize) -> usize {
        (0..self.size()).filter(|&e| self.get(e, f)).count()
    }

    pub fn entry_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.size()).filter(|&e| self.row_sum(e) == 0).collect()
    }

    /// Successors of `e` in the arc graph (`A[e][f] = 1`).
    pub fn successors(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(move |&f| self.get(e, f))
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let n = self.size();
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(self.get(i, j) as u8))
    }

    /// `1 - A`.
    pub fn one_minus(&self) -> IntMatrix {
        let n = self.size();
        IntMatrix::from_fn(n, n, |i, j| {
            let a = BigInt::from(self.get(i, j) as u8);
            if i == j {
                BigInt::one() - a
            } else {
                -a
            }
        })
    }

    /// `1 - A^t`, the matrix of `1 - T` acting on column vectors.
    pub fn one_minus_transpose(&self) -> IntMatrix {
        self.one_minus().transpose()
    }

    /// `1 - uA` as a polynomial matrix.
    pub fn one_minus_u(&self) -> crate::linalg::PolyMatrix {
        use crate::linalg::IntPolynomial;
        crate::linalg::PolyMatrix::from_fn(self.size(), |i, j| {
            let c = if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            let a = if self.get(i, j) {
                -BigInt::one()
            } else {
                BigInt::zero()
            };
            IntPolynomial::new(vec![c, a])
        })
    }

    /// Dense JSON array of 0/1 rows.
    pub fn to_json(&self) -> String {
        let n = self.size();
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) as u8).collect())
            .collect();
        serde_json::to_string(&rows).expect("matrix serialization cannot fail")
    }

    /// Coordinate list: the dimension, then one `row col` line per nonzero.
    pub fn to_coordinate_list(&self) -> String {
        let n = self.size();
        let mut out = format!("{n}\n");
        for i in 0..n {
            for j in self.successors(i) {
                let _ = writeln!(out, "{i} {j}");
            }
        }
        out
    }

    /// Strong connectivity of the arc graph on oriented edges, checked by
    /// forward and backward reachability from edge 0.
    pub fn is_irreducible(&self) -> bool {
        let n = self.size();
        if n == 0 || (n == 1 && !self.get(0, 0)) {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for y in 0..n {
                    let arc = if forward {
                        self.get(x, y)
                    } else {
                        self.get(y, x)
                    };
                    if arc && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// Every row and every column has exactly one 1.
    pub fn is_permutation(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| self.row_sum(i) == 1 && self.col_sum(i) == 1)
    }
}

pub fn edge_matrix(g: &Multigraph) -> EdgeMatrix {
    let m = g.edge_count();
    let oriented = oriented_edges(g);
    let n = 2 * m;
    let mut bits = vec![false; n * n];
    for e in &oriented {
        for f in &oriented {
            if e.terminus == f.origin && f.index != reversal(e.index, m) {
                bits[e.index * n + f.index] = true;
            }
        }
    }
    EdgeMatrix { m, bits }
}

/// Simplicity gate for the classification theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityFlags {
    pub irreducible: bool,
    pub permutation: bool,
    /// `irreducible && !permutation`: the simple-algebra hypothesis holds.
    pub simple: bool,
}

impl SimplicityFlags {
    pub fn of(a: &EdgeMatrix) -> Self {
        let irreducible = a.is_irreducible();
        let permutation = a.is_permutation();
        SimplicityFlags {
            irreducible,
            permutation,
            simple: irreducible && !permutation,
        }
    }
}
