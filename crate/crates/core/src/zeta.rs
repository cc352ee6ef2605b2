//! Exact checks relating the edge operator to the Ihara zeta function:
//! `det(1 - uT) = (1 - u^2)^(g-1) det(I - u A_V + u^2 (D - I))`.
//!
//! `A_V` is the vertex adjacency matrix (a loop adds 2 on the diagonal) and
//! `D` is the valence diagonal (a loop counts 2).

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::edge_operator::edge_matrix;
use crate::error::{Error, Result};
use crate::linalg::{poly_matrix_det, IntPolynomial, PolyMatrix};
use crate::multigraph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub g: usize,
    /// `det(1 - uT)`, coefficients lowest degree first.
    pub edge_poly: IntPolynomial,
    /// `(1 - u^2)^(g-1) det(I - u A_V + u^2 Q)`.
    pub vertex_poly: IntPolynomial,
    pub identity_holds: bool,
    pub ord_at_one: usize,
}

/// `det(I - uA)` for the edge matrix.
pub fn edge_charpoly(g: &Multigraph) -> IntPolynomial {
    poly_matrix_det(&edge_matrix(g).one_minus_u())
}

/// `det(I - u A_V + u^2 Q)` with `Q = D - I`.
pub fn vertex_determinant(g: &Multigraph) -> IntPolynomial {
    let n = g.vertex_count();
    let mut adj = vec![0i64; n * n];
    for &(u, v) in g.edges() {
        if u == v {
            adj[u * n + u] += 2;
        } else {
            adj[u * n + v] += 1;
            adj[v * n + u] += 1;
        }
    }
    let deg = g.valences();
    let m = PolyMatrix::from_fn(n, |i, j| {
        let c0 = (i == j) as i64;
        let c2 = if i == j { deg[i] as i64 - 1 } else { 0 };
        IntPolynomial::from_i64(&[c0, -adj[i * n + j], c2])
    });
    poly_matrix_det(&m)
}

/// Right-hand side of the three-term identity. Trees are rejected because
/// the prefactor would be `(1 - u^2)^(-1)`.
pub fn ihara_rhs(g: &Multigraph) -> Result<IntPolynomial> {
    let genus = g.betti_number()?;
    if genus == 0 {
        return Err(Error::Domain(
            "g ≥ 1 required (graph is a tree; the prefactor has negative exponent)".into(),
        ));
    }
    let prefactor = IntPolynomial::from_i64(&[1, 0, -1]).pow(genus as u32 - 1);
    Ok(&prefactor * &vertex_determinant(g))
}

pub fn verify_bass_identity(g: &Multigraph) -> Result<bool> {
    let rhs = ihara_rhs(g)?;
    Ok(edge_charpoly(g) == rhs)
}

/// Largest `k` with `(1 - u)^k` dividing `p`.
pub fn vanishing_order_at_one(p: &IntPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain(
            "vanishing order of the zero polynomial".into(),
        ));
    }
    let one = BigInt::from(1);
    let mut k = 0;
    let mut q = p.clone();
    while let Some(next) = q.div_linear(&one) {
        q = next;
        k += 1;
    }
    Ok(k)
}

pub fn zeta_report(g: &Multigraph) -> Result<ZetaReport> {
    let genus = g.betti_number()?;
    let vertex_poly = ihara_rhs(g)?;
    let edge_poly = edge_charpoly(g);
    debug_assert!(!edge_poly.coeff(0).is_zero());
    Ok(ZetaReport {
        g: genus,
        ord_at_one: vanishing_order_at_one(&edge_poly)?,
        identity_holds: edge_poly == vertex_poly,
        edge_poly,
        vertex_poly,
    })
}
