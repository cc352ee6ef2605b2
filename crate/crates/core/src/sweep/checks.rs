//! Per-graph invariant checks. Each check reads the edge matrix from the
//! [`Subject`] rather than rebuilding it, so a corrupted matrix is caught.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::edge_operator::{edge_matrix, EdgeMatrix};
use crate::error::Result;
use crate::ktheory::{
    boundary_algebra_compatible, contraction_reduce, expected_k0, expected_smith_diagonal,
    k0_of_matrix, k1_of_matrix, kernel_avoids_ends_of, phi_image_equals_kernel_of,
    unit_order_closed_form, unit_order_of_matrix,
};
use crate::linalg::{poly_matrix_det, smith_diagonal, IntMatrix};
use crate::multigraph::Multigraph;
use crate::zeta::{ihara_rhs, vanishing_order_at_one};

/// A graph together with the edge matrix the checks should use.
#[derive(Clone, Debug)]
pub struct Subject {
    pub graph: Multigraph,
    pub genus: usize,
    pub a: EdgeMatrix,
}

impl Subject {
    pub fn new(graph: Multigraph) -> Result<Self> {
        let genus = graph.betti_number()?;
        let a = edge_matrix(&graph);
        Ok(Subject { graph, genus, a })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    /// The check does not apply to this graph (e.g. needs `g >= 2`).
    Skip,
}

pub type Check = fn(&Subject) -> CheckOutcome;

/// Every check, in reporting order.
pub const CHECKS: &[(&str, Check)] = &[
    ("multigraph", check_multigraph),
    ("edge_operator", check_edge_operator),
    ("snf_theorem", check_snf),
    ("k_theory", check_k_theory),
    ("cycle_space", check_cycle_space),
    ("unit_order", check_unit_order),
    ("contraction_claim", check_contraction),
    ("transcript", check_transcript),
    ("ihara", check_ihara),
    ("boundary", check_boundary),
];

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> CheckOutcome {
    if ok {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail(detail())
    }
}

/// Runs `f`, turning an `Err` into a failure.
fn guard(f: impl FnOnce() -> Result<CheckOutcome>) -> CheckOutcome {
    f().unwrap_or_else(|e| CheckOutcome::Fail(e.to_string()))
}

fn check_multigraph(s: &Subject) -> CheckOutcome {
    guard(|| {
        let g = &s.graph;
        if g.betti_number()? + g.vertex_count() != g.edge_count() + 1 {
            return Ok(CheckOutcome::Fail("Betti number is not m - n + 1".into()));
        }
        let tree = g.spanning_tree()?;
        if tree.len() + 1 != g.vertex_count() {
            return Ok(CheckOutcome::Fail(format!(
                "spanning tree has {} edges",
                tree.len()
            )));
        }
        let basis = g.cycle_basis()?;
        if basis.len() != s.genus {
            return Ok(CheckOutcome::Fail(format!(
                "cycle basis has {} vectors",
                basis.len()
            )));
        }
        for c in &basis {
            g.check_cycle(c)?;
        }
        let ends = g.classify_end_edges();
        Ok(ensure(ends.iter().all(|&e| !g.is_loop(e)), || {
            "a loop was classified as an end edge".into()
        }))
    })
}

fn check_edge_operator(s: &Subject) -> CheckOutcome {
    let g = &s.graph;
    let m = g.edge_count();
    let deg = g.valences();
    // Row e counts the continuations at t(e): every oriented edge leaving
    // t(e) except the reversal of e.
    for e in 0..2 * m {
        let (u, v) = g.edge(e % m);
        let t = if e < m { v } else { u };
        if s.a.row_sum(e) + 1 != deg[t] {
            return CheckOutcome::Fail(format!(
                "row {e} has {} entries but t(e) has valence {}",
                s.a.row_sum(e),
                deg[t]
            ));
        }
    }
    let expected: usize = deg.iter().map(|&d| d * (d - 1)).sum();
    ensure(s.a.entry_count() == expected, || {
        format!("{} entries, expected {expected}", s.a.entry_count())
    })
}

fn check_snf(s: &Subject) -> CheckOutcome {
    let got = smith_diagonal(&s.a.one_minus());
    let want = expected_smith_diagonal(s.graph.edge_count(), s.genus);
    ensure(got == want, || {
        format!("Smith diagonal {got:?}, expected {want:?}")
    })
}

fn check_k_theory(s: &Subject) -> CheckOutcome {
    guard(|| {
        let k0 = k0_of_matrix(&s.a)?;
        if k0 != expected_k0(s.genus) {
            return Ok(CheckOutcome::Fail(format!("K0 = {k0} for g = {}", s.genus)));
        }
        let rank = k1_of_matrix(&s.a).rank;
        let want = if s.genus >= 2 { s.genus } else { 2 };
        Ok(ensure(rank == want, || {
            format!("K1 rank {rank}, expected {want}")
        }))
    })
}

fn check_cycle_space(s: &Subject) -> CheckOutcome {
    if s.genus < 2 {
        return CheckOutcome::Skip;
    }
    guard(|| {
        if !phi_image_equals_kernel_of(&s.graph, &s.a)? {
            return Ok(CheckOutcome::Fail("φ(Z1) differs from ker(1 - T)".into()));
        }
        Ok(ensure(kernel_avoids_ends_of(&s.graph, &s.a), || {
            "a kernel vector is nonzero on an end edge".into()
        }))
    })
}

fn check_unit_order(s: &Subject) -> CheckOutcome {
    let sol = unit_order_of_matrix(&s.a);
    if s.genus < 2 {
        return ensure(sol.is_none(), || {
            "g = 1 but the unit class has finite order".into()
        });
    }
    let Some(sol) = sol else {
        return CheckOutcome::Fail("unit class has infinite order".into());
    };
    let ones = vec![BigInt::one(); s.a.size()];
    if !sol.verify(&s.a.one_minus(), &ones) {
        return CheckOutcome::Fail("witness does not satisfy (1 - A) x = λ1".into());
    }
    let by_v = unit_order_closed_form(s.genus, s.graph.vertex_count());
    let by_e = unit_order_closed_form(s.genus, s.graph.edge_count());
    let lambda = sol.lambda.to_u64();
    ensure(lambda == Some(by_v) && by_v == by_e, || {
        format!(
            "solver {} vs (g-1)/gcd with |V|: {by_v}, with |E|: {by_e}",
            sol.lambda
        )
    })
}

fn check_contraction(s: &Subject) -> CheckOutcome {
    guard(|| {
        let whole = smith_diagonal(&s.a.one_minus());
        for e in s.graph.non_loop_edges() {
            let smaller = edge_matrix(&s.graph.contract_edge(e)?).one_minus();
            let split = smith_diagonal(&IntMatrix::identity(2).direct_sum(&smaller));
            if split != whole {
                return Ok(CheckOutcome::Fail(format!(
                    "contracting edge {e}: {whole:?} vs 1_2 ⊕ {split:?}"
                )));
            }
        }
        Ok(CheckOutcome::Pass)
    })
}

fn check_transcript(s: &Subject) -> CheckOutcome {
    if s.genus < 2 {
        return CheckOutcome::Skip;
    }
    guard(|| {
        let t = contraction_reduce(&s.graph)?;
        let reduced = t.replay(&s.a.one_minus());
        if !reduced.is_diagonal() || reduced.diagonal_entries() != t.diagonal {
            return Ok(CheckOutcome::Fail(
                "replaying the transcript does not diagonalize 1 - A".into(),
            ));
        }
        let n = t.unit_image.len();
        let g = s.genus;
        let tail_zero = t.unit_image[n - g..].iter().all(Zero::is_zero);
        let want = BigInt::from(g * s.graph.vertex_count());
        Ok(ensure(tail_zero && t.unit_image[n - g - 1] == want, || {
            format!(
                "unit image ends {:?}, expected {want} then {g} zeros",
                &t.unit_image[n - g - 1..]
            )
        }))
    })
}

fn check_ihara(s: &Subject) -> CheckOutcome {
    guard(|| {
        let lhs = poly_matrix_det(&s.a.one_minus_u());
        let rhs = ihara_rhs(&s.graph)?;
        if lhs != rhs {
            return Ok(CheckOutcome::Fail(format!(
                "det(1 - uT) = {lhs} but the vertex side is {rhs}"
            )));
        }
        let ord = vanishing_order_at_one(&lhs)?;
        let want = if s.genus >= 2 { s.genus } else { 2 };
        let n = s.a.size();
        let corank = n - s.a.one_minus_transpose().rank();
        if ord != want || ord != corank {
            return Ok(CheckOutcome::Fail(format!(
                "vanishing order {ord}, expected {want}, 2m - rank = {corank}"
            )));
        }
        // Top coefficient is det(-A); the degree drops only if A is singular.
        let top = s.a.to_int_matrix().scaled(&-BigInt::one()).determinant();
        if lhs.coeff(n) != top {
            return Ok(CheckOutcome::Fail(format!(
                "u^{n} coefficient is not det(-A) = {top}"
            )));
        }
        let zero_rows = s.a.zero_rows().len();
        let degree = lhs.degree().unwrap_or(0);
        let degree_ok = if zero_rows == 0 {
            degree == n
        } else {
            degree <= n - zero_rows
        };
        Ok(ensure(degree_ok, || {
            format!("degree {degree} with {zero_rows} zero rows out of {n}")
        }))
    })
}

fn check_boundary(s: &Subject) -> CheckOutcome {
    if s.genus < 2 {
        return CheckOutcome::Skip;
    }
    guard(|| {
        let compatible = boundary_algebra_compatible(&s.graph)?;
        let full =
            unit_order_of_matrix(&s.a).is_some_and(|sol| sol.lambda == BigInt::from(s.genus - 1));
        Ok(ensure(compatible == full, || {
            format!("compatible = {compatible} but unit order = g - 1 is {full}")
        }))
    })
}
