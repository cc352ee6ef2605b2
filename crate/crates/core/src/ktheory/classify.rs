use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::edge_operator::{edge_matrix, SimplicityFlags};
use crate::error::{Error, Result};
use crate::linalg::AbelianGroup;
use crate::multigraph::Multigraph;

use super::{
    check_unit_order, expected_k0, genus_at_least, k0_of_matrix, unit_class, unit_order_of_matrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Equivalent,
    NotEquivalent,
    Isomorphic,
    NotIsomorphic,
    Indeterminate,
}

/// Invariants of one side of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEvidence {
    pub g: usize,
    pub vertices: usize,
    pub k0: AbelianGroup,
    #[serde(with = "crate::bigjson::option")]
    pub unit_order: Option<BigInt>,
    pub simplicity: SimplicityFlags,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub mode: &'static str,
    pub outcome: Outcome,
    /// Set when the simple-algebra hypothesis fails on either side.
    pub caveat: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub first: GraphEvidence,
    pub second: GraphEvidence,
}

fn evidence(g: &Multigraph) -> Result<GraphEvidence> {
    let genus = genus_at_least(g, 2)?;
    let a = edge_matrix(g);
    let k0 = k0_of_matrix(&a)?;
    if k0 != expected_k0(genus) {
        return Err(Error::TheoremViolation(format!(
            "K0 = {k0} but the graph has g = {genus}"
        )));
    }
    let solution = unit_order_of_matrix(&a);
    check_unit_order(genus, g.vertex_count(), solution.as_ref())?;
    Ok(GraphEvidence {
        g: genus,
        vertices: g.vertex_count(),
        k0,
        unit_order: solution.map(|s| s.lambda),
        simplicity: SimplicityFlags::of(&a),
    })
}

fn caveat_reason(first: &GraphEvidence, second: &GraphEvidence) -> Option<String> {
    let describe = |name: &str, e: &GraphEvidence| {
        (!e.simplicity.simple).then(|| {
            let why = if !e.simplicity.irreducible {
                "edge matrix is not irreducible"
            } else {
                "edge matrix is a permutation"
            };
            format!("{name} graph: {why}")
        })
    };
    let parts: Vec<String> = [describe("first", first), describe("second", second)]
        .into_iter()
        .flatten()
        .collect();
    (!parts.is_empty()).then(|| parts.join("; "))
}

/// Stable isomorphism (equivalently Morita equivalence): decided by `K0`,
/// which for `g >= 2` depends only on the Betti number.
pub fn classify_stable(g1: &Multigraph, g2: &Multigraph) -> Result<Verdict> {
    let (first, second) = (evidence(g1)?, evidence(g2)?);
    let same = first.g == second.g;
    if same != (first.k0 == second.k0) {
        return Err(Error::TheoremViolation(
            "K0 equality disagrees with Betti number equality".into(),
        ));
    }
    let reason = caveat_reason(&first, &second);
    Ok(Verdict {
        mode: "stable",
        outcome: if same {
            Outcome::Equivalent
        } else {
            Outcome::NotEquivalent
        },
        caveat: reason.is_some(),
        reason,
        first,
        second,
    })
}

/// Strict isomorphism: equal `K0` and an automorphism carrying one unit class
/// to the other, which happens exactly when the unit orders agree.
pub fn classify_strict(g1: &Multigraph, g2: &Multigraph) -> Result<Verdict> {
    let (first, second) = (evidence(g1)?, evidence(g2)?);
    if let Some(reason) = caveat_reason(&first, &second) {
        return Ok(Verdict {
            mode: "strict",
            outcome: Outcome::Indeterminate,
            caveat: true,
            reason: Some(reason),
            first,
            second,
        });
    }
    let same = first.g == second.g && first.unit_order == second.unit_order;

    // For small torsion, confirm by searching the automorphisms of Z/(g-1).
    if first.g == second.g && first.g - 1 <= 12 {
        let n = (first.g - 1) as u64;
        let residue = |g: &Multigraph| -> Result<u64> {
            let class = unit_class(g)?;
            Ok(class.torsion.first().map_or(0, |&(_, r)| r))
        };
        let related = related_by_automorphism(n, residue(g1)?, residue(g2)?);
        if related != same {
            return Err(Error::TheoremViolation(
                "unit-order criterion disagrees with the automorphism search".into(),
            ));
        }
    }

    Ok(Verdict {
        mode: "strict",
        outcome: if same {
            Outcome::Isomorphic
        } else {
            Outcome::NotIsomorphic
        },
        caveat: false,
        reason: None,
        first,
        second,
    })
}

/// Whether some automorphism of `Z/n` (multiplication by a unit) carries `a`
/// to `b`, by exhaustive search. `n <= 1` is the trivial group.
pub fn related_by_automorphism(n: u64, a: u64, b: u64) -> bool {
    if n <= 1 {
        return true;
    }
    (1..n)
        .filter(|k| k.gcd(&n) == 1)
        .any(|k| (k * a) % n == b % n)
}

/// Whether the unit class has the full order `g - 1`, i.e. `gcd(g - 1, |V|) = 1`.
pub fn boundary_algebra_compatible(g: &Multigraph) -> Result<bool> {
    let genus = genus_at_least(g, 2)?;
    let coprime = (genus as u64 - 1).gcd(&(g.vertex_count() as u64)) == 1;
    let order = unit_order_of_matrix(&edge_matrix(g))
        .and_then(|s| s.lambda.to_u64())
        .ok_or_else(|| Error::TheoremViolation("unit class has infinite order".into()))?;
    if coprime != (order == genus as u64 - 1) {
        return Err(Error::TheoremViolation(format!(
            "gcd criterion ({coprime}) disagrees with unit order {order} for g = {genus}"
        )));
    }
    Ok(coprime)
}
