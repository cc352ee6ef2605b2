//! Reduction of `1 - A` to diagonal form by contracting non-loop edges one at
//! a time, then reducing the remaining one-vertex block.
//!
//! Contracting a non-loop edge `γ` splits off an identity block:
//! `1 - A ~ 1_2 ⊕ (1 - A')` where `A'` belongs to the contracted graph. The
//! row operations add row `γ` to every row flowing into `o(γ)` and row `γ̄`
//! to every row flowing into `o(γ̄)`; column operations then clear rows `γ`
//! and `γ̄`. Replaying the row operations on the all-ones vector tracks the
//! image of the unit class.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::edge_operator::{edge_matrix, reversal};
use crate::error::{Error, Result};
use crate::linalg::{add_col, add_row, ElementaryOp, IntMatrix};
use crate::multigraph::Multigraph;

use super::genus_at_least;

#[derive(Clone, Debug, Serialize)]
pub struct ReductionTranscript {
    pub g: usize,
    pub vertices: usize,
    /// Original geometric indices of the contracted edges, in order.
    pub contracted_edges: Vec<usize>,
    /// Every operation applied to `1 - A`, in order.
    pub ops: Vec<ElementaryOp>,
    /// Image of the all-ones vector once every contraction is done.
    #[serde(with = "crate::bigjson::vec")]
    pub unit_image_after_contraction: Vec<BigInt>,
    /// Image of the all-ones vector under all row operations (`X · 1`).
    #[serde(with = "crate::bigjson::vec")]
    pub unit_image: Vec<BigInt>,
    /// Diagonal of `X (1 - A) Y`.
    #[serde(with = "crate::bigjson::vec")]
    pub diagonal: Vec<BigInt>,
}

impl ReductionTranscript {
    /// Applies the logged operations to `m`.
    pub fn replay(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = m.clone();
        for op in &self.ops {
            out.apply(op);
        }
        out
    }

    /// Applies the logged row operations to `v`.
    pub fn replay_on_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for op in &self.ops {
            op.apply_to_vector(&mut out);
        }
        out
    }

    pub fn contraction_steps(&self) -> usize {
        self.contracted_edges.len()
    }

    /// Operation log, one per line.
    pub fn to_text(&self) -> String {
        crate::linalg::format_log(&self.ops)
    }
}

/// Reduction with the lowest-index non-loop edge contracted first.
pub fn contraction_reduce(g: &Multigraph) -> Result<ReductionTranscript> {
    contraction_reduce_with(g, |candidates| candidates[0])
}

/// Reduction where `pick` chooses the next edge to contract from the current
/// non-loop edges, given as original geometric indices in increasing order.
pub fn contraction_reduce_with(
    g: &Multigraph,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Result<ReductionTranscript> {
    let genus = genus_at_least(g, 1)?;
    let big_m = g.edge_count();
    let n = 2 * big_m;

    let mut w = edge_matrix(g).one_minus();
    let mut unit = vec![BigInt::one(); n];
    let mut ops: Vec<ElementaryOp> = Vec::new();
    let mut push = |op: Option<ElementaryOp>, w: &mut IntMatrix, unit: &mut Vec<BigInt>| {
        if let Some(op) = op {
            w.apply(&op);
            op.apply_to_vector(unit);
            ops.push(op);
        }
    };

    let mut current = g.clone();
    // Original geometric index of each current edge.
    let mut origin: Vec<usize> = (0..big_m).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut contracted = Vec::new();

    loop {
        let candidates: Vec<usize> = current
            .non_loop_edges()
            .into_iter()
            .map(|i| origin[i])
            .collect();
        if candidates.is_empty() {
            break;
        }
        let chosen = pick(&candidates);
        let gamma = origin
            .iter()
            .position(|&o| o == chosen)
            .filter(|&i| !current.is_loop(i))
            .ok_or_else(|| {
                Error::Domain(format!("edge {chosen} is not a current non-loop edge"))
            })?;

        let m = current.edge_count();
        let a = edge_matrix(&current);
        let orig = |i: usize| {
            if i < m {
                origin[i]
            } else {
                big_m + origin[i - m]
            }
        };
        let (fwd, bwd) = (gamma, reversal(gamma, m));
        let (gf, gb) = (orig(fwd), orig(bwd));
        let others: Vec<usize> = (0..2 * m).filter(|&e| e != fwd && e != bwd).collect();

        for &e in &others {
            if a.get(e, fwd) {
                push(add_row(gf, orig(e), BigInt::one()), &mut w, &mut unit);
            }
        }
        for &e in &others {
            if a.get(e, bwd) {
                push(add_row(gb, orig(e), BigInt::one()), &mut w, &mut unit);
            }
        }
        for &c in &others {
            let oc = orig(c);
            let f = -w[(gf, oc)].clone();
            push(add_col(gf, oc, f), &mut w, &mut unit);
            let f = -w[(gb, oc)].clone();
            push(add_col(gb, oc, f), &mut w, &mut unit);
        }

        pivots.extend([gf, gb]);
        contracted.push(chosen);
        current = current.contract_edge(gamma)?;
        origin.remove(gamma);

        let m = current.edge_count();
        let active: Vec<usize> = (0..2 * m)
            .map(|i| {
                if i < m {
                    origin[i]
                } else {
                    big_m + origin[i - m]
                }
            })
            .collect();
        check_block(&w, &pivots, &active, &edge_matrix(&current).one_minus())?;
    }

    let unit_after = unit.clone();

    // One vertex with `genus` loops: 1 - A' = -[[B, B], [B, B]] with B = J - I.
    debug_assert_eq!(current.edge_count(), genus);
    let fw: Vec<usize> = origin.clone();
    let bw: Vec<usize> = origin.iter().map(|&o| big_m + o).collect();
    let gn = genus;
    for i in 0..gn {
        push(add_row(fw[i], bw[i], -BigInt::one()), &mut w, &mut unit);
    }
    for j in 0..gn {
        push(add_col(fw[j], bw[j], -BigInt::one()), &mut w, &mut unit);
    }
    // Reduce B: subtract the first column from the others, add every row to
    // the last, add every column to the first.
    for j in 1..gn {
        push(add_col(fw[0], fw[j], -BigInt::one()), &mut w, &mut unit);
    }
    for i in 0..gn.saturating_sub(1) {
        push(add_row(fw[i], fw[gn - 1], BigInt::one()), &mut w, &mut unit);
    }
    for j in 1..gn {
        push(add_col(fw[j], fw[0], BigInt::one()), &mut w, &mut unit);
    }
    // The first row is now (g-1, 1, ..., 1) up to sign and the last
    // (g-1, 0, ..., 0); clear the first row into a unit in the last column.
    if gn >= 2 {
        for i in 1..gn - 1 {
            push(add_row(fw[i], fw[0], BigInt::one()), &mut w, &mut unit);
        }
        push(
            add_row(fw[gn - 1], fw[0], -BigInt::one()),
            &mut w,
            &mut unit,
        );
        push(
            Some(ElementaryOp::SwapCols(fw[0], fw[gn - 1])),
            &mut w,
            &mut unit,
        );
    }
    for &p in pivots.iter().chain(&fw) {
        if w[(p, p)].is_negative() {
            push(Some(ElementaryOp::NegateCol(p)), &mut w, &mut unit);
        }
    }

    // Order as (contraction pivots, units of the flower block, g - 1, zeros).
    let order: Vec<usize> = pivots.iter().chain(&fw).chain(&bw).copied().collect();
    let mut at: Vec<usize> = (0..n).collect(); // at[position] = index there
    for k in 0..n {
        let here = at.iter().position(|&x| x == order[k]).unwrap();
        if here != k {
            push(Some(ElementaryOp::SwapRows(k, here)), &mut w, &mut unit);
            push(Some(ElementaryOp::SwapCols(k, here)), &mut w, &mut unit);
            at.swap(k, here);
        }
    }

    if !w.is_diagonal() {
        return Err(Error::TheoremViolation(
            "contraction reduction did not reach a diagonal matrix".into(),
        ));
    }
    Ok(ReductionTranscript {
        g: genus,
        vertices: g.vertex_count(),
        contracted_edges: contracted,
        ops,
        unit_image_after_contraction: unit_after,
        unit_image: unit,
        diagonal: w.diagonal_entries(),
    })
}

/// After a contraction the pivot rows and columns must be unit vectors and the
/// active block must equal `1 - A'` of the contracted graph.
fn check_block(
    w: &IntMatrix,
    pivots: &[usize],
    active: &[usize],
    expected: &IntMatrix,
) -> Result<()> {
    let n = w.rows();
    for &p in pivots {
        for k in 0..n {
            let want = if k == p {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if w[(p, k)] != want || w[(k, p)] != want {
                return Err(Error::TheoremViolation(format!(
                    "pivot {p} was not split off as an identity block"
                )));
            }
        }
    }
    if w.select(active, active) != *expected {
        return Err(Error::TheoremViolation(
            "remaining block differs from 1 - A' of the contracted graph".into(),
        ));
    }
    Ok(())
}

/// The graphs met while contracting the lowest-index non-loop edge until one
/// vertex remains, starting with `g` itself.
pub fn contraction_stages(g: &Multigraph) -> Result<Vec<Multigraph>> {
    let mut stages = vec![g.clone()];
    let mut current = g.clone();
    while let Some(&e) = current.non_loop_edges().first() {
        current = current.contract_edge(e)?;
        stages.push(current.clone());
    }
    Ok(stages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktheory::expected_smith_diagonal;
    use crate::multigraph::{generate_chain, generate_flower, generate_theta};

    fn check(g: &Multigraph) -> ReductionTranscript {
        let t = contraction_reduce(g).unwrap();
        let a = edge_matrix(g).one_minus();
        let d = t.replay(&a);
        assert!(d.is_diagonal());
        assert_eq!(d.diagonal_entries(), t.diagonal);
        let ones = vec![BigInt::one(); a.rows()];
        assert_eq!(t.replay_on_vector(&ones), t.unit_image);
        let genus = g.betti_number().unwrap();
        assert_eq!(t.diagonal, expected_smith_diagonal(g.edge_count(), genus));
        let n = t.unit_image.len();
        assert!(t.unit_image[n - genus..].iter().all(Zero::is_zero));
        assert_eq!(
            t.unit_image[n - genus - 1],
            BigInt::from(genus * g.vertex_count())
        );
        t
    }

    #[test]
    fn flower_needs_no_contraction() {
        for genus in 1..=5 {
            let t = check(&generate_flower(genus).unwrap());
            assert_eq!(t.contraction_steps(), 0);
        }
    }

    #[test]
    fn theta_contracts_once() {
        let t = check(&generate_theta(2).unwrap());
        assert_eq!(t.contraction_steps(), 1);
        assert_eq!(t.unit_image[6 - 3], BigInt::from(4));
    }

    #[test]
    fn chain_contracts_down_to_flower() {
        let t = check(&generate_chain(3).unwrap());
        assert_eq!(t.contraction_steps(), 3);
        // After contracting, every remaining oriented loop carries |V| = 4.
        let m = 6;
        let surviving: Vec<usize> = (0..m)
            .filter(|i| !t.contracted_edges.contains(i))
            .flat_map(|i| [i, i + m])
            .collect();
        assert_eq!(surviving.len(), 6);
        for i in surviving {
            assert_eq!(t.unit_image_after_contraction[i], BigInt::from(4));
        }
    }

    #[test]
    fn graphs_with_ends() {
        check(&Multigraph::new(3, vec![(0, 0), (0, 0), (0, 1), (1, 2)]).unwrap());
        check(&Multigraph::new(3, vec![(1, 2), (0, 1), (2, 2)]).unwrap());
    }

    #[test]
    fn order_does_not_change_the_diagonal() {
        let g = generate_chain(4).unwrap();
        let base = contraction_reduce(&g).unwrap().diagonal;
        let last = contraction_reduce_with(&g, |c| *c.last().unwrap()).unwrap();
        assert_eq!(last.diagonal, base);
    }

    #[test]
    fn stages_of_a_chain() {
        let stages = contraction_stages(&generate_chain(3).unwrap()).unwrap();
        assert_eq!(stages.len(), 4);
        assert_eq!(stages.last().unwrap(), &generate_flower(3).unwrap());
    }

    #[test]
    fn text_log() {
        let t = contraction_reduce(&generate_theta(2).unwrap()).unwrap();
        let text = t.to_text();
        assert_eq!(text.lines().count(), t.ops.len());
        assert!(text.lines().next().unwrap().starts_with('R'));
    }
}
