//! K-theory of the Cuntz-Krieger algebra of a graph's edge operator, computed
//! from the integer matrix `1 - A` alone.
//!
//! `K0 = Z^{2m} / (1 - A^t) Z^{2m}` and `K1 = ker(1 - T)`. The algebra unit
//! maps to the all-ones vector, and its order in `K0` is the least `lambda > 0`
//! with `(1 - A) x = lambda * 1` solvable over the integers.

mod classify;
mod transcript;

pub use classify::{
    boundary_algebra_compatible, classify_stable, classify_strict, related_by_automorphism,
    GraphEvidence, Outcome, Verdict,
};
pub use transcript::{
    contraction_reduce, contraction_reduce_with, contraction_stages, ReductionTranscript,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::edge_operator::{edge_matrix, reversal, EdgeMatrix, SimplicityFlags};
use crate::error::{Error, Result};
use crate::linalg::{
    cokernel, kernel_basis, same_row_lattice, smith_normal_form, solve_min_scalar, AbelianGroup,
    IntMatrix, MinScalarSolution,
};
use crate::multigraph::{CycleVector, Multigraph};

/// Betti number of a connected graph, rejecting genus below `min`.
pub(crate) fn genus_at_least(g: &Multigraph, min: usize) -> Result<usize> {
    let b = g.betti_number()?;
    if b < min {
        let msg = match min {
            1 => "g ≥ 1 required (graph is a tree)".to_string(),
            2 => format!("classification proven only for g ≥ 2 (graph has g = {b})"),
            _ => format!("g ≥ {min} required (graph has g = {b})"),
        };
        return Err(Error::Domain(msg));
    }
    Ok(b)
}

/// The group `Z^g ⊕ Z/(g-1)` in canonical form.
pub fn expected_k0(g: usize) -> AbelianGroup {
    let mut orders = vec![BigInt::zero(); g];
    orders.push(BigInt::from(g as i64 - 1));
    AbelianGroup::from_cyclic_orders(orders)
}

/// Canonical Smith diagonal `(1, ..., 1, g - 1, 0, ..., 0)` of `1 - A` for a
/// connected graph with `m` edges and Betti number `g >= 1`.
pub fn expected_smith_diagonal(m: usize, g: usize) -> Vec<BigInt> {
    assert!(g >= 1 && 2 * m > g);
    if g == 1 {
        // The entry g - 1 = 0 joins the zero block.
        let mut d = vec![BigInt::one(); 2 * m - 2];
        d.extend([BigInt::zero(), BigInt::zero()]);
        return d;
    }
    let mut d = vec![BigInt::one(); 2 * m - g - 1];
    d.push(BigInt::from(g - 1));
    d.extend(std::iter::repeat_n(BigInt::zero(), g));
    d
}

/// `(g - 1) / gcd(g - 1, n)`, the order of the unit class for `g >= 2`.
pub fn unit_order_closed_form(g: usize, n: usize) -> u64 {
    assert!(g >= 2);
    let e = (g - 1) as u64;
    e / e.gcd(&(n as u64))
}

/// `K0` from an explicit edge matrix, computed from `1 - A^t` and re-derived
/// from `1 - A`.
pub fn k0_of_matrix(a: &EdgeMatrix) -> Result<AbelianGroup> {
    let from_transpose = cokernel(&a.one_minus_transpose());
    let direct = cokernel(&a.one_minus());
    if from_transpose != direct {
        return Err(Error::TheoremViolation(format!(
            "coker(1 - A^t) = {from_transpose} differs from coker(1 - A) = {direct}"
        )));
    }
    Ok(from_transpose)
}

pub fn k0(g: &Multigraph) -> Result<AbelianGroup> {
    genus_at_least(g, 1)?;
    k0_of_matrix(&edge_matrix(g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K1 {
    pub rank: usize,
    /// HNF rows spanning `ker(1 - T)`.
    pub basis: IntMatrix,
}

pub fn k1_of_matrix(a: &EdgeMatrix) -> K1 {
    let basis = kernel_basis(&a.one_minus_transpose());
    K1 {
        rank: basis.rows(),
        basis,
    }
}

pub fn k1(g: &Multigraph) -> Result<K1> {
    genus_at_least(g, 1)?;
    Ok(k1_of_matrix(&edge_matrix(g)))
}

/// Whether `(1 - T) v = 0`.
pub fn in_kernel(a: &EdgeMatrix, v: &[BigInt]) -> bool {
    a.one_minus_transpose().mul_vec(v).iter().all(Zero::is_zero)
}

/// `φ(c) = Σ k_i e_i - Σ k_i ē_i`: coefficient `k_i` at oriented index `i`
/// and `-k_i` at its reversal. The result is checked to lie in `ker(1 - T)`.
pub fn phi(g: &Multigraph, c: &CycleVector) -> Result<Vec<BigInt>> {
    g.check_cycle(c)?;
    let v = phi_unchecked(c);
    if !in_kernel(&edge_matrix(g), &v) {
        return Err(Error::TheoremViolation(format!(
            "φ of cycle {:?} is not annihilated by 1 - T",
            c.coefficients()
        )));
    }
    Ok(v)
}

fn phi_unchecked(c: &CycleVector) -> Vec<BigInt> {
    let m = c.0.len();
    let mut v = vec![BigInt::zero(); 2 * m];
    for (i, &k) in c.0.iter().enumerate() {
        v[i] += k;
        v[reversal(i, m)] -= k;
    }
    v
}

/// Rows `φ(c)` for the fundamental cycle basis.
pub fn phi_image(g: &Multigraph) -> Result<IntMatrix> {
    let rows = g
        .cycle_basis()?
        .iter()
        .map(|c| phi(g, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_row_vectors(2 * g.edge_count(), &rows))
}

/// Whether `φ(Z_1)` and `ker(1 - T)` are the same lattice (equal HNFs).
pub fn phi_image_equals_kernel(g: &Multigraph) -> Result<bool> {
    genus_at_least(g, 2)?;
    phi_image_equals_kernel_of(g, &edge_matrix(g))
}

pub(crate) fn phi_image_equals_kernel_of(g: &Multigraph, a: &EdgeMatrix) -> Result<bool> {
    let image = phi_image(g)?;
    let kernel = k1_of_matrix(a).basis;
    Ok(same_row_lattice(&image, &kernel))
}

/// Whether every oriented copy of every end edge has coordinate zero in
/// every kernel basis vector.
pub fn kernel_avoids_ends(g: &Multigraph) -> Result<bool> {
    genus_at_least(g, 1)?;
    Ok(kernel_avoids_ends_of(g, &edge_matrix(g)))
}

pub(crate) fn kernel_avoids_ends_of(g: &Multigraph, a: &EdgeMatrix) -> bool {
    let m = g.edge_count();
    let basis = k1_of_matrix(a).basis;
    g.classify_end_edges()
        .iter()
        .all(|&e| (0..basis.rows()).all(|r| basis[(r, e)].is_zero() && basis[(r, e + m)].is_zero()))
}

/// For `g = 1`: `φ(c)` for the unique fundamental cycle `c`, and `c + Σ l`
/// where `l` runs over the orientations of non-cycle edges pointing away from
/// the cycle.
pub fn g1_kernel_generators(g: &Multigraph) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let b = g.betti_number()?;
    if b != 1 {
        return Err(Error::Domain(format!("g = 1 required (graph has g = {b})")));
    }
    let m = g.edge_count();
    let c = g.cycle_basis()?.remove(0);
    let first = phi(g, &c)?;

    let mut second = vec![BigInt::zero(); 2 * m];
    let mut on_cycle = vec![false; g.vertex_count()];
    for (i, &k) in c.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let (u, v) = g.edge(i);
        on_cycle[u] = true;
        on_cycle[v] = true;
        second[if k > 0 { i } else { reversal(i, m) }] += 1;
    }

    // Breadth-first outward from the cycle; each remaining edge is oriented
    // from the side discovered first.
    let mut dist: Vec<Option<usize>> = on_cycle.iter().map(|&b| b.then_some(0)).collect();
    let mut frontier: Vec<usize> = (0..g.vertex_count()).filter(|&v| on_cycle[v]).collect();
    let off_cycle: Vec<usize> = (0..m).filter(|&i| c.0[i] == 0).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &off_cycle {
            let (u, v) = g.edge(i);
            for (from, to, oriented) in [(u, v, i), (v, u, reversal(i, m))] {
                if frontier.contains(&from) && dist[to].is_none() {
                    dist[to] = Some(dist[from].unwrap() + 1);
                    second[oriented] += 1;
                    next.push(to);
                }
            }
        }
        frontier = next;
    }

    let a = edge_matrix(g);
    if !in_kernel(&a, &second) {
        return Err(Error::TheoremViolation(
            "c + Σ l is not annihilated by 1 - T".into(),
        ));
    }
    Ok((first, second))
}

/// The image of the algebra unit: the all-ones vector of length `2m`.
pub fn unit_class_is_one_vector(g: &Multigraph) -> Vec<BigInt> {
    vec![BigInt::one(); 2 * g.edge_count()]
}

/// Order of the unit class from an explicit matrix: `None` means infinite.
pub fn unit_order_of_matrix(a: &EdgeMatrix) -> Option<MinScalarSolution> {
    let ones = vec![BigInt::one(); a.size()];
    solve_min_scalar(&a.one_minus(), &ones)
}

/// Order of the unit class in `K0`, with a witness `x` satisfying
/// `(1 - A) x = lambda * 1`. For `g >= 2` the solver result is cross-checked
/// against `(g - 1) / gcd(g - 1, |V|)`; for `g = 1` the order is infinite and
/// `None` is returned.
pub fn unit_order(g: &Multigraph) -> Result<Option<MinScalarSolution>> {
    let genus = genus_at_least(g, 1)?;
    let solution = unit_order_of_matrix(&edge_matrix(g));
    check_unit_order(genus, g.vertex_count(), solution.as_ref())?;
    Ok(solution)
}

pub(crate) fn check_unit_order(
    genus: usize,
    vertices: usize,
    solution: Option<&MinScalarSolution>,
) -> Result<()> {
    match (genus, solution) {
        (1, None) => Ok(()),
        (1, Some(s)) => Err(Error::TheoremViolation(format!(
            "g = 1 but the unit class has finite order {}",
            s.lambda
        ))),
        (_, None) => Err(Error::TheoremViolation(
            "g ≥ 2 but the unit class has infinite order".into(),
        )),
        (_, Some(s)) => {
            let expected = unit_order_closed_form(genus, vertices);
            if s.lambda.to_u64() != Some(expected) {
                return Err(Error::TheoremViolation(format!(
                    "solver gives unit order {} but (g-1)/gcd(g-1,|V|) = {expected}",
                    s.lambda
                )));
            }
            Ok(())
        }
    }
}

/// Coordinates of the unit class in `K0 ≅ Z^r ⊕ ⊕ Z/d_i`, read off the Smith
/// form of `1 - A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitClass {
    #[serde(with = "crate::bigjson::vec")]
    pub free: Vec<BigInt>,
    /// `(d_i, residue mod d_i)` for each torsion factor `d_i >= 2`.
    pub torsion: Vec<(u64, u64)>,
}

impl UnitClass {
    /// Order in the group, `None` when the free part is nonzero.
    pub fn order(&self) -> Option<u64> {
        if self.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .fold(1u64, |acc, &(d, r)| acc.lcm(&(d / d.gcd(&r)))),
        )
    }
}

pub fn unit_class(g: &Multigraph) -> Result<UnitClass> {
    genus_at_least(g, 1)?;
    let a = edge_matrix(g);
    let snf = smith_normal_form(&a.one_minus());
    let image = snf.x.mul_vec(&vec![BigInt::one(); a.size()]);
    let mut class = UnitClass {
        free: Vec::new(),
        torsion: Vec::new(),
    };
    for (d, c) in snf.invariant_factors().iter().zip(&image) {
        if d.is_zero() {
            class.free.push(c.clone());
        } else if !d.is_one() {
            let residue = c.mod_floor(d);
            class.torsion.push((
                d.to_u64().expect("torsion factor fits in u64"),
                residue.to_u64().expect("residue fits in u64"),
            ));
        }
    }
    Ok(class)
}

#[derive(Clone, Debug, Serialize)]
pub struct KTheoryReport {
    pub g: usize,
    pub vertices: usize,
    pub edges: usize,
    pub k0: AbelianGroup,
    #[serde(with = "crate::bigjson::option")]
    pub unit_order: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_order_note: Option<String>,
    pub k1_rank: usize,
    pub k1_basis: IntMatrix,
    #[serde(with = "crate::bigjson::vec")]
    pub unit_witness: Vec<BigInt>,
    pub simplicity: SimplicityFlags,
}

/// Full invariant report for a connected graph with `g >= 1`.
pub fn report(g: &Multigraph) -> Result<KTheoryReport> {
    let genus = genus_at_least(g, 1)?;
    let a = edge_matrix(g);
    let k0 = k0_of_matrix(&a)?;
    if k0 != expected_k0(genus) {
        return Err(Error::TheoremViolation(format!(
            "K0 = {k0} but the graph has g = {genus}"
        )));
    }
    let k1 = k1_of_matrix(&a);
    let solution = unit_order_of_matrix(&a);
    check_unit_order(genus, g.vertex_count(), solution.as_ref())?;
    let (unit_order, unit_witness) = match solution {
        Some(s) => (Some(s.lambda), s.witness),
        None => (None, Vec::new()),
    };
    let unit_order_note =
        (genus == 1).then(|| "unit class has infinite order in K0 ≅ Z^2".to_string());
    Ok(KTheoryReport {
        g: genus,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        k0,
        unit_order,
        unit_order_note,
        k1_rank: k1.rank,
        k1_basis: k1.basis,
        unit_witness,
        simplicity: SimplicityFlags::of(&a),
    })
}
