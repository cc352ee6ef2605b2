//! Regression fixtures for the worked examples, bundled into the binary and
//! replayed by every sweep.

use num_bigint::BigInt;
use serde::Deserialize;

use crate::ktheory::{k0, unit_order};
use crate::linalg::{AbelianGroup, IntPolynomial};
use crate::multigraph::{
    generate_chain, generate_cycle, generate_flower, generate_theta, Multigraph,
};
use crate::zeta::{edge_charpoly, verify_bass_identity};

const EXAMPLES: &str = include_str!("../../fixtures/examples.json");

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub name: String,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub param: Option<usize>,
    #[serde(default)]
    pub graph: Option<Multigraph>,
    pub g: usize,
    pub vertices: usize,
    pub k0: ExpectedGroup,
    pub unit_order: Option<u64>,
    #[serde(default)]
    pub edge_poly: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExpectedGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl Fixture {
    pub fn graph(&self) -> Result<Multigraph, String> {
        if let Some(g) = &self.graph {
            return Ok(g.clone());
        }
        let param = self.param.ok_or("fixture has neither graph nor param")?;
        let built = match self.family.as_deref() {
            Some("flower") => generate_flower(param),
            Some("theta") => generate_theta(param),
            Some("chain") => generate_chain(param),
            Some("cycle") => generate_cycle(param),
            other => return Err(format!("unknown family {other:?}")),
        };
        built.map_err(|e| e.to_string())
    }
}

pub fn load_fixtures() -> Vec<Fixture> {
    serde_json::from_str(EXAMPLES).expect("bundled fixtures parse")
}

/// Recomputes a fixture's invariants; `Err` describes the first mismatch.
pub fn replay_fixture(fx: &Fixture) -> Result<(), String> {
    let g = fx.graph()?;
    let mismatch = |what: &str, got: String, want: String| {
        Err(format!("{}: {what} is {got}, expected {want}", fx.name))
    };
    let genus = g.betti_number().map_err(|e| e.to_string())?;
    if genus != fx.g {
        return mismatch("g", genus.to_string(), fx.g.to_string());
    }
    if g.vertex_count() != fx.vertices {
        return mismatch("|V|", g.vertex_count().to_string(), fx.vertices.to_string());
    }
    let want_k0 = AbelianGroup::from_cyclic_orders(
        std::iter::repeat_n(BigInt::from(0), fx.k0.rank)
            .chain(fx.k0.torsion.iter().map(|&t| BigInt::from(t))),
    );
    let got_k0 = k0(&g).map_err(|e| e.to_string())?;
    if got_k0 != want_k0 {
        return mismatch("K0", got_k0.to_string(), want_k0.to_string());
    }
    let order = unit_order(&g).map_err(|e| e.to_string())?.map(|s| s.lambda);
    let want = fx.unit_order.map(BigInt::from);
    if order != want {
        return mismatch("unit order", format!("{order:?}"), format!("{want:?}"));
    }
    if let Some(coeffs) = &fx.edge_poly {
        let got = edge_charpoly(&g);
        let want = IntPolynomial::from_i64(coeffs);
        if got != want {
            return mismatch("det(1 - uT)", got.to_string(), want.to_string());
        }
        if !verify_bass_identity(&g).map_err(|e| e.to_string())? {
            return Err(format!("{}: Ihara-Bass identity fails", fx.name));
        }
    }
    Ok(())
}
