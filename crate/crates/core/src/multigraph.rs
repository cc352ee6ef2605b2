//! Finite undirected multigraphs with loops, their structural invariants, and
//! the named graph families used throughout the crate.
//!
//! A loop contributes 2 to the valence of its vertex. Geometric edges are
//! indexed by their position in the edge list; that order fixes the oriented
//! edge indexing used by [`crate::edge_operator`].

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite undirected multigraph. Edges are unordered pairs stored as given;
/// `(u, u)` is a loop and repeated pairs are parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Multigraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Multigraph::new(
            raw.vertices,
            raw.edges.iter().map(|e| (e[0], e[1])).collect(),
        )
    }
}

impl From<Multigraph> for RawGraph {
    fn from(g: Multigraph) -> Self {
        RawGraph {
            vertices: g.vertex_count,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// Integral 1-chain on the geometric edges, coefficient `k` on edge `i`
/// meaning `k` traversals in the stored `(u -> v)` direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CycleVector(pub Vec<i64>);

impl CycleVector {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u >= vertex_count || v >= vertex_count)
        {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a vertex outside 0..{vertex_count}"
            )));
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn is_loop(&self, i: usize) -> bool {
        let (u, v) = self.edges[i];
        u == v
    }

    /// Valence of every vertex, loops counting 2.
    pub fn valences(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn has_loop_at(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v && b == v)
    }

    /// Edge indices incident to each vertex, in increasing order. A loop is
    /// listed once.
    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            if v != u {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let inc = self.incidence();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &e in &inc[x] {
                let y = self.other_end(e, x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.vertex_count
    }

    fn other_end(&self, e: usize, x: usize) -> usize {
        let (u, v) = self.edges[e];
        if u == x {
            v
        } else {
            u
        }
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// First Betti number `m - |V| + 1` of a connected graph.
    pub fn betti_number(&self) -> Result<usize> {
        self.require_connected()?;
        Ok(self.edges.len() + 1 - self.vertex_count)
    }

    /// Breadth-first spanning tree from vertex 0, scanning incident edges in
    /// index order. Returns `(tree edges sorted, parent edge per vertex)`.
    fn bfs_tree(&self) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
        self.require_connected()?;
        let inc = self.incidence();
        let mut parent = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut tree = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &e in &inc[x] {
                let y = self.other_end(e, x);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(e);
                    tree.push(e);
                    queue.push_back(y);
                }
            }
        }
        tree.sort_unstable();
        Ok((tree, parent))
    }

    /// Edge indices of the deterministic breadth-first spanning tree.
    pub fn spanning_tree(&self) -> Result<Vec<usize>> {
        Ok(self.bfs_tree()?.0)
    }

    /// Fundamental cycles, one per non-tree edge in index order. Each cycle
    /// runs along its non-tree edge in the stored direction and returns to the
    /// start through the spanning tree.
    pub fn cycle_basis(&self) -> Result<Vec<CycleVector>> {
        let (tree, parent) = self.bfs_tree()?;
        let in_tree: BTreeSet<usize> = tree.into_iter().collect();
        let m = self.edges.len();

        // Signed path from the root to each vertex, as a chain.
        let path_from_root = |mut x: usize| {
            let mut chain = vec![0i64; m];
            while let Some(e) = parent[x] {
                let (a, b) = self.edges[e];
                let up = if b == x { a } else { b };
                // The root-to-x path crosses e from `up` to `x`.
                chain[e] += if a == up { 1 } else { -1 };
                x = up;
            }
            chain
        };

        let mut basis = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if in_tree.contains(&i) {
                continue;
            }
            let mut chain = vec![0i64; m];
            chain[i] = 1;
            if u != v {
                // u -> v along edge i, then v -> root -> u through the tree.
                for (c, (pu, pv)) in chain
                    .iter_mut()
                    .zip(path_from_root(u).into_iter().zip(path_from_root(v)))
                {
                    *c += pu - pv;
                }
            }
            basis.push(CycleVector(chain));
        }
        Ok(basis)
    }

    /// Boundary of a 1-chain: coefficient `k` on edge `u -> v` contributes
    /// `k` at `v` and `-k` at `u`.
    pub fn boundary(&self, chain: &[i64]) -> Vec<i64> {
        assert_eq!(chain.len(), self.edges.len());
        let mut out = vec![0; self.vertex_count];
        for (&k, &(u, v)) in chain.iter().zip(&self.edges) {
            out[v] += k;
            out[u] -= k;
        }
        out
    }

    /// Checks that `c` has zero boundary; reports the first offending vertex.
    pub fn check_cycle(&self, c: &CycleVector) -> Result<()> {
        if c.0.len() != self.edges.len() {
            return Err(Error::Domain(format!(
                "cycle has {} coefficients but the graph has {} edges",
                c.0.len(),
                self.edges.len()
            )));
        }
        match self.boundary(&c.0).iter().position(|&b| b != 0) {
            Some(v) => Err(Error::NotACycle(v)),
            None => Ok(()),
        }
    }

    /// Contracts the non-loop edge `e`: its endpoints merge into the smaller
    /// index, the larger vertex index is removed and higher indices shift
    /// down. Every other edge keeps its relative order and stored orientation.
    pub fn contract_edge(&self, e: usize) -> Result<Multigraph> {
        let &(u, v) = self.edges.get(e).ok_or(Error::EdgeOutOfRange(e))?;
        if u == v {
            return Err(Error::LoopContraction(e));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |x: usize| match x {
            x if x == gone => keep,
            x if x > gone => x - 1,
            x => x,
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| (relabel(a), relabel(b)))
            .collect();
        Ok(Multigraph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Indices of non-loop edges.
    pub fn non_loop_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| !self.is_loop(i))
            .collect()
    }

    /// Connected, and every vertex without a loop has valence at least 3.
    pub fn is_stable(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        let deg = self.valences();
        (0..self.vertex_count).all(|v| self.has_loop_at(v) || deg[v] >= 3)
    }

    /// Edges lying in ends, found by repeatedly stripping valence-1 vertices.
    pub fn classify_end_edges(&self) -> BTreeSet<usize> {
        let inc = self.incidence();
        let mut deg = self.valences();
        let mut removed = vec![false; self.edges.len()];
        let mut queue: VecDeque<usize> = (0..self.vertex_count).filter(|&v| deg[v] == 1).collect();
        let mut ends = BTreeSet::new();
        while let Some(x) = queue.pop_front() {
            if deg[x] != 1 {
                continue;
            }
            // Valence 1 means exactly one live non-loop edge.
            let e = inc[x]
                .iter()
                .copied()
                .find(|&e| !removed[e])
                .expect("valence-1 vertex has a live edge");
            removed[e] = true;
            ends.insert(e);
            let y = self.other_end(e, x);
            deg[x] -= 1;
            deg[y] -= 1;
            if deg[y] == 1 {
                queue.push_back(y);
            }
        }
        ends
    }

    pub fn min_valence(&self) -> Option<usize> {
        self.valences().into_iter().min()
    }

    /// Whether the graph is one vertex carrying only loops.
    pub fn is_flower(&self) -> bool {
        self.vertex_count == 1
    }

    /// Renders the text file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "edge {u} {v}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    /// Relabels vertices by `perm[old] = new` and sorts the normalized edge
    /// list; used for canonical forms.
    pub fn relabeled_sorted_edges(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// Parses either the line format (`vertices n` then `edge u v` lines) or the
/// JSON form `{"vertices": n, "edges": [[u, v], ...]}`.
pub fn parse_graph(text: &[u8]) -> Result<Multigraph> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse {
        line: 1,
        message: format!("input is not UTF-8 ({e})"),
    })?;
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }

    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| Error::Parse {
            line: line_no,
            message: message.to_string(),
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        match (vertex_count, words.as_slice()) {
            (None, ["vertices", n]) => {
                vertex_count = Some(n.parse().map_err(|_| err("malformed vertex count"))?);
            }
            (None, _) => return Err(err("expected `vertices <n>`")),
            (Some(n), ["edge", a, b]) => {
                let u: usize = a.parse().map_err(|_| err("malformed vertex index"))?;
                let v: usize = b.parse().map_err(|_| err("malformed vertex index"))?;
                if u >= n || v >= n {
                    return Err(err("vertex index out of range"));
                }
                edges.push((u, v));
            }
            (Some(_), _) => return Err(err("expected `edge <u> <v>`")),
        }
    }
    let line = text.lines().count().max(1);
    let Some(n) = vertex_count else {
        return Err(Error::Parse {
            line,
            message: "missing `vertices <n>` header".into(),
        });
    };
    if edges.is_empty() {
        return Err(Error::Parse {
            line,
            message: "empty edge list".into(),
        });
    }
    Multigraph::new(n, edges)
}

fn parse_json(text: &str) -> Result<Multigraph> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: format!("malformed JSON graph ({e})"),
    })?;
    if raw.edges.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "empty edge list".into(),
        });
    }
    Multigraph::try_from(raw)
}

/// One vertex with `g` loops.
pub fn generate_flower(g: usize) -> Result<Multigraph> {
    if g == 0 {
        return Err(Error::Domain("flower requires g >= 1".into()));
    }
    Multigraph::new(1, vec![(0, 0); g])
}

/// Two vertices joined by `g + 1` parallel edges.
pub fn generate_theta(g: usize) -> Result<Multigraph> {
    if g == 0 {
        return Err(Error::Domain("theta requires g >= 1".into()));
    }
    Multigraph::new(2, vec![(0, 1); g + 1])
}

/// The stable chain of genus `g`: `2g - 2` vertices on a path with a loop at
/// each end, consecutive vertices joined alternately by one edge and by two
/// parallel edges, starting (and ending) with a single edge.
pub fn generate_chain(g: usize) -> Result<Multigraph> {
    if g < 2 {
        return Err(Error::Domain("chain requires g >= 2".into()));
    }
    let n = 2 * g - 2;
    let mut edges = vec![(0, 0)];
    for i in 0..n - 1 {
        let copies = if i % 2 == 0 { 1 } else { 2 };
        edges.extend(std::iter::repeat_n((i, i + 1), copies));
    }
    edges.push((n - 1, n - 1));
    let chain = Multigraph::new(n, edges)?;
    if chain.betti_number()? != g || !chain.is_stable() {
        return Err(Error::TheoremViolation(format!(
            "generated chain for g = {g} is not a stable genus-g graph"
        )));
    }
    Ok(chain)
}

/// The cycle on `n` vertices (a single loop for `n = 1`, a double edge for
/// `n = 2`).
pub fn generate_cycle(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::Domain("cycle requires n >= 1".into()));
    }
    Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn parse_smallest_graph() {
        let g = parse_graph(b"vertices 1\nedge 0 0\n").unwrap();
        assert_eq!(g, graph(1, &[(0, 0)]));
    }

    #[test]
    fn parse_theta() {
        let g = parse_graph(b"vertices 2\nedge 0 1\nedge 0 1\nedge 0 1\n").unwrap();
        assert_eq!(g.betti_number().unwrap(), 2);
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = parse_graph(b"vertices 2\nedge 0 2\n").unwrap_err();
        assert_eq!(err.to_string(), "vertex index out of range, line 2");
    }

    #[test]
    fn parse_rejects_garbage_and_empty() {
        assert!(matches!(
            parse_graph(b"vertices 2\nedge 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph(b"vertices 3\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_graph(b"edge 0 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let g = parse_graph(b"# flower\nvertices 1\n\nedge 0 0\n# second\nedge 0 0\n").unwrap();
        assert_eq!(g, generate_flower(2).unwrap());
    }

    #[test]
    fn json_form_roundtrips() {
        let g = generate_chain(3).unwrap();
        let json = g.to_json();
        assert!(json.starts_with("{\"vertices\":4,\"edges\":[[0,0],[0,1]"));
        assert_eq!(parse_graph(json.as_bytes()).unwrap(), g);
        assert!(parse_graph(b"{\"vertices\": 1, \"edges\": [[0, 3]]}").is_err());
    }

    #[test]
    fn text_form_roundtrips() {
        let g = generate_theta(3).unwrap();
        assert_eq!(parse_graph(g.to_text().as_bytes()).unwrap(), g);
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(generate_flower(3).unwrap().betti_number().unwrap(), 3);
        assert_eq!(generate_theta(4).unwrap().betti_number().unwrap(), 4);
        let chain = generate_chain(3).unwrap();
        assert_eq!((chain.vertex_count(), chain.edge_count()), (4, 6));
        assert_eq!(chain.betti_number().unwrap(), 3);
        assert_eq!(graph(3, &[(0, 1)]).betti_number(), Err(Error::Disconnected));
    }

    #[test]
    fn spanning_trees() {
        assert!(generate_flower(2)
            .unwrap()
            .spanning_tree()
            .unwrap()
            .is_empty());
        assert_eq!(generate_theta(2).unwrap().spanning_tree().unwrap(), vec![0]);
        assert_eq!(
            graph(3, &[(0, 1), (1, 2)]).spanning_tree().unwrap(),
            vec![0, 1]
        );
    }

    #[test]
    fn cycle_bases() {
        let flower = generate_flower(2).unwrap();
        assert_eq!(
            flower.cycle_basis().unwrap(),
            vec![CycleVector(vec![1, 0]), CycleVector(vec![0, 1])]
        );
        assert!(graph(3, &[(0, 1), (1, 2)])
            .cycle_basis()
            .unwrap()
            .is_empty());
        // Non-tree edge i runs 0 -> 1, tree edge 0 brings the walk back.
        let theta = generate_theta(2).unwrap();
        assert_eq!(
            theta.cycle_basis().unwrap(),
            vec![CycleVector(vec![-1, 1, 0]), CycleVector(vec![-1, 0, 1])]
        );
    }

    #[test]
    fn cycle_basis_on_chain_is_in_kernel() {
        let chain = generate_chain(4).unwrap();
        let basis = chain.cycle_basis().unwrap();
        assert_eq!(basis.len(), 4);
        for c in &basis {
            chain.check_cycle(c).unwrap();
        }
    }

    #[test]
    fn non_cycles_are_rejected() {
        let theta = generate_theta(2).unwrap();
        assert_eq!(
            theta.check_cycle(&CycleVector(vec![1, 0, 0])),
            Err(Error::NotACycle(0))
        );
    }

    #[test]
    fn contraction() {
        let theta = generate_theta(2).unwrap();
        assert_eq!(theta.contract_edge(0).unwrap(), generate_flower(2).unwrap());
        let path = graph(2, &[(0, 1)]);
        assert_eq!(path.contract_edge(0).unwrap(), graph(1, &[]));
        assert_eq!(
            generate_flower(2).unwrap().contract_edge(1),
            Err(Error::LoopContraction(1))
        );
        let mut chain = generate_chain(4).unwrap();
        while let Some(&e) = chain.non_loop_edges().first() {
            chain = chain.contract_edge(e).unwrap();
            assert!(chain.is_stable());
            assert_eq!(chain.betti_number().unwrap(), 4);
        }
        assert_eq!(chain, generate_flower(4).unwrap());
    }

    #[test]
    fn stability() {
        assert!(generate_flower(1).unwrap().is_stable());
        assert!(generate_flower(4).unwrap().is_stable());
        for g in 2..=6 {
            assert!(generate_chain(g).unwrap().is_stable());
        }
        assert!(generate_theta(4).unwrap().is_stable());
        assert!(!graph(2, &[(0, 1)]).is_stable());
        assert!(generate_chain(5).unwrap().vertex_count() == 8);
    }

    #[test]
    fn end_edges() {
        assert!(generate_flower(2).unwrap().classify_end_edges().is_empty());
        let lollipop = graph(2, &[(0, 0), (0, 1)]);
        assert_eq!(lollipop.classify_end_edges(), BTreeSet::from([1]));
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.classify_end_edges(), BTreeSet::from([0, 1, 2]));
        let path = graph(3, &[(2, 1), (1, 0), (0, 0)]);
        assert_eq!(path.classify_end_edges(), BTreeSet::from([0, 1]));
    }

    #[test]
    fn generators() {
        assert_eq!(generate_flower(1).unwrap(), graph(1, &[(0, 0)]));
        assert_eq!(generate_flower(5).unwrap().betti_number().unwrap(), 5);
        assert!(generate_flower(0).is_err());
        assert_eq!(generate_theta(1).unwrap(), graph(2, &[(0, 1), (0, 1)]));
        assert!(generate_theta(0).is_err());
        let c2 = generate_chain(2).unwrap();
        assert_eq!(c2, graph(2, &[(0, 0), (0, 1), (1, 1)]));
        assert!(generate_chain(1).is_err());
        assert_eq!(generate_cycle(3).unwrap().betti_number().unwrap(), 1);
    }
}
