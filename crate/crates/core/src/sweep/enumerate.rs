//! Small connected multigraphs: exhaustive up to isomorphism, or random from a
//! seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multigraph::Multigraph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Canonical edge list: the lexicographically least sorted edge list over all
/// vertex relabelings. Brute force, so only for small vertex counts.
pub fn canonical_form(g: &Multigraph) -> Vec<(usize, usize)> {
    permutations(g.vertex_count())
        .iter()
        .map(|p| g.relabeled_sorted_edges(p))
        .min()
        .unwrap_or_default()
}

/// Every connected multigraph with Betti number at least 1, at most
/// `max_vertices` vertices and at most `max_edges` edges, once per
/// isomorphism class. Each graph is returned in its canonical form, ordered by
/// vertex count, then edge count, then edge list.
pub fn enumerate_connected(max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        for m in n..=max_edges {
            // Multisets of size m from `pairs`, as nondecreasing index tuples.
            let mut idx = vec![0usize; m];
            loop {
                let edges: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                let g = Multigraph::new(n, edges.clone()).expect("indices in range");
                if g.is_connected() && perms.iter().all(|p| g.relabeled_sorted_edges(p) >= edges) {
                    out.push(g);
                }
                // Advance to the next nondecreasing tuple.
                let Some(k) = (0..m).rev().find(|&k| idx[k] + 1 < pairs.len()) else {
                    break;
                };
                idx[k] += 1;
                for j in k + 1..m {
                    idx[j] = idx[k];
                }
            }
        }
    }
    out
}

/// A random connected multigraph with Betti number at least 1.
pub fn random_connected<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Multigraph {
    assert!(max_vertices >= 1 && max_edges >= 1);
    let n = rng.gen_range(1..=max_vertices.min(max_edges));
    let m = rng.gen_range(n..=max_edges);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(if rng.gen() {
            (labels[u], labels[v])
        } else {
            (labels[v], labels[u])
        });
    }
    while edges.len() < m {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    edges.shuffle(rng);
    Multigraph::new(n, edges).expect("indices in range")
}

/// `count` random graphs, reproducible from `seed`.
pub fn random_sample(
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_edges: usize,
) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_connected(&mut rng, max_vertices, max_edges))
        .collect()
}
