//! Test corpora: every connected simple graph of a given order up to
//! isomorphism, and seeded multigraph perturbations of family members.

use std::collections::HashMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::families;
use crate::graph::{mask_vertices, MultiGraph, Vertex};
use crate::iso::are_isomorphic;
use crate::matching::is_matching_covered;

type InvariantKey = Vec<(usize, usize, Vec<usize>)>;

/// Isomorphism invariant used to bucket candidates before the exact test.
fn invariant_key(g: &MultiGraph) -> InvariantKey {
    let n = g.vertex_count();
    let mut key: Vec<(usize, usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let nb = g.neighbour_mask(v);
            let triangles = mask_vertices(nb)
                .map(|w| (g.neighbour_mask(w) & nb).count_ones() as usize)
                .sum::<usize>()
                / 2;
            let mut degs: Vec<usize> = mask_vertices(nb).map(|w| g.degree(w)).collect();
            degs.sort_unstable();
            (g.degree(v), triangles, degs)
        })
        .collect();
    key.sort();
    key
}

/// Collects graphs while discarding isomorphic duplicates.
#[derive(Default)]
pub struct IsoClasses {
    buckets: HashMap<InvariantKey, Vec<usize>>,
    graphs: Vec<MultiGraph>,
}

impl IsoClasses {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `g` unless an isomorphic graph is already present.
    pub fn insert(&mut self, g: MultiGraph) -> bool {
        let bucket = self.buckets.entry(invariant_key(&g)).or_default();
        if bucket
            .iter()
            .any(|&i| are_isomorphic(&self.graphs[i], &g).is_some())
        {
            return false;
        }
        bucket.push(self.graphs.len());
        self.graphs.push(g);
        true
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn into_graphs(self) -> Vec<MultiGraph> {
        self.graphs
    }
}

/// Every connected simple graph on `n` vertices, one per isomorphism class.
///
/// A connected graph always has a vertex whose deletion keeps it connected,
/// so adding a vertex with every nonempty neighbourhood to every connected
/// graph on `n - 1` vertices reaches all classes.
pub fn connected_graphs(n: usize) -> Vec<MultiGraph> {
    let mut level = vec![MultiGraph::empty(1).expect("valid")];
    for m in 2..=n {
        let mut classes = IsoClasses::new();
        for g in &level {
            for subset in 1u64..(1 << (m - 1)) {
                let mut pairs: Vec<(Vertex, Vertex)> = g.edges().to_vec();
                pairs.extend(mask_vertices(subset).map(|v| (v, m - 1)));
                classes.insert(MultiGraph::new(m, pairs).expect("valid"));
            }
        }
        level = classes.into_graphs();
    }
    if n == 0 {
        Vec::new()
    } else {
        level
    }
}

/// Connected simple matching covered graphs on `n` vertices up to isomorphism.
pub fn matching_covered_graphs(n: usize) -> Vec<MultiGraph> {
    connected_graphs(n)
        .into_iter()
        .filter(is_matching_covered)
        .collect()
}

/// Matching covered graphs of every even order from 2 to `max_order`.
pub fn matching_covered_up_to(max_order: usize) -> Vec<MultiGraph> {
    (1..=max_order / 2)
        .flat_map(|h| matching_covered_graphs(2 * h))
        .collect()
}

/// A family member with extra parallel edges and shuffled labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    pub base: String,
    pub graph: MultiGraph,
}

/// The members that perturbations start from.
pub fn perturbation_bases() -> Vec<(String, MultiGraph)> {
    let mut out = vec![
        ("k2".to_string(), families::k2_multi(1).expect("valid")),
        ("c4".into(), families::cycle(4).expect("valid")),
        ("c6".into(), families::cycle(6).expect("valid")),
        ("k4".into(), families::complete(4).expect("valid")),
        ("k33".into(), families::k33()),
        ("k4_splice_k33".into(), families::k4_splice_k33()),
        ("murty".into(), families::murty_graph(0)),
        ("prism6".into(), families::prism(6).expect("valid")),
        ("cube".into(), families::cube()),
    ];
    for k in 2..=3 {
        out.push((
            format!("w{}", 2 * k + 1),
            families::odd_wheel(k, None).expect("valid"),
        ));
    }
    out
}

/// `count` seeded perturbations: a random base, one to three extra copies
/// of random edges, and a random relabelling.
pub fn perturbations(seed: u64, count: usize) -> Vec<Perturbation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = perturbation_bases();
    (0..count)
        .map(|_| {
            let (name, base) = bases.choose(&mut rng).expect("nonempty");
            let mut g = base.clone();
            for _ in 0..rng.random_range(1..=3) {
                let e = rng.random_range(0..g.edge_count());
                let (u, v) = g.endpoints(e);
                g = g.with_edge(u, v).expect("valid");
            }
            let mut perm: Vec<Vertex> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut rng);
            Perturbation {
                base: name.clone(),
                graph: g.relabel(&perm),
            }
        })
        .collect()
}

/// A uniformly random relabelling of `g`.
pub fn random_relabel(g: &MultiGraph, rng: &mut impl Rng) -> MultiGraph {
    let mut perm: Vec<Vertex> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn matching_covered_small() {
        assert_eq!(matching_covered_graphs(2).len(), 1);
        // C4 and K4.
        let four = matching_covered_graphs(4);
        assert_eq!(four.len(), 2);
        assert!(four.iter().all(|g| g.min_degree() >= 2));
    }

    #[test]
    fn perturbations_are_reproducible() {
        let a = perturbations(7, 20);
        assert_eq!(a, perturbations(7, 20));
        assert!(a.iter().all(|p| !p.graph.is_simple()));
        assert!(a.iter().all(|p| is_matching_covered(&p.graph)));
    }
}
