//! Bicontraction of degree-two vertices and the retract.

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, Vertex};
use crate::matching::ensure_matching_covered;

/// One bicontraction with the maps back to its input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicontraction {
    pub graph: MultiGraph,
    /// New vertex of every input vertex.
    pub vertex_map: Vec<Vertex>,
    /// Input id of every surviving edge.
    pub edge_map: Vec<EdgeId>,
    /// Edges joining the two neighbours, deleted because they became loops.
    pub loops_deleted: usize,
}

/// Degree two with two distinct neighbours.
pub fn is_bicontractible(g: &MultiGraph, v: Vertex) -> bool {
    v < g.vertex_count() && g.degree(v) == 2 && g.neighbours(v).len() == 2
}

/// Merges `v` with its neighbours `u` and `w`. The merged vertex takes the
/// place of `min(u, w)`; the other vertices keep their relative order.
pub fn bicontract_traced(g: &MultiGraph, v: Vertex) -> Result<Bicontraction> {
    let n = g.vertex_count();
    if v >= n {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: n,
        });
    }
    if g.degree(v) != 2 {
        return Err(Error::NotDegreeTwo(v));
    }
    let nb = g.neighbours(v);
    if nb.len() != 2 {
        return Err(Error::ParallelPairAtV(v));
    }
    let (keep, gone) = (nb[0].min(nb[1]), nb[0].max(nb[1]));
    let mut vertex_map = vec![0; n];
    let mut next = 0;
    for (x, slot) in vertex_map.iter_mut().enumerate() {
        if x != v && x != gone {
            *slot = next;
            next += 1;
        }
    }
    vertex_map[v] = vertex_map[keep];
    vertex_map[gone] = vertex_map[keep];
    let mut pairs = Vec::new();
    let mut edge_map = Vec::new();
    let mut loops_deleted = 0;
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == v || b == v {
            continue;
        }
        let (a, b) = (vertex_map[a], vertex_map[b]);
        if a == b {
            loops_deleted += 1;
        } else {
            pairs.push((a, b));
            edge_map.push(e);
        }
    }
    Ok(Bicontraction {
        graph: MultiGraph::new(n - 2, pairs)?,
        vertex_map,
        edge_map,
        loops_deleted,
    })
}

pub fn bicontract(g: &MultiGraph, v: Vertex) -> Result<MultiGraph> {
    Ok(bicontract_traced(g, v)?.graph)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractResult {
    pub graph: MultiGraph,
    /// Final vertex of every original vertex.
    pub vertex_trace: Vec<Vertex>,
    /// Original id of every final edge.
    pub edge_trace: Vec<EdgeId>,
    /// Bicontracted vertices, each in the labels current at its step.
    pub steps: Vec<Vertex>,
    pub loops_deleted: usize,
}

fn retract_by<F>(g: &MultiGraph, mut choose: F) -> Result<RetractResult>
where
    F: FnMut(&[Vertex]) -> Vertex,
{
    ensure_matching_covered(g)?;
    let mut r = RetractResult {
        graph: g.clone(),
        vertex_trace: (0..g.vertex_count()).collect(),
        edge_trace: (0..g.edge_count()).collect(),
        steps: Vec::new(),
        loops_deleted: 0,
    };
    while r.graph.vertex_count() > 2 {
        let eligible: Vec<Vertex> = (0..r.graph.vertex_count())
            .filter(|&v| is_bicontractible(&r.graph, v))
            .collect();
        if eligible.is_empty() {
            break;
        }
        let v = choose(&eligible);
        let b = bicontract_traced(&r.graph, v)?;
        for t in r.vertex_trace.iter_mut() {
            *t = b.vertex_map[*t];
        }
        r.edge_trace = b.edge_map.iter().map(|&e| r.edge_trace[e]).collect();
        r.steps.push(v);
        r.loops_deleted += b.loops_deleted;
        r.graph = b.graph;
    }
    Ok(r)
}

/// Bicontracts the lowest eligible vertex until none is left or two
/// vertices remain.
pub fn retract_of(g: &MultiGraph) -> Result<RetractResult> {
    retract_by(g, |eligible| eligible[0])
}

/// Same as [`retract_of`] with the eligible vertex drawn at random at each
/// step. The result is isomorphic to the deterministic one.
pub fn retract_seeded(g: &MultiGraph, seed: u64) -> Result<RetractResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    retract_by(g, |eligible| *eligible.choose(&mut rng).expect("nonempty"))
}
