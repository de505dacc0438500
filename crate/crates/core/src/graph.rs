//! Loopless undirected multigraphs and cuts.
//!
//! Vertices are `0..n`, edges carry dense identifiers `0..m` in insertion
//! order. Parallel edges are distinct edges with distinct identifiers. Vertex
//! subsets are packed into a `u64`, which caps graphs at [`MAX_VERTICES`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;
/// Bit `v` set means vertex `v` is in the set.
pub type VertexMask = u64;

pub const MAX_VERTICES: usize = 64;

pub fn mask_of<I: IntoIterator<Item = Vertex>>(vertices: I) -> VertexMask {
    vertices.into_iter().fold(0, |acc, v| acc | (1 << v))
}

pub fn full_mask(n: usize) -> VertexMask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_vertices(mask: VertexMask) -> impl Iterator<Item = Vertex> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    incidence: Vec<Vec<EdgeId>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<RawGraph> for MultiGraph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        MultiGraph::new(raw.vertex_count, raw.edges)
    }
}

impl From<MultiGraph> for RawGraph {
    fn from(g: MultiGraph) -> Self {
        RawGraph {
            vertex_count: g.n,
            edges: g.edges,
        }
    }
}

/// Builds a multigraph with edge ids assigned in input order.
pub fn build_graph(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<MultiGraph> {
    MultiGraph::new(n, pairs.iter().copied())
}

impl MultiGraph {
    pub fn new<I: IntoIterator<Item = (Vertex, Vertex)>>(n: usize, pairs: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: n,
                max: MAX_VERTICES,
            });
        }
        let mut g = MultiGraph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        };
        for (u, v) in pairs {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    fn push_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        let id = self.edges.len();
        self.edges.push((u, v));
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        Ok(id)
    }

    /// Returns a copy with one more edge; the new edge gets id `m`.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<MultiGraph> {
        let mut g = self.clone();
        g.push_edge(u, v)?;
        Ok(g)
    }

    /// Returns `g - e`. Edge ids above `e` shift down by one.
    pub fn without_edge(&self, e: EdgeId) -> Result<MultiGraph> {
        if e >= self.edges.len() {
            return Err(Error::UnknownEdge(e));
        }
        MultiGraph::new(
            self.n,
            self.edges
                .iter()
                .enumerate()
                .filter(|&(id, _)| id != e)
                .map(|(_, &p)| p),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_mask(&self) -> VertexMask {
        full_mask(self.n)
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Distinct neighbours of `v`, ascending.
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.incidence[v]
            .iter()
            .map(|&e| self.other_end(e, v))
            .collect();
        set.into_iter().collect()
    }

    pub fn neighbour_mask(&self, v: Vertex) -> VertexMask {
        self.incidence[v]
            .iter()
            .fold(0, |acc, &e| acc | (1 << self.other_end(e, v)))
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&e| self.other_end(e, u) == v)
            .count()
    }

    pub fn edges_between(&self, u: Vertex, v: Vertex) -> Vec<EdgeId> {
        self.incidence[u]
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, u) == v)
            .collect()
    }

    /// Multiplicity matrix, `n x n`.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for &(u, v) in &self.edges {
            m[u][v] += 1;
            m[v][u] += 1;
        }
        m
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Connectivity of the subgraph induced by `mask`. The empty set counts
    /// as connected.
    pub fn is_connected_within(&self, mask: VertexMask) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen: VertexMask = 1 << start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let fresh = self.neighbour_mask(v) & mask & !seen;
            seen |= fresh;
            stack.extend(mask_vertices(fresh));
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_mask())
    }

    /// A proper 2-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for &e in &self.incidence[v] {
                    let w = self.other_end(e, v);
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Edges with exactly one end in `mask`.
    pub fn boundary(&self, mask: VertexMask) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                ((mask >> u) & 1) != ((mask >> v) & 1)
            })
            .collect()
    }

    /// The subgraph induced by `mask`, relabelled in ascending order, with
    /// the map from new vertex to old vertex and new edge to old edge.
    pub fn induced(&self, mask: VertexMask) -> (MultiGraph, Vec<Vertex>, Vec<EdgeId>) {
        let keep: Vec<Vertex> = mask_vertices(mask & self.vertex_mask()).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edge_map = Vec::new();
        let mut pairs = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                pairs.push((index[u], index[v]));
                edge_map.push(e);
            }
        }
        let g = MultiGraph::new(keep.len(), pairs).expect("induced subgraph is valid");
        (g, keep, edge_map)
    }

    /// Applies a vertex relabelling: old vertex `v` becomes `perm[v]`. Edge
    /// ids are kept.
    pub fn relabel(&self, perm: &[Vertex]) -> MultiGraph {
        MultiGraph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabelling a valid graph")
    }
}

/// One edge per adjacent pair, in order of first appearance.
pub fn underlying_simple(g: &MultiGraph) -> MultiGraph {
    let mut seen = BTreeSet::new();
    let pairs: Vec<_> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| seen.insert((u.min(v), u.max(v))))
        .collect();
    MultiGraph::new(g.vertex_count(), pairs).expect("simple subgraph is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub shore: Vec<Vertex>,
    pub co_shore: Vec<Vertex>,
    pub boundary: Vec<EdgeId>,
}

impl Cut {
    pub fn is_trivial(&self) -> bool {
        self.shore.len() == 1 || self.co_shore.len() == 1
    }

    pub fn shore_mask(&self) -> VertexMask {
        mask_of(self.shore.iter().copied())
    }
}

pub fn cut_of(g: &MultiGraph, shore: &[Vertex]) -> Result<Cut> {
    for &v in shore {
        if v >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: g.vertex_count(),
            });
        }
    }
    cut_from_mask(g, mask_of(shore.iter().copied()))
}

pub fn cut_from_mask(g: &MultiGraph, mask: VertexMask) -> Result<Cut> {
    let mask = mask & g.vertex_mask();
    if mask == 0 || mask == g.vertex_mask() {
        return Err(Error::EmptyOrFullShore);
    }
    Ok(Cut {
        shore: mask_vertices(mask).collect(),
        co_shore: mask_vertices(g.vertex_mask() & !mask).collect(),
        boundary: g.boundary(mask),
    })
}
