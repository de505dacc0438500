//! Deterministic cycle enumeration on multigraphs.
//!
//! Every cycle is reported once, in canonical form: it starts at its smallest
//! vertex and, for length three or more, runs in the direction whose second
//! vertex is smaller than its last. A pair of parallel edges is a 2-cycle.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask_vertices, EdgeId, MultiGraph, Vertex, VertexMask};
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleParity {
    Odd,
    Even,
    Any,
}

impl CycleParity {
    fn admits(self, len: usize) -> bool {
        match self {
            CycleParity::Odd => !len.is_multiple_of(2),
            CycleParity::Even => len.is_multiple_of(2),
            CycleParity::Any => true,
        }
    }
}

impl From<Parity> for CycleParity {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Odd => CycleParity::Odd,
            Parity::Even => CycleParity::Even,
        }
    }
}

/// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleSeq {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl CycleSeq {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn parity(&self) -> Parity {
        if self.len() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn vertex_mask(&self) -> VertexMask {
        self.vertices.iter().fold(0, |acc, &v| acc | (1 << v))
    }

    /// Checks the cycle against raw graph data.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        let len = self.vertices.len();
        if len < 2 || self.edges.len() != len {
            return bad(format!(
                "cycle of length {len} with {} edges",
                self.edges.len()
            ));
        }
        if self.vertex_mask().count_ones() as usize != len
            || self.vertices.iter().any(|&v| v >= g.vertex_count())
        {
            return bad("cycle vertices are not distinct graph vertices".into());
        }
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != len {
            return bad("cycle repeats an edge".into());
        }
        for i in 0..len {
            let e = self.edges[i];
            if e >= g.edge_count() {
                return bad(format!("unknown edge {e}"));
            }
            let (a, b) = g.endpoints(e);
            let (x, y) = (self.vertices[i], self.vertices[(i + 1) % len]);
            if !((a == x && b == y) || (a == y && b == x)) {
                return bad(format!("edge {e} does not join {x} and {y}"));
            }
        }
        Ok(())
    }

    /// Rotates and orients the cycle into canonical form.
    pub fn canonical(mut self) -> CycleSeq {
        let len = self.len();
        let start = (0..len).min_by_key(|&i| self.vertices[i]).unwrap_or(0);
        self.vertices.rotate_left(start);
        self.edges.rotate_left(start);
        if len == 2 {
            self.edges.sort_unstable();
        } else if len > 2 && self.vertices[1] > self.vertices[len - 1] {
            self.vertices[1..].reverse();
            self.edges.reverse();
        }
        self
    }

    /// Order used for deterministic tie-breaking: length, then vertex
    /// sequence, then edge sequence.
    pub fn cmp_canonical(&self, other: &CycleSeq) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

struct Walker<'a, F> {
    g: &'a MultiGraph,
    parity: CycleParity,
    visit: F,
    start: Vertex,
    allowed: VertexMask,
    on_path: VertexMask,
    path: Vec<Vertex>,
    path_edges: Vec<EdgeId>,
}

impl<F: FnMut(CycleSeq) -> ControlFlow<()>> Walker<'_, F> {
    fn extend(&mut self, x: Vertex) -> ControlFlow<()> {
        for &e in self.g.incident(x) {
            let y = self.g.other_end(e, x);
            if y == self.start {
                if self.path.len() >= 3 && self.path[1] < x && self.parity.admits(self.path.len()) {
                    let mut edges = self.path_edges.clone();
                    edges.push(e);
                    (self.visit)(CycleSeq {
                        vertices: self.path.clone(),
                        edges,
                    })?;
                }
            } else if (self.allowed >> y) & 1 == 1 && (self.on_path >> y) & 1 == 0 {
                self.on_path |= 1 << y;
                self.path.push(y);
                self.path_edges.push(e);
                let flow = self.extend(y);
                self.path.pop();
                self.path_edges.pop();
                self.on_path &= !(1 << y);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every cycle of the subgraph induced by `within` in deterministic
/// order: by smallest vertex, then 2-cycles, then longer cycles in DFS order
/// over ascending edge ids.
pub fn for_each_cycle<F>(
    g: &MultiGraph,
    within: VertexMask,
    parity: CycleParity,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(CycleSeq) -> ControlFlow<()>,
{
    let within = within & g.vertex_mask();
    for s in mask_vertices(within) {
        if parity.admits(2) {
            let inc = g.incident(s);
            for (i, &e1) in inc.iter().enumerate() {
                let y = g.other_end(e1, s);
                if y < s || (within >> y) & 1 == 0 {
                    continue;
                }
                for &e2 in &inc[i + 1..] {
                    if g.other_end(e2, s) == y {
                        visit(CycleSeq {
                            vertices: vec![s, y],
                            edges: vec![e1, e2],
                        })?;
                    }
                }
            }
        }
        let higher = within & !((2u64 << s) - 1);
        let mut walker = Walker {
            g,
            parity,
            visit: &mut visit,
            start: s,
            allowed: higher,
            on_path: 1 << s,
            path: vec![s],
            path_edges: Vec::new(),
        };
        walker.extend(s)?;
    }
    ControlFlow::Continue(())
}

/// All cycles of the requested parity. Fails with `BudgetExhausted` when more
/// than `budget` cycles exist.
pub fn enumerate_cycles(
    g: &MultiGraph,
    parity: CycleParity,
    budget: Budget,
) -> Result<Vec<CycleSeq>> {
    enumerate_cycles_within(g, g.vertex_mask(), parity, budget)
}

pub fn enumerate_cycles_within(
    g: &MultiGraph,
    within: VertexMask,
    parity: CycleParity,
    budget: Budget,
) -> Result<Vec<CycleSeq>> {
    let mut out = Vec::new();
    let flow = for_each_cycle(g, within, parity, |c| {
        if out.len() as u64 >= budget.0 {
            return ControlFlow::Break(());
        }
        out.push(c);
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(Error::BudgetExhausted(budget.0)),
        ControlFlow::Continue(()) => Ok(out),
    }
}

/// Decomposes an edge set in which every vertex has even degree at most two
/// into its cycles, each in canonical form, sorted canonically.
pub fn cycles_of_two_regular(g: &MultiGraph, edges: &[EdgeId]) -> Result<Vec<CycleSeq>> {
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for &e in edges {
        g.check_edge(e)?;
        let (u, v) = g.endpoints(e);
        at[u].push(e);
        at[v].push(e);
    }
    if at.iter().any(|l| !(l.is_empty() || l.len() == 2)) {
        return Err(Error::PreconditionViolated(
            "edge set is not a disjoint union of cycles".into(),
        ));
    }
    let mut used = vec![false; g.edge_count()];
    let mut cycles = Vec::new();
    for s in 0..g.vertex_count() {
        if at[s].is_empty() || used[at[s][0]] {
            continue;
        }
        let mut vertices = vec![s];
        let mut cyc_edges = Vec::new();
        let mut cur = s;
        let mut e = at[s][0];
        loop {
            used[e] = true;
            cyc_edges.push(e);
            let next = g.other_end(e, cur);
            if next == s {
                break;
            }
            vertices.push(next);
            cur = next;
            e = if at[cur][0] == e {
                at[cur][1]
            } else {
                at[cur][0]
            };
        }
        cycles.push(
            CycleSeq {
                vertices,
                edges: cyc_edges,
            }
            .canonical(),
        );
    }
    cycles.sort_by(|a, b| a.cmp_canonical(b));
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn k4() -> MultiGraph {
        build_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Cycles counted by vertex subsets: a subset of size k in K_n carries
    /// (k-1)!/2 Hamiltonian cycles.
    #[test]
    fn k4_cycle_counts() {
        let odd = enumerate_cycles(&k4(), CycleParity::Odd, Budget::default()).unwrap();
        assert_eq!(odd.len(), 4);
        assert!(odd.iter().all(|c| c.len() == 3));
        let even = enumerate_cycles(&k4(), CycleParity::Even, Budget::default()).unwrap();
        assert_eq!(even.len(), 3);
        for c in odd.iter().chain(&even) {
            c.validate(&k4()).unwrap();
            assert_eq!(c.clone().canonical(), *c);
        }
    }

    #[test]
    fn bipartite_has_no_odd_cycle() {
        let c6 = build_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert!(enumerate_cycles(&c6, CycleParity::Odd, Budget::default())
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_cycles(&c6, CycleParity::Any, Budget::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn parallel_pair_is_one_two_cycle() {
        let g = build_graph(2, &[(0, 1), (0, 1)]).unwrap();
        let even = enumerate_cycles(&g, CycleParity::Even, Budget::default()).unwrap();
        assert_eq!(
            even,
            vec![CycleSeq {
                vertices: vec![0, 1],
                edges: vec![0, 1]
            }]
        );
        let triple = build_graph(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(
            enumerate_cycles(&triple, CycleParity::Any, Budget::default())
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn budget_is_reported() {
        assert_eq!(
            enumerate_cycles(&k4(), CycleParity::Any, Budget(3)),
            Err(Error::BudgetExhausted(3))
        );
    }

    #[test]
    fn parallel_edges_multiply_longer_cycles() {
        // Triangle with one doubled side: two triangles, one 2-cycle.
        let g = build_graph(3, &[(0, 1), (1, 2), (2, 0), (0, 1)]).unwrap();
        let all = enumerate_cycles(&g, CycleParity::Any, Budget::default()).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(all.iter().filter(|c| c.len() == 3).count(), 2);
    }

    #[test]
    fn two_regular_decomposition() {
        let g = k4();
        // Edges 0-1, 2-3 and 0-2, 1-3 form the 4-cycle 0-1-3-2.
        let cycles = cycles_of_two_regular(&g, &[0, 5, 1, 4]).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![0, 1, 3, 2]);
        cycles[0].validate(&g).unwrap();
        assert!(cycles_of_two_regular(&g, &[0, 1, 2]).is_err());
    }
}
