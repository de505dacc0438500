//! Perfect matchings: existence, enumeration, and the matching covered and
//! conformal predicates.
//!
//! Matchability goes through Edmonds' blossom algorithm on the subgraph
//! induced by a vertex mask. Enumeration is plain backtracking on the lowest
//! uncovered vertex, trying incident edges by ascending id, so the output
//! order is fixed. A matching is a set of edge ids, so parallel edges give
//! distinct matchings.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::cycles::{cycles_of_two_regular, CycleSeq};
use crate::error::{Error, Result};
use crate::graph::{mask_of, mask_vertices, EdgeId, MultiGraph, Vertex, VertexMask};
use crate::Budget;

/// Sorted edge ids covering every vertex of the host exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PerfectMatching {
    pub edges: Vec<EdgeId>,
}

impl PerfectMatching {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        PerfectMatching { edges }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Checks that the edges cover exactly the vertices in `within`, each once.
    pub fn validate_within(&self, g: &MultiGraph, within: VertexMask) -> Result<()> {
        let mut covered: VertexMask = 0;
        for &e in &self.edges {
            if e >= g.edge_count() {
                return Err(Error::InvalidMatching(format!("unknown edge {e}")));
            }
            let (u, v) = g.endpoints(e);
            let pair = (1u64 << u) | (1u64 << v);
            if covered & pair != 0 {
                return Err(Error::InvalidMatching(format!(
                    "edge {e} meets an already covered vertex"
                )));
            }
            covered |= pair;
        }
        if covered != within & g.vertex_mask() {
            return Err(Error::InvalidMatching(
                "matching does not cover exactly the required vertices".into(),
            ));
        }
        Ok(())
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        self.validate_within(g, g.vertex_mask())
    }

    /// `partner[v]` for every covered vertex.
    pub fn partners(&self, g: &MultiGraph) -> Vec<Option<Vertex>> {
        let mut p = vec![None; g.vertex_count()];
        for &e in &self.edges {
            let (u, v) = g.endpoints(e);
            p[u] = Some(v);
            p[v] = Some(u);
        }
        p
    }
}

/// Edmonds' blossom search for a maximum matching on the subgraph induced
/// by `active`. Returns the mate of every vertex.
fn blossom_mates(g: &MultiGraph, active: VertexMask) -> Vec<Option<Vertex>> {
    const NONE: usize = usize::MAX;
    let n = g.vertex_count();
    let adj: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            if (active >> v) & 1 == 0 {
                Vec::new()
            } else {
                mask_vertices(g.neighbour_mask(v) & active).collect()
            }
        })
        .collect();
    let mut mate = vec![NONE; n];
    // Greedy start.
    for v in mask_vertices(active) {
        if mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| mate[w] == NONE) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }

    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut in_blossom = vec![false; n];

    let lca = |mut a: usize, mut b: usize, base: &[usize], mate: &[usize], parent: &[usize]| {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    fn mark_path(
        mut v: usize,
        b: usize,
        mut child: usize,
        base: &[usize],
        mate: &[usize],
        parent: &mut [usize],
        in_blossom: &mut [bool],
    ) {
        while base[v] != b {
            in_blossom[base[v]] = true;
            in_blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    for root in mask_vertices(active) {
        if mate[root] != NONE {
            continue;
        }
        parent.iter_mut().for_each(|p| *p = NONE);
        used.iter_mut().for_each(|u| *u = false);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut end = NONE;
        'bfs: while let Some(v) = queue.pop_front() {
            for &to in &adj[v] {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                    let cur = lca(v, to, &base, &mate, &parent);
                    in_blossom.iter_mut().for_each(|b| *b = false);
                    mark_path(v, cur, to, &base, &mate, &mut parent, &mut in_blossom);
                    mark_path(to, cur, v, &base, &mate, &mut parent, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == NONE {
                    parent[to] = v;
                    if mate[to] == NONE {
                        end = to;
                        break 'bfs;
                    }
                    let next = mate[to];
                    used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        let mut v = end;
        while v != NONE {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    mate.into_iter()
        .map(|m| if m == NONE { None } else { Some(m) })
        .collect()
}

/// A perfect matching of the subgraph induced by `within`, if one exists.
/// Between a matched pair the lowest edge id is used.
pub fn find_perfect_matching_within(g: &MultiGraph, within: VertexMask) -> Option<PerfectMatching> {
    let within = within & g.vertex_mask();
    if within.count_ones() % 2 == 1 {
        return None;
    }
    let mates = blossom_mates(g, within);
    let mut edges = Vec::new();
    for v in mask_vertices(within) {
        let w = mates[v]?;
        if v < w {
            edges.push(*g.edges_between(v, w).first()?);
        }
    }
    Some(PerfectMatching::new(edges))
}

pub fn is_matchable_within(g: &MultiGraph, within: VertexMask) -> bool {
    let within = within & g.vertex_mask();
    if within == 0 {
        return true;
    }
    if within.count_ones() % 2 == 1 {
        return false;
    }
    // A vertex with no neighbour inside the set can never be covered.
    if mask_vertices(within).any(|v| g.neighbour_mask(v) & within == 0) {
        return false;
    }
    find_perfect_matching_within(g, within).is_some()
}

/// The empty graph is matchable.
pub fn is_matchable(g: &MultiGraph) -> bool {
    is_matchable_within(g, g.vertex_mask())
}

/// Visits the perfect matchings of the subgraph induced by `within` in
/// enumeration order.
pub fn for_each_perfect_matching<F>(
    g: &MultiGraph,
    within: VertexMask,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[EdgeId]) -> ControlFlow<()>,
{
    fn go<F: FnMut(&[EdgeId]) -> ControlFlow<()>>(
        g: &MultiGraph,
        uncovered: VertexMask,
        chosen: &mut Vec<EdgeId>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if uncovered == 0 {
            return visit(chosen);
        }
        let v = uncovered.trailing_zeros() as usize;
        for &e in g.incident(v) {
            let w = g.other_end(e, v);
            if (uncovered >> w) & 1 == 0 {
                continue;
            }
            let rest = uncovered & !(1 << v) & !(1 << w);
            if mask_vertices(rest).any(|x| g.neighbour_mask(x) & rest == 0) {
                continue;
            }
            chosen.push(e);
            let flow = go(g, rest, chosen, visit);
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    let within = within & g.vertex_mask();
    if within.count_ones() % 2 == 1 {
        return ControlFlow::Continue(());
    }
    go(g, within, &mut Vec::new(), &mut visit)
}

/// Every perfect matching, in enumeration order. Fails with
/// `BudgetExhausted` when there are more than `budget`.
pub fn enumerate_perfect_matchings(g: &MultiGraph, budget: Budget) -> Result<Vec<PerfectMatching>> {
    let mut out = Vec::new();
    let flow = for_each_perfect_matching(g, g.vertex_mask(), |edges| {
        if out.len() as u64 >= budget.0 {
            return ControlFlow::Break(());
        }
        out.push(PerfectMatching::new(edges.to_vec()));
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(Error::BudgetExhausted(budget.0)),
        ControlFlow::Continue(()) => Ok(out),
    }
}

/// Connected, at least two vertices, and every edge in some perfect matching.
pub fn is_matching_covered(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if n < 2 || n % 2 == 1 || !g.is_connected() || !is_matchable(g) {
        return false;
    }
    let all = g.vertex_mask();
    let mut checked = std::collections::BTreeSet::new();
    g.edges().iter().all(|&(u, v)| {
        let key = (u.min(v), u.max(v));
        !checked.insert(key) || is_matchable_within(g, all & !(1 << u) & !(1 << v))
    })
}

pub fn ensure_matching_covered(g: &MultiGraph) -> Result<()> {
    if is_matching_covered(g) {
        Ok(())
    } else {
        Err(Error::NotMatchingCovered)
    }
}

/// True iff `g - vertex_set` is matchable.
pub fn is_conformal(g: &MultiGraph, vertex_set: &[Vertex]) -> bool {
    is_matchable_within(g, g.vertex_mask() & !mask_of(vertex_set.iter().copied()))
}

/// The cycles of `m1 △ m2`.
pub fn symmetric_difference_cycles(
    g: &MultiGraph,
    m1: &PerfectMatching,
    m2: &PerfectMatching,
) -> Result<Vec<CycleSeq>> {
    m1.validate(g)?;
    m2.validate(g)?;
    let diff: Vec<EdgeId> = m1
        .edges
        .iter()
        .filter(|e| !m2.contains(**e))
        .chain(m2.edges.iter().filter(|e| !m1.contains(**e)))
        .copied()
        .collect();
    cycles_of_two_regular(g, &diff)
}
