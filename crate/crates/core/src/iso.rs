//! Multiplicity-preserving isomorphism by backtracking.
//!
//! Target graphs have at most a couple dozen vertices, so a plain search over
//! the multiplicity matrix with invariant-based candidate filtering suffices.

use serde::{Deserialize, Serialize};

use crate::graph::{MultiGraph, Vertex};

/// `mapping[v]` is the image in the second graph of vertex `v` of the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub mapping: Vec<Vertex>,
}

impl IsoWitness {
    /// Independent check: bijection and equal multiplicities on every pair.
    pub fn validates(&self, g: &MultiGraph, h: &MultiGraph) -> bool {
        let n = g.vertex_count();
        if h.vertex_count() != n || self.mapping.len() != n || g.edge_count() != h.edge_count() {
            return false;
        }
        let mut hit = vec![false; n];
        for &w in &self.mapping {
            if w >= n || hit[w] {
                return false;
            }
            hit[w] = true;
        }
        let mg = g.multiplicity_matrix();
        let mh = h.multiplicity_matrix();
        (0..n).all(|u| (0..n).all(|v| mg[u][v] == mh[self.mapping[u]][self.mapping[v]]))
    }

    pub fn inverse(&self) -> IsoWitness {
        let mut inv = vec![0; self.mapping.len()];
        for (v, &w) in self.mapping.iter().enumerate() {
            inv[w] = v;
        }
        IsoWitness { mapping: inv }
    }
}

/// Per-vertex invariant: degree, distinct-neighbour count, sorted neighbour
/// multiplicities and sorted neighbour degrees.
fn vertex_invariants(g: &MultiGraph, m: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            let mut mults: Vec<usize> = (0..n).map(|w| m[v][w]).filter(|&k| k > 0).collect();
            mults.sort_unstable();
            let mut ndeg: Vec<usize> = (0..n)
                .filter(|&w| m[v][w] > 0)
                .map(|w| g.degree(w) * 64 + m[v][w])
                .collect();
            ndeg.sort_unstable();
            let mut inv = vec![g.degree(v), mults.len()];
            inv.extend(mults);
            inv.push(usize::MAX);
            inv.extend(ndeg);
            inv
        })
        .collect()
}

struct Search<'a> {
    mg: &'a [Vec<usize>],
    mh: &'a [Vec<usize>],
    order: Vec<Vertex>,
    candidates: Vec<Vec<Vertex>>,
    map: Vec<Option<Vertex>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        if self.map[v].is_some() {
            return self.run(depth + 1);
        }
        for i in 0..self.candidates[v].len() {
            let w = self.candidates[v][i];
            if self.used[w] || !self.consistent(v, w) {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.map[v] = None;
            self.used[w] = false;
        }
        false
    }

    fn consistent(&self, v: Vertex, w: Vertex) -> bool {
        self.map.iter().enumerate().all(|(x, img)| match img {
            Some(y) => self.mg[v][x] == self.mh[w][*y],
            None => true,
        })
    }
}

/// A multiplicity-preserving vertex bijection from `g` onto `h`, if any.
pub fn are_isomorphic(g: &MultiGraph, h: &MultiGraph) -> Option<IsoWitness> {
    find_isomorphism_extending(g, h, &[])
}

/// Like [`are_isomorphic`], but the witness must extend the given partial
/// map of `(vertex of g, vertex of h)` pairs.
pub fn find_isomorphism_extending(
    g: &MultiGraph,
    h: &MultiGraph,
    fixed: &[(Vertex, Vertex)],
) -> Option<IsoWitness> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mg = g.multiplicity_matrix();
    let mh = h.multiplicity_matrix();
    let ig = vertex_invariants(g, &mg);
    let ih = vertex_invariants(h, &mh);
    let mut sg = ig.clone();
    let mut sh = ih.clone();
    sg.sort();
    sh.sort();
    if sg != sh {
        return None;
    }
    let candidates: Vec<Vec<Vertex>> = (0..n)
        .map(|v| (0..n).filter(|&w| ig[v] == ih[w]).collect())
        .collect();

    // Connected-first order: each next vertex is adjacent to an earlier one
    // when possible, rarest invariant class first.
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| mg[u][v] > 0).count();
                (
                    links,
                    std::cmp::Reverse(candidates[v].len()),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut search = Search {
        mg: &mg,
        mh: &mh,
        order,
        candidates,
        map: vec![None; n],
        used: vec![false; n],
    };
    for &(v, w) in fixed {
        if v >= n || w >= n || search.used[w] || search.map[v].is_some() {
            return None;
        }
        if ig[v] != ih[w] || !search.consistent(v, w) {
            return None;
        }
        search.map[v] = Some(w);
        search.used[w] = true;
    }
    if search.run(0) {
        Some(IsoWitness {
            mapping: search.map.into_iter().map(Option::unwrap).collect(),
        })
    } else {
        None
    }
}

/// Orbits of the automorphism group, each sorted, ordered by smallest member.
pub fn automorphism_orbits(g: &MultiGraph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut orbit_of: Vec<Option<usize>> = vec![None; n];
    let mut orbits: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        if orbit_of[v].is_some() {
            continue;
        }
        let id = orbits.len();
        orbit_of[v] = Some(id);
        let mut orbit = vec![v];
        for (w, slot) in orbit_of.iter_mut().enumerate().skip(v + 1) {
            if slot.is_none() && find_isomorphism_extending(g, g, &[(v, w)]).is_some() {
                *slot = Some(id);
                orbit.push(w);
            }
        }
        orbits.push(orbit);
    }
    orbits
}
