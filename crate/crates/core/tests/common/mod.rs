//! Brute-force oracles written independently of the library: perfect
//! matchings by plain recursion, Hamiltonian subsets by Held–Karp, and the
//! two polytope properties straight from their definitions.

#![allow(dead_code)]

use std::collections::HashMap;

use matchkit::MultiGraph;

pub fn adjacency(g: &MultiGraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

pub struct Matchable {
    adj: Vec<u64>,
    memo: HashMap<u64, bool>,
}

impl Matchable {
    pub fn new(g: &MultiGraph) -> Self {
        Matchable {
            adj: adjacency(g),
            memo: HashMap::new(),
        }
    }

    pub fn check(&mut self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        if mask.count_ones() % 2 == 1 {
            return false;
        }
        if let Some(&r) = self.memo.get(&mask) {
            return r;
        }
        let v = mask.trailing_zeros() as usize;
        let mut rest = self.adj[v] & mask;
        let mut r = false;
        while rest != 0 && !r {
            let w = rest.trailing_zeros();
            rest &= rest - 1;
            r = self.check(mask & !(1 << v) & !(1u64 << w));
        }
        self.memo.insert(mask, r);
        r
    }
}

/// Every perfect matching as a sorted list of edge ids.
pub fn perfect_matchings(g: &MultiGraph) -> Vec<Vec<usize>> {
    fn go(g: &MultiGraph, left: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let mut m = cur.clone();
            m.sort_unstable();
            out.push(m);
            return;
        }
        let v = left.trailing_zeros() as usize;
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if left & (1 << w) != 0 {
                cur.push(e);
                go(g, left & !(1 << v) & !(1 << w), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let full = if g.vertex_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertex_count()) - 1
    };
    go(g, full, &mut Vec::new(), &mut out);
    out
}

/// Vertex sets of odd size at least three spanned by a cycle.
fn odd_cycle_sets(g: &MultiGraph) -> Vec<u64> {
    let n = g.vertex_count();
    let adj = adjacency(g);
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() < 3 || mask.count_ones() % 2 == 0 {
            continue;
        }
        let s = mask.trailing_zeros() as usize;
        // reach[sub][v]: a path from s through exactly sub ending at v
        let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let k = verts.len();
        let mut reach = vec![vec![false; k]; 1 << k];
        reach[1][0] = true;
        for sub in 1usize..(1 << k) {
            if sub & 1 == 0 {
                continue;
            }
            for i in 0..k {
                if !reach[sub][i] {
                    continue;
                }
                for j in 0..k {
                    if sub & (1 << j) == 0 && adj[verts[i]] & (1 << verts[j]) != 0 {
                        reach[sub | (1 << j)][j] = true;
                    }
                }
            }
        }
        let all = (1 << k) - 1;
        if (1..k).any(|i| reach[all][i] && adj[verts[i]] & (1 << s) != 0) {
            out.push(mask);
        }
    }
    out
}

/// No two disjoint odd cycles whose removal leaves a matchable graph.
pub fn brute_bvn(g: &MultiGraph) -> bool {
    let sets = odd_cycle_sets(g);
    let full = (1u64 << g.vertex_count()) - 1;
    let mut m = Matchable::new(g);
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i + 1..] {
            if a & b == 0 && m.check(full & !a & !b) {
                return false;
            }
        }
    }
    true
}

/// Every two perfect matchings differ in a single cycle.
pub fn brute_pmc(g: &MultiGraph) -> bool {
    let ms = perfect_matchings(g);
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if !single_cycle(g, a, b) {
                return false;
            }
        }
    }
    true
}

fn single_cycle(g: &MultiGraph, a: &[usize], b: &[usize]) -> bool {
    let diff: Vec<usize> = a
        .iter()
        .filter(|e| !b.contains(e))
        .chain(b.iter().filter(|e| !a.contains(e)))
        .copied()
        .collect();
    let mut verts = 0u64;
    for &e in &diff {
        let (u, v) = g.endpoints(e);
        verts |= (1 << u) | (1 << v);
    }
    let mut seen = 1u64 << verts.trailing_zeros();
    loop {
        let mut grown = seen;
        for &e in &diff {
            let (u, v) = g.endpoints(e);
            if seen & ((1 << u) | (1 << v)) != 0 {
                grown |= (1 << u) | (1 << v);
            }
        }
        if grown == seen {
            return seen == verts;
        }
        seen = grown;
    }
}

/// Every perfect matching meets the boundary of `shore` exactly once.
pub fn brute_tight(g: &MultiGraph, shore: u64) -> bool {
    perfect_matchings(g).iter().all(|m| {
        m.iter()
            .filter(|&&e| {
                let (u, v) = g.endpoints(e);
                ((shore >> u) & 1) != ((shore >> v) & 1)
            })
            .count()
            == 1
    })
}

pub fn mask(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}
