//! Tight cuts, C-contractions, the tight cut decomposition and the brick and
//! brace predicates.
//!
//! A cut `∂(X)` of a matching covered graph is tight when every perfect
//! matching meets it in exactly one edge. Since `|M ∩ ∂(X)|` has the parity
//! of `|X|`, an odd cut fails to be tight exactly when some perfect matching
//! uses three of its edges, and that is decided by trying every triple of
//! pairwise disjoint boundary edges. No enumeration of perfect matchings is
//! needed.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cut_from_mask, mask_vertices, Cut, EdgeId, MultiGraph, Vertex, VertexMask};
use crate::matching::{ensure_matching_covered, is_matchable_within, is_matching_covered};

/// Memoised matchability of vertex subsets of one graph.
struct Matchability<'g> {
    g: &'g MultiGraph,
    cache: HashMap<VertexMask, bool>,
}

impl<'g> Matchability<'g> {
    fn new(g: &'g MultiGraph) -> Self {
        Matchability {
            g,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, mask: VertexMask) -> bool {
        let g = self.g;
        *self
            .cache
            .entry(mask)
            .or_insert_with(|| is_matchable_within(g, mask))
    }

    /// Tightness of `∂(shore)`, assuming the graph is matching covered.
    fn is_tight(&mut self, shore: VertexMask) -> bool {
        if shore.count_ones().is_multiple_of(2) {
            return false;
        }
        let all = self.g.vertex_mask();
        let mut pairs: Vec<VertexMask> = self
            .g
            .boundary(shore)
            .into_iter()
            .map(|e| {
                let (u, v) = self.g.endpoints(e);
                (1u64 << u) | (1u64 << v)
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                if pairs[i] & pairs[j] != 0 {
                    continue;
                }
                for k in j + 1..pairs.len() {
                    let used = pairs[i] | pairs[j];
                    if used & pairs[k] != 0 {
                        continue;
                    }
                    if self.get(all & !(used | pairs[k])) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn is_tight_cut(g: &MultiGraph, c: &Cut) -> Result<bool> {
    ensure_matching_covered(g)?;
    let cut = cut_from_mask(g, c.shore_mask())?;
    if cut.boundary != c.boundary || cut.co_shore != c.co_shore {
        return Err(Error::PreconditionViolated(
            "cut does not belong to this graph".into(),
        ));
    }
    Ok(Matchability::new(g).is_tight(c.shore_mask()))
}

/// Visits candidate shores containing vertex 0: odd sizes from 3 to `n - 3`
/// ascending, each size in lexicographic order, shore and co-shore connected.
fn for_each_candidate_shore<F>(g: &MultiGraph, mut visit: F)
where
    F: FnMut(VertexMask) -> ControlFlow<()>,
{
    fn pick<F: FnMut(VertexMask) -> ControlFlow<()>>(
        g: &MultiGraph,
        next: Vertex,
        left: usize,
        chosen: VertexMask,
        visit: &mut F,
    ) -> ControlFlow<()> {
        let n = g.vertex_count();
        if left == 0 {
            let rest = g.vertex_mask() & !chosen;
            if g.is_connected_within(chosen) && g.is_connected_within(rest) {
                visit(chosen)?;
            }
            return ControlFlow::Continue(());
        }
        for v in next..=n - left {
            pick(g, v + 1, left - 1, chosen | (1 << v), visit)?;
        }
        ControlFlow::Continue(())
    }
    let n = g.vertex_count();
    let mut size = 3;
    while size + 3 <= n {
        if pick(g, 1, size - 1, 1, &mut visit).is_break() {
            return;
        }
        size += 2;
    }
}

/// The first nontrivial tight cut in candidate order, if any.
pub fn find_nontrivial_tight_cut(g: &MultiGraph) -> Result<Option<Cut>> {
    ensure_matching_covered(g)?;
    Ok(first_tight_cut_unchecked(g))
}

fn first_tight_cut_unchecked(g: &MultiGraph) -> Option<Cut> {
    let mut oracle = Matchability::new(g);
    let mut found = None;
    for_each_candidate_shore(g, |shore| {
        if oracle.is_tight(shore) {
            found = Some(shore);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found.map(|s| cut_from_mask(g, s).expect("candidate shores are proper"))
}

/// Every nontrivial tight cut, each listed once by its shore containing
/// vertex 0.
pub fn all_nontrivial_tight_cuts(g: &MultiGraph) -> Result<Vec<Cut>> {
    ensure_matching_covered(g)?;
    let mut oracle = Matchability::new(g);
    let mut shores = Vec::new();
    for_each_candidate_shore(g, |shore| {
        if oracle.is_tight(shore) {
            shores.push(shore);
        }
        ControlFlow::Continue(())
    });
    Ok(shores
        .into_iter()
        .map(|s| cut_from_mask(g, s).expect("candidate shores are proper"))
        .collect())
}

/// Turns a 2-edge nontrivial tight cut into one with at least four edges in
/// a graph of minimum degree three. With `C = {uū, vv̄}` and `u, v` in the
/// shore `X`, returns `∂(X - u + v̄)`; `u` is the shore end of the lower edge id.
pub fn widen_two_edge_tight_cut(g: &MultiGraph, c: &Cut) -> Result<Cut> {
    if c.boundary.len() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "cut has {} edges, expected 2",
            c.boundary.len()
        )));
    }
    if g.min_degree() < 3 {
        return Err(Error::PreconditionViolated(
            "minimum degree is below three".into(),
        ));
    }
    if c.is_trivial() {
        return Err(Error::TrivialCut);
    }
    if !is_tight_cut(g, c)? {
        return Err(Error::PreconditionViolated("cut is not tight".into()));
    }
    let x = c.shore_mask();
    let ends = |e: EdgeId| {
        let (a, b) = g.endpoints(e);
        if (x >> a) & 1 == 1 {
            (a, b)
        } else {
            (b, a)
        }
    };
    let (u, _) = ends(c.boundary[0]);
    let (v, v_bar) = ends(c.boundary[1]);
    if u == v {
        return Err(Error::PreconditionViolated(
            "both cut edges share a shore end".into(),
        ));
    }
    cut_from_mask(g, (x & !(1 << u)) | (1 << v_bar))
}

/// `G/X̄` or `G/X`: one shore kept, the other shrunk to a single vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// Original vertex of each kept vertex; the contraction vertex is last
    /// and maps to `None`.
    pub vertex_map: Vec<Option<Vertex>>,
    /// Original id of each edge.
    pub edge_map: Vec<EdgeId>,
}

impl Contraction {
    pub fn contraction_vertex(&self) -> Vertex {
        self.vertex_map.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CContractions {
    /// `G/X̄`, keeping the shore.
    pub shore_side: Contraction,
    /// `G/X`, keeping the co-shore.
    pub co_shore_side: Contraction,
}

fn contract_complement(g: &MultiGraph, keep: VertexMask) -> Contraction {
    let kept: Vec<Vertex> = mask_vertices(keep).collect();
    let hub = kept.len();
    let mut index = vec![hub; g.vertex_count()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut pairs = Vec::new();
    let mut edge_map = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if (keep >> u) & 1 == 1 || (keep >> v) & 1 == 1 {
            pairs.push((index[u], index[v]));
            edge_map.push(e);
        }
    }
    let mut vertex_map: Vec<Option<Vertex>> = kept.into_iter().map(Some).collect();
    vertex_map.push(None);
    Contraction {
        graph: MultiGraph::new(hub + 1, pairs)
            .expect("contraction of a loopless graph across a cut is loopless"),
        vertex_map,
        edge_map,
    }
}

pub fn c_contractions(g: &MultiGraph, c: &Cut) -> Result<CContractions> {
    if c.is_trivial() {
        return Err(Error::TrivialCut);
    }
    let x = c.shore_mask();
    cut_from_mask(g, x)?;
    Ok(CContractions {
        shore_side: contract_complement(g, x),
        co_shore_side: contract_complement(g, g.vertex_mask() & !x),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    Brick,
    Brace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum DecompositionTree {
    Leaf {
        graph: MultiGraph,
        kind: LeafKind,
    },
    Split {
        graph: MultiGraph,
        cut: Cut,
        shore_side: Box<Subtree>,
        co_shore_side: Box<Subtree>,
    },
}

/// A child of a split: the contraction maps back to the parent and the
/// decomposition of the contracted graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subtree {
    pub vertex_map: Vec<Option<Vertex>>,
    pub edge_map: Vec<EdgeId>,
    pub tree: DecompositionTree,
}

/// The number of bricks in a tight cut decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BInvariant(pub usize);

impl DecompositionTree {
    pub fn graph(&self) -> &MultiGraph {
        match self {
            DecompositionTree::Leaf { graph, .. } | DecompositionTree::Split { graph, .. } => graph,
        }
    }

    /// Leaves left to right.
    pub fn leaves(&self) -> Vec<(&MultiGraph, LeafKind)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(&'a MultiGraph, LeafKind)>) {
        match self {
            DecompositionTree::Leaf { graph, kind } => out.push((graph, *kind)),
            DecompositionTree::Split {
                shore_side,
                co_shore_side,
                ..
            } => {
                shore_side.tree.collect_leaves(out);
                co_shore_side.tree.collect_leaves(out);
            }
        }
    }

    pub fn b_invariant(&self) -> BInvariant {
        BInvariant(
            self.leaves()
                .iter()
                .filter(|(_, k)| *k == LeafKind::Brick)
                .count(),
        )
    }

    /// Re-checks the whole tree: every split cut is nontrivial and tight,
    /// every child is the matching covered contraction it claims to be, and
    /// every leaf is free of nontrivial tight cuts and labelled by parity.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidCertificate(msg.into()));
        match self {
            DecompositionTree::Leaf { graph, kind } => {
                if !is_matching_covered(graph) {
                    return bad("leaf is not matching covered");
                }
                if first_tight_cut_unchecked(graph).is_some() {
                    return bad("leaf has a nontrivial tight cut");
                }
                let expected = if graph.is_bipartite() {
                    LeafKind::Brace
                } else {
                    LeafKind::Brick
                };
                if *kind != expected {
                    return bad("leaf label does not match bipartiteness");
                }
                Ok(())
            }
            DecompositionTree::Split {
                graph,
                cut,
                shore_side,
                co_shore_side,
            } => {
                if cut.is_trivial() {
                    return bad("split on a trivial cut");
                }
                if !is_tight_cut(graph, cut)? {
                    return bad("split cut is not tight");
                }
                let cc = c_contractions(graph, cut)?;
                for (child, side) in [
                    (shore_side, &cc.shore_side),
                    (co_shore_side, &cc.co_shore_side),
                ] {
                    if child.tree.graph() != &side.graph
                        || child.vertex_map != side.vertex_map
                        || child.edge_map != side.edge_map
                    {
                        return bad("child is not the contraction of its parent");
                    }
                    child.tree.validate()?;
                }
                Ok(())
            }
        }
    }
}

fn decompose_with<F>(g: &MultiGraph, choose: &mut F) -> DecompositionTree
where
    F: FnMut(&MultiGraph) -> Option<Cut>,
{
    match choose(g) {
        None => DecompositionTree::Leaf {
            graph: g.clone(),
            kind: if g.is_bipartite() {
                LeafKind::Brace
            } else {
                LeafKind::Brick
            },
        },
        Some(cut) => {
            let cc = c_contractions(g, &cut).expect("tight cut search returns nontrivial cuts");
            let child = |c: Contraction, choose: &mut F| {
                Box::new(Subtree {
                    tree: decompose_with(&c.graph, choose),
                    vertex_map: c.vertex_map,
                    edge_map: c.edge_map,
                })
            };
            let shore_side = child(cc.shore_side, choose);
            let co_shore_side = child(cc.co_shore_side, choose);
            DecompositionTree::Split {
                graph: g.clone(),
                cut,
                shore_side,
                co_shore_side,
            }
        }
    }
}

/// Decomposition that always splits on the first cut in candidate order.
pub fn tight_cut_decomposition(g: &MultiGraph) -> Result<(DecompositionTree, BInvariant)> {
    ensure_matching_covered(g)?;
    let tree = decompose_with(g, &mut first_tight_cut_unchecked);
    let b = tree.b_invariant();
    Ok((tree, b))
}

/// Decomposition that splits on a uniformly random nontrivial tight cut at
/// every step.
pub fn tight_cut_decomposition_seeded(
    g: &MultiGraph,
    seed: u64,
) -> Result<(DecompositionTree, BInvariant)> {
    ensure_matching_covered(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut choose = |h: &MultiGraph| {
        let mut cuts = all_nontrivial_tight_cuts(h).expect("contractions stay matching covered");
        if cuts.is_empty() {
            None
        } else {
            let i = rng.random_range(0..cuts.len());
            Some(cuts.swap_remove(i))
        }
    };
    let tree = decompose_with(g, &mut choose);
    let b = tree.b_invariant();
    Ok((tree, b))
}

/// The Edmonds–Lovász–Pulleyblank test: `G - u - v` connected and matchable
/// for every pair of distinct vertices.
pub fn is_brick(g: &MultiGraph) -> Result<bool> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(Error::TooSmall);
    }
    if n % 2 == 1 {
        return Ok(false);
    }
    let all = g.vertex_mask();
    for u in 0..n {
        for v in u + 1..n {
            let rest = all & !(1 << u) & !(1 << v);
            if !g.is_connected_within(rest) || !is_matchable_within(g, rest) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_brace(g: &MultiGraph) -> Result<bool> {
    ensure_matching_covered(g)?;
    Ok(g.is_bipartite() && first_tight_cut_unchecked(g).is_none())
}

pub fn is_near_brick(g: &MultiGraph) -> Result<bool> {
    Ok(tight_cut_decomposition(g)?.1 == BInvariant(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, cut_of, underlying_simple};
    use crate::iso::are_isomorphic;
    use crate::matching::enumerate_perfect_matchings;
    use crate::Budget;

    fn k4() -> MultiGraph {
        build_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> MultiGraph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        build_graph(6, &e).unwrap()
    }

    fn c6() -> MultiGraph {
        build_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        build_graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    // a1 a2 b1 b2 b3 t1 t2 t3
    fn k4_splice_k33() -> MultiGraph {
        let mut e = Vec::new();
        for a in 0..2 {
            for b in 2..5 {
                e.push((a, b));
            }
        }
        e.extend([(2, 5), (3, 6), (4, 7), (5, 6), (6, 7), (7, 5)]);
        build_graph(8, &e).unwrap()
    }

    fn petersen() -> MultiGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i + 5, (i + 2) % 5 + 5));
            e.push((i, i + 5));
        }
        build_graph(10, &e).unwrap()
    }

    fn tight_by_enumeration(g: &MultiGraph, c: &Cut) -> bool {
        enumerate_perfect_matchings(g, Budget::default())
            .unwrap()
            .iter()
            .all(|m| c.boundary.iter().filter(|e| m.contains(**e)).count() == 1)
    }

    #[test]
    fn tightness_on_c6() {
        let g = c6();
        for v in 0..6 {
            assert!(is_tight_cut(&g, &cut_of(&g, &[v]).unwrap()).unwrap());
        }
        let three = cut_of(&g, &[0, 1, 2]).unwrap();
        assert!(is_tight_cut(&g, &three).unwrap());
        assert!(!is_tight_cut(&g, &cut_of(&g, &[0, 1]).unwrap()).unwrap());
        let star = build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            is_tight_cut(&star, &cut_of(&star, &[0]).unwrap()),
            Err(Error::NotMatchingCovered)
        );
    }

    #[test]
    fn triple_test_agrees_with_enumeration() {
        for g in [k4(), k33(), c6(), k4_splice_k33(), cycle(8)] {
            let n = g.vertex_count();
            for mask in 1..(1u64 << n) - 1 {
                let c = cut_from_mask(&g, mask).unwrap();
                assert_eq!(
                    is_tight_cut(&g, &c).unwrap(),
                    tight_by_enumeration(&g, &c),
                    "shore {:?}",
                    c.shore
                );
            }
        }
    }

    #[test]
    fn finding_tight_cuts() {
        assert_eq!(find_nontrivial_tight_cut(&k4()).unwrap(), None);
        assert_eq!(find_nontrivial_tight_cut(&k33()).unwrap(), None);
        let g = k4_splice_k33();
        let c = find_nontrivial_tight_cut(&g).unwrap().unwrap();
        let triangle = cut_of(&g, &[5, 6, 7]).unwrap();
        assert_eq!(c.boundary, triangle.boundary);
        assert_eq!(c.boundary.len(), 3);
    }

    #[test]
    fn contractions() {
        let g = k4_splice_k33();
        let c = cut_of(&g, &[5, 6, 7]).unwrap();
        let cc = c_contractions(&g, &c).unwrap();
        assert!(are_isomorphic(&cc.shore_side.graph, &k4()).is_some());
        assert!(are_isomorphic(&cc.co_shore_side.graph, &k33()).is_some());
        assert_eq!(
            cc.shore_side.vertex_map,
            vec![Some(5), Some(6), Some(7), None]
        );

        let g = c6();
        let cc = c_contractions(&g, &cut_of(&g, &[0, 1, 2]).unwrap()).unwrap();
        assert!(are_isomorphic(&cc.shore_side.graph, &cycle(4)).is_some());
        assert!(are_isomorphic(&cc.co_shore_side.graph, &cycle(4)).is_some());
        assert_eq!(
            c_contractions(&g, &cut_of(&g, &[0]).unwrap()),
            Err(Error::TrivialCut)
        );

        // The Murty graph is a brick; deleting a1a2 brings the cut back.
        let murty = k4_splice_k33().with_edge(0, 1).unwrap();
        let c = cut_of(&murty, &[5, 6, 7]).unwrap();
        assert!(!is_tight_cut(&murty, &c).unwrap());
        assert!(is_brick(&murty).unwrap());
        let back = murty.without_edge(12).unwrap();
        assert_eq!(back, k4_splice_k33());
        assert!(is_tight_cut(&back, &cut_of(&back, &[5, 6, 7]).unwrap()).unwrap());
    }

    #[test]
    fn decompositions() {
        let (t, b) = tight_cut_decomposition(&k4_splice_k33()).unwrap();
        assert_eq!(b, BInvariant(1));
        t.validate().unwrap();
        let leaves = t.leaves();
        assert_eq!(leaves.len(), 2);
        let mut kinds: Vec<LeafKind> = leaves.iter().map(|l| l.1).collect();
        kinds.sort();
        assert_eq!(kinds, vec![LeafKind::Brick, LeafKind::Brace]);

        for g in [k33(), c6(), cycle(8)] {
            let (t, b) = tight_cut_decomposition(&g).unwrap();
            assert_eq!(b, BInvariant(0));
            t.validate().unwrap();
        }
        let c6bar = build_graph(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap();
        let (t, b) = tight_cut_decomposition(&c6bar).unwrap();
        assert!(matches!(
            t,
            DecompositionTree::Leaf {
                kind: LeafKind::Brick,
                ..
            }
        ));
        assert_eq!(b, BInvariant(1));
    }

    #[test]
    fn seeded_decompositions_agree() {
        let g = k4_splice_k33();
        let simple = |t: &DecompositionTree| -> Vec<MultiGraph> {
            t.leaves()
                .iter()
                .map(|(g, _)| underlying_simple(g))
                .collect()
        };
        let (base, _) = tight_cut_decomposition(&g).unwrap();
        for seed in 0..10 {
            let (t, b) = tight_cut_decomposition_seeded(&g, seed).unwrap();
            t.validate().unwrap();
            assert_eq!(b, BInvariant(1));
            let mut want = simple(&base);
            for h in simple(&t) {
                let i = want
                    .iter()
                    .position(|w| are_isomorphic(w, &h).is_some())
                    .unwrap();
                want.swap_remove(i);
            }
        }
    }

    #[test]
    fn bricks_and_braces() {
        assert!(is_brick(&k4()).unwrap());
        assert!(!is_brick(&k33()).unwrap());
        assert!(is_brick(&petersen()).unwrap());
        assert_eq!(is_brick(&cycle(3)), Err(Error::TooSmall));
        assert!(is_brace(&k33()).unwrap());
        assert!(!is_brace(&c6()).unwrap());
        assert!(is_brace(&build_graph(2, &[(0, 1), (0, 1)]).unwrap()).unwrap());
        assert!(is_near_brick(&k4_splice_k33()).unwrap());
        assert!(!is_near_brick(&k33()).unwrap());
        assert!(is_near_brick(&petersen()).unwrap());
    }

    #[test]
    fn widening() {
        let g = k4_splice_k33();
        let c = cut_of(&g, &[5, 6, 7]).unwrap();
        assert!(matches!(
            widen_two_edge_tight_cut(&g, &c),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn tree_json() {
        let (t, _) = tight_cut_decomposition(&k4_splice_k33()).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["node"], "split");
        assert_eq!(v["cut"]["shore"].as_array().unwrap().len(), 5);
        let back: DecompositionTree = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }
}
