//! Named graphs, the six families recognised on retracts, the Norine–Thomas
//! bricks, and splicing.
//!
//! Labelling conventions:
//!
//! * odd wheel `W_{2k+1}`: rim `0..=2k` in cyclic order, hub `2k+1`; rim
//!   edges first, then the spokes in rim order.
//! * `K4 ⊙ K3,3` and the Murty graph: `a1 a2 b1 b2 b3 t1 t2 t3` are `0..8`.
//! * `P_{2k+1}`: `u0 v0 u1 u2 v2` are `0..5` and rim vertex `w_i` is `5 + i`.
//! * Petersen: outer cycle `0..5`, inner vertex `i + 5` opposite `i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, MultiGraph, Vertex};
use crate::iso::are_isomorphic;

pub const A1: Vertex = 0;
pub const A2: Vertex = 1;
pub const B: [Vertex; 3] = [2, 3, 4];
pub const T: [Vertex; 3] = [5, 6, 7];

/// Vertex names of `P_{2k+1}`.
pub mod p_labels {
    use crate::graph::Vertex;
    pub const U0: Vertex = 0;
    pub const V0: Vertex = 1;
    pub const U1: Vertex = 2;
    pub const U2: Vertex = 3;
    pub const V2: Vertex = 4;
    pub fn w(i: usize) -> Vertex {
        5 + i
    }
}

/// The six vertex pairs of `K4` in the edge order used by [`k4_multi`].
pub const K4_PAIRS: [(Vertex, Vertex); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

fn repeated(pairs: &[((Vertex, Vertex), usize)]) -> Vec<(Vertex, Vertex)> {
    pairs
        .iter()
        .flat_map(|&(p, m)| std::iter::repeat_n(p, m))
        .collect()
}

pub fn k2_multi(multiplicity: usize) -> Result<MultiGraph> {
    if multiplicity == 0 {
        return Err(bad("multiplicity must be at least 1"));
    }
    build_graph(2, &vec![(0, 1); multiplicity])
}

pub fn cycle(n: usize) -> Result<MultiGraph> {
    if n < 3 {
        return Err(bad("a cycle needs at least 3 vertices"));
    }
    build_graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Result<MultiGraph> {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    build_graph(n, &e)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<MultiGraph> {
    let mut e = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            e.push((u, v));
        }
    }
    build_graph(a + b, &e)
}

pub fn k33() -> MultiGraph {
    complete_bipartite(3, 3).expect("valid")
}

/// The 3-cube.
pub fn cube() -> MultiGraph {
    let mut e = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                e.push((v, v | bit));
            }
        }
    }
    build_graph(8, &e).expect("valid")
}

/// `K4` with the given multiplicities on [`K4_PAIRS`].
pub fn k4_multi(mults: [usize; 6]) -> Result<MultiGraph> {
    if mults.contains(&0) {
        return Err(bad("multiplicities must be at least 1"));
    }
    let spec: Vec<_> = K4_PAIRS.iter().copied().zip(mults).collect();
    build_graph(4, &repeated(&spec))
}

pub fn odd_wheel(k: usize, spoke_mults: Option<&[usize]>) -> Result<MultiGraph> {
    if k == 0 {
        return Err(bad("odd wheel needs k >= 1"));
    }
    let r = 2 * k + 1;
    let ones = vec![1; r];
    let mults = spoke_mults.unwrap_or(&ones);
    if mults.len() != r {
        return Err(bad(format!(
            "expected {r} spoke multiplicities, got {}",
            mults.len()
        )));
    }
    if mults.contains(&0) {
        return Err(bad("spoke multiplicities must be at least 1"));
    }
    let mut spec: Vec<_> = (0..r).map(|i| ((i, (i + 1) % r), 1)).collect();
    spec.extend((0..r).map(|i| ((i, r), mults[i])));
    build_graph(r + 1, &repeated(&spec))
}

pub fn k4_splice_k33() -> MultiGraph {
    murty_edges(None)
}

/// `K4 ⊙ K3,3` plus `1 + extra` edges joining `a1` and `a2`.
pub fn murty_graph(extra: usize) -> MultiGraph {
    murty_edges(Some(1 + extra))
}

fn murty_edges(a1a2: Option<usize>) -> MultiGraph {
    let mut e = Vec::new();
    for a in [A1, A2] {
        for b in B {
            e.push((a, b));
        }
    }
    for i in 0..3 {
        e.push((B[i], T[i]));
    }
    e.extend([(T[0], T[1]), (T[1], T[2]), (T[2], T[0])]);
    e.extend(std::iter::repeat_n((A1, A2), a1a2.unwrap_or(0)));
    build_graph(8, &e).expect("valid")
}

/// The brick `P_{2k+1}`: the hub of `W_{2k+1}` split into `u2, u1, v2`, plus
/// `u0, v0`.
pub fn p_brick(k: usize) -> Result<MultiGraph> {
    use p_labels::*;
    if k < 2 {
        return Err(bad("P needs k >= 2"));
    }
    let r = 2 * k + 1;
    let mut e: Vec<(Vertex, Vertex)> = (0..r).map(|i| (w(i), w((i + 1) % r))).collect();
    e.extend([(V2, w(0)), (V2, w(4)), (U1, w(2)), (U2, w(1)), (U2, w(3))]);
    e.extend((5..r).map(|i| (U2, w(i))));
    e.extend([(U0, U2), (U0, U1), (U0, V0), (V0, U1), (V0, V2)]);
    build_graph(r + 5, &e)
}

pub fn petersen() -> MultiGraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    for i in 0..5 {
        e.push((i, i + 5));
    }
    build_graph(10, &e).expect("valid")
}

/// `C_n × K2` on `order = 2n` vertices, `n` odd.
pub fn prism(order: usize) -> Result<MultiGraph> {
    let n = order / 2;
    if !order.is_multiple_of(2) || n < 3 || n.is_multiple_of(2) {
        return Err(bad("prism order must be 2n with n odd and at least 3"));
    }
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
    }
    for i in 0..n {
        e.push((n + i, n + (i + 1) % n));
    }
    for i in 0..n {
        e.push((i, n + i));
    }
    build_graph(order, &e)
}

/// `C_{2n}` plus its `n` long diagonals, `order = 2n` with `n` even.
pub fn moebius_ladder(order: usize) -> Result<MultiGraph> {
    let n = order / 2;
    if order % 2 == 1 || n < 2 || n % 2 == 1 {
        return Err(bad("Möbius ladder order must be a multiple of 4"));
    }
    let mut e: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
    e.extend((0..n).map(|i| (i, i + n)));
    build_graph(order, &e)
}

/// Path `w1 .. w_{2m}` (vertices `0..2m`) with hubs `h1 = 2m` and
/// `h2 = 2m + 1`; both hubs see both path ends, `h1` the odd internal
/// vertices and `h2` the even ones.
pub fn truncated_biwheel(order: usize) -> Result<MultiGraph> {
    if order % 2 == 1 || order < 6 {
        return Err(bad("truncated biwheel order must be even and at least 6"));
    }
    let len = order - 2;
    let (h1, h2) = (len, len + 1);
    let mut e: Vec<_> = (0..len - 1).map(|i| (i, i + 1)).collect();
    e.extend([(h1, 0), (h1, len - 1), (h2, 0), (h2, len - 1)]);
    for i in 1..len - 1 {
        // Vertex i is w_{i+1}.
        e.push((if (i + 1) % 2 == 1 { h1 } else { h2 }, i));
    }
    build_graph(order, &e)
}

/// Ladder `x1..xk`, `y1..yk` with rungs, plus `a` on `x1, y1` and `b` on
/// `xk, yk`, and the edge `ab`. Vertices: `x` is `0..k`, `y` is `k..2k`,
/// `a = 2k`, `b = 2k + 1`.
pub fn staircase(order: usize) -> Result<MultiGraph> {
    if order % 2 == 1 || order < 6 {
        return Err(bad("staircase order must be even and at least 6"));
    }
    let k = (order - 2) / 2;
    let (a, b) = (2 * k, 2 * k + 1);
    let mut e = Vec::new();
    for i in 0..k {
        e.push((i, k + i));
    }
    for i in 0..k - 1 {
        e.push((i, i + 1));
        e.push((k + i, k + i + 1));
    }
    e.extend([(a, 0), (a, k), (b, k - 1), (b, 2 * k - 1), (a, b)]);
    build_graph(order, &e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NorineThomas {
    OddWheel,
    Prism,
    MoebiusLadder,
    TruncatedBiwheel,
    Staircase,
    Petersen,
}

impl NorineThomas {
    pub const ALL: [NorineThomas; 6] = [
        NorineThomas::OddWheel,
        NorineThomas::Prism,
        NorineThomas::MoebiusLadder,
        NorineThomas::TruncatedBiwheel,
        NorineThomas::Staircase,
        NorineThomas::Petersen,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            NorineThomas::OddWheel => "odd_wheel",
            NorineThomas::Prism => "prism",
            NorineThomas::MoebiusLadder => "moebius_ladder",
            NorineThomas::TruncatedBiwheel => "truncated_biwheel",
            NorineThomas::Staircase => "staircase",
            NorineThomas::Petersen => "petersen",
        }
    }

    /// Orders up to `max_order` at which the family has a member.
    pub fn orders(self, max_order: usize) -> Vec<usize> {
        (4..=max_order)
            .filter(|&n| norine_thomas(self, n).is_ok())
            .collect()
    }
}

pub fn norine_thomas(family: NorineThomas, order: usize) -> Result<MultiGraph> {
    match family {
        NorineThomas::OddWheel => {
            if order % 2 == 1 || order < 4 {
                return Err(bad("odd wheel order must be even and at least 4"));
            }
            odd_wheel((order - 2) / 2, None)
        }
        NorineThomas::Prism => prism(order),
        NorineThomas::MoebiusLadder => moebius_ladder(order),
        NorineThomas::TruncatedBiwheel => truncated_biwheel(order),
        NorineThomas::Staircase => staircase(order),
        NorineThomas::Petersen => {
            if order == 10 {
                Ok(petersen())
            } else {
                Err(bad("the Petersen graph has order 10"))
            }
        }
    }
}

/// Every Norine–Thomas family containing a graph isomorphic to `g`.
pub fn identify_norine_thomas(g: &MultiGraph) -> Vec<NorineThomas> {
    NorineThomas::ALL
        .into_iter()
        .filter(|&f| {
            norine_thomas(f, g.vertex_count())
                .map(|h| are_isomorphic(g, &h).is_some())
                .unwrap_or(false)
        })
        .collect()
}

/// A member of a named family, as accepted by the command line `generate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    K2Multi {
        multiplicity: usize,
    },
    K33,
    K4Multi {
        mults: [usize; 6],
    },
    OddWheel {
        k: usize,
        spoke_mults: Option<Vec<usize>>,
    },
    Prism {
        order: usize,
    },
    MoebiusLadder {
        order: usize,
    },
    TruncatedBiwheel {
        order: usize,
    },
    Staircase {
        order: usize,
    },
    Petersen,
    K4SpliceK33,
    Murty {
        extra: usize,
    },
    PBrick {
        k: usize,
    },
}

impl FamilySpec {
    pub const TAGS: [&'static str; 12] = [
        "k2_multi",
        "k33",
        "k4_multi",
        "odd_wheel",
        "prism",
        "moebius_ladder",
        "truncated_biwheel",
        "staircase",
        "petersen",
        "k4_splice_k33",
        "murty",
        "p_brick",
    ];

    /// From a tag and integer parameters. Single-parameter families read
    /// `params[0]` (`k`, the order, a multiplicity or the extra `a1a2`
    /// count); `k4_multi` reads six multiplicities; `odd_wheel` reads `k`
    /// and then optionally `2k + 1` spoke multiplicities.
    pub fn from_tag(tag: &str, params: &[usize]) -> Result<FamilySpec> {
        let one = |default: Option<usize>| -> Result<usize> {
            match params {
                [] => default.ok_or_else(|| bad(format!("`{tag}` needs a parameter"))),
                [p] => Ok(*p),
                _ => Err(bad(format!("`{tag}` takes one parameter"))),
            }
        };
        let none = || {
            if params.is_empty() {
                Ok(())
            } else {
                Err(bad(format!("`{tag}` takes no parameters")))
            }
        };
        Ok(match tag {
            "k2_multi" => FamilySpec::K2Multi {
                multiplicity: one(Some(1))?,
            },
            "k33" => {
                none()?;
                FamilySpec::K33
            }
            "k4_multi" => {
                let mults = match params.len() {
                    0 => [1; 6],
                    6 => params.try_into().expect("six entries"),
                    _ => return Err(bad("`k4_multi` takes six multiplicities")),
                };
                FamilySpec::K4Multi { mults }
            }
            "odd_wheel" => match params {
                [] => return Err(bad("`odd_wheel` needs k")),
                [k] => FamilySpec::OddWheel {
                    k: *k,
                    spoke_mults: None,
                },
                [k, rest @ ..] => FamilySpec::OddWheel {
                    k: *k,
                    spoke_mults: Some(rest.to_vec()),
                },
            },
            "prism" => FamilySpec::Prism { order: one(None)? },
            "moebius_ladder" => FamilySpec::MoebiusLadder { order: one(None)? },
            "truncated_biwheel" => FamilySpec::TruncatedBiwheel { order: one(None)? },
            "staircase" => FamilySpec::Staircase { order: one(None)? },
            "petersen" => {
                none()?;
                FamilySpec::Petersen
            }
            "k4_splice_k33" => {
                none()?;
                FamilySpec::K4SpliceK33
            }
            "murty" => FamilySpec::Murty {
                extra: one(Some(0))?,
            },
            "p_brick" => FamilySpec::PBrick { k: one(None)? },
            _ => return Err(bad(format!("unknown family `{tag}`"))),
        })
    }

    pub fn build(&self) -> Result<MultiGraph> {
        match self {
            FamilySpec::K2Multi { multiplicity } => k2_multi(*multiplicity),
            FamilySpec::K33 => Ok(k33()),
            FamilySpec::K4Multi { mults } => k4_multi(*mults),
            FamilySpec::OddWheel { k, spoke_mults } => odd_wheel(*k, spoke_mults.as_deref()),
            FamilySpec::Prism { order } => prism(*order),
            FamilySpec::MoebiusLadder { order } => moebius_ladder(*order),
            FamilySpec::TruncatedBiwheel { order } => truncated_biwheel(*order),
            FamilySpec::Staircase { order } => staircase(*order),
            FamilySpec::Petersen => Ok(petersen()),
            FamilySpec::K4SpliceK33 => Ok(k4_splice_k33()),
            FamilySpec::Murty { extra } => Ok(murty_graph(*extra)),
            FamilySpec::PBrick { k } => p_brick(*k),
        }
    }
}

/// Splices `g1` at `u` with `g2` at `v`: both vertices are deleted and the
/// `i`-th edge at `u` is joined to edge `pairing[i]` at `v` (positions in
/// the incidence lists). Vertices of `g1 - u` come first in their order,
/// then those of `g2 - v`; the seam edges are last, in the order of `∂(u)`.
pub fn splice(
    g1: &MultiGraph,
    u: Vertex,
    g2: &MultiGraph,
    v: Vertex,
    pairing: &[usize],
) -> Result<MultiGraph> {
    for (g, x) in [(g1, u), (g2, v)] {
        if x >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                order: g.vertex_count(),
            });
        }
    }
    let (du, dv) = (g1.degree(u), g2.degree(v));
    if du != dv {
        return Err(Error::DegreeMismatch(du, dv));
    }
    let mut seen = vec![false; dv];
    if pairing.len() != du
        || pairing
            .iter()
            .any(|&j| j >= dv || std::mem::replace(&mut seen[j], true))
    {
        return Err(bad("pairing must be a bijection between the two edge sets"));
    }
    let n1 = g1.vertex_count() - 1;
    let map1 = |x: Vertex| if x < u { x } else { x - 1 };
    let map2 = |y: Vertex| n1 + if y < v { y } else { y - 1 };
    let mut e = Vec::new();
    for &(a, b) in g1.edges() {
        if a != u && b != u {
            e.push((map1(a), map1(b)));
        }
    }
    for &(a, b) in g2.edges() {
        if a != v && b != v {
            e.push((map2(a), map2(b)));
        }
    }
    let at_v = g2.incident(v);
    for (i, &f) in g1.incident(u).iter().enumerate() {
        let x = g1.other_end(f, u);
        let y = g2.other_end(at_v[pairing[i]], v);
        e.push((map1(x), map2(y)));
    }
    build_graph(n1 + g2.vertex_count() - 1, &e)
}

/// All splicings of `g1` at `u` with `g2` at `v`, one per isomorphism class.
pub fn splicings_up_to_iso(
    g1: &MultiGraph,
    u: Vertex,
    g2: &MultiGraph,
    v: Vertex,
) -> Result<Vec<MultiGraph>> {
    let d = g1.degree(u);
    let mut out: Vec<MultiGraph> = Vec::new();
    let mut perm: Vec<usize> = (0..d).collect();
    loop {
        let h = splice(g1, u, g2, v, &perm)?;
        if out.iter().all(|o| are_isomorphic(o, &h).is_none()) {
            out.push(h);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
