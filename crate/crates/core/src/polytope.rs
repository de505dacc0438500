//! The perfect matching polytope: incidence vectors, 1-regularity, the
//! 1-skeleton and exact convex-hull membership. Arithmetic is exact.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bicycle::ConformalBicycle;
use crate::cycles::Parity;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph};
use crate::lp::nonnegative_solution;
use crate::matching::{
    enumerate_perfect_matchings, is_matchable, symmetric_difference_cycles, PerfectMatching,
};
use crate::Budget;

/// A rational vector indexed by edge id. Serializes as a JSON object mapping
/// edge id to `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    try_from = "BTreeMap<String, String>",
    into = "BTreeMap<String, String>"
)]
pub struct EdgeVector {
    pub coords: Vec<BigRational>,
}

impl EdgeVector {
    pub fn zeros(m: usize) -> Self {
        EdgeVector {
            coords: vec![BigRational::zero(); m],
        }
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_fractions(values: &[(i64, i64)]) -> Self {
        EdgeVector {
            coords: values
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        }
    }

    /// `x(F)`, the sum over an edge set.
    pub fn sum_over(&self, edges: &[EdgeId]) -> BigRational {
        edges.iter().map(|&e| self.coords[e].clone()).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }
}

impl From<EdgeVector> for BTreeMap<String, String> {
    fn from(x: EdgeVector) -> Self {
        x.coords
            .iter()
            .enumerate()
            .map(|(e, c)| (e.to_string(), format!("{}/{}", c.numer(), c.denom())))
            .collect()
    }
}

impl TryFrom<BTreeMap<String, String>> for EdgeVector {
    type Error = Error;
    fn try_from(map: BTreeMap<String, String>) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let mut entries = Vec::new();
        for (k, v) in map {
            let e: usize = k.parse().map_err(|_| bad(format!("bad edge id `{k}`")))?;
            let (p, q) = v.split_once('/').unwrap_or((&v, "1"));
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad numerator in `{v}`")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad denominator in `{v}`")))?;
            if q.is_zero() {
                return Err(bad(format!("zero denominator in `{v}`")));
            }
            entries.push((e, BigRational::new(p, q)));
        }
        let m = entries.iter().map(|(e, _)| e + 1).max().unwrap_or(0);
        let mut x = EdgeVector::zeros(m);
        for (e, c) in entries {
            x.coords[e] = c;
        }
        Ok(x)
    }
}

fn ensure_dimension(g: &MultiGraph, x: &EdgeVector) -> Result<()> {
    if x.coords.len() == g.edge_count() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "vector has {} coordinates, graph has {} edges",
            x.coords.len(),
            g.edge_count()
        )))
    }
}

pub fn incidence_vector(g: &MultiGraph, m: &PerfectMatching) -> Result<EdgeVector> {
    m.validate(g)?;
    let mut x = EdgeVector::zeros(g.edge_count());
    for &e in &m.edges {
        x.coords[e] = BigRational::one();
    }
    Ok(x)
}

/// `x(∂(v)) = 1` for every vertex. Vectors of the wrong length are not
/// 1-regular.
pub fn is_one_regular(g: &MultiGraph, x: &EdgeVector) -> bool {
    x.coords.len() == g.edge_count()
        && (0..g.vertex_count()).all(|v| x.sum_over(g.incident(v)).is_one())
}

/// Adjacent on the skeleton iff the symmetric difference is exactly one cycle.
pub fn skeleton_adjacent(
    g: &MultiGraph,
    m1: &PerfectMatching,
    m2: &PerfectMatching,
) -> Result<bool> {
    Ok(symmetric_difference_cycles(g, m1, m2)?.len() == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub nodes: Vec<PerfectMatching>,
    pub adjacency: Vec<Vec<bool>>,
    pub diameter: Diameter,
}

impl SkeletonGraph {
    pub fn is_complete(&self) -> bool {
        matches!(self.diameter, Diameter::Finite(d) if d <= 1)
    }
}

pub fn build_skeleton(g: &MultiGraph, budget: Budget) -> Result<SkeletonGraph> {
    if !is_matchable(g) {
        return Err(Error::NotMatchable);
    }
    let nodes = enumerate_perfect_matchings(g, budget)?;
    let k = nodes.len();
    let mut adjacency = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let adj = skeleton_adjacent(g, &nodes[i], &nodes[j])?;
            adjacency[i][j] = adj;
            adjacency[j][i] = adj;
        }
    }
    let mut diameter = 0;
    for s in 0..k {
        let mut dist = vec![usize::MAX; k];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..k {
                if adjacency[v][w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let far = *dist.iter().max().unwrap();
        if far == usize::MAX {
            return Ok(SkeletonGraph {
                nodes,
                adjacency,
                diameter: Diameter::Infinite,
            });
        }
        diameter = diameter.max(far);
    }
    Ok(SkeletonGraph {
        nodes,
        adjacency,
        diameter: Diameter::Finite(diameter),
    })
}

/// Convex weights over the enumerated perfect matchings whose combination of
/// incidence vectors equals `x`, if `x` lies in the polytope.
pub fn membership_weights(
    g: &MultiGraph,
    x: &EdgeVector,
    budget: Budget,
) -> Result<Option<(Vec<PerfectMatching>, Vec<BigRational>)>> {
    if !is_matchable(g) {
        return Err(Error::NotMatchable);
    }
    ensure_dimension(g, x)?;
    let ms = enumerate_perfect_matchings(g, budget)?;
    let m = g.edge_count();
    let columns: Vec<Vec<BigRational>> = ms
        .iter()
        .map(|pm| {
            let mut col = vec![BigRational::zero(); m + 1];
            for &e in &pm.edges {
                col[e] = BigRational::one();
            }
            col[m] = BigRational::one();
            col
        })
        .collect();
    let mut b = x.coords.clone();
    b.push(BigRational::one());
    Ok(nonnegative_solution(&columns, &b).map(|w| (ms, w)))
}

pub fn membership_in_polytope(g: &MultiGraph, x: &EdgeVector, budget: Budget) -> Result<bool> {
    Ok(membership_weights(g, x, budget)?.is_some())
}

/// The standard witness that an odd conformal bicycle breaks the
/// Birkhoff–von Neumann property: one half on both cycles, one on the
/// complement matching, zero elsewhere.
pub fn bvn_counterexample_vector(g: &MultiGraph, b: &ConformalBicycle) -> Result<EdgeVector> {
    if b.parity != Parity::Odd {
        return Err(Error::WrongParity);
    }
    b.validate(g)?;
    let half = BigRational::new(1.into(), 2.into());
    let mut x = EdgeVector::zeros(g.edge_count());
    for &e in b.cycle1.edges.iter().chain(&b.cycle2.edges) {
        x.coords[e] = half.clone();
    }
    for &e in &b.complement_matching.edges {
        x.coords[e] = BigRational::one();
    }
    Ok(x)
}
