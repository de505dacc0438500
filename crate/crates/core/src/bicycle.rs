//! Conformal bicycles and the exhaustive property oracles.
//!
//! A matchable graph is Birkhoff–von Neumann iff it has no odd conformal
//! bicycle, and PM-compact iff it has no even one. The searches here are
//! exhaustive and return validated certificates.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::cycles::{for_each_cycle, CycleParity, CycleSeq, Parity};
use crate::error::{Error, Result};
use crate::graph::{underlying_simple, EdgeId, MultiGraph, Vertex, VertexMask};
use crate::matching::{
    ensure_matching_covered, enumerate_perfect_matchings, find_perfect_matching_within,
    is_matchable, is_matchable_within, symmetric_difference_cycles, PerfectMatching,
};
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BicycleJson", into = "BicycleJson")]
pub struct ConformalBicycle {
    pub cycle1: CycleSeq,
    pub cycle2: CycleSeq,
    pub complement_matching: PerfectMatching,
    pub parity: Parity,
}

#[derive(Serialize, Deserialize)]
struct BicycleJson {
    kind: String,
    cycle1: Vec<Vertex>,
    cycle1_edges: Vec<EdgeId>,
    cycle2: Vec<Vertex>,
    cycle2_edges: Vec<EdgeId>,
    complement_matching: Vec<EdgeId>,
}

impl TryFrom<BicycleJson> for ConformalBicycle {
    type Error = Error;
    fn try_from(j: BicycleJson) -> Result<Self> {
        let parity = match j.kind.as_str() {
            "odd_bicycle" => Parity::Odd,
            "even_bicycle" => Parity::Even,
            other => {
                return Err(Error::InvalidCertificate(format!(
                    "unknown certificate kind `{other}`"
                )))
            }
        };
        Ok(ConformalBicycle {
            cycle1: CycleSeq {
                vertices: j.cycle1,
                edges: j.cycle1_edges,
            },
            cycle2: CycleSeq {
                vertices: j.cycle2,
                edges: j.cycle2_edges,
            },
            complement_matching: PerfectMatching::new(j.complement_matching),
            parity,
        })
    }
}

impl From<ConformalBicycle> for BicycleJson {
    fn from(b: ConformalBicycle) -> Self {
        BicycleJson {
            kind: match b.parity {
                Parity::Odd => "odd_bicycle",
                Parity::Even => "even_bicycle",
            }
            .into(),
            cycle1: b.cycle1.vertices,
            cycle1_edges: b.cycle1.edges,
            cycle2: b.cycle2.vertices,
            cycle2_edges: b.cycle2.edges,
            complement_matching: b.complement_matching.edges,
        }
    }
}

impl ConformalBicycle {
    /// Re-checks the certificate from raw graph data only.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        self.cycle1.validate(g)?;
        self.cycle2.validate(g)?;
        let (m1, m2) = (self.cycle1.vertex_mask(), self.cycle2.vertex_mask());
        if m1 & m2 != 0 {
            return Err(Error::InvalidCertificate("cycles share a vertex".into()));
        }
        let (p1, p2) = (self.cycle1.parity(), self.cycle2.parity());
        if p1 != p2 {
            return Err(Error::InvalidCertificate("cycles of mixed parity".into()));
        }
        if p1 != self.parity {
            return Err(Error::InvalidCertificate(
                "parity tag does not match the cycles".into(),
            ));
        }
        self.complement_matching
            .validate_within(g, g.vertex_mask() & !m1 & !m2)
            .map_err(|e| Error::InvalidCertificate(format!("complement: {e}")))
    }

    pub fn vertices(&self) -> VertexMask {
        self.cycle1.vertex_mask() | self.cycle2.vertex_mask()
    }
}

/// Builds a certificate with the cycles ordered canonically and a complement
/// matching found by the blossom search.
fn assemble(g: &MultiGraph, a: CycleSeq, b: CycleSeq) -> Option<ConformalBicycle> {
    let rest = g.vertex_mask() & !a.vertex_mask() & !b.vertex_mask();
    let complement_matching = find_perfect_matching_within(g, rest)?;
    let (cycle1, cycle2) = if a.cmp_canonical(&b).is_le() {
        (a, b)
    } else {
        (b, a)
    };
    let parity = cycle1.parity();
    Some(ConformalBicycle {
        cycle1,
        cycle2,
        complement_matching,
        parity,
    })
}

/// Cycles of one parity, one per vertex set (the canonically smallest),
/// sorted canonically. Fails once more than `budget` cycles are visited.
fn cycle_representatives(
    g: &MultiGraph,
    parity: CycleParity,
    budget: Budget,
) -> Result<Vec<CycleSeq>> {
    let mut seen = 0u64;
    let mut best: HashMap<VertexMask, CycleSeq> = HashMap::new();
    let flow = for_each_cycle(g, g.vertex_mask(), parity, |c| {
        seen += 1;
        if seen > budget.0 {
            return ControlFlow::Break(());
        }
        let key = c.vertex_mask();
        match best.get(&key) {
            Some(old) if old.cmp_canonical(&c).is_le() => {}
            _ => {
                best.insert(key, c);
            }
        }
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(Error::BudgetExhausted(budget.0));
    }
    let mut reps: Vec<CycleSeq> = best.into_values().collect();
    reps.sort_by(|a, b| a.cmp_canonical(b));
    Ok(reps)
}

/// The lexicographically first conformal pair among `cycles`, which must be
/// sorted canonically.
fn first_conformal_pair(
    g: &MultiGraph,
    cycles: &[CycleSeq],
    budget: Budget,
) -> Result<Option<(usize, usize)>> {
    let all = g.vertex_mask();
    let mut cache: HashMap<VertexMask, bool> = HashMap::new();
    let mut tests = 0u64;
    for i in 0..cycles.len() {
        let mi = cycles[i].vertex_mask();
        for (j, cj) in cycles.iter().enumerate().skip(i + 1) {
            let mj = cj.vertex_mask();
            if mi & mj != 0 {
                continue;
            }
            let rest = all & !mi & !mj;
            let ok = match cache.get(&rest) {
                Some(&ok) => ok,
                None => {
                    tests += 1;
                    if tests > budget.0 {
                        return Err(Error::BudgetExhausted(budget.0));
                    }
                    let ok = is_matchable_within(g, rest);
                    cache.insert(rest, ok);
                    ok
                }
            };
            if ok {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Odd search. Odd cycles have length at least three, so the search runs on
/// the underlying simple graph and lifts edges back to the lowest parallel id.
pub fn find_odd_bicycle(g: &MultiGraph, budget: Budget) -> Result<Option<ConformalBicycle>> {
    let simple = underlying_simple(g);
    let lift: Vec<EdgeId> = simple
        .edges()
        .iter()
        .map(|&(u, v)| g.edges_between(u, v)[0])
        .collect();
    let cycles = cycle_representatives(&simple, CycleParity::Odd, budget)?;
    let Some((i, j)) = first_conformal_pair(&simple, &cycles, budget)? else {
        return Ok(None);
    };
    let lifted = |c: &CycleSeq| CycleSeq {
        vertices: c.vertices.clone(),
        edges: c.edges.iter().map(|&e| lift[e]).collect(),
    };
    Ok(assemble(g, lifted(&cycles[i]), lifted(&cycles[j])))
}

/// Even search through pairs of perfect matchings: a pair whose symmetric
/// difference has two or more cycles yields an even conformal bicycle, and
/// every even conformal bicycle arises this way.
pub fn find_even_bicycle(g: &MultiGraph, budget: Budget) -> Result<Option<ConformalBicycle>> {
    let ms = enumerate_perfect_matchings(g, budget)?;
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let cycles = symmetric_difference_cycles(g, &ms[i], &ms[j])?;
            if cycles.len() < 2 {
                continue;
            }
            let (a, b) = (cycles[0].clone(), cycles[1].clone());
            let used = a.vertex_mask() | b.vertex_mask();
            let complement: Vec<EdgeId> = ms[i]
                .edges
                .iter()
                .copied()
                .filter(|&e| {
                    let (u, v) = g.endpoints(e);
                    (used >> u) & 1 == 0 && (used >> v) & 1 == 0
                })
                .collect();
            let parity = a.parity();
            return Ok(Some(ConformalBicycle {
                cycle1: a,
                cycle2: b,
                complement_matching: PerfectMatching::new(complement),
                parity,
            }));
        }
    }
    Ok(None)
}

/// Even search over pairs of even cycles, independent of matching pairs.
pub fn find_even_bicycle_by_cycles(
    g: &MultiGraph,
    budget: Budget,
) -> Result<Option<ConformalBicycle>> {
    let cycles = cycle_representatives(g, CycleParity::Even, budget)?;
    let Some((i, j)) = first_conformal_pair(g, &cycles, budget)? else {
        return Ok(None);
    };
    Ok(assemble(g, cycles[i].clone(), cycles[j].clone()))
}

/// Searches for a conformal bicycle of the requested parity. With
/// `CycleParity::Any` the even search runs first.
pub fn find_conformal_bicycle(
    g: &MultiGraph,
    want: CycleParity,
    budget: Budget,
) -> Result<Option<ConformalBicycle>> {
    if !is_matchable(g) {
        return Err(Error::NotMatchable);
    }
    match want {
        CycleParity::Odd => find_odd_bicycle(g, budget),
        CycleParity::Even => find_even_bicycle(g, budget),
        CycleParity::Any => match find_even_bicycle(g, budget)? {
            Some(b) => Ok(Some(b)),
            None => find_odd_bicycle(g, budget),
        },
    }
}

/// Outcome of one oracle: `holds` is the property; a failing verdict carries
/// its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub holds: bool,
    pub witness: Option<ConformalBicycle>,
}

impl OracleVerdict {
    fn from_search(found: Option<ConformalBicycle>) -> Self {
        OracleVerdict {
            holds: found.is_none(),
            witness: found,
        }
    }
}

/// Birkhoff–von Neumann iff no odd conformal bicycle.
pub fn decide_bvn_oracle(g: &MultiGraph, budget: Budget) -> Result<OracleVerdict> {
    find_conformal_bicycle(g, CycleParity::Odd, budget).map(OracleVerdict::from_search)
}

/// PM-compact iff no even conformal bicycle.
pub fn decide_pmc_oracle(g: &MultiGraph, budget: Budget) -> Result<OracleVerdict> {
    find_conformal_bicycle(g, CycleParity::Even, budget).map(OracleVerdict::from_search)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleClassification {
    pub bvn: bool,
    pub pmc: bool,
    pub odd_witness: Option<ConformalBicycle>,
    pub even_witness: Option<ConformalBicycle>,
}

impl OracleClassification {
    pub fn both(&self) -> bool {
        self.bvn && self.pmc
    }
}

pub fn classify_oracle(g: &MultiGraph, budget: Budget) -> Result<OracleClassification> {
    ensure_matching_covered(g)?;
    let odd = decide_bvn_oracle(g, budget)?;
    let even = decide_pmc_oracle(g, budget)?;
    Ok(OracleClassification {
        bvn: odd.holds,
        pmc: even.holds,
        odd_witness: odd.witness,
        even_witness: even.witness,
    })
}
