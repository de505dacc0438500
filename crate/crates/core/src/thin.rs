//! Thin and strictly thin edges of bricks, their index, and the reduction of
//! a simple brick to a Norine–Thomas brick by deleting strictly thin edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{identify_norine_thomas, NorineThomas};
use crate::graph::{EdgeId, MultiGraph, Vertex};
use crate::matching::is_matching_covered;
use crate::retract::{retract_of, RetractResult};
use crate::tightcut::is_brick;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinEdgeReport {
    pub edge_id: EdgeId,
    pub thin: bool,
    pub strictly_thin: bool,
    pub index: Option<u8>,
    /// Absent when `G - e` is not matching covered.
    pub retract_after_deletion: Option<MultiGraph>,
}

fn ensure_brick(g: &MultiGraph) -> Result<()> {
    if g.vertex_count() >= 4 && is_brick(g)? {
        Ok(())
    } else {
        Err(Error::NotABrick)
    }
}

fn ensure_simple_brick(g: &MultiGraph) -> Result<()> {
    if g.is_simple() && g.vertex_count() >= 4 && is_brick(g)? {
        Ok(())
    } else {
        Err(Error::NotASimpleBrick)
    }
}

/// The retract of `G - e`, if `G - e` is matching covered.
fn retract_after(g: &MultiGraph, e: EdgeId) -> Result<Option<RetractResult>> {
    let h = g.without_edge(e)?;
    if !is_matching_covered(&h) {
        return Ok(None);
    }
    retract_of(&h).map(Some)
}

fn retract_is_brick(r: &Option<RetractResult>) -> Result<bool> {
    match r {
        Some(r) if r.graph.vertex_count() >= 4 => is_brick(&r.graph),
        _ => Ok(false),
    }
}

/// Thin: the retract of `G - e` is a brick. Works on bricks with multiple
/// edges as well.
pub fn is_thin(g: &MultiGraph, e: EdgeId) -> Result<bool> {
    ensure_brick(g)?;
    g.check_edge(e)?;
    retract_is_brick(&retract_after(g, e)?)
}

/// `0` if neither end is cubic, `1` if exactly one is, `2` if both are and
/// they have no common neighbour, `3` if both are and they lie in a
/// triangle.
pub fn edge_index(g: &MultiGraph, e: EdgeId) -> u8 {
    let (u, v) = g.endpoints(e);
    match (g.degree(u) == 3, g.degree(v) == 3) {
        (false, false) => 0,
        (true, false) | (false, true) => 1,
        (true, true) => {
            if g.neighbour_mask(u) & g.neighbour_mask(v) != 0 {
                3
            } else {
                2
            }
        }
    }
}

fn report_unchecked(g: &MultiGraph, e: EdgeId) -> Result<ThinEdgeReport> {
    let r = retract_after(g, e)?;
    let thin = retract_is_brick(&r)?;
    let strictly_thin = thin && r.as_ref().is_some_and(|r| r.graph.is_simple());
    Ok(ThinEdgeReport {
        edge_id: e,
        thin,
        strictly_thin,
        index: strictly_thin.then(|| edge_index(g, e)),
        retract_after_deletion: r.map(|r| r.graph),
    })
}

/// Full report for an edge of a simple brick.
pub fn is_thin_edge(g: &MultiGraph, e: EdgeId) -> Result<ThinEdgeReport> {
    ensure_brick(g)?;
    if !g.is_simple() {
        return Err(Error::NotASimpleBrick);
    }
    g.check_edge(e)?;
    report_unchecked(g, e)
}

fn first_strictly_thin(g: &MultiGraph) -> Result<Option<ThinEdgeReport>> {
    for e in 0..g.edge_count() {
        let r = report_unchecked(g, e)?;
        if r.strictly_thin {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// The lowest-id strictly thin edge.
pub fn find_strictly_thin_edge(g: &MultiGraph) -> Result<Option<EdgeId>> {
    ensure_simple_brick(g)?;
    Ok(first_strictly_thin(g)?.map(|r| r.edge_id))
}

/// Degree-two vertices of `G - e` and degrees of the contraction vertices
/// of its retract, as dictated by the index of a strictly thin `e`: none for
/// index 0; one, with a contraction vertex of degree at least four, for
/// index 1; two without a common neighbour and two contraction vertices of
/// degree at least four for index 2; two with a common neighbour and one
/// contraction vertex of degree at least five for index 3.
pub fn index_structure_check(g: &MultiGraph, e: EdgeId) -> Result<bool> {
    let report = is_thin_edge(g, e)?;
    let Some(index) = report.index else {
        return Err(Error::PreconditionViolated(format!(
            "edge {e} is not strictly thin"
        )));
    };
    let h = g.without_edge(e)?;
    let r = retract_of(&h)?;
    let deg2: Vec<Vertex> = (0..h.vertex_count())
        .filter(|&v| h.degree(v) == 2)
        .collect();
    let mut class_size = vec![0usize; r.graph.vertex_count()];
    for &t in &r.vertex_trace {
        class_size[t] += 1;
    }
    let mut contracted: Vec<usize> = (0..r.graph.vertex_count())
        .filter(|&x| class_size[x] > 1)
        .map(|x| r.graph.degree(x))
        .collect();
    contracted.sort_unstable();
    Ok(match index {
        0 => deg2.is_empty() && r.graph == h,
        1 => deg2.len() == 1 && contracted.len() == 1 && contracted[0] >= 4,
        2 => {
            deg2.len() == 2
                && h.neighbour_mask(deg2[0]) & h.neighbour_mask(deg2[1]) == 0
                && contracted.len() == 2
                && contracted[0] >= 4
        }
        _ => {
            deg2.len() == 2
                && h.neighbour_mask(deg2[0]) & h.neighbour_mask(deg2[1]) != 0
                && contracted.len() == 1
                && contracted[0] >= 5
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub graph: MultiGraph,
    pub edge: EdgeId,
    pub index: u8,
}

/// `steps[0]` is the input; each next graph is the retract of the previous
/// one minus its edge; the terminal brick has no strictly thin edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: MultiGraph,
    pub terminal_families: Vec<NorineThomas>,
}

impl ReductionTrace {
    /// Re-checks every link of the trace.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        for (i, step) in self.steps.iter().enumerate() {
            let report = is_thin_edge(&step.graph, step.edge)?;
            if !report.strictly_thin || report.index != Some(step.index) {
                return bad(format!(
                    "step {i}: edge {} is not strictly thin as recorded",
                    step.edge
                ));
            }
            let next = self.steps.get(i + 1).map_or(&self.terminal, |s| &s.graph);
            if report.retract_after_deletion.as_ref() != Some(next) {
                return bad(format!(
                    "step {i}: next graph is not the retract after deletion"
                ));
            }
        }
        ensure_simple_brick(&self.terminal)?;
        if first_strictly_thin(&self.terminal)?.is_some() {
            return bad("terminal brick has a strictly thin edge".into());
        }
        if self.terminal_families.is_empty()
            || identify_norine_thomas(&self.terminal) != self.terminal_families
        {
            return bad("terminal is not labelled with its Norine–Thomas families".into());
        }
        Ok(())
    }
}

/// Deletes the lowest strictly thin edge and retracts until none is left.
pub fn reduce_to_norine_thomas(g: &MultiGraph) -> Result<ReductionTrace> {
    ensure_simple_brick(g)?;
    let mut steps = Vec::new();
    let mut cur = g.clone();
    while let Some(report) = first_strictly_thin(&cur)? {
        let next = report
            .retract_after_deletion
            .expect("strictly thin edges have a retract");
        steps.push(ReductionStep {
            graph: cur,
            edge: report.edge_id,
            index: report.index.expect("strictly thin edges have an index"),
        });
        cur = next;
    }
    let terminal_families = identify_norine_thomas(&cur);
    if terminal_families.is_empty() {
        return Err(Error::ReductionStuck);
    }
    Ok(ReductionTrace {
        steps,
        terminal: cur,
        terminal_families,
    })
}
