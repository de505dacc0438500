//! Polynomial-time recognition of matching covered graphs that are both
//! Birkhoff–von Neumann and PM-compact.
//!
//! The retract is computed and compared against six shapes: `K2` with any
//! multiplicity, `K3,3`, `K4` without two disjoint doubled pairs, odd wheels
//! of order six or more with arbitrary spoke multiplicities, `K4 ⊙ K3,3`,
//! and the Murty graph with extra edges only between its two noncubic
//! vertices.

use serde::{Deserialize, Serialize};

use crate::bicycle::{
    classify_oracle, find_conformal_bicycle, ConformalBicycle, OracleClassification,
};
use crate::cycles::CycleParity;
use crate::error::{Error, Result};
use crate::families::{self, A1, A2, K4_PAIRS};
use crate::graph::{underlying_simple, MultiGraph, Vertex};
use crate::iso::{are_isomorphic, IsoWitness};
use crate::matching::{ensure_matching_covered, is_matching_covered};
use crate::retract::{retract_of, RetractResult};
use crate::tightcut::is_brick;
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyVariant {
    K2Multi {
        multiplicity: usize,
    },
    K33,
    /// Multiplicities on [`K4_PAIRS`].
    K4Multi {
        mults: [usize; 6],
    },
    OddWheelMultiSpokes {
        k: usize,
        spoke_mults: Vec<usize>,
    },
    K4SpliceK33,
    MurtyMulti {
        extra: usize,
    },
}

impl FamilyVariant {
    pub fn canonical_member(&self) -> Result<MultiGraph> {
        match self {
            FamilyVariant::K2Multi { multiplicity } => families::k2_multi(*multiplicity),
            FamilyVariant::K33 => Ok(families::k33()),
            FamilyVariant::K4Multi { mults } => families::k4_multi(*mults),
            FamilyVariant::OddWheelMultiSpokes { k, spoke_mults } => {
                families::odd_wheel(*k, Some(spoke_mults))
            }
            FamilyVariant::K4SpliceK33 => Ok(families::k4_splice_k33()),
            FamilyVariant::MurtyMulti { extra } => Ok(families::murty_graph(*extra)),
        }
    }

    /// The multiplicity rules of the six shapes.
    pub fn is_admissible(&self) -> bool {
        match self {
            FamilyVariant::K2Multi { multiplicity } => *multiplicity >= 1,
            FamilyVariant::K4Multi { mults } => {
                mults.iter().all(|&m| m >= 1) && k4_pairing_ok(mults)
            }
            FamilyVariant::OddWheelMultiSpokes { k, spoke_mults } => {
                *k >= 2 && spoke_mults.len() == 2 * k + 1 && spoke_mults.iter().all(|&m| m >= 1)
            }
            FamilyVariant::K33 | FamilyVariant::K4SpliceK33 | FamilyVariant::MurtyMulti { .. } => {
                true
            }
        }
    }

    fn is_brick_shape(&self) -> bool {
        matches!(
            self,
            FamilyVariant::K4Multi { .. }
                | FamilyVariant::OddWheelMultiSpokes { .. }
                | FamilyVariant::MurtyMulti { .. }
        )
    }
}

/// Pair indices `i, j` into [`K4_PAIRS`] forming the three perfect matchings.
const K4_MATCHINGS: [(usize, usize); 3] = [(0, 5), (1, 4), (2, 3)];

/// No perfect matching of `K4` has both of its pairs doubled.
fn k4_pairing_ok(mults: &[usize; 6]) -> bool {
    K4_MATCHINGS
        .iter()
        .all(|&(i, j)| mults[i] < 2 || mults[j] < 2)
}

/// A family shape together with an isomorphism onto its canonical member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub variant: FamilyVariant,
    pub witness: IsoWitness,
}

impl FamilyTag {
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        if !self.variant.is_admissible() {
            return Err(Error::InvalidCertificate(
                "family parameters break the multiplicity rules".into(),
            ));
        }
        let canonical = self.variant.canonical_member()?;
        if !self.witness.validates(g, &canonical) {
            return Err(Error::InvalidCertificate(
                "witness is not an isomorphism onto the family member".into(),
            ));
        }
        Ok(())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn classify_k4(g: &MultiGraph) -> Option<FamilyTag> {
    let m = g.multiplicity_matrix();
    if K4_PAIRS.iter().any(|&(a, b)| m[a][b] == 0) {
        return None;
    }
    let best = permutations(4)
        .into_iter()
        .map(|p| {
            let mut mults = [0; 6];
            for (i, &(a, b)) in K4_PAIRS.iter().enumerate() {
                let (x, y) = (
                    p.iter().position(|&v| v == a).unwrap(),
                    p.iter().position(|&v| v == b).unwrap(),
                );
                mults[i] = m[x][y];
            }
            (mults, p)
        })
        .min()
        .expect("24 permutations");
    let (mults, mapping) = best;
    if !k4_pairing_ok(&mults) {
        return None;
    }
    Some(FamilyTag {
        variant: FamilyVariant::K4Multi { mults },
        witness: IsoWitness { mapping },
    })
}

fn classify_wheel(g: &MultiGraph) -> Option<FamilyTag> {
    let n = g.vertex_count();
    let all = g.vertex_mask();
    let hub = (0..n).find(|&v| g.neighbour_mask(v) == all & !(1 << v))?;
    let rim_n = n - 1;
    let mut rim: Vec<Vertex> = Vec::with_capacity(rim_n);
    for v in (0..n).filter(|&v| v != hub) {
        let on_rim: Vec<Vertex> = g.neighbours(v).into_iter().filter(|&w| w != hub).collect();
        if on_rim.len() != 2 || on_rim.iter().any(|&w| g.multiplicity(v, w) != 1) {
            return None;
        }
    }
    let start = (0..n).find(|&v| v != hub)?;
    rim.push(start);
    let mut prev = start;
    let mut cur = g.neighbours(start).into_iter().find(|&w| w != hub)?;
    while cur != start {
        rim.push(cur);
        let next = g
            .neighbours(cur)
            .into_iter()
            .find(|&w| w != hub && w != prev)?;
        prev = cur;
        cur = next;
    }
    if rim.len() != rim_n {
        return None;
    }
    // Smallest spoke sequence over the rotations and reflections of the rim.
    let mut best: Option<(Vec<usize>, Vec<Vertex>)> = None;
    for reflect in [false, true] {
        for shift in 0..rim_n {
            let order: Vec<Vertex> = (0..rim_n)
                .map(|i| {
                    let j = if reflect {
                        (rim_n + shift - i) % rim_n
                    } else {
                        (shift + i) % rim_n
                    };
                    rim[j]
                })
                .collect();
            let mults: Vec<usize> = order.iter().map(|&v| g.multiplicity(v, hub)).collect();
            if best.as_ref().is_none_or(|(b, _)| mults < *b) {
                best = Some((mults, order));
            }
        }
    }
    let (spoke_mults, order) = best?;
    let mut mapping = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        mapping[v] = i;
    }
    mapping[hub] = rim_n;
    Some(FamilyTag {
        variant: FamilyVariant::OddWheelMultiSpokes {
            k: (n - 2) / 2,
            spoke_mults,
        },
        witness: IsoWitness { mapping },
    })
}

fn classify_murty(g: &MultiGraph) -> Option<FamilyTag> {
    let simple = underlying_simple(g);
    let w = are_isomorphic(&simple, &families::murty_graph(0))?;
    let m = g.multiplicity_matrix();
    for (u, row) in m.iter().enumerate() {
        for (v, &mult) in row.iter().enumerate().skip(u + 1) {
            let image = (
                w.mapping[u].min(w.mapping[v]),
                w.mapping[u].max(w.mapping[v]),
            );
            if mult > 1 && image != (A1, A2) {
                return None;
            }
        }
    }
    let a = w.mapping.iter().position(|&x| x == A1).expect("bijection");
    let b = w.mapping.iter().position(|&x| x == A2).expect("bijection");
    Some(FamilyTag {
        variant: FamilyVariant::MurtyMulti { extra: m[a][b] - 1 },
        witness: w,
    })
}

fn exact(g: &MultiGraph, h: MultiGraph, variant: FamilyVariant) -> Option<FamilyTag> {
    are_isomorphic(g, &h).map(|witness| FamilyTag { variant, witness })
}

/// Matches `g` against the six shapes. Needs a matching covered graph of
/// minimum degree at least three, or one on two vertices.
pub fn classify_family(g: &MultiGraph) -> Result<Option<FamilyTag>> {
    let n = g.vertex_count();
    if !is_matching_covered(g) {
        return Err(Error::PreconditionViolated(
            "graph is not matching covered".into(),
        ));
    }
    if n != 2 && g.min_degree() < 3 {
        return Err(Error::PreconditionViolated(
            "minimum degree is below three".into(),
        ));
    }
    Ok(match n {
        2 => Some(FamilyTag {
            variant: FamilyVariant::K2Multi {
                multiplicity: g.edge_count(),
            },
            witness: IsoWitness {
                mapping: vec![0, 1],
            },
        }),
        4 => classify_k4(g),
        6 => {
            if g.is_simple() {
                exact(g, families::k33(), FamilyVariant::K33).or_else(|| classify_wheel(g))
            } else {
                classify_wheel(g)
            }
        }
        8 => {
            let splice = if g.is_simple() {
                exact(g, families::k4_splice_k33(), FamilyVariant::K4SpliceK33)
            } else {
                None
            };
            splice
                .or_else(|| classify_murty(g))
                .or_else(|| classify_wheel(g))
        }
        _ => classify_wheel(g),
    })
}

/// Outcome of the structural route. A positive verdict carries the family
/// tag of the retract; a negative one a conformal bicycle of the input,
/// unless the witness was not requested or the search ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub both_properties: bool,
    pub positive_certificate: Option<FamilyTag>,
    pub negative_certificate: Option<ConformalBicycle>,
    pub witness_omitted: bool,
    pub retract: RetractResult,
}

impl Decision {
    /// Re-checks the certificate against `g` from scratch.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let retract = retract_of(g)?;
        if retract.graph != self.retract.graph {
            return Err(Error::InvalidCertificate(
                "recorded retract differs from the recomputed one".into(),
            ));
        }
        match (
            self.both_properties,
            &self.positive_certificate,
            &self.negative_certificate,
        ) {
            (true, Some(tag), None) => tag.validate(&retract.graph),
            (false, None, Some(b)) => b.validate(g),
            (false, None, None) if self.witness_omitted => Ok(()),
            _ => Err(Error::InvalidCertificate(
                "certificate does not match the verdict".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub witness: bool,
    pub budget: Budget,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            witness: true,
            budget: Budget::default(),
        }
    }
}

pub fn decide_structural(g: &MultiGraph) -> Result<Decision> {
    decide_structural_with(g, DecideOptions::default())
}

pub fn decide_structural_with(g: &MultiGraph, opts: DecideOptions) -> Result<Decision> {
    ensure_matching_covered(g)?;
    let retract = retract_of(g)?;
    if let Some(tag) = classify_family(&retract.graph)? {
        return Ok(Decision {
            both_properties: true,
            positive_certificate: Some(tag),
            negative_certificate: None,
            witness_omitted: false,
            retract,
        });
    }
    let (negative, omitted) = if opts.witness {
        match find_conformal_bicycle(g, CycleParity::Any, opts.budget) {
            Ok(Some(b)) => (Some(b), false),
            Ok(None) => {
                return Err(Error::Disagreement(
                    "retract matches no family but the graph has no conformal bicycle".into(),
                ))
            }
            Err(Error::BudgetExhausted(_)) => (None, true),
            Err(e) => return Err(e),
        }
    } else {
        (None, true)
    };
    Ok(Decision {
        both_properties: false,
        positive_certificate: None,
        negative_certificate: negative,
        witness_omitted: omitted,
        retract,
    })
}

/// For bricks: both properties hold iff the brick is a `K4` with admissible
/// multiplicities, an odd wheel, or the Murty graph.
pub fn decide_brick_structural(g: &MultiGraph) -> Result<bool> {
    if g.vertex_count() < 4 || !is_brick(g)? {
        return Err(Error::NotABrick);
    }
    Ok(classify_family(g)?.is_some_and(|t| t.variant.is_brick_shape()))
}

/// Runs both routes and fails with `Disagreement` if their verdicts differ.
pub fn decide_both(g: &MultiGraph, budget: Budget) -> Result<(Decision, OracleClassification)> {
    let structural = decide_structural_with(
        g,
        DecideOptions {
            witness: true,
            budget,
        },
    )?;
    let oracle = classify_oracle(g, budget)?;
    if structural.both_properties != oracle.both() {
        return Err(Error::Disagreement(format!(
            "structural says {}, oracle says bvn={} pmc={}",
            structural.both_properties, oracle.bvn, oracle.pmc
        )));
    }
    Ok((structural, oracle))
}
