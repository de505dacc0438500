//! Cross-validation of the structural recognizer against the bicycle oracle.

use serde::{Deserialize, Serialize};

use crate::bicycle::classify_oracle;
use crate::error::Result;
use crate::graph::MultiGraph;
use crate::recognizer::{decide_structural_with, DecideOptions};
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub index: usize,
    pub graph: MultiGraph,
    pub structural: bool,
    pub bvn: bool,
    pub pmc: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossvalReport {
    pub checked: usize,
    pub agreed: usize,
    /// Graphs that have both properties.
    pub both: usize,
    pub bvn_only: usize,
    pub pmc_only: usize,
    pub neither: usize,
    /// Certificates from either route that failed re-validation.
    pub bad_certificates: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrossvalReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.bad_certificates == 0 && self.agreed == self.checked
    }

    pub fn merge(&mut self, other: CrossvalReport) {
        let offset = self.checked;
        self.checked += other.checked;
        self.agreed += other.agreed;
        self.both += other.both;
        self.bvn_only += other.bvn_only;
        self.pmc_only += other.pmc_only;
        self.neither += other.neither;
        self.bad_certificates += other.bad_certificates;
        self.disagreements
            .extend(other.disagreements.into_iter().map(|mut d| {
                d.index += offset;
                d
            }));
    }
}

/// Decides every graph both ways and re-validates every certificate.
pub fn crossval(graphs: &[MultiGraph], budget: Budget) -> Result<CrossvalReport> {
    let mut report = CrossvalReport::default();
    for (index, g) in graphs.iter().enumerate() {
        let structural = decide_structural_with(
            g,
            DecideOptions {
                witness: false,
                budget,
            },
        )?;
        let oracle = classify_oracle(g, budget)?;
        report.checked += 1;
        match (oracle.bvn, oracle.pmc) {
            (true, true) => report.both += 1,
            (true, false) => report.bvn_only += 1,
            (false, true) => report.pmc_only += 1,
            (false, false) => report.neither += 1,
        }
        let certificates_ok = structural.validate(g).is_ok()
            && oracle
                .odd_witness
                .as_ref()
                .is_none_or(|b| b.validate(g).is_ok())
            && oracle
                .even_witness
                .as_ref()
                .is_none_or(|b| b.validate(g).is_ok());
        if !certificates_ok {
            report.bad_certificates += 1;
        }
        if structural.both_properties == oracle.both() {
            report.agreed += 1;
        } else {
            report.disagreements.push(Disagreement {
                index,
                graph: g.clone(),
                structural: structural.both_properties,
                bvn: oracle.bvn,
                pmc: oracle.pmc,
            });
        }
    }
    Ok(report)
}
