use std::io::Read;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use serde_json::{json, Value};

use matchkit::bicycle::{classify_oracle, OracleClassification};
use matchkit::corpus::{matching_covered_up_to, perturbations};
use matchkit::families::FamilySpec;
use matchkit::format::{parse_mcg, parse_mcg_stream, write_mcg};
use matchkit::harness::crossval as run_crossval;
use matchkit::matching::is_matching_covered;
use matchkit::polytope::{build_skeleton, SkeletonGraph};
use matchkit::recognizer::{decide_structural_with, DecideOptions, Decision};
use matchkit::thin::{reduce_to_norine_thomas, ReductionTrace};
use matchkit::tightcut::{
    tight_cut_decomposition, tight_cut_decomposition_seeded, DecompositionTree,
};
use matchkit::{Budget, Error, MultiGraph};

use crate::report::{digest, RunReport};

pub const MAX_CROSSVAL_ORDER: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Structural,
    Oracle,
    Both,
}

pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExhausted(_)) => 3,
        Some(Error::Disagreement(_)) => 4,
        _ => 2,
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graph(path: &Path) -> anyhow::Result<(MultiGraph, String)> {
    let text = read_text(path)?;
    let g = parse_mcg(&text)?;
    Ok((g, text))
}

fn verdict_code(both: bool) -> u8 {
    if both {
        0
    } else {
        1
    }
}

pub fn decide(file: &Path, mode: Mode, witness: bool, budget: u64) -> anyhow::Result<u8> {
    let started = Instant::now();
    let (g, text) = read_graph(file)?;
    let opts = DecideOptions {
        witness,
        budget: Budget(budget),
    };
    let (both, result) = match mode {
        Mode::Structural => {
            let d = decide_structural_with(&g, opts)?;
            (
                d.both_properties,
                json!({ "mode": "structural", "both_properties": d.both_properties, "structural": d }),
            )
        }
        Mode::Oracle => {
            let o = classify_oracle(&g, Budget(budget))?;
            (
                o.both(),
                json!({ "mode": "oracle", "both_properties": o.both(), "bvn": o.bvn, "pmc": o.pmc, "oracle": o }),
            )
        }
        Mode::Both => {
            let d = decide_structural_with(&g, opts)?;
            let o = classify_oracle(&g, Budget(budget))?;
            if d.both_properties != o.both() {
                eprint!(
                    "{}",
                    write_mcg(&g, &["graph on which the two routes disagree"])
                );
                return Err(Error::Disagreement(format!(
                    "structural says {}, oracle says bvn={} pmc={}",
                    d.both_properties, o.bvn, o.pmc
                ))
                .into());
            }
            (
                o.both(),
                json!({
                    "mode": "both",
                    "both_properties": o.both(),
                    "bvn": o.bvn,
                    "pmc": o.pmc,
                    "structural": d,
                    "oracle": o,
                }),
            )
        }
    };
    RunReport::new("decide", started, result)
        .with_input(&text)
        .with_budget(budget)
        .print()?;
    Ok(verdict_code(both))
}

fn labelling_note(spec: &FamilySpec) -> &'static str {
    match spec {
        FamilySpec::OddWheel { .. } => "rim 1..2k+1 in cyclic order, hub 2k+2",
        FamilySpec::K4SpliceK33 | FamilySpec::Murty { .. } => "a1 a2 b1 b2 b3 t1 t2 t3 = 1..8",
        FamilySpec::PBrick { .. } => "u0 v0 u1 u2 v2 = 1..5, rim vertex w_i = 6 + i",
        FamilySpec::Petersen => "outer cycle 1..5, inner vertex i + 5 opposite i",
        FamilySpec::Prism { .. } => "outer cycle 1..n, inner cycle n+1..2n, rung i to n + i",
        FamilySpec::MoebiusLadder { .. } => "cycle 1..2n, diagonal i to i + n",
        FamilySpec::TruncatedBiwheel { .. } => "path 1..2n-2, hubs 2n-1 and 2n",
        FamilySpec::Staircase { .. } => "x 1..k, y k+1..2k, a = 2k+1, b = 2k+2",
        FamilySpec::K4Multi { .. } => "pairs 12 13 14 23 24 34 in edge order",
        FamilySpec::K2Multi { .. } | FamilySpec::K33 => "vertices in natural order",
    }
}

pub fn generate(family: &str, params: &[usize], out: Option<&Path>) -> anyhow::Result<u8> {
    let started = Instant::now();
    let spec = FamilySpec::from_tag(family, params)?;
    let g = spec.build()?;
    let header = format!(
        "family {}\nlabels: {}",
        serde_json::to_string(&spec)?,
        labelling_note(&spec)
    );
    let text = write_mcg(&g, &[&header]);
    match out {
        None => print!("{text}"),
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            RunReport::new(
                "generate",
                started,
                json!({
                    "family": spec,
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "out": path,
                    "digest": digest(&text),
                }),
            )
            .print()?;
        }
    }
    Ok(0)
}

pub fn decompose(file: &Path, seed: Option<u64>) -> anyhow::Result<u8> {
    let started = Instant::now();
    let (g, text) = read_graph(file)?;
    let (tree, b) = match seed {
        Some(s) => tight_cut_decomposition_seeded(&g, s)?,
        None => tight_cut_decomposition(&g)?,
    };
    let leaves: Vec<Value> = tree
        .leaves()
        .iter()
        .map(|(h, kind)| json!({ "kind": kind, "vertices": h.vertex_count(), "edges": h.edge_count() }))
        .collect();
    RunReport::new(
        "decompose",
        started,
        json!({ "b_invariant": b, "near_brick": b.0 == 1, "leaves": leaves, "tree": tree }),
    )
    .with_input(&text)
    .print()?;
    Ok(0)
}

pub fn reduce(file: &Path) -> anyhow::Result<u8> {
    let started = Instant::now();
    let (g, text) = read_graph(file)?;
    let trace = reduce_to_norine_thomas(&g)?;
    RunReport::new(
        "reduce",
        started,
        json!({ "length": trace.steps.len(), "terminal_families": trace.terminal_families, "trace": trace }),
    )
    .with_input(&text)
    .print()?;
    Ok(0)
}

pub fn skeleton(file: &Path, budget: u64) -> anyhow::Result<u8> {
    let started = Instant::now();
    let (g, text) = read_graph(file)?;
    let sk = build_skeleton(&g, Budget(budget))?;
    RunReport::new(
        "skeleton",
        started,
        json!({ "matchings": sk.nodes.len(), "diameter": sk.diameter, "complete": sk.is_complete(), "skeleton": sk }),
    )
    .with_input(&text)
    .with_budget(budget)
    .print()?;
    Ok(0)
}

pub fn crossval(
    max_order: usize,
    seed: u64,
    perturbation_count: usize,
    input: Option<&Path>,
    budget: u64,
) -> anyhow::Result<u8> {
    let started = Instant::now();
    if max_order > MAX_CROSSVAL_ORDER {
        return Err(Error::BadParams(format!(
            "max order {max_order} exceeds {MAX_CROSSVAL_ORDER}"
        ))
        .into());
    }
    let (mut graphs, skipped) = match input {
        Some(path) => {
            let all = parse_mcg_stream(&read_text(path)?)?;
            let total = all.len();
            let kept: Vec<MultiGraph> = all.into_iter().filter(is_matching_covered).collect();
            let skipped = total - kept.len();
            (kept, skipped)
        }
        None => (matching_covered_up_to(max_order), 0),
    };
    let exhaustive = graphs.len();
    graphs.extend(
        perturbations(seed, perturbation_count)
            .into_iter()
            .map(|p| p.graph),
    );
    let report = run_crossval(&graphs, Budget(budget))?;
    for d in &report.disagreements {
        eprint!(
            "{}",
            write_mcg(&d.graph, &[&format!("disagreement on graph {}", d.index)])
        );
    }
    let clean = report.is_clean();
    RunReport::new(
        "crossval",
        started,
        json!({
            "max_order": max_order,
            "seed": seed,
            "corpus_graphs": exhaustive,
            "perturbations": perturbation_count,
            "skipped_not_matching_covered": skipped,
            "report": report,
        }),
    )
    .with_budget(budget)
    .print()?;
    Ok(if clean { 0 } else { 4 })
}

fn check_oracle(g: &MultiGraph, o: &OracleClassification) -> anyhow::Result<()> {
    for (holds, witness, name) in [
        (o.bvn, &o.odd_witness, "odd"),
        (o.pmc, &o.even_witness, "even"),
    ] {
        match (holds, witness) {
            (true, None) => {}
            (false, Some(b)) => b.validate(g)?,
            _ => bail!("{name} verdict and certificate do not match"),
        }
    }
    Ok(())
}

fn check_report(g: &MultiGraph, text: &str, report: &RunReport) -> anyhow::Result<()> {
    if let Some(d) = &report.input_digest {
        if *d != digest(text) {
            bail!("graph file does not match the report digest");
        }
    }
    let r = &report.result;
    match report.command.as_str() {
        "decide" => {
            let both = r["both_properties"].as_bool().context("missing verdict")?;
            if let Some(s) = r.get("structural") {
                let d: Decision = serde_json::from_value(s.clone())?;
                d.validate(g)?;
                if d.both_properties != both {
                    bail!("structural verdict differs from the reported one");
                }
            }
            if let Some(o) = r.get("oracle") {
                let o: OracleClassification = serde_json::from_value(o.clone())?;
                check_oracle(g, &o)?;
                if o.both() != both {
                    bail!("oracle verdict differs from the reported one");
                }
            }
        }
        "decompose" => {
            let tree: DecompositionTree = serde_json::from_value(r["tree"].clone())?;
            if tree.graph() != g {
                bail!("decomposition root is not the input graph");
            }
            tree.validate()?;
        }
        "reduce" => {
            let trace: ReductionTrace = serde_json::from_value(r["trace"].clone())?;
            let first = trace.steps.first().map_or(&trace.terminal, |s| &s.graph);
            if first != g {
                bail!("reduction does not start at the input graph");
            }
            trace.validate()?;
        }
        "skeleton" => {
            let sk: SkeletonGraph = serde_json::from_value(r["skeleton"].clone())?;
            let budget = Budget(report.budget.unwrap_or(Budget::DEFAULT.0));
            if build_skeleton(g, budget)? != sk {
                bail!("skeleton differs from the recomputed one");
            }
        }
        other => bail!("reports of `{other}` carry no certificate"),
    }
    Ok(())
}

pub fn verify(graph: &Path, report_path: &Path) -> anyhow::Result<u8> {
    let started = Instant::now();
    let (g, text) = read_graph(graph)?;
    let report: RunReport =
        serde_json::from_str(&read_text(report_path)?).context("parsing report")?;
    let outcome = check_report(&g, &text, &report);
    let valid = outcome.is_ok();
    RunReport::new(
        "verify",
        started,
        json!({
            "verified_command": report.command,
            "valid": valid,
            "error": outcome.err().map(|e| format!("{e:#}")),
        }),
    )
    .with_input(&text)
    .print()?;
    Ok(if valid { 0 } else { 1 })
}
