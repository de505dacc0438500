//! The `mcg` text format.
//!
//! ```text
//! c optional comment lines
//! p mcg <n> <m>
//! e <u> <v>        (exactly m lines, 1-based vertices)
//! ```
//!
//! Edge ids are assigned in file order starting at 0. Parallel edges are
//! repeated `e` lines. A stream may hold several graphs back to back.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

pub fn write_mcg(g: &MultiGraph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            writeln!(out, "c {line}").unwrap();
        }
    }
    writeln!(out, "p mcg {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Parses exactly one graph.
pub fn parse_mcg(text: &str) -> Result<MultiGraph> {
    let mut graphs = parse_mcg_stream(text)?;
    match graphs.len() {
        1 => Ok(graphs.pop().unwrap()),
        0 => Err(Error::Parse {
            line: 0,
            msg: "missing `p mcg` header".into(),
        }),
        k => Err(Error::Parse {
            line: 0,
            msg: format!("expected one graph, found {k}"),
        }),
    }
}

/// Vertex count, declared edge count and the edges read so far.
type Pending = (usize, usize, Vec<(usize, usize)>);

pub fn parse_mcg_stream(text: &str) -> Result<Vec<MultiGraph>> {
    let mut graphs = Vec::new();
    let mut current: Option<Pending> = None;
    let finish = |cur: Option<Pending>, line: usize, graphs: &mut Vec<MultiGraph>| -> Result<()> {
        if let Some((n, m, edges)) = cur {
            if edges.len() != m {
                return Err(Error::Parse {
                    line,
                    msg: format!("header declares {m} edges, found {}", edges.len()),
                });
            }
            let g = MultiGraph::new(n, edges).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            graphs.push(g);
        }
        Ok(())
    };
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a nonnegative integer, got `{s}`"),
            })
        };
        match fields.as_slice() {
            ["p", "mcg", n, m] => {
                finish(current.take(), line, &mut graphs)?;
                current = Some((num(n)?, num(m)?, Vec::new()));
            }
            ["e", u, v] => {
                let Some((n, m, edges)) = current.as_mut() else {
                    return Err(Error::Parse {
                        line,
                        msg: "edge line before `p mcg` header".into(),
                    });
                };
                let (u, v) = (num(u)?, num(v)?);
                if u == 0 || v == 0 || u > *n || v > *n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("vertex out of range 1..={n}"),
                    });
                }
                if edges.len() == *m {
                    return Err(Error::Parse {
                        line,
                        msg: format!("more than the declared {m} edges"),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unrecognised line `{trimmed}`"),
                })
            }
        }
    }
    finish(current.take(), last_line, &mut graphs)?;
    Ok(graphs)
}
