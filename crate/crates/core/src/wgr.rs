//! Plain-text graph format.
//!
//! ```text
//! # comment
//! node <id> [<weight>]
//! edge <u> <v> [<weight>]
//! ```
//! Ids are 0-based and every id below the node count must be declared.
//! A carrier is weighted iff its lines carry a weight column; mixing is an
//! error. Weights are integers, `bottom` or `top`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::weight::Weight;

fn parse_weight(tok: &str, line: usize) -> Result<Weight> {
    match tok {
        "bottom" => Ok(Weight::Bottom),
        "top" => Ok(Weight::Top),
        _ => {
            let x: u64 = tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad weight `{tok}`") })?;
            Weight::level(x).map_err(|e| Error::Parse { line, msg: e.to_string() })
        }
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad id `{tok}`") })
}

/// Tracks whether a carrier's lines all have, or all lack, a weight.
fn uniform(slot: &mut Option<bool>, has: bool, line: usize, what: &str) -> Result<()> {
    match *slot {
        Some(prev) if prev != has => Err(Error::Parse { line, msg: format!("{what} weights must be given on all lines or none") }),
        _ => {
            *slot = Some(has);
            Ok(())
        }
    }
}

pub fn parse_wgr(text: &str) -> Result<WeightedGraph> {
    let mut nodes: Vec<Option<Option<Weight>>> = Vec::new();
    let mut edges = Vec::new();
    let mut edge_w = Vec::new();
    let (mut node_weighted, mut edge_weighted) = (None, None);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["node", id, rest @ ..] if rest.len() <= 1 => {
                let id = parse_id(id, line)?;
                uniform(&mut node_weighted, !rest.is_empty(), line, "node")?;
                let w = rest.first().map(|t| parse_weight(t, line)).transpose()?;
                if nodes.len() <= id {
                    nodes.resize(id + 1, None);
                }
                if nodes[id].is_some() {
                    return Err(Error::Parse { line, msg: format!("node {id} declared twice") });
                }
                nodes[id] = Some(w);
            }
            ["edge", u, v, rest @ ..] if rest.len() <= 1 => {
                uniform(&mut edge_weighted, !rest.is_empty(), line, "edge")?;
                edges.push((parse_id(u, line)?, parse_id(v, line)?, line));
                if let Some(t) = rest.first() {
                    edge_w.push(parse_weight(t, line)?);
                }
            }
            _ => return Err(Error::Parse { line, msg: format!("unrecognized line `{}`", raw.trim()) }),
        }
    }
    if let Some(missing) = nodes.iter().position(|n| n.is_none()) {
        return Err(Error::Parse { line: 0, msg: format!("node {missing} is never declared") });
    }
    for &(u, v, line) in &edges {
        if u >= nodes.len() || v >= nodes.len() {
            return Err(Error::Parse { line, msg: format!("edge ({u},{v}) uses an undeclared node") });
        }
    }
    let g = WeightedGraph::new(nodes.len(), edges.iter().map(|&(u, v, _)| (u, v)))?;
    let g = if node_weighted == Some(true) { g.with_node_weights(nodes.into_iter().map(|n| n.unwrap().unwrap()).collect())? } else { g };
    if edge_weighted == Some(true) {
        return g.with_edge_weights(edge_w);
    }
    Ok(g)
}

/// Inverse of [`parse_wgr`]; dummy nodes are marked with a comment.
pub fn write_wgr(g: &WeightedGraph) -> String {
    let mut s = String::new();
    for i in 0..g.node_count() {
        let _ = write!(s, "node {i}");
        if let Some(w) = g.node_weights() {
            let _ = write!(s, " {}", w[i]);
        }
        s.push_str(if g.is_dummy(i) { " # dummy\n" } else { "\n" });
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = write!(s, "edge {u} {v}");
        if let Some(w) = g.edge_weights() {
            let _ = write!(s, " {}", w[e]);
        }
        s.push('\n');
    }
    s
}
