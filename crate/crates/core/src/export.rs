//! Serialization of graphs and designs: graph6, DIMACS edge lists, JSON,
//! and 0/1 incidence CSV.

use serde::{Deserialize, Serialize};

use crate::design::Design;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexLabel};

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) as u8 & 0x3f).wrapping_add(63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) as u8 & 0x3f).wrapping_add(63) as char);
        }
    }
}

/// Standard graph6 encoding (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.is_adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |msg: &str| Error::Parse(format!("graph6: {msg}"));
    let mut vals = Vec::with_capacity(bytes.len());
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(bad("byte out of range"));
        }
        vals.push((b - 63) as usize);
    }
    let (n, rest) = match vals.as_slice() {
        [63, 63, a, b, c, d, e, f, rest @ ..] => {
            ([a, b, c, d, e, f].iter().fold(0usize, |acc, &&x| acc << 6 | x), rest)
        }
        [63, a, b, c, rest @ ..] => ([a, b, c].iter().fold(0usize, |acc, &&x| acc << 6 | x), rest),
        [x, rest @ ..] if *x < 63 => (*x, rest),
        _ => return Err(bad("missing vertex count")),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(bad("wrong length"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if rest[k / 6] >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::unlabeled(n, edges)
}

/// `p edge N M` followed by `e u v` lines (1-based, sorted).
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

pub fn graph_to_json(g: &Graph) -> Result<String> {
    let labels = g
        .labels()
        .iter()
        .map(|l| match l {
            VertexLabel::Index(_) => None,
            other => Some(other.to_string()),
        })
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default();
    let j = GraphJson { vertices: g.vertex_count(), edges: g.edges().collect(), labels };
    Ok(serde_json::to_string(&j)?)
}

/// Reads the JSON edge list; labels, if present, are not reattached.
pub fn graph_from_json(s: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(s)?;
    Graph::unlabeled(j.vertices, j.edges)
}

#[derive(Serialize, Deserialize)]
pub struct DesignJson {
    pub v: usize,
    pub blocks: Vec<Vec<u32>>,
}

pub fn design_to_json(d: &Design) -> Result<String> {
    Ok(serde_json::to_string(&DesignJson { v: d.point_count(), blocks: d.blocks().to_vec() })?)
}

pub fn design_from_json(s: &str) -> Result<Design> {
    let j: DesignJson = serde_json::from_str(s)?;
    Design::from_blocks(j.v, j.blocks)
}

/// One row per block, one column per point.
pub fn to_incidence_csv(d: &Design) -> String {
    let v = d.point_count();
    let mut out = String::with_capacity(d.block_count() * 2 * v);
    let mut row = vec!['0'; v];
    for b in d.blocks() {
        row.iter_mut().for_each(|c| *c = '0');
        for &p in b {
            row[p as usize] = '1';
        }
        for (i, c) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push(*c);
        }
        out.push('\n');
    }
    out
}
