//! The weight-zero subgraph of the move graph and `Ext¹` between simples.
//!
//! `Ext¹(L(f), L(g))` is at most one-dimensional and non-zero exactly when a
//! single weight-zero legal move joins `f` and `g` in one direction. Within
//! a block of fixed core the same rule is applied verbatim.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagram::{cap_diagram, WeightDiagram};
use crate::error::{Error, Result};
use crate::moves::legal_ends;

/// A weight-zero legal move `from → to` relocating the cross at `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtEdge {
    pub from: WeightDiagram,
    pub to: WeightDiagram,
    pub start: i64,
    pub end: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Out,
    In,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Out => "out",
            Direction::In => "in",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighbor {
    pub diagram: WeightDiagram,
    pub direction: Direction,
    pub edge: ExtEdge,
}

/// The two positions where `f` and `g` differ, as (cross of `f`, cross of `g`).
fn single_swap(f: &WeightDiagram, g: &WeightDiagram) -> Option<(i64, i64)> {
    let fx: BTreeSet<i64> = f.crosses().iter().copied().collect();
    let gx: BTreeSet<i64> = g.crosses().iter().copied().collect();
    let only_f: Vec<i64> = fx.difference(&gx).copied().collect();
    let only_g: Vec<i64> = gx.difference(&fx).copied().collect();
    match (only_f.as_slice(), only_g.as_slice()) {
        ([x], [y]) => Some((*x, *y)),
        _ => None,
    }
}

fn zero_move(f: &WeightDiagram, a: i64, b: i64) -> bool {
    legal_ends(f, a).map(|ms| ms.iter().any(|m| m.end == b && m.weight == 0)).unwrap_or(false)
}

/// `dim Ext¹(L(f), L(g))`; 0 across blocks.
pub fn ext_dim(f: &WeightDiagram, g: &WeightDiagram) -> u32 {
    if !f.same_block(g) {
        return 0;
    }
    let Some((x, y)) = single_swap(f, g) else {
        return 0;
    };
    let joined = if y < x { zero_move(f, x, y) } else { zero_move(g, y, x) };
    u32::from(joined)
}

/// Neighbours of `f` in the weight-zero graph, outgoing first.
///
/// Outgoing: one per weight-zero legal end of each cross. Incoming: one per
/// cap of `D_cap(f)`, obtained by swapping the labels at its ends.
pub fn ext_neighbors(f: &WeightDiagram) -> Vec<Neighbor> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for &a in f.crosses() {
        for mv in legal_ends(f, a).expect("a is a cross") {
            if mv.weight != 0 {
                continue;
            }
            let g = f.relocate_cross(a, mv.end);
            assert!(seen.insert(g.clone()), "{g} reached twice from {f}");
            let edge = ExtEdge { from: f.clone(), to: g.clone(), start: a, end: mv.end };
            out.push(Neighbor { diagram: g, direction: Direction::Out, edge });
        }
    }
    for cap in cap_diagram(f).caps() {
        let g = f.relocate_cross(cap.begin, cap.end);
        debug_assert!(zero_move(&g, cap.end, cap.begin));
        assert!(seen.insert(g.clone()), "{g} reached twice from {f}");
        let edge = ExtEdge { from: g.clone(), to: f.clone(), start: cap.end, end: cap.begin };
        out.push(Neighbor { diagram: g, direction: Direction::In, edge });
    }
    out
}

/// A finite piece of the weight-zero graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtComponent {
    pub vertices: Vec<WeightDiagram>,
    /// `(from, to, start, end)` with vertex indices.
    pub edges: Vec<(usize, usize, i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: usize,
    to: usize,
    s: i64,
    t: i64,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

/// Everything within `radius` undirected steps of `f`, with all edges among
/// those vertices. Vertices are in canonical order; edges sorted.
pub fn ext_component(f: &WeightDiagram, radius: u32) -> ExtComponent {
    let mut dist: BTreeMap<WeightDiagram, u32> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(f.clone(), 0);
    queue.push_back(f.clone());
    while let Some(v) = queue.pop_front() {
        let dv = dist[&v];
        if dv == radius {
            continue;
        }
        for n in ext_neighbors(&v) {
            if !dist.contains_key(&n.diagram) {
                dist.insert(n.diagram.clone(), dv + 1);
                queue.push_back(n.diagram);
            }
        }
    }
    let vertices: Vec<WeightDiagram> = dist.into_keys().collect();
    let pos: BTreeMap<&WeightDiagram, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for n in ext_neighbors(v) {
            if n.direction == Direction::Out {
                if let Some(&j) = pos.get(&n.diagram) {
                    edges.push((i, j, n.edge.start, n.edge.end));
                }
            }
        }
    }
    edges.sort_unstable();
    ExtComponent { vertices, edges }
}

impl ExtComponent {
    pub fn to_json(&self) -> serde_json::Value {
        let j = ComponentJson {
            vertices: self.vertices.iter().map(WeightDiagram::serialize).collect(),
            edges: self.edges.iter().map(|&(from, to, s, t)| EdgeJson { from, to, s, t }).collect(),
        };
        serde_json::to_value(j).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: ComponentJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, format!("graph json: {e}")))?;
        let vertices = j.vertices.iter().map(|s| WeightDiagram::parse(s)).collect::<Result<Vec<_>>>()?;
        let edges: Vec<_> = j.edges.iter().map(|e| (e.from, e.to, e.s, e.t)).collect();
        if edges.iter().any(|&(a, b, _, _)| a >= vertices.len() || b >= vertices.len()) {
            return Err(Error::parse(0, "edge refers to a missing vertex"));
        }
        Ok(ExtComponent { vertices, edges })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ext {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
        }
        for &(a, b, st, en) in &self.edges {
            let _ = writeln!(s, "  v{a} -> v{b} [label=\"[{st},{en}]\"];");
        }
        s.push_str("}\n");
        s
    }
}
