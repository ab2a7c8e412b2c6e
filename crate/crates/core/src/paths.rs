//! Increasing paths in the graph of legal moves and the sign-reversing
//! involution that cancels the irregular ones.
//!
//! Vertices are core-free weight diagrams; an edge `f → f^s_t` carries the
//! label `[s, t]` and the weight of the legal move. The graph is infinite,
//! so only neighbourhoods and `f → g` searches are ever materialised.

use serde::{Deserialize, Serialize};

use crate::diagram::{cap_diagram, WeightDiagram};
use crate::error::{Error, Result};
use crate::moves::legal_ends;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: WeightDiagram,
    pub to: WeightDiagram,
    pub start: i64,
    pub end: i64,
    pub weight: i64,
}

impl Edge {
    pub fn label(&self) -> (i64, i64) {
        (self.start, self.end)
    }
}

/// A sequence of consecutively composable edges. The source is stored so
/// that the empty path still knows where it sits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: WeightDiagram,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    /// Index of the first irregular edge.
    Irregular {
        first_violation: usize,
    },
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    s: i64,
    t: i64,
    w: i64,
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    from: String,
    to: String,
    edges: Vec<EdgeJson>,
    regular: bool,
}

impl Path {
    pub fn empty(source: WeightDiagram) -> Self {
        Path { source, edges: Vec::new() }
    }

    /// Replays labels from `source`, checking every step is a legal move.
    pub fn from_labels(source: &WeightDiagram, labels: &[(i64, i64)]) -> Result<Self> {
        let mut cur = source.clone();
        let mut edges = Vec::with_capacity(labels.len());
        for &(s, t) in labels {
            let mv = legal_ends(&cur, s)?
                .into_iter()
                .find(|m| m.end == t)
                .ok_or_else(|| Error::InvariantViolation(format!("[{s},{t}] is not a legal move from {cur}")))?;
            let next = cur.relocate_cross(s, t);
            edges.push(Edge { from: cur, to: next.clone(), start: s, end: t, weight: mv.weight });
            cur = next;
        }
        Ok(Path { source: source.clone(), edges })
    }

    pub fn source(&self) -> &WeightDiagram {
        &self.source
    }

    pub fn target(&self) -> &WeightDiagram {
        self.edges.last().map(|e| &e.to).unwrap_or(&self.source)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn labels(&self) -> Vec<(i64, i64)> {
        self.edges.iter().map(Edge::label).collect()
    }

    /// `l(P)`, the sum of edge weights.
    pub fn weight(&self) -> i64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// `(−1)^{l(P)}`.
    pub fn sign(&self) -> i64 {
        if self.weight() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_increasing(&self) -> bool {
        self.edges.windows(2).all(|w| w[0].start < w[1].start)
    }

    /// Per edge: positive weight, or some later edge ends at its start.
    pub fn irregular_edges(&self) -> Vec<bool> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| e.weight > 0 || self.edges[i + 1..].iter().any(|later| later.end == e.start))
            .collect()
    }

    pub fn is_regular(&self) -> bool {
        !self.irregular_edges().into_iter().any(|b| b)
    }

    /// The irregular edge with the largest end, if any.
    pub fn max_end_irregular_edge(&self) -> Option<&Edge> {
        self.edges
            .iter()
            .zip(self.irregular_edges())
            .filter(|(_, irr)| *irr)
            .map(|(e, _)| e)
            .max_by_key(|e| (e.end, e.start))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = PathJson {
            from: self.source.serialize(),
            to: self.target().serialize(),
            edges: self.edges.iter().map(|e| EdgeJson { s: e.start, t: e.end, w: e.weight }).collect(),
            regular: self.is_regular(),
        };
        serde_json::to_value(j).expect("plain data")
    }

    /// Rebuilds a path from its JSON form, re-validating every edge.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: PathJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, format!("path json: {e}")))?;
        let from = WeightDiagram::parse(&j.from)?;
        let labels: Vec<_> = j.edges.iter().map(|e| (e.s, e.t)).collect();
        let p = Path::from_labels(&from, &labels)?;
        let consistent = p.target().serialize() == WeightDiagram::parse(&j.to)?.serialize()
            && p.edges.iter().zip(&j.edges).all(|(e, je)| e.weight == je.w)
            && p.is_regular() == j.regular;
        if !consistent {
            return Err(Error::parse(0, "path json disagrees with the replayed path"));
        }
        Ok(p)
    }
}

fn require_core_free(f: &WeightDiagram) -> Result<()> {
    if f.is_core_free() {
        Ok(())
    } else {
        Err(Error::NotCoreFree)
    }
}

/// Outgoing edges of `f`, by decreasing start then decreasing end.
pub fn edges_from(f: &WeightDiagram) -> Result<Vec<Edge>> {
    require_core_free(f)?;
    let mut out = Vec::new();
    for &a in f.crosses() {
        for mv in legal_ends(f, a)? {
            out.push(Edge {
                from: f.clone(),
                to: f.relocate_cross(a, mv.end),
                start: a,
                end: mv.end,
                weight: mv.weight,
            });
        }
    }
    Ok(out)
}

/// Every increasing path from `f` to `g`, sorted by label sequence.
///
/// Depth-first over strictly increasing starts. Each move lowers `|·|`, so
/// a branch dies once `|cur| < |g|`; crosses at or left of the last start
/// can never move again, so they must already be crosses of `g`.
pub fn increasing_paths(f: &WeightDiagram, g: &WeightDiagram) -> Result<Vec<Path>> {
    require_core_free(f)?;
    require_core_free(g)?;
    if !f.same_block(g) {
        return Err(Error::CoreMismatch);
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dfs_paths(f, g, None, &mut stack, &mut out)?;
    let mut paths: Vec<Path> = out.into_iter().map(|edges| Path { source: f.clone(), edges }).collect();
    paths.sort_by_key(|p| p.labels());
    Ok(paths)
}

fn dfs_paths(
    cur: &WeightDiagram,
    g: &WeightDiagram,
    last_start: Option<i64>,
    stack: &mut Vec<Edge>,
    out: &mut Vec<Vec<Edge>>,
) -> Result<()> {
    if cur == g {
        out.push(stack.clone());
        return Ok(());
    }
    let target_norm = g.norm();
    if cur.norm() <= target_norm {
        return Ok(());
    }
    if let Some(ls) = last_start {
        let frozen_ok = cur.crosses().iter().filter(|&&c| c <= ls).all(|&c| g.crosses().contains(&c));
        if !frozen_ok {
            return Ok(());
        }
    }
    for &s in cur.crosses().iter().rev() {
        if last_start.is_some_and(|ls| s <= ls) {
            continue;
        }
        for mv in legal_ends(cur, s)? {
            if cur.norm() - (s - mv.end) < target_norm {
                continue;
            }
            let next = cur.relocate_cross(s, mv.end);
            stack.push(Edge { from: cur.clone(), to: next.clone(), start: s, end: mv.end, weight: mv.weight });
            dfs_paths(&next, g, Some(s), stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}

pub fn classify(p: &Path) -> Result<Regularity> {
    if !p.is_increasing() {
        return Err(Error::NotIncreasing);
    }
    Ok(match p.irregular_edges().iter().position(|&b| b) {
        Some(first_violation) => Regularity::Irregular { first_violation },
        None => Regularity::Regular,
    })
}

/// The involution on increasing irregular paths.
///
/// Take the irregular edge `[s, t]` with the largest end. If a regular edge
/// `[a, s]` exists, the pair is merged into `[a, t]` (weight goes up by one).
/// Otherwise nothing ends at `s`; the cap ending at `s` in the cap diagram
/// of the target of `[s, t]` begins at some `b` with `t < b < s`, and
/// `[s, t]` is split into `[b, t]` and `[s, b]` (weight goes down by one).
/// The rewritten path is replayed and re-validated.
pub fn star(p: &Path) -> Result<Path> {
    if !p.is_increasing() {
        return Err(Error::NotIncreasing);
    }
    let irregular = p.irregular_edges();
    if !irregular.iter().any(|&b| b) {
        return Err(Error::NotIrregular);
    }
    check_distinct_ends(p)?;
    let pivot = p.max_end_irregular_edge().expect("irregular").clone();
    let (s, t) = pivot.label();

    let mut labels = p.labels();
    let enders: Vec<usize> = (0..p.len()).filter(|&i| p.edges[i].end == s).collect();
    match enders.as_slice() {
        [j] if !irregular[*j] => {
            let a = p.edges[*j].start;
            labels.retain(|&l| l != (s, t) && l != (a, s));
            labels.push((a, t));
        }
        [] => {
            let cap = cap_diagram(&pivot.to)
                .cap_ending_at(s)
                .ok_or_else(|| Error::InvariantViolation(format!("no cap ends at {s} in {}", pivot.to)))?;
            let b = cap.begin;
            if b <= t {
                return Err(Error::InvariantViolation(format!("cap ending at {s} begins at {b} <= {t}")));
            }
            labels.retain(|&l| l != (s, t));
            labels.push((b, t));
            labels.push((s, b));
        }
        _ => {
            return Err(Error::InvariantViolation(format!(
                "edge [{s},{t}] has maximal irregular end but an irregular edge ends at {s}"
            )))
        }
    }
    labels.sort_unstable();
    let q = Path::from_labels(&p.source, &labels)?;
    let ok = q.is_increasing() && q.target() == p.target() && !q.is_regular() && (q.weight() - p.weight()).abs() == 1;
    if !ok {
        return Err(Error::InvariantViolation(format!("involution produced an invalid path {:?}", q.labels())));
    }
    Ok(q)
}

fn check_distinct_ends(p: &Path) -> Result<()> {
    let mut ends: Vec<i64> = p.edges.iter().map(|e| e.end).collect();
    ends.sort_unstable();
    match ends.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::InvariantViolation(format!("two edges end at {}", w[0]))),
        None => Ok(()),
    }
}

/// `c_{f,g} = Σ_P (−1)^{l(P)}` over increasing paths.
pub fn path_coefficient(f: &WeightDiagram, g: &WeightDiagram) -> Result<i64> {
    Ok(increasing_paths(f, g)?.iter().map(Path::sign).sum())
}

pub fn regular_paths(f: &WeightDiagram, g: &WeightDiagram) -> Result<Vec<Path>> {
    Ok(increasing_paths(f, g)?.into_iter().filter(Path::is_regular).collect())
}
