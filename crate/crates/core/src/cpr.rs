//! CPR graphs: a permutation sggi drawn on its points, with the transpositions of
//! `ρ_i` as edges labelled `i`. Each label class is a partial matching; points fixed
//! by `ρ_i` carry no `i`-edge.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{partition_from_union_find, Permutation};
use crate::sggi::SggiRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CprEdge {
    pub u: usize,
    pub v: usize,
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CprGraph {
    nodes: usize,
    rank: usize,
    label: Option<String>,
    /// Sorted by `(label, u, v)`.
    edges: Vec<CprEdge>,
}

impl CprGraph {
    /// Validates and canonicalizes; endpoints may be given in either order.
    pub fn new(nodes: usize, rank: usize, edges: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut b = Builder::new(nodes, rank)?;
        for (u, v, label) in edges {
            b.add(u, v, label).map_err(Error::Cpr)?;
        }
        Ok(b.finish())
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[CprEdge] {
        &self.edges
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Connected components of the subgraph keeping only the given labels, parts
    /// sorted and ordered by least node.
    pub fn connectivity(&self, labels: &[usize]) -> Result<Vec<Vec<usize>>> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= self.rank) {
            return Err(Error::Cpr(format!("label {bad} out of range 0..{}", self.rank)));
        }
        let keep: BTreeSet<usize> = labels.iter().copied().collect();
        let mut uf = UnionFind::<usize>::new(self.nodes);
        for e in self.edges.iter().filter(|e| keep.contains(&e.label)) {
            uf.union(e.u - 1, e.v - 1);
        }
        Ok(partition_from_union_find(&uf, self.nodes))
    }
}

struct Builder {
    nodes: usize,
    rank: usize,
    label: Option<String>,
    edges: BTreeSet<CprEdge>,
    partner: Vec<Vec<Option<usize>>>,
}

impl Builder {
    fn new(nodes: usize, rank: usize) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::Cpr("graph needs at least one node".into()));
        }
        Ok(Self {
            nodes,
            rank,
            label: None,
            edges: BTreeSet::new(),
            partner: vec![vec![None; rank]; nodes],
        })
    }

    fn add(&mut self, u: usize, v: usize, label: usize) -> std::result::Result<(), String> {
        if label >= self.rank {
            return Err(format!("label {label} out of range 0..{}", self.rank));
        }
        for x in [u, v] {
            if x == 0 || x > self.nodes {
                return Err(format!("node {x} out of range 1..={}", self.nodes));
            }
        }
        if u == v {
            return Err(format!("loop at node {u}"));
        }
        let (u, v) = (u.min(v), u.max(v));
        let edge = CprEdge { u, v, label };
        if self.edges.contains(&edge) {
            return Err(format!("duplicate edge {u} {v} {label}"));
        }
        for x in [u, v] {
            if self.partner[x - 1][label].is_some() {
                return Err(format!("matching violation at node {x}, label {label}"));
            }
        }
        self.partner[u - 1][label] = Some(v);
        self.partner[v - 1][label] = Some(u);
        self.edges.insert(edge);
        Ok(())
    }

    fn finish(self) -> CprGraph {
        let mut edges: Vec<CprEdge> = self.edges.into_iter().collect();
        edges.sort_by_key(|e| (e.label, e.u, e.v));
        CprGraph {
            nodes: self.nodes,
            rank: self.rank,
            label: self.label,
            edges,
        }
    }
}

/// Parses the line format:
///
/// ```text
/// kind: cpr
/// label: A11-rank6-1      # optional
/// nodes: 11
/// rank: 6
/// edge: 1 2 0             # u v label
/// ```
///
/// Blank lines and `#` comments are ignored.
pub fn cpr_parse(text: &str) -> Result<CprGraph> {
    let mut nodes = None;
    let mut rank = None;
    let mut label = None;
    let mut builder: Option<Builder> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("expected 'key: value', found {line:?}")))?;
        match key {
            "kind" if value == "cpr" => {}
            "kind" => return Err(err(format!("expected kind cpr, found {value:?}"))),
            "label" => label = Some(value.to_string()),
            "nodes" => nodes = Some(parse_usize(value).map_err(err)?),
            "rank" => rank = Some(parse_usize(value).map_err(err)?),
            "edge" => {
                if builder.is_none() {
                    let (Some(m), Some(n)) = (nodes, rank) else {
                        return Err(err("'nodes' and 'rank' must precede edges".into()));
                    };
                    builder = Some(Builder::new(m, n).map_err(|e| err(e.to_string()))?);
                }
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(err(format!("edge needs 'u v label', found {value:?}")));
                }
                let nums = parts
                    .iter()
                    .map(|p| parse_usize(p))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(err)?;
                builder
                    .as_mut()
                    .unwrap()
                    .add(nums[0], nums[1], nums[2])
                    .map_err(err)?;
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    let mut builder = match builder {
        Some(b) => b,
        None => {
            let (Some(m), Some(n)) = (nodes, rank) else {
                return Err(Error::Cpr("missing 'nodes' or 'rank'".into()));
            };
            Builder::new(m, n)?
        }
    };
    builder.label = label;
    Ok(builder.finish())
}

/// Canonical text form; `cpr_parse(cpr_emit(g)) == g`.
pub fn cpr_emit(graph: &CprGraph) -> String {
    let mut out = String::from("kind: cpr\n");
    if let Some(l) = &graph.label {
        writeln!(out, "label: {l}").unwrap();
    }
    writeln!(out, "nodes: {}", graph.nodes).unwrap();
    writeln!(out, "rank: {}", graph.rank).unwrap();
    for e in &graph.edges {
        writeln!(out, "edge: {} {} {}", e.u, e.v, e.label).unwrap();
    }
    out
}

/// `ρ_i` is the product of the transpositions on the label-`i` edges.
pub fn cpr_to_rep(graph: &CprGraph) -> SggiRep {
    let mut images: Vec<Vec<usize>> = vec![(1..=graph.nodes).collect(); graph.rank];
    for e in &graph.edges {
        images[e.label][e.u - 1] = e.v;
        images[e.label][e.v - 1] = e.u;
    }
    let perms = images
        .iter()
        .map(|im| Permutation::from_images(im).expect("matchings give involutions"))
        .collect();
    let rep = SggiRep::from_permutations(graph.nodes, perms).expect("common degree");
    match &graph.label {
        Some(l) => rep.with_label(l.clone()),
        None => rep,
    }
}

/// The 2-cycles of each `ρ_i` become edges labelled `i`.
pub fn rep_to_cpr(rep: &SggiRep) -> Result<CprGraph> {
    let mut edges = Vec::new();
    for (i, g) in rep.generators().iter().enumerate() {
        if !g.is_involution() {
            return Err(Error::Cpr(format!("generator {i} is not an involution")));
        }
        for c in g.cycles() {
            edges.push((c[0], c[1], i));
        }
    }
    let graph = CprGraph::new(rep.degree(), rep.rank(), edges)?;
    Ok(match rep.label() {
        Some(l) => graph.with_label(l),
        None => graph,
    })
}

pub(crate) fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn parse_usize(s: &str) -> std::result::Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected a non-negative integer, found {s:?}"))
}
