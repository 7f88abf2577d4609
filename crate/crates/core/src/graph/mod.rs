//! Finite directed graphs and their paths.
//!
//! Identifiers are opaque strings. Internally vertices and edges are indexed
//! in declaration order, and that order is the single deterministic ordering
//! every other module relies on (per-vertex out-edge lists, distinguished
//! edges, path enumeration).

mod catalog;
mod parse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use catalog::*;
pub use parse::{parse_graph, parse_graph_with, write_graph, ParseOptions, RESERVED_PREFIX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeData {
    name: String,
    source: VertexId,
    range: VertexId,
}

/// Labels a vertex can carry. A vertex usually carries several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Source,
    Sink,
    Regular,
    InfiniteEmitter,
    Isolated,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VertexKind::Source => "source",
            VertexKind::Sink => "sink",
            VertexKind::Regular => "regular",
            VertexKind::InfiniteEmitter => "infinite_emitter",
            VertexKind::Isolated => "isolated",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ident {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// An immutable finite directed graph.
///
/// Flagged vertices stand for infinite emitters: their listed out-edges are
/// a finite truncation of an infinite family, and they are never regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    flagged: Vec<bool>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    names: HashMap<String, Ident>,
}

impl DirectedGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        match self.names.get(name) {
            Some(Ident::Vertex(v)) => Ok(*v),
            _ => Err(Error::UnknownVertex(name.to_string())),
        }
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        match self.names.get(name) {
            Some(Ident::Edge(e)) => Some(*e),
            _ => None,
        }
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    /// Out-edges of `v` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn is_flagged(&self, v: VertexId) -> bool {
        self.flagged[v.index()]
    }

    /// Emits at least one and finitely many edges.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.flagged[v.index()] && !self.out_edges[v.index()].is_empty()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        !self.flagged[v.index()] && self.out_edges[v.index()].is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_edges[v.index()].is_empty()
    }

    /// The distinguished edge of a regular vertex: its last listed out-edge.
    pub fn distinguished_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.is_regular(v) {
            self.out_edges[v.index()].last().copied()
        } else {
            None
        }
    }

    pub fn classify(&self, v: VertexId) -> BTreeSet<VertexKind> {
        let mut kinds = BTreeSet::new();
        let sink = self.is_sink(v);
        let source = self.is_source(v);
        if sink {
            kinds.insert(VertexKind::Sink);
        }
        if source {
            kinds.insert(VertexKind::Source);
        }
        if sink && source {
            kinds.insert(VertexKind::Isolated);
        }
        if self.is_flagged(v) {
            kinds.insert(VertexKind::InfiniteEmitter);
        } else if !sink {
            kinds.insert(VertexKind::Regular);
        }
        kinds
    }

    /// Labels of the vertex named `name`.
    pub fn classify_vertex(&self, name: &str) -> Result<BTreeSet<VertexKind>> {
        Ok(self.classify(self.vertex_id(name)?))
    }

    /// True iff the graph has no closed path.
    pub fn is_acyclic(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.vertex_count();
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Active;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&e) = self.out_edges[v].get(*next) {
                    *next += 1;
                    let w = self.range(e).index();
                    match mark[w] {
                        Mark::Active => return false,
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, 0));
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Validates a path given by start vertex and edge sequence.
    pub fn path(&self, start: VertexId, edges: Vec<EdgeId>) -> Result<Path> {
        if start.index() >= self.vertex_count() {
            return Err(Error::UnknownPath(format!("vertex #{}", start.0)));
        }
        let mut at = start;
        for &e in &edges {
            if e.index() >= self.edge_count() || self.source(e) != at {
                return Err(Error::UnknownPath(self.describe_edges(&edges)));
            }
            at = self.range(e);
        }
        Ok(Path { start, edges })
    }

    /// Path through the named edges; a single vertex name gives a trivial path.
    pub fn path_by_names(&self, names: &[&str]) -> Result<Path> {
        if let [single] = names {
            if let Ok(v) = self.vertex_id(single) {
                return Ok(Path::trivial(v));
            }
        }
        let edges = names
            .iter()
            .map(|n| self.edge_id(n).ok_or_else(|| Error::UnknownPath(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let Some(&first) = edges.first() else {
            return Err(Error::UnknownPath(String::new()));
        };
        self.path(self.source(first), edges)
    }

    fn describe_edges(&self, edges: &[EdgeId]) -> String {
        edges
            .iter()
            .map(|e| self.edges.get(e.index()).map_or_else(|| format!("#{}", e.0), |d| d.name.clone()))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// All paths of length at most `max_len`, ordered by length and then
    /// lexicographically by edge order. Includes one trivial path per vertex.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertices().map(Path::trivial).collect();
        let mut frontier: Vec<Path> = self.edges().map(|e| Path { start: self.source(e), edges: vec![e] }).collect();
        for _ in 1..=max_len {
            frontier.sort();
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                let end = p.range(self);
                for &e in self.out_edges(end) {
                    let mut edges = p.edges.clone();
                    edges.push(e);
                    next.push(Path { start: p.start, edges });
                }
            }
            frontier = next;
        }
        out
    }

    /// Same graph with user-facing names; used when printing paths.
    pub fn path_name(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.start).to_string()
        } else {
            self.describe_edges(&p.edges)
        }
    }
}

/// A path: a start vertex plus a (possibly empty) composable edge sequence.
///
/// Ordering compares edge sequences by declaration order of the edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub(crate) start: VertexId,
    pub(crate) edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, g: &DirectedGraph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.range(e))
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { start: self.start, edges }
    }

    pub fn is_composable(&self, g: &DirectedGraph) -> bool {
        self.edges.windows(2).all(|w| g.range(w[0]) == g.source(w[1]))
            && self.edges.first().is_none_or(|&e| g.source(e) == self.start)
    }
}

/// Incremental graph construction with identifier checks.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    flagged: Vec<bool>,
    names: HashMap<String, Ident>,
}

impl GraphBuilder {
    pub fn vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.names.contains_key(name) {
            return Err(Error::DuplicateIdentifier(name.to_string()));
        }
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(name.to_string());
        self.flagged.push(false);
        self.names.insert(name.to_string(), Ident::Vertex(id));
        Ok(id)
    }

    pub fn edge(&mut self, name: &str, source: &str, range: &str) -> Result<EdgeId> {
        if self.names.contains_key(name) {
            return Err(Error::DuplicateIdentifier(name.to_string()));
        }
        let s = self.lookup(source)?;
        let r = self.lookup(range)?;
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(EdgeData { name: name.to_string(), source: s, range: r });
        self.names.insert(name.to_string(), Ident::Edge(id));
        Ok(id)
    }

    pub fn flag_infinite(&mut self, name: &str) -> Result<()> {
        let v = match self.names.get(name) {
            Some(Ident::Vertex(v)) => *v,
            _ => return Err(Error::UnknownVertex(name.to_string())),
        };
        self.flagged[v.index()] = true;
        Ok(())
    }

    fn lookup(&self, name: &str) -> Result<VertexId> {
        match self.names.get(name) {
            Some(Ident::Vertex(v)) => Ok(*v),
            _ => Err(Error::DanglingEndpoint(name.to_string())),
        }
    }

    pub fn build(self) -> Result<DirectedGraph> {
        let n = self.vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.source.index()].push(EdgeId(i as u32));
            in_edges[e.range.index()].push(EdgeId(i as u32));
        }
        for (v, &flag) in self.flagged.iter().enumerate() {
            if flag && out_edges[v].is_empty() {
                return Err(Error::InfiniteEmitter(format!("{} is flagged but lists no out-edges", self.vertices[v])));
            }
        }
        Ok(DirectedGraph {
            vertices: self.vertices,
            edges: self.edges,
            flagged: self.flagged,
            out_edges,
            in_edges,
            names: self.names,
        })
    }
}
