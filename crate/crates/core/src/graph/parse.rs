//! Line-oriented graph file format:
//!
//! ```text
//! # comment
//! vertex v
//! edge e: v -> v
//! infinite v
//! ```
//!
//! Vertices may be declared anywhere in the file; `edge` lines are taken in
//! file order, which fixes the per-vertex out-edge order.

use std::fmt::Write as _;

use super::{DirectedGraph, GraphBuilder};
use crate::error::{Error, Result};

/// Identifiers with this prefix are minted by graph transforms.
pub const RESERVED_PREFIX: &str = "~tail:";

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept identifiers carrying [`RESERVED_PREFIX`], e.g. when reading
    /// back the output of a transform.
    pub allow_reserved: bool,
}

pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    parse_graph_with(text, ParseOptions::default())
}

enum Stmt<'a> {
    Vertex(&'a str),
    Edge(&'a str, &'a str, &'a str),
    Infinite(&'a str),
}

pub fn parse_graph_with(text: &str, opts: ParseOptions) -> Result<DirectedGraph> {
    let mut stmts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let stmt = parse_line(content).map_err(|message| Error::Syntax { line, message })?;
        let ids: Vec<&str> = match stmt {
            Stmt::Vertex(v) | Stmt::Infinite(v) => vec![v],
            Stmt::Edge(e, s, r) => vec![e, s, r],
        };
        for id in ids {
            check_ident(id, opts).map_err(|err| match err {
                Error::ReservedIdentifier(_) => err,
                _ => Error::Syntax { line, message: format!("invalid identifier `{id}`") },
            })?;
        }
        stmts.push(stmt);
    }

    let mut b = GraphBuilder::default();
    for s in &stmts {
        if let Stmt::Vertex(v) = s {
            b.vertex(v)?;
        }
    }
    for s in &stmts {
        if let Stmt::Edge(e, src, dst) = s {
            b.edge(e, src, dst)?;
        }
    }
    for s in &stmts {
        if let Stmt::Infinite(v) = s {
            b.flag_infinite(v)?;
        }
    }
    b.build()
}

fn parse_line(content: &str) -> std::result::Result<Stmt<'_>, String> {
    let mut tokens = content.split_whitespace();
    let keyword = tokens.next().unwrap_or_default();
    let rest: Vec<&str> = tokens.collect();
    match keyword {
        "vertex" => match rest.as_slice() {
            [v] => Ok(Stmt::Vertex(v)),
            _ => Err("expected `vertex <id>`".into()),
        },
        "infinite" => match rest.as_slice() {
            [v] => Ok(Stmt::Infinite(v)),
            _ => Err("expected `infinite <vertex>`".into()),
        },
        "edge" => {
            let shape = "expected `edge <id>: <src> -> <dst>`";
            let (id, tail) = match rest.as_slice() {
                [id, ":", tail @ ..] => (*id, tail),
                [id, tail @ ..] if id.ends_with(':') && id.len() > 1 => (&id[..id.len() - 1], tail),
                _ => return Err(shape.into()),
            };
            match tail {
                [src, "->", dst] => Ok(Stmt::Edge(id, src, dst)),
                _ => Err(shape.into()),
            }
        }
        other => Err(format!("unknown statement `{other}`")),
    }
}

/// `[A-Za-z_~][A-Za-z0-9_'~:]*`
pub(crate) fn is_ident(id: &str) -> bool {
    let mut chars = id.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '~' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '~' | ':'))
}

fn check_ident(id: &str, opts: ParseOptions) -> Result<()> {
    if !is_ident(id) {
        return Err(Error::Syntax { line: 0, message: String::new() });
    }
    if !opts.allow_reserved && id.starts_with(RESERVED_PREFIX) {
        return Err(Error::ReservedIdentifier(id.to_string()));
    }
    Ok(())
}

/// Serializes a graph in the file format; `parse_graph_with` with
/// `allow_reserved` reads it back to an equal graph.
pub fn write_graph(g: &DirectedGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "vertex {}", g.vertex_name(v));
    }
    for e in g.edges() {
        let _ =
            writeln!(out, "edge {}: {} -> {}", g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e)));
    }
    for v in g.vertices() {
        if g.is_flagged(v) {
            let _ = writeln!(out, "infinite {}", g.vertex_name(v));
        }
    }
    out
}
