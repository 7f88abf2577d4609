//! Depth-truncated desingularization.
//!
//! Every sink `v0` gets a tail `v0 -> v1 -> ... -> v_depth`. A flagged vertex
//! `v0` with listed edges `e_1..e_m` loses them and gets a tail with edges
//! `f_j: v_{j-1} -> v_j` plus `g_j: v_{j-1} -> r(e_j)` for `j <= m`; the edge
//! `e_i` is then replaced by the path `f_1 ... f_{i-1} g_i`, which has length
//! `i`. The last tail vertex is a sink standing in for the infinite rest of
//! the tail, so identities are only meaningful up to the chosen depth.

use super::{algebra_like, Embedding};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GraphBuilder, RESERVED_PREFIX};
use crate::lpa::{Element, LeavittAlgebra, WeightGrading};

#[derive(Debug, Clone)]
pub struct Desingularization {
    pub graph: DirectedGraph,
    /// `L(original) -> L(graph)`.
    pub embedding: Embedding,
    /// Grading of the original graph making the embedding degree preserving.
    pub edge_degrees: WeightGrading,
    pub depth: usize,
}

fn tail_vertex(v0: &str, j: usize) -> String {
    if j == 0 {
        v0.to_string()
    } else {
        format!("{RESERVED_PREFIX}{v0}_{j}")
    }
}

fn tail_edge(v0: &str, kind: char, j: usize) -> String {
    format!("{RESERVED_PREFIX}{v0}_{kind}{j}")
}

pub fn desingularize(alg: &LeavittAlgebra, depth: usize) -> Result<Desingularization> {
    let g = alg.graph();
    let singular: Vec<_> = g.vertices().filter(|&v| g.is_sink(v) || g.is_flagged(v)).collect();
    let needed = singular.iter().map(|&v| if g.is_flagged(v) { g.out_edges(v).len() } else { 1 }).max().unwrap_or(0);
    if depth < needed {
        return Err(Error::DepthTooSmall { needed, given: depth });
    }

    let mut b = GraphBuilder::default();
    for v in g.vertices() {
        b.vertex(g.vertex_name(v))?;
    }
    for e in g.edges().filter(|&e| !g.is_flagged(g.source(e))) {
        b.edge(g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e)))?;
    }
    for &v in &singular {
        let v0 = g.vertex_name(v);
        let listed = if g.is_flagged(v) { g.out_edges(v) } else { &[] };
        for j in 1..=depth {
            b.vertex(&tail_vertex(v0, j))?;
            b.edge(&tail_edge(v0, 'f', j), &tail_vertex(v0, j - 1), &tail_vertex(v0, j))?;
            if let Some(&e) = listed.get(j - 1) {
                b.edge(&tail_edge(v0, 'g', j), &tail_vertex(v0, j - 1), g.vertex_name(g.range(e)))?;
            }
        }
    }
    let target = algebra_like(b.build()?, alg);

    let vertices = g.vertices().map(|v| target.generator(g.vertex_name(v))).collect::<Result<Vec<_>>>()?;
    let mut weights = Vec::with_capacity(g.edge_count());
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let s = g.source(e);
        if g.is_flagged(s) {
            let v0 = g.vertex_name(s);
            let i = g.out_edges(s).iter().position(|&x| x == e).expect("listed edge") + 1;
            let mut image: Element = target.generator(&tail_edge(v0, 'g', i))?;
            for j in (1..i).rev() {
                image = &target.generator(&tail_edge(v0, 'f', j))? * &image;
            }
            edges.push(image);
            weights.push(i as i64);
        } else {
            edges.push(target.generator(g.edge_name(e))?);
            weights.push(1);
        }
    }
    let embedding = Embedding::new(alg.clone(), target.clone(), vertices, edges)?;
    let edge_degrees = WeightGrading::from_vec(g, weights)?;
    Ok(Desingularization { graph: target.graph().clone(), embedding, edge_degrees, depth })
}

impl Desingularization {
    /// Canonical degree of each generator image equals its weighted degree.
    pub fn check_degrees(&self) -> std::result::Result<(), String> {
        let emb = &self.embedding;
        let g = emb.domain().graph();
        for e in g.edges() {
            let want = self.edge_degrees.weight(e);
            if emb.edge_image(e).degree(None) != Ok(want) || emb.ghost_image(e).degree(None) != Ok(-want) {
                return Err(format!("degree of the image of {} is not {want}", g.edge_name(e)));
            }
        }
        for v in g.vertices() {
            if emb.vertex_image(v).degree(None) != Ok(0) {
                return Err(format!("image of {} is not of degree 0", g.vertex_name(v)));
            }
        }
        Ok(())
    }
}

/// With `nu_n` the sum of the first `n` vertices of `alg`'s graph, checks
/// `nu_n m nu_n = nu_{n+1} (nu_n m nu_n) nu_{n+1}` for all basis monomials
/// `m` of length at most `max_len`.
pub fn corner_filtration_check(alg: &LeavittAlgebra, max_len: usize) -> std::result::Result<(), String> {
    let g = alg.graph();
    let one = alg.field().one();
    let monomials = alg.all_basis_monomials(max_len);
    let mut nu = alg.zero();
    let partial: Vec<Element> = g
        .vertices()
        .map(|v| {
            nu = &nu + &alg.vertex(v);
            nu.clone()
        })
        .collect();
    for pair in partial.windows(2) {
        let (small, big) = (&pair[0], &pair[1]);
        for m in &monomials {
            let x = &(small * &alg.from_monomial(m.clone(), one.clone())) * small;
            if &(big * &x) * big != x {
                return Err(format!("corner inclusion fails at {}", alg.format_monomial(m)));
            }
        }
    }
    Ok(())
}
