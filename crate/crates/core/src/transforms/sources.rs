//! Source elimination: `L(E \ v)` is the corner `p L(E) p` for the full
//! idempotent `p = sum of the remaining vertices`.

use serde::Serialize;

use super::{algebra_like, Embedding};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GraphBuilder, VertexId};
use crate::linalg;
use crate::lpa::{Element, LeavittAlgebra};

#[derive(Debug, Clone)]
pub struct SourceRemoval {
    pub graph: DirectedGraph,
    /// `L(graph) -> L(original)`, sending generators to themselves.
    pub embedding: Embedding,
    /// Sum of the remaining vertices, an idempotent of `L(original)`.
    pub p: Element,
    /// `sum_{s(f) = v} f r(f) f*`, which equals the removed vertex.
    pub fullness: Element,
    pub removed: String,
}

impl SourceRemoval {
    /// The fullness expansion reproduces the removed vertex, and every term
    /// lies in the ideal generated by `p` because `r(f) <= p`.
    pub fn check_fullness(&self) -> std::result::Result<(), String> {
        let alg = self.embedding.codomain();
        let v = alg.generator(&self.removed).map_err(|e| e.to_string())?;
        if self.fullness != v {
            return Err(format!("expansion gives {} instead of {}", self.fullness, self.removed));
        }
        if (&self.p * &self.p) != self.p {
            return Err("p is not idempotent".into());
        }
        Ok(())
    }

    /// Images of domain basis monomials up to `domain_len` lie in `p L p`, and
    /// `p m p` for codomain basis monomials `m` up to `codomain_len` lies in
    /// the span of those images.
    pub fn check_corner(&self, domain_len: usize, codomain_len: usize) -> std::result::Result<(), String> {
        let emb = &self.embedding;
        let (dom, cod) = (emb.domain(), emb.codomain());
        let one = dom.field().one();
        let mut images = Vec::new();
        for m in dom.all_basis_monomials(domain_len.max(codomain_len)) {
            let label = dom.format_monomial(&m);
            let img = emb.apply(&dom.from_monomial(m.clone(), one.clone())).map_err(|e| e.to_string())?;
            if m.length() <= domain_len && &(&self.p * &img) * &self.p != img {
                return Err(format!("image of {label} leaves the corner"));
            }
            images.push(img);
        }
        let columns: Vec<_> = images.iter().map(|x| x.term_map()).collect();
        for m in cod.all_basis_monomials(codomain_len) {
            let label = cod.format_monomial(&m);
            let pmp = &(&self.p * &cod.from_monomial(m, one.clone())) * &self.p;
            if linalg::solve_combination(cod.field(), &columns, pmp.term_map()).is_none() {
                return Err(format!("p {label} p is not in the image"));
            }
        }
        Ok(())
    }
}

/// One step of [`remove_all_sources`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", content = "vertex", rename_all = "snake_case")]
pub enum SourceMove {
    Source(String),
    Isolated(String),
}

/// Copy of `g` without the vertex `v` and the edges it emits.
fn without_vertex(g: &DirectedGraph, v: VertexId) -> Result<DirectedGraph> {
    let mut b = GraphBuilder::default();
    for u in g.vertices().filter(|&u| u != v) {
        b.vertex(g.vertex_name(u))?;
    }
    for e in g.edges().filter(|&e| g.source(e) != v) {
        b.edge(g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e)))?;
    }
    for u in g.vertices().filter(|&u| u != v && g.is_flagged(u)) {
        b.flag_infinite(g.vertex_name(u))?;
    }
    b.build()
}

pub fn remove_source(alg: &LeavittAlgebra, vertex: &str) -> Result<SourceRemoval> {
    let g = alg.graph();
    let v = g.vertex_id(vertex)?;
    if !g.is_source(v) {
        return Err(Error::NotASource(vertex.to_string()));
    }
    if g.out_edges(v).is_empty() {
        return Err(Error::IsolatedVertex(vertex.to_string()));
    }
    if g.is_flagged(v) {
        return Err(Error::InfiniteEmitter(format!("{vertex} has no vertex sum relation")));
    }
    let smaller = algebra_like(without_vertex(g, v)?, alg);
    let embedding = Embedding::by_name(smaller.clone(), alg.clone())?;
    let p: Element = g.vertices().filter(|&u| u != v).map(|u| alg.vertex(u)).sum::<Element>();
    let fullness = g.out_edges(v).iter().map(|&f| &(&alg.edge(f) * &alg.vertex(g.range(f))) * &alg.ghost(f)).sum();
    Ok(SourceRemoval { graph: smaller.graph().clone(), embedding, p, fullness, removed: vertex.to_string() })
}

pub fn remove_isolated(g: &DirectedGraph, vertex: &str) -> Result<DirectedGraph> {
    let v = g.vertex_id(vertex)?;
    if !(g.is_source(v) && g.out_edges(v).is_empty()) {
        return Err(Error::NotIsolated(vertex.to_string()));
    }
    without_vertex(g, v)
}

/// Removes sources until none is left, keeping a final isolated vertex.
/// Flagged sources have no vertex sum relation and are left in place.
pub fn remove_all_sources(g: &DirectedGraph) -> Result<(DirectedGraph, Vec<SourceMove>)> {
    let mut current = g.clone();
    let mut log = Vec::new();
    loop {
        let next = current.vertices().find(|&v| current.is_source(v) && !current.is_flagged(v));
        let Some(v) = next else { break };
        let name = current.vertex_name(v).to_string();
        if current.out_edges(v).is_empty() {
            if current.vertex_count() == 1 {
                break;
            }
            current = remove_isolated(&current, &name)?;
            log.push(SourceMove::Isolated(name));
        } else {
            current = without_vertex(&current, v)?;
            log.push(SourceMove::Source(name));
        }
    }
    Ok((current, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line, rose, single_vertex, toeplitz};
    use crate::lpa::parse_element;
    use crate::scalar::Field;

    fn q(g: DirectedGraph) -> LeavittAlgebra {
        LeavittAlgebra::new(g, Field::Rationals)
    }

    #[test]
    fn line_of_two() {
        let alg = q(line(2));
        let r = remove_source(&alg, "v1").unwrap();
        assert_eq!(r.graph.vertex_count(), 1);
        assert_eq!(r.p, alg.generator("v2").unwrap());
        assert_eq!(r.fullness, parse_element(&alg, "e.v2.e^*").unwrap());
        r.check_fullness().unwrap();
        r.embedding.verify_relations().unwrap();
        r.embedding.verify_injective_on(4).unwrap();
        r.check_corner(4, 3).unwrap();
    }

    #[test]
    fn line_of_three() {
        let alg = q(line(3));
        let r = remove_source(&alg, "v1").unwrap();
        assert_eq!(r.graph, line_named(&["v2", "v3"], &[("e2", "v2", "v3")]));
        assert_eq!(r.p, parse_element(&alg, "v2 + v3").unwrap());
        r.check_fullness().unwrap();
        r.check_corner(4, 3).unwrap();
    }

    fn line_named(vs: &[&str], es: &[(&str, &str, &str)]) -> DirectedGraph {
        let mut b = GraphBuilder::default();
        for v in vs {
            b.vertex(v).unwrap();
        }
        for (e, s, t) in es {
            b.edge(e, s, t).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn errors() {
        let alg = q(rose(2));
        assert_eq!(remove_source(&alg, "v").unwrap_err(), Error::NotASource("v".into()));
        let alg = q(single_vertex());
        assert_eq!(remove_source(&alg, "v").unwrap_err(), Error::IsolatedVertex("v".into()));
        assert!(matches!(remove_isolated(&line(2), "v1"), Err(Error::NotIsolated(_))));
        assert!(matches!(remove_isolated(&line(2), "v2"), Err(Error::NotIsolated(_))));
        assert_eq!(remove_isolated(&single_vertex(), "v").unwrap().vertex_count(), 0);
    }

    #[test]
    fn isolated_vertex_next_to_a_line() {
        let mut b = GraphBuilder::default();
        for v in ["v1", "v2", "w"] {
            b.vertex(v).unwrap();
        }
        b.edge("e", "v1", "v2").unwrap();
        let g = b.build().unwrap();
        assert_eq!(remove_isolated(&g, "w").unwrap(), line(2));
    }

    #[test]
    fn repeated_removal() {
        let (g, log) = remove_all_sources(&line(3)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(log, vec![SourceMove::Source("v1".into()), SourceMove::Source("v2".into())]);
        let (g, log) = remove_all_sources(&rose(2)).unwrap();
        assert_eq!(g, rose(2));
        assert!(log.is_empty());
        let (g, log) = remove_all_sources(&toeplitz()).unwrap();
        assert_eq!(g, toeplitz());
        assert!(log.is_empty());
    }
}
