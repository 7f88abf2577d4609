//! Graph-level constructions and graded matrix rings.
//!
//! Each graph transform returns the new graph together with an [`Embedding`]
//! of Leavitt path algebras given on generators, so that the algebra-level
//! claims (relations preserved, injectivity on bounded monomials, corner
//! identities) can be checked exactly.

mod desingularize;
mod matrix;
mod sources;

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::lpa::{Element, LeavittAlgebra};

pub use desingularize::{corner_filtration_check, desingularize, Desingularization};
pub use matrix::{transport_witness, GradedMatrix};
pub use sources::{remove_all_sources, remove_isolated, remove_source, SourceMove, SourceRemoval};

/// An algebra map `L(domain) -> codomain` given by images of vertices, edges
/// and ghost edges.
#[derive(Debug, Clone)]
pub struct Embedding {
    domain: LeavittAlgebra,
    codomain: LeavittAlgebra,
    vertex_image: Vec<Element>,
    edge_image: Vec<Element>,
    ghost_image: Vec<Element>,
}

impl Embedding {
    /// Ghost images default to the star of the edge images.
    pub fn new(
        domain: LeavittAlgebra,
        codomain: LeavittAlgebra,
        vertex_image: Vec<Element>,
        edge_image: Vec<Element>,
    ) -> Result<Self> {
        let g = domain.graph();
        if vertex_image.len() != g.vertex_count() || edge_image.len() != g.edge_count() {
            return Err(Error::ShapeMismatch("image count differs from generator count".into()));
        }
        if vertex_image.iter().chain(&edge_image).any(|x| !x.algebra().same_as(&codomain)) {
            return Err(Error::AlgebraMismatch);
        }
        let ghost_image = edge_image.iter().map(Element::star).collect();
        Ok(Embedding { domain, codomain, vertex_image, edge_image, ghost_image })
    }

    /// Sends every generator to the identically named generator, which must
    /// exist in the codomain graph.
    pub fn by_name(domain: LeavittAlgebra, codomain: LeavittAlgebra) -> Result<Self> {
        let g = domain.graph();
        let vertices = g.vertices().map(|v| codomain.generator(g.vertex_name(v))).collect::<Result<_>>()?;
        let edges = g.edges().map(|e| codomain.generator(g.edge_name(e))).collect::<Result<_>>()?;
        Embedding::new(domain, codomain, vertices, edges)
    }

    pub fn domain(&self) -> &LeavittAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &LeavittAlgebra {
        &self.codomain
    }

    pub fn vertex_image(&self, v: crate::VertexId) -> &Element {
        &self.vertex_image[v.index()]
    }

    pub fn edge_image(&self, e: crate::EdgeId) -> &Element {
        &self.edge_image[e.index()]
    }

    pub fn ghost_image(&self, e: crate::EdgeId) -> &Element {
        &self.ghost_image[e.index()]
    }

    /// Image of a domain element, computed monomial by monomial.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !x.algebra().same_as(&self.domain) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.codomain.zero();
        for (m, c) in x.terms() {
            let mut img = self.vertex_image[m.left_vertex().index()].clone();
            for &e in m.mu().edges() {
                img = &img * &self.edge_image[e.index()];
            }
            for &e in m.nu().edges().iter().rev() {
                img = &img * &self.ghost_image[e.index()];
            }
            out = &out + &img.scale(c);
        }
        Ok(out)
    }

    /// Checks every defining relation of the domain on the images: vertex
    /// orthogonality, `s(e) e = e = e r(e)` and its adjoint, `e* f = [e = f] r(e)`
    /// and `sum e e* = v` at regular vertices. Returns the first failure.
    pub fn verify_relations(&self) -> std::result::Result<(), String> {
        let g = self.domain.graph();
        let vimg = |v: crate::VertexId| &self.vertex_image[v.index()];
        for v in g.vertices() {
            for w in g.vertices() {
                let prod = vimg(v) * vimg(w);
                let expected = if v == w { vimg(v).clone() } else { self.codomain.zero() };
                if prod != expected {
                    return Err(format!("vertex relation fails for {}, {}", g.vertex_name(v), g.vertex_name(w)));
                }
            }
        }
        for e in g.edges() {
            let (x, xs) = (&self.edge_image[e.index()], &self.ghost_image[e.index()]);
            let (s, r) = (vimg(g.source(e)), vimg(g.range(e)));
            if &(s * x) != x || &(x * r) != x || &(r * xs) != xs || &(xs * s) != xs {
                return Err(format!("incidence relation fails for {}", g.edge_name(e)));
            }
            for f in g.edges() {
                let prod = xs * &self.edge_image[f.index()];
                let expected = if e == f { r.clone() } else { self.codomain.zero() };
                if prod != expected {
                    return Err(format!("ghost relation fails for {}^*, {}", g.edge_name(e), g.edge_name(f)));
                }
            }
        }
        for v in g.vertices().filter(|&v| g.is_regular(v)) {
            let sum = g.out_edges(v).iter().fold(self.codomain.zero(), |acc, e| {
                &acc + &(&self.edge_image[e.index()] * &self.ghost_image[e.index()])
            });
            if &sum != vimg(v) {
                return Err(format!("vertex sum relation fails at {}", g.vertex_name(v)));
            }
        }
        Ok(())
    }

    /// Vertex images are nonzero and distinct basis monomials of length at
    /// most `max_len` have distinct nonzero images.
    pub fn verify_injective_on(&self, max_len: usize) -> std::result::Result<(), String> {
        let g = self.domain.graph();
        if let Some(v) = g.vertices().find(|&v| self.vertex_image[v.index()].is_zero()) {
            return Err(format!("vertex {} maps to zero", g.vertex_name(v)));
        }
        let one = self.domain.field().one();
        let mut seen = HashSet::new();
        for m in self.domain.all_basis_monomials(max_len) {
            let label = self.domain.format_monomial(&m);
            let img = self.apply(&self.domain.from_monomial(m, one.clone())).map_err(|e| e.to_string())?;
            if img.is_zero() {
                return Err(format!("{label} maps to zero"));
            }
            if !seen.insert(img.to_string()) {
                return Err(format!("{label} shares its image with another monomial"));
            }
        }
        Ok(())
    }

    /// One line per generator: `name -> image`, ghosts as `name^*`.
    pub fn mapping_text(&self) -> String {
        let g = self.domain.graph();
        let mut out = String::new();
        for v in g.vertices() {
            let _ = writeln!(out, "{} -> {}", g.vertex_name(v), self.vertex_image[v.index()]);
        }
        for e in g.edges() {
            let _ = writeln!(out, "{} -> {}", g.edge_name(e), self.edge_image[e.index()]);
            let _ = writeln!(out, "{}^* -> {}", g.edge_name(e), self.ghost_image[e.index()]);
        }
        out
    }
}

pub(crate) fn algebra_like(g: DirectedGraph, like: &LeavittAlgebra) -> LeavittAlgebra {
    LeavittAlgebra::new(g, like.field())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line, rose};
    use crate::lpa::parse_element;
    use crate::scalar::Field;

    #[test]
    fn identity_embedding() {
        let alg = LeavittAlgebra::new(rose(2), Field::Rationals);
        let id = Embedding::by_name(alg.clone(), alg.clone()).unwrap();
        id.verify_relations().unwrap();
        id.verify_injective_on(3).unwrap();
        let x = parse_element(&alg, "y1.y2^* + 2*v").unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn broken_embedding_is_caught() {
        // Swapping a vertex and an edge image breaks the relations.
        let a2 = LeavittAlgebra::new(line(2), Field::Rationals);
        let v1 = a2.generator("v1").unwrap();
        let v2 = a2.generator("v2").unwrap();
        let e = a2.generator("e").unwrap();
        let bad = Embedding::new(a2.clone(), a2.clone(), vec![v2, v1], vec![e]).unwrap();
        assert!(bad.verify_relations().is_err());
        let zero = Embedding::new(a2.clone(), a2.clone(), vec![a2.zero(), a2.zero()], vec![a2.zero()]).unwrap();
        assert!(zero.verify_injective_on(2).is_err());
    }
}
