//! Exact arithmetic in Leavitt path algebras.
//!
//! Elements are kept in normal form: finite linear combinations of monomials
//! `mu nu*` with `r(mu) = r(nu)`, none of which ends in `e e*` for the
//! distinguished edge `e` of a regular vertex. Products are reduced by two
//! rules:
//!
//! * `e* f -> [e == f] r(e)`, applied while multiplying monomials;
//! * `e_k e_k* -> v - sum_{i<k} e_i e_i*` for the distinguished (last listed)
//!   out-edge `e_k` of a regular vertex `v`.
//!
//! The second rule strictly shortens the rewritten monomial and never creates
//! a new reducible one except the shortened remainder, so normalization is a
//! simple loop.

mod element;
mod grading;
mod syntax;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, Path, VertexId};
use crate::scalar::{Field, Scalar};

pub use element::{local_unit, Element};
pub use grading::WeightGrading;
pub use syntax::parse_element;

/// The monomial `mu nu*`. Invariant: both paths end at the same vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    mu: Path,
    nu: Path,
}

impl Monomial {
    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    /// `|mu| + |nu|`.
    pub fn length(&self) -> usize {
        self.mu.len() + self.nu.len()
    }

    /// Canonical degree `|mu| - |nu|`.
    pub fn canonical_degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    /// Vertex `s(mu)`: the monomial equals `s(mu) * self`.
    pub fn left_vertex(&self) -> VertexId {
        self.mu.start()
    }

    /// Vertex `s(nu)`: the monomial equals `self * s(nu)`.
    pub fn right_vertex(&self) -> VertexId {
        self.nu.start()
    }

    /// `nu mu*`.
    pub fn star(&self) -> Monomial {
        Monomial { mu: self.nu.clone(), nu: self.mu.clone() }
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial { mu: Path::trivial(v), nu: Path::trivial(v) }
    }

    /// Product of two monomials before normalization, using only
    /// `e* f = [e == f] r(e)`.
    fn product(&self, other: &Monomial) -> Option<Monomial> {
        let nu = &self.nu;
        let alpha = &other.mu;
        if nu.start() != alpha.start() {
            return None;
        }
        if let Some(gamma) = alpha.edges().strip_prefix(nu.edges()) {
            let mut mu = self.mu.clone();
            mu.edges.extend_from_slice(gamma);
            Some(Monomial { mu, nu: other.nu.clone() })
        } else if let Some(gamma) = nu.edges().strip_prefix(alpha.edges()) {
            let mut beta = other.nu.clone();
            beta.edges.extend_from_slice(gamma);
            Some(Monomial { mu: self.mu.clone(), nu: beta })
        } else {
            None
        }
    }
}

impl Ord for Monomial {
    /// Shorter monomials first, then lexicographic on `(mu, nu)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.length().cmp(&other.length()).then_with(|| self.mu.cmp(&other.mu)).then_with(|| self.nu.cmp(&other.nu))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Inner {
    graph: Arc<DirectedGraph>,
    field: Field,
}

/// Handle to `L_K(E)` for a fixed graph and field. Cheap to clone.
#[derive(Clone)]
pub struct LeavittAlgebra {
    inner: Arc<Inner>,
}

impl fmt::Debug for LeavittAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LeavittAlgebra")
            .field("vertices", &self.graph().vertex_count())
            .field("edges", &self.graph().edge_count())
            .field("field", &self.field())
            .finish()
    }
}

impl LeavittAlgebra {
    pub fn new(graph: impl Into<Arc<DirectedGraph>>, field: Field) -> Self {
        LeavittAlgebra { inner: Arc::new(Inner { graph: graph.into(), field }) }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.inner.graph
    }

    pub fn graph_arc(&self) -> Arc<DirectedGraph> {
        Arc::clone(&self.inner.graph)
    }

    pub fn field(&self) -> Field {
        self.inner.field
    }

    /// Same graph and field.
    pub fn same_as(&self, other: &LeavittAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.field() == other.field()
                && (Arc::ptr_eq(&self.inner.graph, &other.inner.graph) || self.graph() == other.graph()))
    }

    pub fn zero(&self) -> Element {
        Element::from_normal_terms(self.clone(), BTreeMap::new())
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field().from_i64(n)
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        self.from_monomial(Monomial::vertex(v), self.field().one())
    }

    pub fn edge(&self, e: EdgeId) -> Element {
        let g = self.graph();
        let m = Monomial { mu: Path { start: g.source(e), edges: vec![e] }, nu: Path::trivial(g.range(e)) };
        self.from_monomial(m, self.field().one())
    }

    pub fn ghost(&self, e: EdgeId) -> Element {
        self.edge(e).star()
    }

    /// Sum of all vertices; the identity of the algebra.
    pub fn unit(&self) -> Element {
        let mut terms = BTreeMap::new();
        for v in self.graph().vertices() {
            terms.insert(Monomial::vertex(v), self.field().one());
        }
        Element::from_normal_terms(self.clone(), terms)
    }

    /// Looks up a generator by user-facing name: a vertex, an edge, or a
    /// ghost edge written `e^*`.
    pub fn generator(&self, name: &str) -> Result<Element> {
        let g = self.graph();
        let (base, ghost) = match name.strip_suffix("^*") {
            Some(b) => (b, true),
            None => (name, false),
        };
        if let Ok(v) = g.vertex_id(base) {
            return Ok(self.vertex(v));
        }
        match g.edge_id(base) {
            Some(e) if ghost => Ok(self.ghost(e)),
            Some(e) => Ok(self.edge(e)),
            None => Err(Error::UnknownGenerator(name.to_string())),
        }
    }

    /// Normal form of `c * mu nu*`; zero when the ranges differ.
    pub fn monomial(&self, mu: &Path, nu: &Path, c: Scalar) -> Result<Element> {
        let g = self.graph();
        for p in [mu, nu] {
            if p.start().index() >= g.vertex_count()
                || p.edges().iter().any(|e| e.index() >= g.edge_count())
                || !p.is_composable(g)
            {
                return Err(Error::UnknownPath(format!("{p:?}")));
            }
        }
        if mu.range(g) != nu.range(g) {
            return Ok(self.zero());
        }
        Ok(self.from_monomial(Monomial { mu: mu.clone(), nu: nu.clone() }, c))
    }

    /// Normal form of a single (possibly reducible) monomial.
    pub fn from_monomial(&self, m: Monomial, c: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        self.accumulate_normalized(&mut terms, m, c);
        Element::from_normal_terms(self.clone(), terms)
    }

    /// True iff the monomial is not rewritten by the distinguished-edge rule.
    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.reducible_edge(m).is_none()
    }

    fn reducible_edge(&self, m: &Monomial) -> Option<EdgeId> {
        let (&a, &b) = (m.mu.edges().last()?, m.nu.edges().last()?);
        if a != b {
            return None;
        }
        let g = self.graph();
        (g.distinguished_edge(g.source(a)) == Some(a)).then_some(a)
    }

    /// Adds `c * m` to `terms`, rewriting `m` into normal monomials.
    pub(crate) fn accumulate_normalized(&self, terms: &mut BTreeMap<Monomial, Scalar>, mut m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let g = self.graph();
        let neg = -&c;
        while let Some(e) = self.reducible_edge(&m) {
            m.mu.edges.pop();
            m.nu.edges.pop();
            for &f in g.out_edges(g.source(e)) {
                if f == e {
                    continue;
                }
                let mut mu = m.mu.clone();
                mu.edges.push(f);
                let mut nu = m.nu.clone();
                nu.edges.push(f);
                add_term(terms, Monomial { mu, nu }, &neg);
            }
        }
        add_term(terms, m, &c);
    }

    pub(crate) fn multiply_monomials(
        &self,
        terms: &mut BTreeMap<Monomial, Scalar>,
        a: &Monomial,
        b: &Monomial,
        c: Scalar,
    ) {
        if let Some(m) = a.product(b) {
            self.accumulate_normalized(terms, m, c);
        }
    }

    /// Normal-form monomials of the given degree with `|mu| + |nu| <= max_len`,
    /// in monomial order.
    pub fn basis_monomials(&self, degree: i64, max_len: usize, grading: Option<&WeightGrading>) -> Vec<Monomial> {
        self.basis_monomials_where(max_len, |m| {
            grading.map_or(m.canonical_degree(), |w| w.monomial_degree(m)) == degree
        })
    }

    /// Normal-form monomials of every degree with `|mu| + |nu| <= max_len`.
    pub fn all_basis_monomials(&self, max_len: usize) -> Vec<Monomial> {
        self.basis_monomials_where(max_len, |_| true)
    }

    pub(crate) fn basis_monomials_where(
        &self,
        max_len: usize,
        mut keep: impl FnMut(&Monomial) -> bool,
    ) -> Vec<Monomial> {
        let g = self.graph();
        let mut by_range: Vec<Vec<Path>> = vec![Vec::new(); g.vertex_count()];
        for p in g.enumerate_paths(max_len) {
            by_range[p.range(g).index()].push(p);
        }
        let mut out = Vec::new();
        for paths in &by_range {
            for mu in paths {
                for nu in paths {
                    if mu.len() + nu.len() > max_len {
                        continue;
                    }
                    // Trivial paths at the same vertex coincide, so pairing
                    // within one range bucket covers vertices exactly once.
                    let m = Monomial { mu: mu.clone(), nu: nu.clone() };
                    if self.is_normal(&m) && keep(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Canonical text of a monomial, e.g. `e.f^*`, `e^*` or `v`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let g = self.graph();
        if m.mu.is_empty() && m.nu.is_empty() {
            return g.vertex_name(m.mu.start()).to_string();
        }
        let mut parts: Vec<String> = m.mu.edges().iter().map(|&e| g.edge_name(e).to_string()).collect();
        parts.extend(m.nu.edges().iter().rev().map(|&e| format!("{}^*", g.edge_name(e))));
        parts.join(".")
    }
}

pub(crate) fn add_term(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(slot) => {
            slot.insert(c.clone());
        }
        Entry::Occupied(mut slot) => {
            let sum = slot.get() + c;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line, rose, single_loop};

    fn q(g: DirectedGraph) -> LeavittAlgebra {
        LeavittAlgebra::new(g, Field::Rationals)
    }

    #[test]
    fn distinguished_edge_collapses_single_out_edge() {
        let a = q(line(2));
        let g = a.graph();
        let e = g.path_by_names(&["e"]).unwrap();
        let x = a.monomial(&e, &e, a.scalar(1)).unwrap();
        assert_eq!(x, a.generator("v1").unwrap());
    }

    #[test]
    fn ck2_rewrite_on_rose() {
        let a = q(rose(2));
        let y2 = a.graph().path_by_names(&["y2"]).unwrap();
        let x = a.monomial(&y2, &y2, a.scalar(1)).unwrap();
        let y1 = a.generator("y1").unwrap();
        let expected = &a.generator("v").unwrap() - &(&y1 * &y1.star());
        assert_eq!(x, expected);
    }

    #[test]
    fn trivial_monomial_and_range_mismatch() {
        let a = q(line(2));
        let g = a.graph();
        let v1 = g.path_by_names(&["v1"]).unwrap();
        let v2 = g.path_by_names(&["v2"]).unwrap();
        assert_eq!(a.monomial(&v1, &v1, a.scalar(3)).unwrap(), a.generator("v1").unwrap().scale(&a.scalar(3)));
        assert!(a.monomial(&v1, &v2, a.scalar(1)).unwrap().is_zero());
        let bogus = Path { start: VertexId(0), edges: vec![EdgeId(7)] };
        assert!(matches!(a.monomial(&bogus, &v1, a.scalar(1)), Err(Error::UnknownPath(_))));
    }

    #[test]
    fn basis_examples() {
        let r1 = q(single_loop());
        let b = r1.basis_monomials(0, 2, None);
        assert_eq!(b.len(), 1);
        assert_eq!(r1.format_monomial(&b[0]), "v");

        // Degree-0 part of L(R2) through length 2 is M_2(K): v, y1y1*, y1y2*, y2y1*.
        let r2 = q(rose(2));
        let names: Vec<String> = r2.basis_monomials(0, 2, None).iter().map(|m| r2.format_monomial(m)).collect();
        assert_eq!(names, ["v", "y1.y1^*", "y1.y2^*", "y2.y1^*"]);

        assert!(r2.basis_monomials(3, 2, None).is_empty());
        assert!(r2.basis_monomials(-3, 2, None).is_empty());
    }

    #[test]
    fn generator_lookup() {
        let a = q(line(2));
        assert!(a.generator("e^*").is_ok());
        assert!(a.generator("v1^*").is_ok());
        assert!(matches!(a.generator("zz"), Err(Error::UnknownGenerator(_))));
    }
}
