//! Constructive graded von Neumann regularity.
//!
//! For a homogeneous `x` of degree `d`, the map `y -> x y x` is linear, so an
//! inner inverse of degree `-d` supported on monomials of bounded length is
//! the solution of a finite exact linear system. [`find_witness`] solves that
//! system for increasing length bounds until it succeeds.

mod ideals;
mod suite;
mod unit;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lpa::{Element, Monomial, WeightGrading};

pub use ideals::{idempotent_generator, nonzero_ideal_idempotent, IdempotentCertificate};
pub use suite::{regularity_suite, SuiteConfig, SuiteReport, TrialRecord};
pub use unit::{search_invertible_inner_inverse, UnitSearchReport};

/// Extra length allowed beyond the start bound when no maximum is given.
pub const DEFAULT_SLACK: usize = 6;

/// Search parameters. Unset bounds default to `max(1, length of x)` and
/// `start + DEFAULT_SLACK`.
#[derive(Debug, Clone, Default)]
pub struct WitnessOptions {
    pub start_bound: Option<usize>,
    pub max_bound: Option<usize>,
    /// Grading used for homogeneity; canonical when `None`.
    pub grading: Option<WeightGrading>,
}

impl WitnessOptions {
    pub fn bounds(start: usize, max: usize) -> Self {
        WitnessOptions { start_bound: Some(start), max_bound: Some(max), grading: None }
    }

    fn resolve(&self, x: &Element) -> Result<(usize, usize)> {
        let start = self.start_bound.unwrap_or_else(|| x.max_length().max(1));
        let max = self.max_bound.unwrap_or(start + DEFAULT_SLACK);
        if start == 0 || start > max {
            return Err(Error::NotApplicable(format!("bounds {start}..={max}")));
        }
        Ok((start, max))
    }
}

/// Outcome of a witness search.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub x: Element,
    pub y: Element,
    /// Largest bound the search was allowed to reach.
    pub length_bound: usize,
    /// Bound at which the linear system first became solvable.
    pub solved_at_bound: usize,
    pub verified: bool,
}

/// Homogeneous inner inverse of a homogeneous `x`, searched over bounds
/// `start_bound..=max_bound`.
pub fn find_witness(x: &Element, start_bound: usize, max_bound: usize) -> Result<WitnessReport> {
    find_witness_with(x, &WitnessOptions::bounds(start_bound, max_bound))
}

pub fn find_witness_with(x: &Element, opts: &WitnessOptions) -> Result<WitnessReport> {
    if x.is_zero() {
        return Err(Error::NotApplicable("zero element".into()));
    }
    let grading = opts.grading.as_ref();
    let degree = x.degree(grading)?;
    let (start, max) = opts.resolve(x)?;
    let alg = x.algebra();
    let search = CandidateFilter::new(x);
    let mut engine = Engine::new(x);
    for bound in start..=max {
        let candidates = alg.basis_monomials_where(bound, |m| {
            search.admits(m) && grading.map_or(m.canonical_degree(), |w| w.monomial_degree(m)) == -degree
        });
        if let Some(y) = engine.solve(&candidates) {
            let verified = &(x * &y) * x == *x && y.degree(grading) == Ok(-degree);
            return Ok(WitnessReport { x: x.clone(), y, length_bound: max, solved_at_bound: bound, verified });
        }
    }
    Err(Error::NoWitnessWithinBound(max))
}

/// Inner inverse of an arbitrary nonzero `x` using candidates of all degrees.
/// Succeeds for every element on acyclic graphs; may fail otherwise.
pub fn find_witness_unrestricted(x: &Element, start_bound: usize, max_bound: usize) -> Result<WitnessReport> {
    find_witness_unrestricted_with(x, &WitnessOptions::bounds(start_bound, max_bound))
}

pub fn find_witness_unrestricted_with(x: &Element, opts: &WitnessOptions) -> Result<WitnessReport> {
    if x.is_zero() {
        return Err(Error::NotApplicable("zero element".into()));
    }
    let (start, max) = opts.resolve(x)?;
    let alg = x.algebra();
    let search = CandidateFilter::new(x);
    let mut engine = Engine::new(x);
    for bound in start..=max {
        let candidates = alg.basis_monomials_where(bound, |m| search.admits(m));
        if let Some(y) = engine.solve(&candidates) {
            let verified = &(x * &y) * x == *x;
            return Ok(WitnessReport { x: x.clone(), y, length_bound: max, solved_at_bound: bound, verified });
        }
    }
    Err(Error::NoWitnessWithinBound(max))
}

/// Candidate `b = mu nu*` can only contribute to `x b x` when `s(mu)` is a
/// right vertex of `x` and `s(nu)` a left vertex of `x`.
struct CandidateFilter {
    left: std::collections::BTreeSet<crate::VertexId>,
    right: std::collections::BTreeSet<crate::VertexId>,
}

impl CandidateFilter {
    fn new(x: &Element) -> Self {
        CandidateFilter { left: x.left_vertices(), right: x.right_vertices() }
    }

    fn admits(&self, m: &Monomial) -> bool {
        self.right.contains(&m.left_vertex()) && self.left.contains(&m.right_vertex())
    }
}

/// Caches `x b x` across bounds; candidate sets only grow with the bound.
struct Engine<'a> {
    x: &'a Element,
    images: BTreeMap<Monomial, Element>,
}

impl<'a> Engine<'a> {
    fn new(x: &'a Element) -> Self {
        Engine { x, images: BTreeMap::new() }
    }

    fn solve(&mut self, candidates: &[Monomial]) -> Option<Element> {
        let alg = self.x.algebra();
        let one = alg.field().one();
        for b in candidates {
            if !self.images.contains_key(b) {
                let bx = &alg.from_monomial(b.clone(), one.clone()) * self.x;
                let img = if bx.is_zero() { bx } else { self.x * &bx };
                self.images.insert(b.clone(), img);
            }
        }
        let live: Vec<&Monomial> = candidates.iter().filter(|b| !self.images[*b].is_zero()).collect();
        let columns: Vec<_> = live.iter().map(|b| self.images[*b].term_map()).collect();
        let coeffs = linalg::solve_combination(alg.field(), &columns, self.x.term_map())?;
        Some(Element::from_terms(alg, live.into_iter().zip(coeffs).map(|(b, c)| (b.clone(), c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line, rose, single_loop, single_vertex, toeplitz};
    use crate::lpa::{parse_element, LeavittAlgebra};
    use crate::scalar::Field;

    fn alg(g: crate::DirectedGraph) -> LeavittAlgebra {
        LeavittAlgebra::new(g, Field::Rationals)
    }

    #[test]
    fn edge_on_line_gets_its_ghost() {
        let a2 = alg(line(2));
        let e = a2.generator("e").unwrap();
        let r = find_witness(&e, 1, 4).unwrap();
        assert!(r.verified);
        assert_eq!(r.y, e.star());
    }

    #[test]
    fn vertices_are_their_own_witness() {
        for g in [single_vertex(), rose(2), toeplitz()] {
            let a = alg(g);
            for v in a.graph().vertices() {
                let x = a.vertex(v);
                let r = find_witness_with(&x, &WitnessOptions::default()).unwrap();
                assert!(r.verified);
                assert_eq!(r.y, x);
            }
        }
    }

    #[test]
    fn sum_of_loops_on_rose() {
        let r2 = alg(rose(2));
        let x = parse_element(&r2, "y1 + y2").unwrap();
        let r = find_witness(&x, 1, 4).unwrap();
        assert!(r.verified);
        // (y1* + y2*)(y1 + y2) = 2v, so (1/2)(y1* + y2*) is an inner inverse.
        let half = parse_element(&r2, "(1/2)*y1^* + (1/2)*y2^*").unwrap();
        assert_eq!(&(&x * &half) * &x, x);
        assert_eq!(r.y.degree(None), Ok(-1));
    }

    #[test]
    fn over_f2_a_different_witness_exists() {
        let r2 = LeavittAlgebra::new(rose(2), Field::Prime(2));
        let x = parse_element(&r2, "y1 + y2").unwrap();
        let half_free = parse_element(&r2, "y1^* + y2^*").unwrap();
        // (y1*+y2*)(y1+y2) = 2v = 0 in characteristic 2.
        assert!((&half_free * &x).is_zero());
        let r = find_witness(&x, 1, 4).unwrap();
        assert!(r.verified);
    }

    #[test]
    fn rejects_bad_inputs() {
        let r2 = alg(rose(2));
        assert!(matches!(find_witness(&r2.zero(), 1, 3), Err(Error::NotApplicable(_))));
        let mixed = parse_element(&r2, "y1 + y2.y2^*").unwrap();
        assert_eq!(find_witness(&mixed, 1, 3).unwrap_err(), Error::NotHomogeneous);
        assert!(matches!(find_witness(&r2.generator("y1").unwrap(), 3, 2), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn unrestricted_on_line_and_laurent() {
        let a2 = alg(line(2));
        let x = parse_element(&a2, "v1 + e").unwrap();
        let r = find_witness_unrestricted(&x, 1, 4).unwrap();
        assert!(r.verified);
        assert!(r.solved_at_bound <= 4);

        // 1 + t in K[t, 1/t] is not regular.
        let r1 = alg(single_loop());
        let x = parse_element(&r1, "v + e").unwrap();
        assert_eq!(find_witness_unrestricted(&x, 1, 6).unwrap_err(), Error::NoWitnessWithinBound(6));
        assert!(matches!(find_witness_unrestricted(&r1.zero(), 1, 2), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn refined_witness_is_reflexive() {
        let r2 = alg(rose(2));
        let x = parse_element(&r2, "y1.y2^* + 2*y2.y2.y1^*.y2^*").unwrap();
        let r = find_witness_with(&x, &WitnessOptions::default()).unwrap();
        assert!(r.verified);
        let y2 = &(&r.y * &x) * &r.y;
        assert_eq!(&(&x * &y2) * &x, x);
        assert_eq!(&(&y2 * &x) * &y2, y2);
    }
}
