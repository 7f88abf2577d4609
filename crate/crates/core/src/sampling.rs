//! Seeded random elements for suites, tests and benchmarks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::index;
use rand::Rng;

use crate::lpa::{Element, LeavittAlgebra, Monomial, WeightGrading};
use crate::scalar::Scalar;

/// Draws monomials of bounded length, grouped by degree.
#[derive(Debug, Clone)]
pub struct MonomialSampler {
    alg: LeavittAlgebra,
    grading: Option<WeightGrading>,
    all: Vec<Monomial>,
    by_degree: BTreeMap<i64, Vec<Monomial>>,
}

impl MonomialSampler {
    pub fn new(alg: &LeavittAlgebra, len_cap: usize, grading: Option<&WeightGrading>) -> Self {
        let all = alg.all_basis_monomials(len_cap);
        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for m in &all {
            let d = grading.map_or(m.canonical_degree(), |w| w.monomial_degree(m));
            by_degree.entry(d).or_default().push(m.clone());
        }
        MonomialSampler { alg: alg.clone(), grading: grading.cloned(), all, by_degree }
    }

    pub fn algebra(&self) -> &LeavittAlgebra {
        &self.alg
    }

    /// Nonzero scalar: small fractions over the rationals, any unit of F_p.
    pub fn scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let field = self.alg.field();
        match field {
            crate::Field::Rationals => {
                let mut num: i64 = rng.random_range(1..=5);
                if rng.random_bool(0.5) {
                    num = -num;
                }
                let den: i64 = rng.random_range(1..=3);
                field.ratio(&BigInt::from(num), &BigInt::from(den)).expect("nonzero denominator")
            }
            crate::Field::Prime(p) => field.from_i64(rng.random_range(1..p as i64)),
        }
    }

    /// Homogeneous element with between 1 and `max_terms` distinct monomials.
    /// The degree is that of a uniformly drawn monomial.
    pub fn homogeneous<R: Rng + ?Sized>(&self, rng: &mut R, max_terms: usize) -> Element {
        let seed = &self.all[rng.random_range(0..self.all.len())];
        let degree = self.grading.as_ref().map_or(seed.canonical_degree(), |w| w.monomial_degree(seed));
        self.combination(rng, &self.by_degree[&degree], max_terms)
    }

    /// Element with monomials of arbitrary degree.
    pub fn element<R: Rng + ?Sized>(&self, rng: &mut R, max_terms: usize) -> Element {
        self.combination(rng, &self.all, max_terms)
    }

    fn combination<R: Rng + ?Sized>(&self, rng: &mut R, pool: &[Monomial], max_terms: usize) -> Element {
        let count = rng.random_range(1..=max_terms.max(1)).min(pool.len());
        let picks = index::sample(rng, pool.len(), count);
        let terms: Vec<(Monomial, Scalar)> = picks.into_iter().map(|i| (pool[i].clone(), self.scalar(rng))).collect();
        Element::from_terms(&self.alg, terms)
    }
}
