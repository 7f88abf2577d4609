use std::collections::BTreeMap;

use super::Monomial;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId};

/// A `Z`-valued weight on edges; ghosts get the negated weight and vertices 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGrading {
    weights: Vec<i64>,
}

impl WeightGrading {
    /// Every edge weighs 1: the canonical grading.
    pub fn canonical(g: &DirectedGraph) -> Self {
        WeightGrading { weights: vec![1; g.edge_count()] }
    }

    /// Weights indexed by edge id; must cover every edge.
    pub fn from_vec(g: &DirectedGraph, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != g.edge_count() {
            return Err(Error::ShapeMismatch(format!("{} weights for {} edges", weights.len(), g.edge_count())));
        }
        Ok(WeightGrading { weights })
    }

    /// Weights by edge name; must be total on the edges.
    pub fn from_names(g: &DirectedGraph, named: &BTreeMap<String, i64>) -> Result<Self> {
        let mut weights = vec![None; g.edge_count()];
        for (name, &w) in named {
            let e = g.edge_id(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            weights[e.index()] = Some(w);
        }
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| Error::ShapeMismatch(format!("no weight for edge {}", g.edge_name(EdgeId(i as u32)))))
            })
            .collect::<Result<_>>()?;
        Ok(WeightGrading { weights })
    }

    pub fn weight(&self, e: EdgeId) -> i64 {
        self.weights[e.index()]
    }

    pub fn path_weight(&self, edges: &[EdgeId]) -> i64 {
        edges.iter().map(|&e| self.weight(e)).sum()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        self.path_weight(m.mu().edges()) - self.path_weight(m.nu().edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rose;
    use crate::lpa::LeavittAlgebra;
    use crate::scalar::Field;

    #[test]
    fn weighted_degrees() {
        let g = rose(2);
        let w = WeightGrading::from_vec(&g, vec![2, -3]).unwrap();
        let alg = LeavittAlgebra::new(g, Field::Rationals);
        let y1 = alg.generator("y1").unwrap();
        let y2 = alg.generator("y2").unwrap();
        assert_eq!(y1.degree(Some(&w)), Ok(2));
        assert_eq!(y2.star().degree(Some(&w)), Ok(3));
        assert_eq!((&y1 * &y2.star()).degree(Some(&w)), Ok(5));
        assert_eq!(alg.generator("v").unwrap().degree(Some(&w)), Ok(0));
    }

    #[test]
    fn totality_required() {
        let g = rose(2);
        let mut named = BTreeMap::new();
        named.insert("y1".to_string(), 1);
        assert!(WeightGrading::from_names(&g, &named).is_err());
        named.insert("y2".to_string(), 4);
        let w = WeightGrading::from_names(&g, &named).unwrap();
        assert_eq!(w.weight(g.edge_id("y2").unwrap()), 4);
        named.insert("nope".to_string(), 0);
        assert!(WeightGrading::from_names(&g, &named).is_err());
    }
}
