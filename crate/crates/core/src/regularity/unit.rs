//! Bounded search for invertible inner inverses.
//!
//! Over a prime field the homogeneous solutions of `a x a = a` supported on
//! monomials of length at most `L` form a finite affine space. Every point is
//! tested for a two-sided inverse of bounded length. Finding none proves
//! nothing beyond the bounds, which the report records.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lpa::{Element, Monomial};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, Serialize)]
pub struct UnitSearchReport {
    pub target: String,
    pub degree: i64,
    pub inner_bound: usize,
    pub inverse_bound: usize,
    /// Number of candidate monomials for `x`.
    pub candidates: usize,
    /// Dimension of the solution space of `a x a = a`, if it is nonempty.
    pub solution_dimension: Option<usize>,
    pub points_examined: u64,
    /// False when `max_points` cut the enumeration short.
    pub exhaustive: bool,
    /// An invertible `x` with `a x a = a`, and its inverse.
    pub found: Option<(String, String)>,
}

/// Searches for homogeneous `x` of degree `-deg(a)` with `a x a = a` that has
/// a two-sided inverse, both supported on bounded-length monomials.
pub fn search_invertible_inner_inverse(
    a: &Element,
    inner_bound: usize,
    inverse_bound: usize,
    max_points: u64,
) -> Result<UnitSearchReport> {
    let alg = a.algebra();
    let Field::Prime(p) = alg.field() else {
        return Err(Error::NotApplicable("enumeration needs a prime field".into()));
    };
    if a.is_zero() {
        return Err(Error::NotApplicable("zero element".into()));
    }
    let degree = a.degree(None)?;
    let one = alg.field().one();

    let candidates = alg.basis_monomials(-degree, inner_bound, None);
    let images: Vec<Element> =
        candidates.iter().map(|b| &(a * &alg.from_monomial(b.clone(), one.clone())) * a).collect();
    let columns: Vec<_> = images.iter().map(|e| e.term_map()).collect();
    let ech = linalg::echelon(alg.field(), &columns, a.term_map());

    let mut report = UnitSearchReport {
        target: a.to_string(),
        degree,
        inner_bound,
        inverse_bound,
        candidates: candidates.len(),
        solution_dimension: None,
        points_examined: 0,
        exhaustive: true,
        found: None,
    };
    let Some(base) = ech.particular_solution() else {
        return Ok(report);
    };
    let null = ech.nullspace();
    report.solution_dimension = Some(null.len());

    let inverses = alg.basis_monomials(degree, inverse_bound, None);
    let unit = alg.unit();
    let mut lambda = vec![0u64; null.len()];
    loop {
        if report.points_examined == max_points {
            report.exhaustive = false;
            break;
        }
        report.points_examined += 1;
        let mut coeffs = base.clone();
        for (l, dir) in lambda.iter().zip(&null) {
            if *l != 0 {
                let s = alg.field().from_i64(*l as i64);
                for (c, d) in coeffs.iter_mut().zip(dir) {
                    *c = &*c + &(&s * d);
                }
            }
        }
        let x = Element::from_terms(alg, candidates.iter().cloned().zip(coeffs));
        if let Some(z) = two_sided_inverse(&x, &inverses, &unit) {
            report.found = Some((x.to_string(), z.to_string()));
            break;
        }
        if !advance(&mut lambda, p) {
            break;
        }
    }
    Ok(report)
}

/// Odometer step over `F_p^k`; false after the last point.
fn advance(lambda: &mut [u64], p: u64) -> bool {
    for digit in lambda.iter_mut() {
        *digit += 1;
        if *digit < p {
            return true;
        }
        *digit = 0;
    }
    false
}

fn two_sided_inverse(x: &Element, candidates: &[Monomial], unit: &Element) -> Option<Element> {
    let alg = x.algebra();
    let one = alg.field().one();
    // Row keys tag the side so both equations share one system.
    let tag = |side: u8, e: &Element| -> BTreeMap<(u8, Monomial), Scalar> {
        e.terms().map(|(m, c)| ((side, m.clone()), c.clone())).collect()
    };
    let columns: Vec<BTreeMap<(u8, Monomial), Scalar>> = candidates
        .iter()
        .map(|m| {
            let z = alg.from_monomial(m.clone(), one.clone());
            let mut col = tag(0, &(x * &z));
            col.extend(tag(1, &(&z * x)));
            col
        })
        .collect();
    let mut target = tag(0, unit);
    target.extend(tag(1, unit));
    let refs: Vec<_> = columns.iter().collect();
    let c = linalg::solve_combination(alg.field(), &refs, &target)?;
    Some(Element::from_terms(alg, candidates.iter().cloned().zip(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{rose, single_loop};
    use crate::lpa::{parse_element, LeavittAlgebra};

    #[test]
    fn laurent_generator_has_unit_inner_inverse() {
        // t x t = t has the invertible solution x = t^{-1}.
        let r1 = LeavittAlgebra::new(single_loop(), Field::Prime(3));
        let t = r1.generator("e").unwrap();
        let rep = search_invertible_inner_inverse(&t, 2, 2, 1000).unwrap();
        assert!(rep.found.is_some());
    }

    #[test]
    fn rose_loop_has_none_within_bounds() {
        let r2 = LeavittAlgebra::new(rose(2), Field::Prime(2));
        let y1 = parse_element(&r2, "y1").unwrap();
        let rep = search_invertible_inner_inverse(&y1, 3, 3, 1 << 16).unwrap();
        assert!(rep.solution_dimension.is_some());
        assert!(rep.exhaustive);
        assert!(rep.found.is_none());
    }

    #[test]
    fn needs_prime_field() {
        let r2 = LeavittAlgebra::new(rose(2), Field::Rationals);
        let y1 = r2.generator("y1").unwrap();
        assert!(search_invertible_inner_inverse(&y1, 2, 2, 10).is_err());
    }
}
