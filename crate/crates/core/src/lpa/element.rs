use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{add_term, LeavittAlgebra, Monomial, WeightGrading};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::scalar::Scalar;

/// A member of `L_K(E)` in normal form. The zero element has no terms.
#[derive(Clone)]
pub struct Element {
    alg: LeavittAlgebra,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub(crate) fn from_normal_terms(alg: LeavittAlgebra, terms: BTreeMap<Monomial, Scalar>) -> Self {
        Element { alg, terms }
    }

    /// Sum of `c * m` over arbitrary (possibly reducible) monomials.
    pub fn from_terms(alg: &LeavittAlgebra, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            alg.accumulate_normalized(&mut acc, m, c);
        }
        Element { alg: alg.clone(), terms: acc }
    }

    pub fn algebra(&self) -> &LeavittAlgebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    /// Largest `|mu| + |nu|` over the terms; 0 for zero.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Monomial::length).max().unwrap_or(0)
    }

    /// `{ s(mu) }` over the terms.
    pub fn left_vertices(&self) -> BTreeSet<VertexId> {
        self.terms.keys().map(Monomial::left_vertex).collect()
    }

    /// `{ s(nu) }` over the terms.
    pub fn right_vertices(&self) -> BTreeSet<VertexId> {
        self.terms.keys().map(Monomial::right_vertex).collect()
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.alg.same_as(&other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c);
        }
        Ok(Element { alg: self.alg.clone(), terms })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                self.alg.multiply_monomials(&mut terms, a, b, ca * cb);
            }
        }
        Ok(Element { alg: self.alg.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return self.alg.zero();
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Element { alg: self.alg.clone(), terms }
    }

    /// The involution `mu nu* -> nu mu*`, fixing scalars.
    pub fn star(&self) -> Element {
        // The normal-form condition is symmetric in mu and nu.
        let terms = self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect();
        Element { alg: self.alg.clone(), terms }
    }

    /// Re-runs normalization on every term; the identity on valid elements.
    pub fn renormalized(&self) -> Element {
        Element::from_terms(&self.alg, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Common degree of all terms, canonical grading if `grading` is `None`.
    pub fn degree(&self, grading: Option<&WeightGrading>) -> Result<i64> {
        let mut degrees = self.terms.keys().map(|m| match grading {
            Some(w) => w.monomial_degree(m),
            None => m.canonical_degree(),
        });
        let first = degrees.next().ok_or(Error::ZeroHasNoDegree)?;
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn is_homogeneous(&self, grading: Option<&WeightGrading>) -> bool {
        self.degree(grading).is_ok()
    }

    /// Degree-wise decomposition; components sum back to `self`.
    pub fn homogeneous_components(&self, grading: Option<&WeightGrading>) -> BTreeMap<i64, Element> {
        let mut parts: BTreeMap<i64, BTreeMap<Monomial, Scalar>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = match grading {
                Some(w) => w.monomial_degree(m),
                None => m.canonical_degree(),
            };
            parts.entry(d).or_default().insert(m.clone(), c.clone());
        }
        parts.into_iter().map(|(d, terms)| (d, Element { alg: self.alg.clone(), terms })).collect()
    }

    /// The degree-`d` component (possibly zero).
    pub fn component(&self, d: i64, grading: Option<&WeightGrading>) -> Element {
        self.homogeneous_components(grading).remove(&d).unwrap_or_else(|| self.alg.zero())
    }
}

/// Sum of the distinct vertices touched by the inputs: a degree-0
/// idempotent `u` with `u x = x u = x` for every input `x`.
pub fn local_unit(elements: &[Element]) -> Result<Element> {
    let first = elements.first().ok_or_else(|| Error::NotApplicable("local unit of an empty list".into()))?;
    let alg = first.algebra();
    let mut vertices = BTreeSet::new();
    for x in elements {
        first.check(x)?;
        vertices.extend(x.left_vertices());
        vertices.extend(x.right_vertices());
    }
    let mut terms = BTreeMap::new();
    for v in vertices {
        terms.insert(Monomial::vertex(v), alg.field().one());
    }
    Ok(Element::from_normal_terms(alg.clone(), terms))
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.alg.same_as(&other.alg)
    }
}

impl Eq for Element {}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{}", self.alg.format_monomial(m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

// Operator forms panic on algebra mismatch; use the `try_*` methods when
// operands may come from different algebras.

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("operands from different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("operands from different algebras")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("operands from different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Element { alg: self.alg.clone(), terms }
    }
}

impl std::iter::Sum for Element {
    /// Panics on an empty iterator, which has no algebra to take zero from.
    fn sum<I: Iterator<Item = Element>>(mut iter: I) -> Element {
        let first = iter.next().expect("sum of an empty element iterator");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line, rose, single_loop};
    use crate::scalar::Field;

    fn gens(alg: &LeavittAlgebra, names: &[&str]) -> Vec<Element> {
        names.iter().map(|n| alg.generator(n).unwrap()).collect()
    }

    #[test]
    fn ck1_products() {
        let r2 = LeavittAlgebra::new(rose(2), Field::Rationals);
        let [y1, y2] = gens(&r2, &["y1", "y2"]).try_into().unwrap();
        assert!((&y1.star() * &y2).is_zero());

        let r1 = LeavittAlgebra::new(single_loop(), Field::Rationals);
        let [e, v] = gens(&r1, &["e", "v"]).try_into().unwrap();
        assert_eq!(&e.star() * &e, v);
    }

    #[test]
    fn vertex_absorption() {
        let a2 = LeavittAlgebra::new(line(2), Field::Rationals);
        let [e, v1, v2] = gens(&a2, &["e", "v1", "v2"]).try_into().unwrap();
        assert_eq!(&e * &v2, e);
        assert!((&v2 * &e).is_zero());
        assert_eq!(&v1 * &e, e);
    }

    #[test]
    fn additive_structure() {
        let r2 = LeavittAlgebra::new(rose(2), Field::Rationals);
        let [y1, y2, v] = gens(&r2, &["y1", "y2", "v"]).try_into().unwrap();
        let x = &y1 + &(&y2 * &y1.star());
        assert_eq!(&x + &r2.zero(), x);
        assert!((&x + &x.scale(&r2.scalar(-1))).is_zero());
        let ck2 = &(&y1 * &y1.star()) + &(&y2 * &y2.star());
        assert_eq!(ck2, v);
    }

    #[test]
    fn degrees() {
        let r2 = LeavittAlgebra::new(rose(2), Field::Rationals);
        let [y1, y2, v] = gens(&r2, &["y1", "y2", "v"]).try_into().unwrap();
        assert_eq!(v.degree(None), Ok(0));
        assert_eq!(y1.degree(None), Ok(1));
        assert_eq!(y1.star().degree(None), Ok(-1));
        let mixed = &y1 + &(&y2 * &y2.star());
        assert_eq!(mixed.degree(None), Err(Error::NotHomogeneous));
        assert_eq!(r2.zero().degree(None), Err(Error::ZeroHasNoDegree));
        // |mu| = 2, |nu| = 1
        let m = &(&y1 * &y2) * &y1.star();
        assert_eq!(m.degree(None), Ok(1));
        assert_eq!(m.star().degree(None), Ok(-1));
    }

    #[test]
    fn components() {
        let r1 = LeavittAlgebra::new(single_loop(), Field::Rationals);
        let [e, v] = gens(&r1, &["e", "v"]).try_into().unwrap();
        let x = &v + &e;
        let parts = x.homogeneous_components(None);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&0], v);
        assert_eq!(parts[&1], e);
        assert!(r1.zero().homogeneous_components(None).is_empty());
        assert_eq!(e.homogeneous_components(None).keys().collect::<Vec<_>>(), [&1]);
    }

    #[test]
    fn local_units() {
        let a2 = LeavittAlgebra::new(line(2), Field::Rationals);
        let [e, v1, v2] = gens(&a2, &["e", "v1", "v2"]).try_into().unwrap();
        let u = local_unit(std::slice::from_ref(&e)).unwrap();
        assert_eq!(u, &v1 + &v2);
        assert_eq!(u, a2.unit());
        assert_eq!(&u * &e, e);
        assert_eq!(&e * &u, e);
        assert_eq!(local_unit(std::slice::from_ref(&v1)).unwrap(), v1);
        assert!(local_unit(&[]).is_err());
    }

    #[test]
    fn mismatched_algebras() {
        let a = LeavittAlgebra::new(line(2), Field::Rationals);
        let b = LeavittAlgebra::new(line(2), Field::Prime(3));
        let x = a.generator("e").unwrap();
        let y = b.generator("e").unwrap();
        assert_eq!(x.try_mul(&y), Err(Error::AlgebraMismatch));
        assert_eq!(x.try_add(&y), Err(Error::AlgebraMismatch));
        // Same graph built twice is the same algebra.
        let c = LeavittAlgebra::new(line(2), Field::Rationals);
        assert!(x.try_mul(&c.generator("v2").unwrap()).is_ok());
    }
}
