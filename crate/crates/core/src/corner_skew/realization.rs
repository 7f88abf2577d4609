//! `L(E) = L(E)_0[t+, t-, phi]` for a finite graph without sources.

use std::collections::BTreeMap;

use super::{CoefficientRing, CornerSkewElement, CornerSkewRing};
use crate::error::{Error, Result};
use crate::graph::EdgeId;
use crate::lpa::{Element, LeavittAlgebra};
use crate::regularity::{find_witness_with, WitnessOptions};
use crate::scalar::Scalar;

/// Degree-0 elements of `L(E)` with the vertex sum as unit.
#[derive(Debug, Clone)]
pub struct LpaCoefficients {
    alg: LeavittAlgebra,
    unit: Element,
}

impl LpaCoefficients {
    pub fn algebra(&self) -> &LeavittAlgebra {
        &self.alg
    }
}

impl CoefficientRing for LpaCoefficients {
    type Elem = Element;

    fn zero(&self) -> Element {
        self.alg.zero()
    }
    fn one(&self) -> Element {
        self.unit.clone()
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        a * b
    }
    fn neg(&self, a: &Element) -> Element {
        -a
    }
    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &Element) -> String {
        a.to_string()
    }
}

/// The realization of `L(E)` as a corner skew Laurent ring over `L(E)_0`.
#[derive(Debug)]
pub struct LpaRealization {
    pub ring: CornerSkewRing<LpaCoefficients>,
    /// For each vertex in order, the in-edge chosen for `t+`.
    pub chosen_edges: Vec<EdgeId>,
    pub t_plus: Element,
    pub t_minus: Element,
}

/// Builds `t+ = sum_v e_v` from the first declared in-edge `e_v` of every
/// vertex, so that `t- t+ = 1` for `t- = t+^*`, and `phi(a) = t+ a t-`.
pub fn realize_lpa(alg: &LeavittAlgebra) -> Result<LpaRealization> {
    let g = alg.graph();
    let mut chosen_edges = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        match g.in_edges(v).first() {
            Some(&e) => chosen_edges.push(e),
            None => return Err(Error::GraphHasSource(g.vertex_name(v).to_string())),
        }
    }
    let t_plus: Element = chosen_edges.iter().map(|&e| alg.edge(e)).sum();
    let t_minus = t_plus.star();
    let p = &t_plus * &t_minus;
    let coeffs = LpaCoefficients { alg: alg.clone(), unit: alg.unit() };
    let (tp, tm) = (t_plus.clone(), t_minus.clone());
    let (tp2, tm2) = (t_plus.clone(), t_minus.clone());
    let ring =
        CornerSkewRing::new(coeffs, p, move |a: &Element| &(&tp * a) * &tm, move |c: &Element| &(&tm2 * c) * &tp2);
    Ok(LpaRealization { ring, chosen_edges, t_plus, t_minus })
}

impl LpaRealization {
    pub fn algebra(&self) -> &LeavittAlgebra {
        self.ring.coefficient_ring().algebra()
    }

    fn t_power(&self, base: &Element, n: u64) -> Element {
        (0..n).fold(self.algebra().unit(), |acc, _| &acc * base)
    }

    /// `sum_j t-^j r_{-j} + r_0 + sum_i r_i t+^i`, evaluated in `L(E)`.
    pub fn to_lpa(&self, a: &CornerSkewElement<Element>) -> Element {
        a.coeffs()
            .iter()
            .map(|(&i, r)| match i.signum() {
                1 => r * &self.t_power(&self.t_plus, i as u64),
                -1 => &self.t_power(&self.t_minus, i.unsigned_abs()) * r,
                _ => r.clone(),
            })
            .fold(self.algebra().zero(), |acc, x| &acc + &x)
    }

    /// Splits `x` into canonical homogeneous components `x_i` and peels off
    /// the powers of `t+` resp. `t-`: `r_i = x_i t-^i`, `r_{-j} = t+^j x_{-j}`.
    pub fn from_lpa(&self, x: &Element) -> Result<CornerSkewElement<Element>> {
        if !x.algebra().same_as(self.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut coeffs = BTreeMap::new();
        for (i, xi) in x.homogeneous_components(None) {
            let (r, back) = match i.signum() {
                1 => {
                    let r = &xi * &self.t_power(&self.t_minus, i as u64);
                    let back = &r * &self.t_power(&self.t_plus, i as u64);
                    (r, back)
                }
                -1 => {
                    let r = &self.t_power(&self.t_plus, i.unsigned_abs()) * &xi;
                    let back = &self.t_power(&self.t_minus, i.unsigned_abs()) * &r;
                    (r, back)
                }
                _ => (xi.clone(), xi.clone()),
            };
            if back != xi || self.ring.violation(i, &r) {
                return Err(Error::DecompositionFailure(i));
            }
            coeffs.insert(i, r);
        }
        self.ring.element(coeffs)
    }

    /// Witness through the corner skew structure, with degree-0 witnesses
    /// from the linear-solve engine.
    pub fn witness(&self, a: &CornerSkewElement<Element>, opts: &WitnessOptions) -> Result<CornerSkewElement<Element>> {
        self.ring.witness(a, |r| Ok(find_witness_with(r, opts)?.y))
    }

    /// `c * t+^i` style helper: the element `r` placed in degree `i`.
    pub fn single(&self, i: i64, r: Element) -> Result<CornerSkewElement<Element>> {
        self.ring.element([(i, r)])
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.algebra().scalar(n)
    }
}
