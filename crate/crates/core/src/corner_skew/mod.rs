//! Corner skew Laurent polynomial rings `R[t+, t-, phi]`.
//!
//! For a corner isomorphism `phi: R -> pRp` the ring is generated by `R`,
//! `t+` and `t-` subject to
//!
//! ```text
//! t- t+ = 1,   t+ t- = p,   r t- = t- phi(r),   t+ r = phi(r) t+
//! ```
//!
//! Every element is uniquely `sum_j t-^j r_{-j} + r_0 + sum_i r_i t+^i` with
//! `r_i in R p_i` and `r_{-j} in p_j R`, where `p_i = phi^i(1)`. Products are
//! brought back to that shape using the rules above together with
//! `t- c t+ = phi^{-1}(p c p)`.

mod realization;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub use realization::{realize_lpa, LpaCoefficients, LpaRealization};

/// The operations the construction needs from a unital coefficient ring.
pub trait CoefficientRing {
    type Elem: Clone + PartialEq + Debug + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn format(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

impl CoefficientRing for Field {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Field::zero(*self)
    }
    fn one(&self) -> Scalar {
        Field::one(*self)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &Scalar) -> String {
        a.to_string()
    }
}

type Map<E> = Box<dyn Fn(&E) -> E + Send + Sync>;

/// `R[t+, t-, phi]` for a coefficient ring `R`, an idempotent `p`, the corner
/// isomorphism `phi: R -> pRp` and its inverse `pRp -> R`.
pub struct CornerSkewRing<R: CoefficientRing> {
    ring: R,
    p: R::Elem,
    phi: Map<R::Elem>,
    phi_inv: Map<R::Elem>,
    /// `powers[i] = p_i = phi^i(1)`.
    powers: Mutex<Vec<R::Elem>>,
}

/// `{i -> r_i}`, read as `sum_{i<0} t-^{-i} r_i + r_0 + sum_{i>0} r_i t+^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerSkewElement<E> {
    coeffs: BTreeMap<i64, E>,
}

impl<E> CornerSkewElement<E> {
    pub fn coeffs(&self) -> &BTreeMap<i64, E> {
        &self.coeffs
    }

    pub fn coefficient(&self, i: i64) -> Option<&E> {
        self.coeffs.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The single degree carrying a coefficient, if there is exactly one.
    pub fn degree(&self) -> Option<i64> {
        match self.coeffs.len() {
            1 => self.coeffs.keys().next().copied(),
            _ => None,
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }
}

impl<R: CoefficientRing> CornerSkewRing<R> {
    pub fn new(
        ring: R,
        p: R::Elem,
        phi: impl Fn(&R::Elem) -> R::Elem + Send + Sync + 'static,
        phi_inv: impl Fn(&R::Elem) -> R::Elem + Send + Sync + 'static,
    ) -> Self {
        let one = ring.one();
        CornerSkewRing { ring, p, phi: Box::new(phi), phi_inv: Box::new(phi_inv), powers: Mutex::new(vec![one]) }
    }

    /// `p = 1` and `phi = id`: the Laurent polynomial ring `R[t, 1/t]`.
    pub fn laurent(ring: R) -> Self {
        let one = ring.one();
        Self::new(ring, one, R::Elem::clone, R::Elem::clone)
    }

    pub fn coefficient_ring(&self) -> &R {
        &self.ring
    }

    pub fn p(&self) -> &R::Elem {
        &self.p
    }

    pub fn phi(&self, r: &R::Elem) -> R::Elem {
        (self.phi)(r)
    }

    pub fn phi_inv(&self, r: &R::Elem) -> R::Elem {
        (self.phi_inv)(r)
    }

    fn phi_pow(&self, n: u64, r: &R::Elem) -> R::Elem {
        (0..n).fold(r.clone(), |acc, _| self.phi(&acc))
    }

    fn phi_inv_pow(&self, n: u64, r: &R::Elem) -> R::Elem {
        (0..n).fold(r.clone(), |acc, _| self.phi_inv(&acc))
    }

    /// `p_i = phi^i(1)`, cached.
    pub fn p_power(&self, i: u64) -> R::Elem {
        let mut cache = self.powers.lock().expect("power cache");
        while cache.len() as u64 <= i {
            let next = self.phi(cache.last().expect("p_0 is cached"));
            cache.push(next);
        }
        cache[i as usize].clone()
    }

    /// Checks `p^2 = p`, `phi(1) = p`, and additivity and multiplicativity of
    /// `phi` together with `phi_inv(phi(r)) = r` on the given samples.
    pub fn check_corner_isomorphism(&self, samples: &[R::Elem]) -> std::result::Result<(), String> {
        let r = &self.ring;
        if r.mul(&self.p, &self.p) != self.p {
            return Err("p is not idempotent".into());
        }
        if self.phi(&r.one()) != self.p {
            return Err("phi(1) differs from p".into());
        }
        for (i, a) in samples.iter().enumerate() {
            if self.phi_inv(&self.phi(a)) != *a {
                return Err(format!("phi_inv does not invert phi on sample {i}"));
            }
            for b in samples {
                if self.phi(&r.mul(a, b)) != r.mul(&self.phi(a), &self.phi(b)) {
                    return Err(format!("phi is not multiplicative on sample {i}"));
                }
                if self.phi(&r.add(a, b)) != r.add(&self.phi(a), &self.phi(b)) {
                    return Err(format!("phi is not additive on sample {i}"));
                }
            }
        }
        Ok(())
    }

    fn violation(&self, i: i64, r: &R::Elem) -> bool {
        let ring = &self.ring;
        if i > 0 {
            ring.mul(r, &self.p_power(i as u64)) != *r
        } else if i < 0 {
            ring.mul(&self.p_power(i.unsigned_abs()), r) != *r
        } else {
            false
        }
    }

    /// Builds an element, rejecting coefficients outside `R p_i` resp. `p_j R`.
    pub fn element(&self, coeffs: impl IntoIterator<Item = (i64, R::Elem)>) -> Result<CornerSkewElement<R::Elem>> {
        let mut out = BTreeMap::new();
        for (i, r) in coeffs {
            let entry = out.entry(i).or_insert_with(|| self.ring.zero());
            *entry = self.ring.add(entry, &r);
        }
        out.retain(|_, r| !self.ring.is_zero(r));
        if let Some((i, _)) = out.iter().find(|(i, r)| self.violation(**i, r)) {
            return Err(Error::NotApplicable(format!("coefficient at degree {i} violates the corner constraint")));
        }
        Ok(CornerSkewElement { coeffs: out })
    }

    pub fn zero(&self) -> CornerSkewElement<R::Elem> {
        CornerSkewElement { coeffs: BTreeMap::new() }
    }

    /// `r` in degree 0.
    pub fn constant(&self, r: R::Elem) -> CornerSkewElement<R::Elem> {
        self.element([(0, r)]).expect("degree 0 is unconstrained")
    }

    pub fn one(&self) -> CornerSkewElement<R::Elem> {
        self.constant(self.ring.one())
    }

    /// `t+ = p t+`.
    pub fn t_plus(&self) -> CornerSkewElement<R::Elem> {
        self.element([(1, self.p.clone())]).expect("p lies in R p")
    }

    /// `t- = t- p`.
    pub fn t_minus(&self) -> CornerSkewElement<R::Elem> {
        self.element([(-1, self.p.clone())]).expect("p lies in p R")
    }

    pub fn add(&self, a: &CornerSkewElement<R::Elem>, b: &CornerSkewElement<R::Elem>) -> CornerSkewElement<R::Elem> {
        let mut coeffs = a.coeffs.clone();
        for (i, r) in &b.coeffs {
            let entry = coeffs.entry(*i).or_insert_with(|| self.ring.zero());
            *entry = self.ring.add(entry, r);
        }
        coeffs.retain(|_, r| !self.ring.is_zero(r));
        CornerSkewElement { coeffs }
    }

    pub fn neg(&self, a: &CornerSkewElement<R::Elem>) -> CornerSkewElement<R::Elem> {
        CornerSkewElement { coeffs: a.coeffs.iter().map(|(i, r)| (*i, self.ring.neg(r))).collect() }
    }

    /// Product of two single-degree terms, as `(degree, coefficient)`.
    fn mul_terms(&self, i: i64, a: &R::Elem, k: i64, b: &R::Elem) -> (i64, R::Elem) {
        let ring = &self.ring;
        match (i.signum(), k.signum()) {
            // (a t+^i)(b t+^k) = a phi^i(b) t+^{i+k}; covers a constant on either side.
            (0 | 1, 0 | 1) => (i + k, ring.mul(a, &self.phi_pow(i as u64, b))),
            // (t-^j a)(t-^k b) = t-^{j+k} phi^k(a) b.
            (-1 | 0, -1) => (i + k, ring.mul(&self.phi_pow(k.unsigned_abs(), a), b)),
            (-1, 0) => (i, ring.mul(a, b)),
            // (t-^j a)(b t+^k) = t-^j (ab) t+^k, then t-^m c t+^m = phi^{-m}(c).
            (-1, 1) => {
                let (j, k) = (i.unsigned_abs(), k as u64);
                let c = ring.mul(a, b);
                (k as i64 - j as i64, self.phi_inv_pow(j.min(k), &c))
            }
            // (a t+^i)(t-^k b): t+^i t-^k is t+^{i-k} p_k or p_i t-^{k-i}.
            (1, -1) => {
                let (i, k) = (i as u64, k.unsigned_abs());
                if i >= k {
                    (i as i64 - k as i64, ring.mul(a, &self.phi_pow(i - k, b)))
                } else {
                    (i as i64 - k as i64, ring.mul(&self.phi_pow(k - i, a), b))
                }
            }
            _ => unreachable!("signum is -1, 0 or 1"),
        }
    }

    pub fn mul(
        &self,
        a: &CornerSkewElement<R::Elem>,
        b: &CornerSkewElement<R::Elem>,
    ) -> Result<CornerSkewElement<R::Elem>> {
        let mut terms = Vec::new();
        for (&i, ra) in &a.coeffs {
            for (&k, rb) in &b.coeffs {
                terms.push(self.mul_terms(i, ra, k, rb));
            }
        }
        self.element(terms).map_err(|err| Error::InternalInvariantBreach(err.to_string()))
    }

    /// The degree-`i` piece of `a`.
    pub fn degree_component(&self, a: &CornerSkewElement<R::Elem>, i: i64) -> CornerSkewElement<R::Elem> {
        CornerSkewElement { coeffs: a.coeffs.get(&i).map(|r| (i, r.clone())).into_iter().collect() }
    }

    /// Inner inverse of a single-degree element from a degree-0 witness
    /// oracle: for `a = r t+^i` take `y = t-^i p_i s` with `r s r = r`, and
    /// symmetrically for negative degrees.
    pub fn witness(
        &self,
        a: &CornerSkewElement<R::Elem>,
        zero_witness: impl Fn(&R::Elem) -> Result<R::Elem>,
    ) -> Result<CornerSkewElement<R::Elem>> {
        if a.is_zero() {
            return Err(Error::NotApplicable("zero element".into()));
        }
        let i = a.degree().ok_or(Error::NotHomogeneous)?;
        let r = &a.coeffs[&i];
        let ring = &self.ring;
        let s = zero_witness(r)?;
        let y = if i > 0 {
            let p = self.p_power(i as u64);
            self.element([(-i, ring.mul(&p, &s))])
        } else if i < 0 {
            let p = self.p_power(i.unsigned_abs());
            self.element([(-i, ring.mul(&s, &p))])
        } else {
            Ok(self.constant(s))
        }
        .map_err(|err| Error::InternalInvariantBreach(err.to_string()))?;
        if self.mul(&self.mul(a, &y)?, a)? != *a {
            return Err(Error::InternalInvariantBreach(format!("witness fails a y a = a in degree {i}")));
        }
        Ok(y)
    }

    /// `t-^j*(r) + (r0) + (r)*t+^i`, in increasing degree.
    pub fn format(&self, a: &CornerSkewElement<R::Elem>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.coeffs
            .iter()
            .map(|(&i, r)| {
                let r = self.ring.format(r);
                match i {
                    0 => format!("({r})"),
                    i if i > 0 => format!("({r})*t+^{i}"),
                    i => format!("t-^{}*({r})", -i),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<R: CoefficientRing + Debug> Debug for CornerSkewRing<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CornerSkewRing").field("ring", &self.ring).field("p", &self.p).finish()
    }
}
