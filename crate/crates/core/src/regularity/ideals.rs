use super::{find_witness_with, WitnessOptions};
use crate::error::{Error, Result};
use crate::lpa::Element;

/// A homogeneous idempotent `e` with `e A = x_1 A + ... + x_k A`, together
/// with the data proving both inclusions.
#[derive(Debug, Clone)]
pub struct IdempotentCertificate {
    pub generators: Vec<Element>,
    pub e: Element,
    /// `membership_in[i]` is the `r` with `generators[i] = e * r`.
    pub membership_in: Vec<Element>,
    /// `e = sum_i generators[i] * membership_out[i]`.
    pub membership_out: Vec<Element>,
}

impl IdempotentCertificate {
    /// Checks every stated identity exactly; returns the first one that fails.
    pub fn check(&self) -> std::result::Result<(), String> {
        let e = &self.e;
        if &(e * e) != e {
            return Err("e is not idempotent".into());
        }
        if e.degree(None) != Ok(0) {
            return Err("e is not homogeneous of degree 0".into());
        }
        if self.membership_in.len() != self.generators.len() || self.membership_out.len() != self.generators.len() {
            return Err("certificate lengths differ from generator count".into());
        }
        for (i, (x, r)) in self.generators.iter().zip(&self.membership_in).enumerate() {
            if &(e * r) != x || &(e * x) != x {
                return Err(format!("generator {i} is not absorbed by e"));
            }
        }
        let rebuilt =
            self.generators.iter().zip(&self.membership_out).fold(e.algebra().zero(), |acc, (x, a)| &acc + &(x * a));
        if &rebuilt != e {
            return Err("membership combination does not reproduce e".into());
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }
}

/// Idempotent generator of the right ideal `sum x_i A`, built one generator
/// at a time: with `e` handling `x_1..x_j`, the residue `x' = x_{j+1} - e x_{j+1}`
/// has a witness `y'`, `f = x' y'` satisfies `e f = 0`, and `e + f - f e` is
/// the next idempotent.
pub fn idempotent_generator(xs: &[Element], opts: &WitnessOptions) -> Result<IdempotentCertificate> {
    let Some(first) = xs.first() else {
        return Err(Error::NotApplicable("no generators".into()));
    };
    let alg = first.algebra().clone();
    for x in xs {
        if !x.algebra().same_as(&alg) {
            return Err(Error::AlgebraMismatch);
        }
        if !x.is_zero() {
            x.degree(opts.grading.as_ref())?;
        }
    }
    if xs.iter().all(Element::is_zero) {
        return Err(Error::NotApplicable("all generators are zero".into()));
    }

    let mut e = alg.zero();
    let mut coeffs: Vec<Element> = Vec::with_capacity(xs.len());
    for x in xs {
        let residue = x - &(&e * x);
        if residue.is_zero() {
            coeffs.push(alg.zero());
            continue;
        }
        let y = find_witness_with(&residue, opts)?.y;
        // z = y - y e, so x' z = f - f e and the new idempotent is e + x' z.
        let z = &y - &(&y * &e);
        let step = &residue * &z;
        // Rewrite e x z through the earlier multipliers: a_i <- a_i - a_i x z.
        let xz = x * &z;
        for a in coeffs.iter_mut() {
            *a = &*a - &(&*a * &xz);
        }
        coeffs.push(z);
        e = &e + &step;
    }

    let cert = IdempotentCertificate { generators: xs.to_vec(), membership_in: xs.to_vec(), membership_out: coeffs, e };
    cert.check().map_err(Error::InternalInvariantBreach)?;
    Ok(cert)
}

/// A nonzero idempotent `x y` in `x A`, from a witness `y` of `x`.
pub fn nonzero_ideal_idempotent(x: &Element, opts: &WitnessOptions) -> Result<Element> {
    let y = find_witness_with(x, opts)?.y;
    let e = x * &y;
    if e.is_zero() || (&e * &e) != e {
        return Err(Error::InternalInvariantBreach("x y is not a nonzero idempotent".into()));
    }
    Ok(e)
}
