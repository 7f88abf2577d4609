//! Graded matrix rings `M_n(A)(d)`: entry `(i, j)` of a matrix of degree `g`
//! lies in `A_{g + d_j - d_i}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lpa::{Element, LeavittAlgebra, WeightGrading};

#[derive(Clone)]
pub struct GradedMatrix {
    alg: LeavittAlgebra,
    shifts: Vec<i64>,
    /// Row-major, `n * n` entries.
    entries: Vec<Element>,
}

impl GradedMatrix {
    pub fn zero(alg: &LeavittAlgebra, shifts: Vec<i64>) -> Self {
        let n = shifts.len();
        GradedMatrix { alg: alg.clone(), shifts, entries: vec![alg.zero(); n * n] }
    }

    pub fn identity(alg: &LeavittAlgebra, shifts: Vec<i64>) -> Self {
        let mut m = Self::zero(alg, shifts);
        let n = m.size();
        for i in 0..n {
            m.entries[i * n + i] = alg.unit();
        }
        m
    }

    /// `e_ij(a)` with 0-based indices.
    pub fn unit(alg: &LeavittAlgebra, shifts: Vec<i64>, i: usize, j: usize, a: Element) -> Result<Self> {
        let mut m = Self::zero(alg, shifts);
        m.set(i, j, a)?;
        Ok(m)
    }

    pub fn from_rows(alg: &LeavittAlgebra, shifts: Vec<i64>, rows: Vec<Vec<Element>>) -> Result<Self> {
        let n = shifts.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected {n}x{n} entries")));
        }
        let mut m = Self::zero(alg, shifts);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, a) in row.into_iter().enumerate() {
                m.set(i, j, a)?;
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn algebra(&self) -> &LeavittAlgebra {
        &self.alg
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.size() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: Element) -> Result<()> {
        let n = self.size();
        if i >= n || j >= n {
            return Err(Error::ShapeMismatch(format!("index ({}, {}) outside {n}x{n}", i + 1, j + 1)));
        }
        if !a.algebra().same_as(&self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        self.entries[i * n + j] = a;
        Ok(())
    }

    /// Positions and values of the nonzero entries.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Element)> {
        let n = self.size();
        self.entries.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(move |(k, a)| (k / n, k % n, a))
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_entries().next().is_none()
    }

    fn compatible(&self, other: &GradedMatrix) -> Result<()> {
        if self.shifts != other.shifts {
            return Err(Error::ShapeMismatch("shift vectors differ".into()));
        }
        if !self.alg.same_as(&other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(GradedMatrix { alg: self.alg.clone(), shifts: self.shifts.clone(), entries })
    }

    pub fn mul(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.compatible(other)?;
        let n = self.size();
        let mut out = Self::zero(&self.alg, self.shifts.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `g` with entry `(i, j)` homogeneous of degree `g + d_j - d_i` for
    /// every nonzero entry.
    pub fn degree(&self, grading: Option<&WeightGrading>) -> Result<i64> {
        let mut found = None;
        for (i, j, a) in self.nonzero_entries() {
            let g = a.degree(grading)? - self.shifts[j] + self.shifts[i];
            match found {
                None => found = Some(g),
                Some(prev) if prev != g => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        found.ok_or(Error::ZeroHasNoDegree)
    }
}

impl PartialEq for GradedMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.shifts == other.shifts && self.entries == other.entries
    }
}

impl Eq for GradedMatrix {}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let rows: Vec<String> =
            (0..n).map(|i| (0..n).map(|j| self.entry(i, j).to_string()).collect::<Vec<_>>().join(", ")).collect();
        let shifts: Vec<String> = self.shifts.iter().map(i64::to_string).collect();
        write!(f, "[{}] shifts ({})", rows.join("; "), shifts.join(","))
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// For `m = e_ij(a)` returns `e_ji(b)` with `a b a = a` from `witness`, and
/// checks `m y m = m`.
pub fn transport_witness(m: &GradedMatrix, witness: impl FnOnce(&Element) -> Result<Element>) -> Result<GradedMatrix> {
    let mut entries = m.nonzero_entries();
    let Some((i, j, a)) = entries.next() else {
        return Err(Error::NotApplicable("zero matrix".into()));
    };
    if entries.next().is_some() {
        return Err(Error::MultiEntryUnsupported);
    }
    let b = witness(a)?;
    let y = GradedMatrix::unit(&m.alg, m.shifts.clone(), j, i, b)?;
    if &m.mul(&y)?.mul(m)? != m {
        return Err(Error::InternalInvariantBreach("transported witness fails m y m = m".into()));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line, single_vertex};
    use crate::regularity::find_witness;
    use crate::scalar::Field;

    #[test]
    fn shift_formula() {
        let k = LeavittAlgebra::new(single_vertex(), Field::Rationals);
        let one = k.unit();
        let e12 = GradedMatrix::unit(&k, vec![0, 1], 0, 1, one.clone()).unwrap();
        assert_eq!(e12.degree(None), Ok(-1));
        assert_eq!(GradedMatrix::identity(&k, vec![3, -2]).degree(None), Ok(0));
        let both =
            GradedMatrix::from_rows(&k, vec![0, 1], vec![vec![k.zero(), one.clone()], vec![one, k.zero()]]).unwrap();
        assert_eq!(both.degree(None), Err(Error::NotHomogeneous));
        assert_eq!(GradedMatrix::zero(&k, vec![0]).degree(None), Err(Error::ZeroHasNoDegree));
    }

    #[test]
    fn transport_over_line() {
        let a2 = LeavittAlgebra::new(line(2), Field::Rationals);
        let v1 = a2.generator("v1").unwrap();
        let m = GradedMatrix::unit(&a2, vec![0, 1], 0, 1, v1.clone()).unwrap();
        let y = transport_witness(&m, |a| Ok(find_witness(a, 1, 4)?.y)).unwrap();
        assert_eq!(y, GradedMatrix::unit(&a2, vec![0, 1], 1, 0, v1).unwrap());

        let e = a2.generator("e").unwrap();
        let m = GradedMatrix::unit(&a2, vec![0, 1], 0, 1, e.clone()).unwrap();
        let y = transport_witness(&m, |a| Ok(find_witness(a, 1, 4)?.y)).unwrap();
        assert_eq!(y.entry(1, 0), &e.star());
        assert_eq!(y.degree(None), Ok(-m.degree(None).unwrap()));

        let full = GradedMatrix::identity(&a2, vec![0, 1]);
        assert_eq!(transport_witness(&full, |a| Ok(a.clone())).unwrap_err(), Error::MultiEntryUnsupported);
    }
}
