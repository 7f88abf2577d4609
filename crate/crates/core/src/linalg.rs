//! Exact sparse linear solving over a [`Field`].
//!
//! Systems are given column-wise: find scalars `c_j` with
//! `sum_j c_j * columns[j] = target`, where every vector is a sparse map from
//! an ordered row key to a scalar. Rows are reduced one at a time against the
//! pivots found so far (row echelon form), then solved by back substitution
//! with every free variable set to zero.

use std::collections::BTreeMap;

use crate::scalar::{Field, Scalar};

type Row = BTreeMap<usize, Scalar>;

/// Echelon form of a system; stores the pivot rows keyed by pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    /// Pivot row: leading coefficient 1 at the key, plus right-hand side.
    pivots: BTreeMap<usize, (Row, Scalar)>,
    consistent: bool,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// One solution with free variables at zero, if the system is consistent.
    pub fn particular_solution(&self) -> Option<Vec<Scalar>> {
        if !self.consistent {
            return None;
        }
        Some(self.back_substitute(|_| None, true))
    }

    /// A basis of the solution space of the homogeneous system.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| self.back_substitute(|c| (c == free).then(|| self.field.one()), false))
            .collect()
    }

    fn back_substitute(&self, free_value: impl Fn(usize) -> Option<Scalar>, with_rhs: bool) -> Vec<Scalar> {
        let mut x: Vec<Scalar> = (0..self.ncols).map(|c| free_value(c).unwrap_or_else(|| self.field.zero())).collect();
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let mut value = if with_rhs { rhs.clone() } else { self.field.zero() };
            for (&k, a) in row.range(col + 1..) {
                if !x[k].is_zero() {
                    value = &value - &(a * &x[k]);
                }
            }
            x[col] = value;
        }
        x
    }
}

/// Row-reduces `sum_j c_j * columns[j] = target`.
pub fn echelon<K: Ord + Clone>(
    field: Field,
    columns: &[&BTreeMap<K, Scalar>],
    target: &BTreeMap<K, Scalar>,
) -> Echelon {
    let mut rows: BTreeMap<K, (Row, Scalar)> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (k, a) in col.iter() {
            let entry = rows.entry(k.clone()).or_insert_with(|| (Row::new(), field.zero()));
            entry.0.insert(j, a.clone());
        }
    }
    for (k, b) in target {
        let entry = rows.entry(k.clone()).or_insert_with(|| (Row::new(), field.zero()));
        entry.1 = b.clone();
    }

    let mut ech = Echelon { field, ncols: columns.len(), pivots: BTreeMap::new(), consistent: true };
    // Sparse rows first keeps fill-in down.
    let mut pending: Vec<(Row, Scalar)> = rows.into_values().collect();
    pending.sort_by_key(|(r, _)| r.len());
    for (row, rhs) in pending {
        if !insert_row(&mut ech, row, rhs) {
            ech.consistent = false;
        }
    }
    ech
}

/// Reduces a row against the pivots and records it. Returns false if the
/// row reduces to `0 = nonzero`.
fn insert_row(ech: &mut Echelon, mut row: Row, mut rhs: Scalar) -> bool {
    loop {
        let Some((&lead, a)) = row.iter().next() else {
            return rhs.is_zero();
        };
        let a = a.clone();
        match ech.pivots.get(&lead) {
            Some((prow, prhs)) => {
                for (&k, p) in prow {
                    let updated = match row.get(&k) {
                        Some(cur) => cur - &(&a * p),
                        None => -(&a * p),
                    };
                    if updated.is_zero() {
                        row.remove(&k);
                    } else {
                        row.insert(k, updated);
                    }
                }
                rhs = &rhs - &(&a * prhs);
            }
            None => {
                let inv = a.inv().expect("leading coefficient is nonzero");
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
                rhs = &rhs * &inv;
                ech.pivots.insert(lead, (row, rhs));
                return true;
            }
        }
    }
}

/// Scalars `c` with `sum_j c_j * columns[j] = target`, if any exist.
pub fn solve_combination<K: Ord + Clone>(
    field: Field,
    columns: &[&BTreeMap<K, Scalar>],
    target: &BTreeMap<K, Scalar>,
) -> Option<Vec<Scalar>> {
    echelon(field, columns, target).particular_solution()
}
