#![allow(dead_code)]

use leavitt::graph::{flagged_rose, line, rose, single_loop, single_vertex, toeplitz};
use leavitt::sampling::MonomialSampler;
use leavitt::{DirectedGraph, Element, Field, LeavittAlgebra, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn algebra(g: DirectedGraph, field: Field) -> LeavittAlgebra {
    LeavittAlgebra::new(g, field)
}

/// The four suite graphs: the single loop, the two-petal rose, the
/// three-vertex line and the Toeplitz graph.
pub fn suite_graphs() -> Vec<(&'static str, DirectedGraph)> {
    vec![("R1", single_loop()), ("R2", rose(2)), ("A3", line(3)), ("Toeplitz", toeplitz())]
}

/// Every graph the relation checks run on.
pub fn all_graphs() -> Vec<(&'static str, DirectedGraph)> {
    let mut gs = suite_graphs();
    gs.push(("point", single_vertex()));
    gs.push(("A2", line(2)));
    gs.push(("R3", rose(3)));
    gs.push(("flagged rose", flagged_rose(2)));
    gs
}

/// Random nonzero element of any degree.
pub fn nonzero_element(s: &MonomialSampler, rng: &mut ChaCha8Rng, terms: usize) -> Element {
    loop {
        let x = s.element(rng, terms);
        if !x.is_zero() {
            return x;
        }
    }
}

pub type QMatrix = Vec<Vec<BigRational>>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zeros(r: usize, c: usize) -> QMatrix {
    vec![vec![BigRational::zero(); c]; r]
}

fn matrix_unit(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = zeros(n, n);
    m[i][j] = BigRational::one();
    m
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn transpose(a: &QMatrix) -> QMatrix {
    let c = a.first().map_or(0, Vec::len);
    (0..c).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

fn rational(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(r) => r.clone(),
        Scalar::Modular { .. } => panic!("matrix model is over the rationals"),
    }
}

/// Index `i - 1` of a vertex named `vi` in the line graph.
fn line_index(name: &str) -> usize {
    name.strip_prefix('v').and_then(|n| n.parse::<usize>().ok()).expect("line vertex name") - 1
}

/// Image of `x` in `M_n(Q)` for the line `v1 -> ... -> vn`: vertices go to
/// diagonal units, an edge `vi -> vj` to `E_ij` and its ghost to `E_ji`.
/// Each monomial is evaluated as a product of generator matrices, so the
/// model does not depend on the algebra's normal form.
pub fn line_image(x: &Element) -> QMatrix {
    let g = x.algebra().graph();
    let n = g.vertex_count();
    let edge = |e| matrix_unit(n, line_index(g.vertex_name(g.source(e))), line_index(g.vertex_name(g.range(e))));
    let mut out = zeros(n, n);
    for (m, c) in x.terms() {
        let start = line_index(g.vertex_name(m.mu().start()));
        let mut acc = matrix_unit(n, start, start);
        for &e in m.mu().edges() {
            acc = mat_mul(&acc, &edge(e));
        }
        for &e in m.nu().edges().iter().rev() {
            acc = mat_mul(&acc, &transpose(&edge(e)));
        }
        let end = line_index(g.vertex_name(m.nu().start()));
        acc = mat_mul(&acc, &matrix_unit(n, end, end));
        let c = rational(c);
        for i in 0..n {
            for j in 0..n {
                out[i][j] += &acc[i][j] * &c;
            }
        }
    }
    out
}

/// Element whose image is `E_ij`: the path from `vi` to `vj`, or the ghost
/// of the reverse path.
fn unit_preimage(alg: &LeavittAlgebra, i: usize, j: usize) -> Element {
    let g = alg.graph();
    let vertex = |k: usize| alg.generator(&format!("v{}", k + 1)).unwrap();
    let step = |a: usize| {
        let e = g.edges().find(|&e| line_index(g.vertex_name(g.source(e))) == a).expect("line edge");
        alg.edge(e)
    };
    let mut acc = vertex(i);
    if i <= j {
        for a in i..j {
            acc = &acc * &step(a);
        }
    } else {
        for a in (j..i).rev() {
            acc = &acc * &step(a).star();
        }
    }
    acc
}

pub fn line_preimage(alg: &LeavittAlgebra, m: &QMatrix) -> Element {
    let mut out = alg.zero();
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                let s = alg.field().ratio(c.numer(), c.denom()).unwrap();
                out = &out + &unit_preimage(alg, i, j).scale(&s);
            }
        }
    }
    out
}

/// Gauss-Jordan inverse of a square matrix, or `None` when singular.
fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut m: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduced row echelon form and its pivot columns.
fn rref(a: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Moore-Penrose inverse through a rank factorization `X = F C`:
/// `G = C^T (C C^T)^-1 (F^T F)^-1 F^T`.
pub fn generalized_inverse(x: &QMatrix) -> QMatrix {
    let n = x.len();
    let (c, pivots) = rref(x);
    if pivots.is_empty() {
        return zeros(n, n);
    }
    let f: QMatrix = x.iter().map(|row| pivots.iter().map(|&p| row[p].clone()).collect()).collect();
    let (ct, ft) = (transpose(&c), transpose(&f));
    let cct = inverse(&mat_mul(&c, &ct)).expect("full row rank");
    let ftf = inverse(&mat_mul(&ft, &f)).expect("full column rank");
    mat_mul(&mat_mul(&mat_mul(&ct, &cct), &ftf), &ft)
}

#[test]
fn oracle_self_check() {
    let x: QMatrix = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
    let g = generalized_inverse(&x);
    assert_eq!(mat_mul(&mat_mul(&x, &g), &x), x);
    assert_eq!(mat_mul(&mat_mul(&g, &x), &g), g);
    let z = zeros(3, 3);
    assert_eq!(generalized_inverse(&z), z);
}
