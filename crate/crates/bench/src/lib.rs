//! Seeded workloads shared by the benchmarks.

use leavitt::sampling::MonomialSampler;
use leavitt::{Element, Field, LeavittAlgebra};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use leavitt::graph::{line, rose, single_loop, toeplitz};

pub fn rationals(g: leavitt::DirectedGraph) -> LeavittAlgebra {
    LeavittAlgebra::new(g, Field::Rationals)
}

/// `count` random elements of any degree.
pub fn elements(alg: &LeavittAlgebra, count: usize, terms: usize, len_cap: usize, seed: u64) -> Vec<Element> {
    let s = MonomialSampler::new(alg, len_cap, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| s.element(&mut rng, terms)).collect()
}

/// `count` random nonzero homogeneous elements.
pub fn homogeneous(alg: &LeavittAlgebra, count: usize, terms: usize, len_cap: usize, seed: u64) -> Vec<Element> {
    let s = MonomialSampler::new(alg, len_cap, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = s.homogeneous(&mut rng, terms);
        if !x.is_zero() {
            out.push(x);
        }
    }
    out
}
