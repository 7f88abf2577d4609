//! Exact symbolic computation in Leavitt path algebras `L_K(E)`.
//!
//! The library models a finite directed graph, computes in its Leavitt path
//! algebra over the rationals or a prime field, and constructs homogeneous
//! inner inverses (`x y x = x`) for homogeneous elements, together with the
//! graph- and ring-level constructions those witnesses travel through:
//! corner skew Laurent rings, graded matrix rings, source elimination and
//! desingularization.

pub mod corner_skew;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod lpa;
pub mod regularity;
pub mod sampling;
pub mod scalar;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{DirectedGraph, EdgeId, Path, VertexId, VertexKind};
pub use lpa::{local_unit, parse_element, Element, LeavittAlgebra, Monomial, WeightGrading};
pub use regularity::{
    find_witness, find_witness_unrestricted, find_witness_unrestricted_with, find_witness_with, idempotent_generator,
    nonzero_ideal_idempotent, IdempotentCertificate, WitnessOptions, WitnessReport,
};
pub use scalar::{Field, Scalar};
