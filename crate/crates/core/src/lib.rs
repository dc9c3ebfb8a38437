//! Finite topological spaces as a combinatorial Hopf algebra.
//!
//! Topologies on `[n]` are handled as preorders ([`Preorder`]) and
//! homeomorphism classes as canonical weighted posets ([`FiniteSpace`]).
//! On top of that sit the two products and the open-set coproduct
//! ([`algebra`]), enumeration and counting ([`enumeration`]), beat-point
//! reduction and order complexes ([`homotopy`]), the morphism to
//! quasi-symmetric functions ([`qsym`]), and shuffle/unshuffle structures
//! on tensor words ([`tensor`]).

pub mod algebra;
pub mod axioms;
mod canon;
pub mod enumeration;
pub mod error;
pub mod homotopy;
pub mod linear;
pub mod qsym;
pub mod report;
pub mod scalar;
pub mod space;
pub mod tensor;

pub use algebra::{FTensor, FVector};
pub use error::{Error, ParseError, Result, TopologyViolation};
pub use homotopy::SimplicialComplex;
pub use linear::{Lin, Tensor};
pub use report::{CheckOutcome, CheckReport};
pub use qsym::{Composition, LevelPartition, QSymElement};
pub use scalar::Scalar;
pub use space::{FiniteSpace, OpenSet, Preorder};
