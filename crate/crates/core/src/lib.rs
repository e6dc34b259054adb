//! Simplicial complexes, centrally symmetric constructions and exact
//! infinitesimal rigidity of bar-and-joint frameworks.
//!
//! Everything is exact: face data is combinatorial and all linear algebra is
//! over arbitrary-precision rationals.

pub mod complex;
pub mod constructions;
pub mod enumerative;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod polynomial;
pub mod rigidity;
pub mod symmetry;
pub mod verify;

pub use complex::{Face, SimplicialComplex, VertexId};
pub use constructions::{StackMode, StackingScript};
pub use enumerative::{f_vector, g_number, h_polynomial, FVector, SubdivisionMap};
pub use error::{Error, Result};
pub use geometry::{Embedding, RationalVector, RealizedPolytope};
pub use graph::Graph;
pub use io::ComplexFile;
pub use linalg::{Matrix, Rational};
pub use polynomial::IntPolynomial;
pub use rigidity::{RigidityMatrix, StressBasis, StressVector};
pub use symmetry::{validate_cs, CsComplex, Involution};
pub use verify::{CheckReport, VerifyConfig};
