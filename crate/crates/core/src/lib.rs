//! Exact computations with Jordan pairs of 3x3 hermitian matrices, their
//! Tits-Kantor-Koecher Lie algebras and the root-graded groups acting on them.

pub mod algebra;
pub mod error;
pub mod groups;
pub mod jordan;
pub mod lie;
pub mod linalg;
pub mod pe3;
pub mod random;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod spectral;
pub mod tkk;
pub mod verify;

pub use algebra::builtins::{builtin, BUILTIN_NAMES};
pub use algebra::{r1_words, left_mult_ring_span, Algebra, AlgebraElement, AlgebraSpec, LeftMultSpan, Witness};
pub use error::{Error, Result};
pub use jordan::{bergmann, d_op, q_op, triple, u_op, Herm, HermElement, HermOperator, HermSpace, Position, Sign};
pub use lie::LieAlgebra;
pub use linalg::{Matrix, SpanBasis, SparseVec};
pub use random::TrialRng;
pub use report::{CheckRecord, Status, SuiteReport};
pub use roots::{a2_roots, c3_roots, Weight};
pub use scalar::{Rational, Scalar, ScalarMode};
pub use tkk::{L0Origin, Tkk};
pub use pe3::{MatrixModel, Pe3};
pub use groups::{A2Group, Automorphism, C3Group, Family, RootGroup};
