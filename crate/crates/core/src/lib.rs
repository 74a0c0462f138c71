//! Exact face numbers of flow polytopes `Flow_n(a)` of the transitively
//! directed complete graph `K_{n+1}`, including the Chan-Robbins-Yuen
//! polytope `CRY_n = Flow_n(1, 0, ..., 0)`.
//!
//! Several independent routes compute the same f-polynomials and are
//! checked against each other and against a brute-force subgraph oracle.

pub mod compositions;
pub mod counts;
pub mod facecount;
pub mod fishburn;
pub mod genfunc;
pub mod laurent;
pub mod oracle;

pub use compositions::{Composition, CompositionError, NetflowVector, SubsetMask};
pub use counts::{BicoloredPartitionCoeffs, CountError};
pub use facecount::{EvaluationVector, FVector, FaceCountError, SignConvention};
pub use fishburn::{FishburnError, FishburnMatrix};
pub use genfunc::{ProductForm, SeriesRequest};
pub use laurent::{LaurentError, LaurentPoly, TruncatedSeries};
pub use oracle::{BettiProfile, OracleConfig, OracleError, Subgraph};
