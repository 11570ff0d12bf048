//! Exact combinatorics of free probability.
//!
//! The crate is organised bottom-up:
//!
//! - [`ncpartition`]: non-crossing partitions, their permutations, Kreweras
//!   complementation and block insertion.
//! - [`series`]: truncated noncommutative power series over exact rationals,
//!   boxed convolution and its extension to pair alphabets.
//! - [`freeprob`]: scalar probability spaces presented by free cumulants.
//! - [`matrix`]: scalar and operator-valued `d x d` matrices.
//! - [`rcyclic`]: R-cyclic matrix families and their determining series.
//! - [`opvalued`]: cumulants with values in `M_d(C)` and in the diagonal
//!   subalgebra, and the amalgamated-freeness check.
//! - [`corpus`]: named example families and seeded random inputs.
//! - [`oracle`]: brute-force reference implementations.
//! - [`mc`]: Gaussian random-matrix cross-check.
//! - [`verify`]: named verification suites built from the oracles.

pub mod corpus;
pub mod error;
pub mod freeprob;
pub mod matrix;
pub mod mc;
pub mod ncpartition;
pub mod opvalued;
pub mod oracle;
pub mod rational;
pub mod rcyclic;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use freeprob::{CumulantModel, NcPolynomial};
pub use matrix::{OperatorMatrix, ScalarMatrix};
pub use ncpartition::{Partition, PartitionPermutation};
pub use rational::Rat;
pub use rcyclic::{MatrixFamily, RCyclicFamily};
pub use series::{Series, Word};
