//! Alternating permutations and refinements of the Euler numbers, computed
//! by brute-force enumeration, convolution formulas, recurrences and exact
//! exponential generating functions, with explicit bijections between the
//! refined classes.

pub mod bij;
pub mod cli;
pub mod error;
pub mod perm;
pub mod report;
pub mod seq;
pub mod series;

pub use error::{Error, Result};
pub use perm::{AltKind, Classification, MinMax, Permutation, SecondMax};
pub use report::{Method, ReportSet, VerifyReport};
pub use seq::{CountTable, Refinements};
pub use series::TruncatedEgf;
