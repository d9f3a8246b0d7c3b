//! Exact computations around character varieties: the HLV partition function
//! and its plethystic logarithm, modified Macdonald polynomials, the bigraded
//! modules `M_{n,k}` built from Hilbert schemes of points, the multiform
//! operator calculus, and the Fricke-Klein trace algebra of the Markov cubic.
//!
//! Everything is exact. Coefficients live in [`scalar::QtScalar`], rational
//! functions in `q^(1/2)` and `t^(1/2)` over arbitrary-precision rationals.

pub mod cli;
pub mod error;
pub mod hilb;
pub mod hlv;
pub mod linalg;
pub mod markov;
pub mod multiform;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod symfunc;

pub use error::{Error, Result};
pub use partition::{enumerate_partitions, CellStat, Partition};
pub use scalar::{QtLaurent, QtScalar};
pub use symfunc::{SymFunc, SymSeries};
