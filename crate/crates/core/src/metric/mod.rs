//! Finite metric spaces, bisectors and the truncation/join constructions.

mod bisect;
pub mod io;
pub mod rational;
mod space;

pub use bisect::{pair_index, pairs, DistinguisherMap, KGeneratorCertificate};
pub use space::{join, FiniteMetricSpace, MetricError};
