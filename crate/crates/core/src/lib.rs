//! Exact computation of bisectors, k-metric generators and k-metric
//! dimensions of finite metric spaces and graphs.

pub mod families;
pub mod graph;
pub mod metric;
pub mod pointset;
pub mod solver;
pub mod verify;

pub use families::{FamilyObject, FamilySpec};
pub use graph::{Graph, GraphError};
pub use metric::{join, DistinguisherMap, FiniteMetricSpace, KGeneratorCertificate, MetricError};
pub use pointset::PointSet;
pub use solver::{
    dim_bruteforce, dim_exact, dimension_sequence, greedy_upper, DimensionSequence, ExtendedNat,
    SolveOptions, SolveReport,
};
