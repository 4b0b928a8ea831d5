//! Binomial equations of the embedding: affine charts at vertices, 2-D
//! certificates, the global quadric list, and an exhaustive fiber-graph
//! oracle for generation in low degree.

mod certificate;
mod chart;
mod counts;
mod oracle;
mod presentation;

pub use certificate::{
    check_2d, check_2d_all, check_2d_on_points, DecompositionCertificate, Witness,
};
pub use chart::{chart_presentation, ChartExponent, ChartPresentation};
pub use counts::{
    fujita_counts, normally_generated_check, normally_generated_check_with_limits, FujitaCounts,
};
pub use oracle::{
    fiber_graph_oracle, fiber_graph_oracle_with_limits, DegreeVerdict, DisconnectedFiber,
    FiberFailure, FiberGraphReport, OracleLimits, DEFAULT_MAX_DEGREE, DEFAULT_MAX_POINTS,
};
pub use presentation::{quadratic_presentation, QuadraticPresentation, Quadric};
