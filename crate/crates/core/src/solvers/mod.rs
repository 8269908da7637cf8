//! Exact decision procedures: flat transversals of finite families, hyperplane
//! transversals of segment families, and exact MaxHyp.

mod finite;
mod maxhyp;
mod segments;

pub use finite::{
    finite_flat_transversal, finite_flat_transversal_with_stats, hyperplane_transversal_points,
    SearchStats, TransversalCertificate,
};
pub use maxhyp::{maxhyp_exact, MaxHypReport};
pub use segments::{
    segment_hyperplane_transversal, segment_hyperplane_transversal_with_stats, SegmentFamily,
    SegmentStats,
};
