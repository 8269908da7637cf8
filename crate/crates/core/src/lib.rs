//! Exact decision procedures for well-separation and flat transversals of
//! families of finite point sets and segments in arbitrary dimension.
//!
//! All geometry is carried out over arbitrary-precision rationals. Searches
//! fan out over rayon when the `parallel` feature is enabled (the default);
//! every parallel merge is by input order, so answers and certificates do not
//! depend on the number of workers.

pub mod approx;
pub mod error;
pub mod exactmath;
pub mod lpcore;
pub mod par;
pub mod reductions;
pub mod solvers;
pub mod wellsep;

pub use error::{Error, Result};
pub use exactmath::{
    affine_dependence, affine_rank, flat_contains, flat_from_points, hyperplane_through, Flat,
    Hyperplane, Point, PointFamily, Rational,
};
