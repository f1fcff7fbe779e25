//! Desk-scale Banach-space geometry: absolute normalized norms on R2 and
//! their duals, positive octahedrality / positive strong diameter 2 checkers,
//! one-sided directional-derivative calculus on finitely supported sequence
//! spaces, average-roughness estimation for absolute sums, and 2-D
//! slice-diameter duality checks.
//!
//! The crate is organized around five areas:
//!
//! - [`norm2d`]: the norm representations and their exact/numeric calculus;
//! - [`props2d`]: decision procedures for the 2-D positivity properties and
//!   the diametral-gap window;
//! - [`seqspace`]: finitely supported vectors, nested absolute-sum spaces,
//!   and the roughness quotient;
//! - [`roughness`]: witness evaluation, direction search, and the
//!   constructive lower/upper roughness bounds;
//! - [`slices2d`]: slice polygons, Minkowski combinations, and the
//!   slice-diameter vs. dual-roughness consistency check.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads.

pub mod config;
pub mod error;
pub mod norm2d;
mod numeric;
pub mod props2d;
pub mod roughness;
pub mod seqspace;
pub mod slices2d;

pub use error::{Error, Result};
pub use norm2d::{parse_norm, AbsNorm2, Functional2, Polygon2, TieBreak};
pub use seqspace::{parse_space, SpaceExpr, SpaceVec, SparseVec};
