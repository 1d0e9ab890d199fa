//! Exact-arithmetic computation of GIT chamber fans, Hilbert-Mumford
//! stability data, and rational Chow/cohomology presentations for linear
//! actions of `GL` products and split tori on affine spaces.
//!
//! The crate is organized along the pipeline:
//!
//! - [`polycone`]: rational polyhedral cones, duality, fans and hyperplane
//!   arrangements, all over exact big rationals;
//! - [`groupdata`]: root/Weyl data of the group and expansion of module
//!   descriptions into torus weight systems;
//! - [`stability`]: semistability certificates, the unstable-locus
//!   components, effective cone, walls and the chamber fan;
//! - [`chowring`]: the antisymmetrize-and-divide projection, equivariant
//!   classes, ring presentations, Betti numbers, Picard group and ample cone.

pub mod chowring;
pub mod groupdata;
pub mod linalg;
pub mod poly;
pub mod polycone;
pub mod selfcheck;
pub mod stability;

pub use linalg::{Int, Rat};
pub use polycone::{Fan, LatVec, RatCone};
