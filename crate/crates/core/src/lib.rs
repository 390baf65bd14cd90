//! Exact computation of intersection norms on closed oriented surfaces.
//!
//! A wall system is a finite family of closed curves on a surface, meeting only
//! in transverse double points. Here it is given combinatorially, as a 4-valent
//! rotation system ([`WallSystemMap`]); its complementary regions are discs by
//! construction. From it the crate computes:
//!
//! * the first homology of the surface on the dual cell structure ([`homology`]),
//! * Eulerian coorientations and their cohomology classes ([`coorient`]),
//! * the intersection norm `x(a) = max ν(a)` and its dual unit ball ([`normball`]),
//! * an independent brute-force minimum over multicurves ([`oracle`]),
//! * a constructive realization of lattice points as coorientations ([`eikonal`]),
//! * the lattice-point classification of transverse surfaces ([`birkhoff`]).
//!
//! Everything is exact: integer or arbitrary-precision rational arithmetic only.
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod birkhoff;
pub mod coorient;
pub mod cover;
pub mod eikonal;
mod error;
pub mod fixtures;
pub mod homology;
pub mod lp;
pub mod map;
pub mod normball;
pub mod oracle;
pub mod snf;
pub mod walk;

pub use birkhoff::{classify, section_invariants, ClassificationReport, SectionClass, SectionInvariants};
pub use coorient::{Coorientation, EnumLimits, EulerianSet};
pub use error::{Error, NotRealizableReason};
pub use homology::{HomologyBasis, HomologyCoords, ParityClass};
pub use map::{Curve, Dart, DualGraph, Face, WallSystemMap};
pub use normball::{DualBall, IntersectionNorm, Membership, NormValue};
pub use walk::{Crossing, DualWalk};

pub type Result<T, E = Error> = core::result::Result<T, E>;
