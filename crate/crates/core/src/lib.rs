//! Exact computations on crystallographic root systems, their Shi
//! arrangements restricted to Weyl cones, and order rings of finite posets.
//!
//! The crate is `no_std` and only needs `alloc`. All geometry is done over
//! arbitrary-precision rationals; nothing in here touches floating point.
//!
//! Module map:
//!
//! - [`rootsys`]: Cartan types, positive roots, root posets, Weyl groups.
//! - [`poset`]: finite posets, antichains, order ideals.
//! - [`exactgeom`]: Fourier–Motzkin feasibility and affine flats.
//! - [`shi`]: regions and flats of Shi arrangements inside Weyl cones.
//! - [`orderring`]: order rings, order polytope vertices, Hilbert series.
//! - [`verify`]: the invariant checks tying the pieces together.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod exactgeom;
pub mod orderring;
pub mod poly;
pub mod poset;
pub mod rootsys;
pub mod shi;
pub mod verify;

pub use error::{Error, Result};
pub use poly::IntPolynomial;

/// Arbitrary-precision rational used throughout the geometry.
pub type Rational = num_rational::BigRational;
