//! Cocycle-presented extensions of commutative groups, with the generalized
//! Jacobian `Jac(E, m)` of an elliptic curve as the worked instance.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the arithmetic:
//!
//! - [`field`]: prime and polynomial-basis extension fields with a shared
//!   multiplication counter.
//! - [`curve`]: short Weierstrass curves in affine coordinates, point
//!   enumeration, element orders and the line fractions `f_{P,Q} = v/l`.
//! - [`extgroup`]: the [`GroupBackend`](extgroup::GroupBackend) abstraction and
//!   the group `C` presented by a 2-cocycle `c: A x A -> B`.
//! - [`genjac`]: the cocycle `c_m(P,Q) = f_{P,Q}(M) / f_{P,Q}(N)`, the group law
//!   of `Jac(E, m)` and Tate pairing extraction.
//! - [`dlp`]: generic solvers and the projection / pull-back attack on
//!   extension groups.
//!
//! File formats, the command line front end and the benchmark harness live in
//! the `genjac` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod curve;
pub mod dlp;
pub mod error;
pub mod extgroup;
pub mod field;
pub mod genjac;

pub use error::{Error, Result};
