//! Exact engine for the rank-two imprimitive complex reflection groups G(m,e,2):
//! conjugacy classes, characters over cyclotomic fields, tensor products,
//! equivariant Ext between skyscraper sheaves and monomial modules at the origin,
//! McKay quivers, and a checker for the semi-orthogonal decomposition of the
//! equivariant derived category of the plane.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod extcalc;
pub mod group;
pub mod modfilt;
pub mod quiver;
pub mod reps;
pub mod sodverify;

pub use error::{Error, Result};
