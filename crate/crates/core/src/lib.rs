//! Regular closure operators over finite topological spaces.
//!
//! The crate is organised in layers:
//!
//! * [`category`]: finite categories with explicit hom tables and exhaustive
//!   checkers for universal properties;
//! * [`fintop`]: finite spaces, continuous maps and their direct
//!   (co)limit constructions, enumeration and canonical forms;
//! * [`subcat`]: finitely described subcategories, reflections and hulls;
//! * [`closure`]: regular closure operators computed by the cokernel-pair
//!   formula and by brute force, plus the comparison sweeps built on them.

pub mod category;
pub mod closure;
pub mod error;
pub mod fintop;
pub mod points;
pub mod subcat;

pub use error::{Error, Result};
pub use points::PointSet;
