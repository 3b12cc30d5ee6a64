//! Parametric Yang-Baxter maps, 3D-compatible ternary systems on
//! quasigroups, and randomized exact identity checking over Q and F_p.

pub mod catalog;
pub mod cli;
pub mod construct;
pub mod dsl;
pub mod error;
pub mod field;
pub mod glmatrix;
pub mod lax;
pub mod matrix;
pub mod quasigroup;
pub mod reduce;
pub mod yb;

pub use error::{Error, Result};
pub use field::{Field, FieldConfig, FieldElement};
pub use matrix::SquareMatrix;
pub use quasigroup::{BuiltinQuasigroup, Carrier, Point, Quasigroup};
pub use yb::{CheckOptions, ParametricTernarySystem, ParametricYbMap, Verdict, VerificationReport};
