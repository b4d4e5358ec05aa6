//! Finite quandles: construction, validation, isomorph-free enumeration, and
//! the displacement, inner automorphism and automorphism groups.

pub mod autcalc;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod gapio;
pub mod groupid;
pub mod perm;
pub mod quandle;
mod text;

pub use error::{Error, Result};
pub use groupid::GroupName;
pub use perm::{Perm, PermGroup};
pub use quandle::{Quandle, Violation};
