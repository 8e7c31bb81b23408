//! Branching matrices of commuting tuples in triangular matrix groups over
//! prime fields.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bitset;
pub mod branching;
pub mod engine;
pub mod error;
pub mod ffield;
pub mod linalg;
pub mod poly;
pub mod reference;
pub mod trigroup;
pub mod verify;

pub use error::{Error, Result};
pub use ffield::PrimeField;
pub use trigroup::{ElementCode, Family, GroupSpec, TriMatrix};
