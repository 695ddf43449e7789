#![no_std]

extern crate alloc;

pub mod betti;
pub mod clifford;
pub mod binary;
pub mod error;
pub mod field;
pub mod graded;
pub mod knorrer;
pub mod matrix;
pub mod mf;
pub mod pencil;
pub mod poly;
pub mod polymatrix;
pub mod ulrich;
mod univariate;

pub use error::{AlgebraError, Result};
pub use field::{Field, PrimeField, Rationals};
pub use matrix::Matrix;
pub use poly::{Poly, PolyRing};
pub use polymatrix::PolyMatrix;
