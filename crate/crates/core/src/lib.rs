//! Holonomy algebras of constant torsion forms, parallel spinors for connections with
//! skew-symmetric torsion on Aloff-Wallach and 3-Sasakian models, in exact arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod clifford;
pub mod cli;
pub mod error;
pub mod field;
pub mod flat;
pub mod holonomy;
pub mod homogeneous;
pub mod lie;
pub mod matrix;
pub mod numeric;
pub mod sample;
pub mod sasakian;
pub mod scalar;
pub mod spin9;
pub mod verify;

pub use algebra::Form;
pub use clifford::{Multivector, SpinRep};
pub use error::{Error, Result};
pub use field::{Cx, Field};
pub use matrix::{Echelon, Matrix};
pub use scalar::Scalar;
