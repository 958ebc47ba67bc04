// Field methods take `&self` because prime fields carry their modulus, and
// index loops mirror the matrix formulas they implement.
#![allow(clippy::wrong_self_convention, clippy::needless_range_loop)]

pub mod centralizer;
pub mod chevalley;
pub mod error;
pub mod groth;
pub mod linalg;
pub mod quotient;
pub mod report;
pub mod roots;
pub mod slice;
pub mod suite;
pub mod whittaker;

pub use error::{Error, Result};
