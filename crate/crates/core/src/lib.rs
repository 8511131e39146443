//! Exact construction and verification of the Cremmer-Gervais solutions of
//! the quantum Yang-Baxter equation.
//!
//! Everything is computed symbolically in two invertible parameters `q` and
//! `p` with rational coefficients, so every check is an exact polynomial
//! identity.

pub mod error;
pub mod model;
pub mod oracle;
pub mod ring;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{rational, LaurentQP, Rational};
pub use tensor::{Endo2, Endo3, Operator, Witness};
