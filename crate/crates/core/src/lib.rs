pub mod arith;
pub mod bench;
pub mod error;
pub mod expr;
pub mod linearize;
pub mod abramov;
pub mod bireduce;
pub mod certificate;
pub mod shift;
pub mod telescope;

pub use error::{Error, Result};
