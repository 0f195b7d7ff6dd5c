pub mod arith;
pub mod certify;
pub mod cm;
pub mod curve;
pub mod error;
pub mod finite;
pub mod local;
pub mod padic;
pub mod survey;

pub use arith::OddPrime;
pub use error::{Error, Result};
pub use padic::Padic;
