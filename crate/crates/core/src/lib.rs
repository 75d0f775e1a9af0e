pub mod bell;
pub mod cli;
pub mod density;
pub mod error;
pub mod fock;
pub mod generators;
pub mod lorentz;
pub mod quaternion;
pub mod wigner;
pub mod zeta;

pub use error::{Error, Result};
