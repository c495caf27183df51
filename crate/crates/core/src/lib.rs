pub mod ar;
pub mod cli;
pub mod crystal;
pub mod error;
pub mod modclass;
pub mod promotion;
pub mod quiver;
pub mod reineke;
pub mod tableaux;

pub use error::{Error, Result};
