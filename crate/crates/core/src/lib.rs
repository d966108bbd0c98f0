pub mod complexes;
pub mod cli;
pub mod cyclic;
pub mod derham;
pub mod error;
pub mod exactlin;
pub mod filtered;
pub mod hochschild;

pub use error::{Error, Result};
