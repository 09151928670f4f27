pub mod cli;
pub mod ddt;
pub mod error;
pub mod gf;
pub mod funcs;
pub mod oracles;
pub mod predict;
pub mod quadext;

pub use error::{Error, Result};
