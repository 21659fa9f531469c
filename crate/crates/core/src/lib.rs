pub mod algebra;
pub mod chain;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod hm;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rosary;
pub mod state;

pub use error::{Error, Result};
