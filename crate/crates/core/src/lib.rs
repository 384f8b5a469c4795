//! Minimal complexes of projectives over bound quiver algebras on prime
//! fields, with tools for deciding derived-discrete versus strongly derived
//! unbounded representation type.

pub mod algebra;
pub mod categories;
pub mod classifier;
pub mod error;
pub mod exactla;
pub mod complexes;
pub mod fixtures;
pub mod io;
pub mod gentle;
pub mod modules;

mod config;

pub use config::Config;
pub use error::{Error, Result};
