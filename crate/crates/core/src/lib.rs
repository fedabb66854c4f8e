//! Exact sheaf cohomology on finite posets.

pub mod error;
pub mod cech;
pub mod corpus;
pub mod field;
pub mod io;
pub mod linalg;
pub mod marginal;
pub mod nerve;
pub mod poset;
pub mod presheaf;
pub mod sparse;

pub use error::{Error, Result};
