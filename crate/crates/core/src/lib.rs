pub mod code;
pub mod combinat;
pub mod corpus;
pub mod covering;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod gf;
pub mod mds;
pub mod parse;
pub mod serial;
pub mod verify;

pub use error::{Error, Result};
