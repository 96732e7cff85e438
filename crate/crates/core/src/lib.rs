pub mod algebra;
pub mod conic;
pub mod curves;
pub mod elliptic;
pub mod error;
pub mod intersection;
pub mod kv;
pub mod pencil;
pub mod suite;

pub use error::{Error, Result};
