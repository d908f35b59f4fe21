pub mod bounds;
pub mod codes;
pub mod error;
pub mod ff;
pub mod geometry;
pub mod minimality;

pub use error::{Error, Result};

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
