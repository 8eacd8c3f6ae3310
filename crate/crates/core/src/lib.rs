pub mod cobar;
pub mod comod;
pub mod coordalg;
pub mod error;
pub mod filtfun;
pub mod growth;
pub mod linalg;

pub use error::{Error, Result};

/// Engine version recorded in cached results.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
