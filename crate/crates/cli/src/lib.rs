//! Table reproduction, verification suites, expression products and a structure-constant cache
//! on top of `descent-core`.

pub mod cache;
pub mod error;
pub mod expr;
pub mod table;
pub mod verify;

pub use cache::{Cache, CacheEntry, CacheStatus, Loader};
pub use error::{CliError, Result};
pub use table::{Format, TableRow};
pub use verify::{Check, Options, Report, Status, Suite};
