//! Command-line tables of Hermite spreading lengths.
//!
//! Every command produces an [`record::OutputRecord`]: a versioned, typed
//! table written as CSV or JSON. Rows come out in degree order whatever the
//! thread count.

pub mod cli;
pub mod commands;
pub mod record;
