//! Command line front end for the `sinebasis` solver: flag and file
//! configuration, CSV / JSON output and reproduction of reference tables.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;
pub mod repro;

pub use config::CliError;
pub use output::{Cell, Format, Table};
