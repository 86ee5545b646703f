//! File formats, statistics and the `quanta` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod manifest;
pub mod report;
pub mod stats;
