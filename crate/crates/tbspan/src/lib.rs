//! File formats, JSON reports and the `tbspan` command line on top of
//! [`tbspan_core`].

pub mod cli;
pub mod formats;
pub mod report;
