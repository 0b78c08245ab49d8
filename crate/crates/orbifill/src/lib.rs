//! Document formats, group cache, report rendering and the command-line
//! frontend over `orbifill-core`.

pub mod battery;
pub mod cache;
pub mod cli;
pub mod doc;
pub mod error;
pub mod report;
