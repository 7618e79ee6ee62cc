//! Form files, JSON reports and batch runs for `venkov-core`.

pub mod batch;
pub mod form_file;
pub mod generate;
pub mod report;
