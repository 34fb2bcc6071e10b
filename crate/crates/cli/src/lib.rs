//! IO companion to the core crate: text formats, certificate JSON, and
//! the benchmark suites. The `prodstruct` binary is a thin front end
//! over these modules.

pub mod bench;
pub mod certificates;
pub mod formats;
