pub mod caps;
pub mod cli;
pub mod error;
pub mod field_linalg;
pub mod format;
pub mod graph;
pub mod group_algebra;
pub mod harness;
pub mod perm;
pub mod pipeline;
