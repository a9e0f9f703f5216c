//! Library surface of the fsig tool: the built-in example registry, the
//! ring-definition file format and the report builders. The binary in
//! `main.rs` is a thin argument-parsing layer over these.

pub mod registry;
pub mod report;
pub mod ringfile;
