//! Library side of the `gammacap` CLI: file schemas, output shaping and
//! std-side runners over the solver core. The binary in `main.rs` is a
//! thin argument-parsing layer over this.

pub mod emit;
pub mod manifest;
pub mod runner;
pub mod schema;

pub use gammacap_core as core;
