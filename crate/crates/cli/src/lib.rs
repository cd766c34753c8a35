//! Library side of the command-line front end: wire formats, the named
//! verification suites, and slice export. The binary in `main.rs` is a thin
//! dispatcher over these.

pub mod json;
pub mod slice;
pub mod verify;
