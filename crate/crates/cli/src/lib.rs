//! Library surface of the pooling-lab binary: scenario file handling,
//! report rendering, and the built-in demos. Kept as a lib target so the
//! integration tests can exercise parsing and serialization directly.

pub mod demos;
pub mod report;
pub mod scenario;
