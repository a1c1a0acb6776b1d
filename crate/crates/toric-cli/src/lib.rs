//! Library surface of the `toric` binary: model-file parsing and the
//! fixture verification suite, shared with the integration tests.

pub mod model;
pub mod verify;

pub use model::Model;
