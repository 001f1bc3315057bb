//! Exact arithmetic of quadratic forms over Q and Q(sqrt 5): local-global equivalence,
//! explicit isometry witnesses, and the arithmetic-group families built from them.

pub mod arithgroups;
pub mod cli;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod localglobal;
pub mod qforms;
pub mod witness;

pub use error::{Error, Result};
