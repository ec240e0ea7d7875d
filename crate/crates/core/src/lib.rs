//! Multiple edge insertion into planar graphs.

pub mod bench;
pub mod decomp;
pub mod embed;
pub mod error;
pub mod format;
pub mod frame;
pub mod gen;
pub mod graph;
pub mod mei;
pub mod oracle;
pub mod pref;
pub mod realize;
pub mod single;
mod util;

pub use error::MeiError;
pub use graph::{EdgeId, InsertionSet, Multigraph, VertexId};
pub use util::run_with_stack;
