//! Minimum-energy unit barycentre-0 spherical representations of graphs.

pub mod error;
pub mod experiment;
pub mod graph;
pub mod certificates;
pub mod linalg;
pub mod matching;
pub mod par;
pub mod representation;
pub mod sdp;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
