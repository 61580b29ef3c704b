//! Cayley configuration spaces of Euclidean distance constraint systems:
//! graph recognition, the single-interval characterization, triangle-inequality
//! polytopes, realization and witnesses. The guide in `book/` walks through it.

pub mod cayley;
pub mod characterize;
pub mod edcs;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod realize;
pub mod witness;

pub use edcs::{Edcs, Weight};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexPair};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/characterization.md")]
    mod characterization {}
    #[doc = include_str!("../../../book/src/polytope.md")]
    mod polytope {}
    #[doc = include_str!("../../../book/src/realization.md")]
    mod realization {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    mod witnesses {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
