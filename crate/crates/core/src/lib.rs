//! Exact and numeric decisions about cospectral and strongly cospectral
//! vertices in graphs.

pub mod alpha;
pub mod audit;
pub mod charpoly;
pub mod cospectral;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod spectral;
pub mod trees;
pub mod value;

pub use error::{Error, Result};
pub use graph::{Graph, Subgraph, VertexSet};
pub use graph6::{parse_graph6, to_graph6};
pub use poly::IntPoly;
pub use ratfunc::RatFunc;
pub use roots::RealRoot;
pub use value::{ExtendedValue, Real};
