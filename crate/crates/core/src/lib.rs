//! Value types and building blocks for matrix-multiplication-style shortest
//! path algorithms: extended distances, dense matrices with a text format,
//! a family of min-plus product engines with witness recovery, weighted
//! graphs, baseline oracles, hitting-set samplers and the gamma-scale
//! selector.

pub mod bitmat;
pub mod bounds;
pub mod dist;
pub mod engines;
pub mod error;
pub mod gamma;
pub mod gen;
pub mod graph;
pub mod hitting;
pub mod lexdist;
pub mod matrix;
pub mod oracles;

pub use bounds::{check_bounds, CostModel, EntryBounds, SideBound};
pub use dist::Dist;
pub use error::{Error, Result};
pub use graph::{Color, EdgeRecord, Graph};
pub use lexdist::LexDist;
pub use matrix::Matrix;
