//! Representations of planar graphs by unions of at most three intervals.
//!
//! Every planar graph is the intersection graph of sets `f(v)`, each a union
//! of at most three closed intervals on the real line, such that no point is
//! covered by more than three sets. [`builder::build`] constructs such a
//! representation and [`verify`] checks one from the raw intervals alone.
//!
//! Pipeline: [`embedding`] (planarity and triangulation), [`split`] (peeling
//! at minimal separating triangles), [`decompose`] (path + two forests on each
//! 4-connected piece), [`builder`] (interval placement).

pub mod builder;
pub mod corpus;
pub mod decompose;
pub mod embedding;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod interval;
pub mod named;
pub mod planarity;
pub mod render;
pub mod split;
pub mod verify;

pub use builder::{build, build_depth2};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexId};
pub use interval::{Interval, Representation};
