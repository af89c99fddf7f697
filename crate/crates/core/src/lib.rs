//! Discrete cell complexes and the constructive machinery around embedded
//! spheres: local flatness, collars, gradually varied deformation, separation
//! of a closed codimension-one submanifold, and contraction of each side to a
//! single top cell.
//!
//! A [`DiscreteSpace`] is a finite graph together with registries of higher
//! cells. Every cell is determined by its boundary, a minimal closed cycle of
//! cells one dimension lower. Vertex ids are dense integers and all iteration
//! happens in ascending id order, so every operation here is deterministic.

pub mod complex;
pub mod deformation;
pub mod error;
pub mod export;
pub mod flatness;
pub mod format;
pub mod generators;
pub mod metrics;
pub mod separation;

pub use complex::{Cell, CellChain, CellId, DiscreteSpace, SpaceBuilder, Subcomplex, VertexId};
pub use error::{Error, Result};
