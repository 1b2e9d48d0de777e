//! Polygon methods for algebraic ordinary differential equations:
//! Petrović and Fine polygons, movable singularities, the Fuchs test,
//! formal Puiseux-series solutions and related classifications.

pub mod algebra;
pub mod diffpoly;
pub mod error;
pub mod polygon;
pub mod series;
pub mod singularities;
pub mod special;

pub use error::{Error, Result};
