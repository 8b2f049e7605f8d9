//! Exact computations with formal group laws, the rationalized Lazard ring
//! and Chern numbers of complete intersections in products of projective
//! spaces.

pub mod algebra;
pub mod error;
pub mod fgl;
pub mod genera;
pub mod theory;
pub mod variety;

pub use error::{Error, Result};
