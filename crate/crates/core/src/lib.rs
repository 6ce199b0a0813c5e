//! Computational tools for special multiserial algebras given by quivers with
//! relations: basis computation, the splitting construction, reduction to
//! string algebras of linear and cyclic type, and an exact check that the
//! resulting Auslander generator has an endomorphism ring of global dimension
//! at most three.

pub mod dsl;
pub mod endalgebra;
pub mod error;
pub mod fuzz;
pub mod linalg;
pub mod pipeline;
pub mod presentation;
pub mod quiver;
pub mod representations;
pub mod splitting;

pub use error::{Error, ErrorClass, Result};
pub use presentation::{Presentation, Relation};
pub use quiver::{ArrowId, Path, Quiver, Shape, VertexId};
