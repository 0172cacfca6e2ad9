//! Symbolic group cohomology of closed orientable surface groups.
//!
//! Words are kept in normal form under Hermiller's complete rewriting
//! system. On top of that sit the integral group ring with Fox calculus,
//! the small free resolution M^g and its tensor powers, an explicit
//! contracting homotopy, diagonal approximations, cohomology with sign
//! twisted coefficients, cup products, and the zero-divisor computations
//! that bound effective topological complexity from below.

pub mod cohomology;
pub mod diagonal;
pub mod effective_tc;
pub mod error;
pub mod group_ring;
pub mod homotopy;
pub mod resolution;
pub mod rewriting;
pub mod word;

pub use error::{Error, Result};
