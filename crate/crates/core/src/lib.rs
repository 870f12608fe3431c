//! Exact tools for minimal balanced families.
//!
//! * [`geometry`] and [`lp`]: rational points, convex-hull membership and
//!   Shapley weight systems, all decided exactly.
//! * [`enumeration`]: `BS(V)`, the minimal balanced subsets of a point set.
//! * [`two_subset`]: the odd-cycle / isolated-edge description of minimal
//!   balanced families of pairs, a generator for them, and a cross-check
//!   against geometric enumeration.
//! * [`partitions`]: the partition counts behind those families.
//! * [`game`]: core non-emptiness for games with singleton and pair
//!   coalitions.
//! * [`lemmas`]: Sperner, Tucker, Ky Fan and Shashkin searches on labelled
//!   disc triangulations.
//! * [`doc`]: the JSON document formats used by the command-line tool.
//!
//! ```
//! use minbal::enumeration::{enumerate_minimal_balanced, Budget};
//! use minbal::geometry::cross_polytope;
//!
//! let (v, _) = cross_polytope(3).unwrap();
//! let bs = enumerate_minimal_balanced(&v, Budget::default()).unwrap();
//! assert_eq!(bs.len(), 3);
//! assert!(bs.verify());
//! ```

pub mod doc;
pub mod enumeration;
pub mod error;
pub mod family;
pub mod game;
pub mod geometry;
pub mod lemmas;
pub mod lp;
pub mod partitions;
pub mod rational;
pub mod two_subset;

pub use error::{Error, Result};
pub use rational::Rational;
