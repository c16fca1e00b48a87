//! Exact zeta functions of matroids.
//!
//! The crate computes, in exact arithmetic, the motivic zeta function of a
//! matroid and its local, reduced and topological variants, together with
//! characteristic polynomials, Poincaré polynomials and the Hilbert series of
//! the Feichtner–Yuzvinsky ring. A brute-force lattice-point oracle checks the
//! closed forms term by term.

pub mod algebra;
pub mod building;
pub mod error;
pub mod io;
pub mod lattice;
pub mod matroid;
pub mod named;
pub mod oracle;
pub mod poincare;
pub mod subset;
pub mod verify;
pub mod zeta;

pub use algebra::{BiPoly, LaurentPoly, RationalQT, RationalS};
pub use building::{BuildingSet, NestedSet};
pub use error::{Error, Result};
pub use lattice::FlatLattice;
pub use matroid::{Matroid, Minor, WeightVector};
pub use subset::GroundSubset;
pub use zeta::{StructuredZeta, ZetaKind};
