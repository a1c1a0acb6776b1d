//! Exact-arithmetic toolkit for projective toric varieties in geometric
//! modeling: toric ideals from exponent sets, implicit degrees from polytope
//! volumes, toric patch evaluation under linear projections, inversion of the
//! algebraic moment map, real-part sampling, and implicitization by
//! interpolation.

pub mod ideal;
pub mod implicitize;
pub mod lattice;
mod linalg;
pub mod moment;
pub mod patch;
pub mod polytope;
pub mod realmesh;

pub use ideal::Binomial;
pub use implicitize::ImplicitForm;
pub use lattice::{ExponentSet, IntMat};
pub use patch::{ControlScheme, ProjectivePoint};
pub use polytope::LatticePolytope;

pub type Int = num::BigInt;
pub type Rat = num::BigRational;
