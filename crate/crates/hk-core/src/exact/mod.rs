//! Exact rational arithmetic: rationals, polynomials, piecewise polynomials,
//! measures with atoms, and the Stieltjes pairing machinery.

pub mod measure;
pub mod piecewise;
pub mod poly;
pub mod poly2;
pub mod rat;

pub use measure::{Measure, Sign, SignedEndpoint};
pub use piecewise::{PiecewisePoly, Side};
pub use poly::Poly;
pub use poly2::{slice_pair, HalfPlane, Piecewise2D, Poly2, Region2};
pub use rat::{rat, Rat};
