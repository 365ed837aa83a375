//! Relative orientation of r-dimensional subspaces of R^n.
//!
//! Subspaces are represented as blades of the Euclidean Clifford
//! algebra Cl(n). The single geometric product of two unit blades
//! carries their complete angular relationship: the scalar part is the
//! product of the principal-angle cosines, the top-grade magnitude the
//! product of the sines, the grade support counts coincident and
//! perpendicular directions, and the normalised bivector part splits
//! into the principal planes with the angle tangents as weights.
//!
//! [`orientation`] extracts all of that from one product. [`principal`]
//! computes the same angles independently by the classical route
//! (QR orthonormalisation plus a one-sided Jacobi SVD of the cross-Gram
//! matrix) and serves as a cross-check.
//!
//! ```
//! use subangle::{Blade, Dim, SpanningSet};
//! use subangle::orientation::full_orientation;
//!
//! let dim = Dim::new(4)?;
//! let a = Blade::from_spanning(&SpanningSet::new(
//!     dim,
//!     vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]],
//! )?)?;
//! let b = Blade::from_spanning(&SpanningSet::new(
//!     dim,
//!     vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.5, 0.75f64.sqrt(), 0.0]],
//! )?)?;
//! let report = full_orientation(&a, &b)?;
//! assert_eq!(report.s_intersection, 1);
//! assert!((report.principal_angles[0] - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
//! # Ok::<(), subangle::Error>(())
//! ```

pub mod algebra;
pub mod blade;
pub mod error;
pub mod orientation;
pub mod principal;

pub use algebra::{Dim, Multivector};
pub use blade::{Blade, SpanningSet};
pub use error::{Error, Result};
pub use orientation::AngleReport;
pub use principal::PrincipalData;
