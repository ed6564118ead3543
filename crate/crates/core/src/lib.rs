//! Generalized conics and their compound isoptic curves in the projective
//! (Cayley-Klein) model of the extended hyperbolic plane.
//!
//! * [`projective`]: Lorentz form, point and line classes, polarity, distance.
//! * [`angle`]: generalized angle between two lines.
//! * [`conic`]: normal forms, classification, dual pairs, matrices.
//! * [`tangent`]: tangents from an external point, closed form and generic.
//! * [`isoptic`]: isoptic quotients, branches, residuals, direct-angle oracle.
//! * [`contour`] / [`render`]: residual fields, marching squares, SVG and CSV.

pub mod angle;
pub mod conic;
pub mod contour;
pub mod error;
pub mod figures;
pub mod format;
pub mod isoptic;
pub mod projective;
pub mod render;
pub mod tangent;

pub use angle::{generalized_angle, AngleFormula, AngleKind, GeneralizedAngle};
pub use conic::{classify, dual, matrices, ConicClass, ConicMatrices, ConicSpec, Family};
pub use error::{Error, Result};
pub use isoptic::{IsopticBranch, IsopticQuery, SamplingDomain, Window};
pub use projective::{HomLine, HomPoint, LineClass, PointClass};
pub use tangent::{tangents, TangentPair, TangentRoute};
