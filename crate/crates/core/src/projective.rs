//! Projective model of the hyperbolic plane in the Lorentz space of
//! signature (2,1).
//!
//! Points and lines are homogeneous triples. Nothing here normalizes the
//! stored coordinates; `affine()` / `normalized()` exist for display and for
//! the closed-form formulas that assume a unit third coordinate.

use std::fmt;

use crate::error::{Error, Result};

/// Relative tolerance for deciding that a Lorentz square is zero.
pub const EPS_SIGN: f64 = 1e-12;

/// `x¹y¹ + x²y² − x³y³`.
#[inline]
pub fn lorentz(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] - x[2] * y[2]
}

/// Plain (Euclidean) pairing used for incidence `u·x`.
#[inline]
pub fn dot(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

#[inline]
pub(crate) fn max_sq(x: &[f64; 3]) -> f64 {
    x.iter().map(|c| c * c).fold(0.0, f64::max)
}

/// Sign of `⟨x,x⟩` with the boundary band `|⟨x,x⟩| ≤ EPS_SIGN · max xᵢ²`.
fn lorentz_sign(x: &[f64; 3]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let q = lorentz(x, x);
    if q.abs() <= EPS_SIGN * max_sq(x) {
        Ordering::Equal
    } else if q < 0.0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Anything carrying a homogeneous coordinate triple.
pub trait Homogeneous {
    fn coords(&self) -> [f64; 3];
}

/// The Lorentz bilinear form on two triples of the same kind.
pub fn bilinear_form<T: Homogeneous>(x: &T, y: &T) -> f64 {
    lorentz(&x.coords(), &y.coords())
}

fn check_nonzero(c: [f64; 3]) -> Option<[f64; 3]> {
    if c.iter().all(|v| v.is_finite()) && c.iter().any(|&v| v != 0.0) {
        Some(c)
    } else {
        None
    }
}

/// A point `xℝ` of the projective plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomPoint([f64; 3]);

/// A line `ℝu` of the projective plane, given by its coefficient triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomLine([f64; 3]);

macro_rules! homogeneous_impl {
    ($ty:ident, $what:literal) => {
        impl $ty {
            /// # Panics
            ///
            #[doc = concat!("If all three coordinates are zero or any is non-finite; use [`", stringify!($ty), "::try_new`] for untrusted input.")]
            pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
                Self::try_new(c1, c2, c3)
                    .unwrap_or_else(|| panic!(concat!("invalid ", $what, " ({}, {}, {})"), c1, c2, c3))
            }

            pub fn try_new(c1: f64, c2: f64, c3: f64) -> Option<Self> {
                check_nonzero([c1, c2, c3]).map(Self)
            }

            pub fn from_array(c: [f64; 3]) -> Option<Self> {
                check_nonzero(c).map(Self)
            }

            #[inline]
            pub fn as_array(&self) -> &[f64; 3] {
                &self.0
            }

            /// Same element rescaled by `s` (which must be nonzero).
            pub fn scaled(&self, s: f64) -> Self {
                assert!(s != 0.0 && s.is_finite(), "scale factor must be nonzero");
                Self([self.0[0] * s, self.0[1] * s, self.0[2] * s])
            }

            /// `⟨self, other⟩` under the Lorentz form.
            #[inline]
            pub fn lorentz(&self, other: &Self) -> f64 {
                lorentz(&self.0, &other.0)
            }

            /// Whether `self` and `other` are the same projective element,
            /// i.e. their cross product vanishes relative to their norms.
            pub fn same_as(&self, other: &Self, tol: f64) -> bool {
                let (p, q) = (&self.0, &other.0);
                let cross = [
                    p[1] * q[2] - p[2] * q[1],
                    p[2] * q[0] - p[0] * q[2],
                    p[0] * q[1] - p[1] * q[0],
                ];
                let n = |v: &[f64; 3]| dot(v, v).sqrt();
                n(&cross) <= tol * n(p) * n(q)
            }
        }

        impl Homogeneous for $ty {
            fn coords(&self) -> [f64; 3] {
                self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
            }
        }
    };
}

homogeneous_impl!(HomPoint, "homogeneous point");
homogeneous_impl!(HomLine, "homogeneous line");

/// Position of a point relative to the absolute conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Proper,
    Boundary,
    Outer,
}

/// Number of real intersections of a line with the absolute conic:
/// two (`Proper`), one (`Boundary`) or none (`Outer`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineClass {
    Proper,
    Boundary,
    Outer,
}

impl HomPoint {
    /// The affine point `(x, y, 1)`.
    pub fn affine(x: f64, y: f64) -> Self {
        Self::new(x, y, 1.0)
    }

    /// Inhomogeneous coordinates, or `None` for an ideal point.
    pub fn to_affine(&self) -> Option<(f64, f64)> {
        let [x, y, z] = self.0;
        if z.abs() <= EPS_SIGN * (x.abs() + y.abs()) || z == 0.0 {
            None
        } else {
            Some((x / z, y / z))
        }
    }

    pub fn classify(&self) -> PointClass {
        classify_point(self)
    }

    /// Polar line with respect to the absolute conic.
    pub fn polar(&self) -> HomLine {
        polar_line(self)
    }
}

impl HomLine {
    /// Incidence pairing `u·x`.
    #[inline]
    pub fn apply(&self, x: &HomPoint) -> f64 {
        dot(&self.0, &x.0)
    }

    pub fn classify(&self) -> LineClass {
        classify_line(self)
    }

    pub fn pole(&self) -> HomPoint {
        pole_of_line(self)
    }

    /// Rescaled so the third coefficient is 1, when that coefficient is not
    /// negligible; otherwise unchanged.
    pub fn normalized(&self, tol: f64) -> Self {
        let [u1, u2, u3] = self.0;
        let scale = u1.abs().max(u2.abs()).max(u3.abs());
        if u3.abs() > tol * scale {
            Self([u1 / u3, u2 / u3, 1.0])
        } else {
            *self
        }
    }
}

pub fn classify_point(x: &HomPoint) -> PointClass {
    use std::cmp::Ordering::*;
    match lorentz_sign(&x.0) {
        Less => PointClass::Proper,
        Equal => PointClass::Boundary,
        Greater => PointClass::Outer,
    }
}

/// Note the reversed sign convention relative to points: a line is proper
/// when `⟨u,u⟩ > 0`.
pub fn classify_line(u: &HomLine) -> LineClass {
    use std::cmp::Ordering::*;
    match lorentz_sign(&u.0) {
        Greater => LineClass::Proper,
        Equal => LineClass::Boundary,
        Less => LineClass::Outer,
    }
}

/// `(u₁, u₂, u₃) ↦ (u₁, u₂, −u₃)`.
pub fn pole_of_line(u: &HomLine) -> HomPoint {
    HomPoint([u.0[0], u.0[1], -u.0[2]])
}

/// `(x¹, x², x³) ↦ (x¹, x², −x³)`; inverse of [`pole_of_line`].
pub fn polar_line(x: &HomPoint) -> HomLine {
    HomLine([x.0[0], x.0[1], -x.0[2]])
}

/// Hyperbolic distance (curvature −1) between two proper points.
///
/// The numerator takes `|⟨x,y⟩|`, so the result does not depend on the signs
/// of the representatives.
pub fn distance(x: &HomPoint, y: &HomPoint) -> Result<f64> {
    if classify_point(x) != PointClass::Proper || classify_point(y) != PointClass::Proper {
        return Err(Error::NonProperPoint);
    }
    let cosh = x.lorentz(y).abs() / (x.lorentz(x) * y.lorentz(y)).sqrt();
    Ok(cosh.max(1.0).acosh())
}
