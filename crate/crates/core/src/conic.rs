//! Normal forms of the generalized conics of the extended hyperbolic plane,
//! their classification tables, dual pairs and matrix representations.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::projective::{HomPoint, EPS_SIGN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Central,
    Parabola,
    SemiHyperbola,
    OsculatingParabola,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Central => "central",
            Family::Parabola => "parabola",
            Family::SemiHyperbola => "semihyperbola",
            Family::OsculatingParabola => "osculating",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "central" => Ok(Family::Central),
            "parabola" => Ok(Family::Parabola),
            "semihyperbola" => Ok(Family::SemiHyperbola),
            "osculating" => Ok(Family::OsculatingParabola),
            other => Err(format!(
                "unknown family `{other}` (expected central|parabola|semihyperbola|osculating)"
            )),
        }
    }
}

/// A conic in one of the four normal forms:
///
/// | family               | equation                          |
/// |----------------------|-----------------------------------|
/// | `Central`            | `a x² + b y² = 1`                 |
/// | `Parabola`           | `a x² + (b+1) y² − 2y = b − 1`    |
/// | `SemiHyperbola`      | `a x² + 2b y² − 2y = 0`, `|b| < 1`|
/// | `OsculatingParabola` | `(1 − x² − y²) + 2a y(x+1) = 0`, `a > 0` |
///
/// A central conic keeps the caller's axis order; [`ConicSpec::canonical`]
/// swaps to `a ≤ b` for classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConicSpec {
    Central { a: f64, b: f64 },
    Parabola { a: f64, b: f64 },
    SemiHyperbola { a: f64, b: f64 },
    OsculatingParabola { a: f64 },
}

impl ConicSpec {
    /// Build from a family tag; `b` is ignored for the osculating parabola.
    pub fn from_family(family: Family, a: f64, b: f64) -> Self {
        match family {
            Family::Central => ConicSpec::Central { a, b },
            Family::Parabola => ConicSpec::Parabola { a, b },
            Family::SemiHyperbola => ConicSpec::SemiHyperbola { a, b },
            Family::OsculatingParabola => ConicSpec::OsculatingParabola { a },
        }
    }

    pub fn family(&self) -> Family {
        match self {
            ConicSpec::Central { .. } => Family::Central,
            ConicSpec::Parabola { .. } => Family::Parabola,
            ConicSpec::SemiHyperbola { .. } => Family::SemiHyperbola,
            ConicSpec::OsculatingParabola { .. } => Family::OsculatingParabola,
        }
    }

    pub fn a(&self) -> f64 {
        match *self {
            ConicSpec::Central { a, .. }
            | ConicSpec::Parabola { a, .. }
            | ConicSpec::SemiHyperbola { a, .. }
            | ConicSpec::OsculatingParabola { a } => a,
        }
    }

    pub fn b(&self) -> Option<f64> {
        match *self {
            ConicSpec::Central { b, .. }
            | ConicSpec::Parabola { b, .. }
            | ConicSpec::SemiHyperbola { b, .. } => Some(b),
            ConicSpec::OsculatingParabola { .. } => None,
        }
    }

    /// Central conics with `a > b` are swapped (the `x ↔ y` exchange);
    /// other families are returned unchanged.
    pub fn canonical(&self) -> Self {
        match *self {
            ConicSpec::Central { a, b } if a > b => ConicSpec::Central { a: b, b: a },
            other => other,
        }
    }

    /// Check the family's parameter domain.
    pub fn validate(&self) -> Result<()> {
        let finite = self.a().is_finite() && self.b().is_none_or(f64::is_finite);
        if !finite {
            return Err(Error::InvalidParameters("parameters must be finite"));
        }
        match *self {
            ConicSpec::SemiHyperbola { a, b } => {
                if a == 0.0 {
                    Err(Error::InvalidParameters("semi-hyperbola needs a != 0"))
                } else if b.abs() >= 1.0 {
                    Err(Error::InvalidParameters("semi-hyperbola needs |b| < 1"))
                } else {
                    Ok(())
                }
            }
            ConicSpec::OsculatingParabola { a } if a <= 0.0 => {
                Err(Error::InvalidParameters("osculating parabola needs a > 0"))
            }
            _ => Ok(()),
        }
    }

    /// Normal-form left side minus right side at the affine point `(x, y)`.
    /// Equal to `(x, y, 1) · point_matrix · (x, y, 1)ᵀ`.
    pub fn residual_at(&self, x: f64, y: f64) -> f64 {
        match *self {
            ConicSpec::Central { a, b } => a * x * x + b * y * y - 1.0,
            ConicSpec::Parabola { a, b } => a * x * x + (b + 1.0) * y * y - 2.0 * y - (b - 1.0),
            ConicSpec::SemiHyperbola { a, b } => a * x * x + 2.0 * b * y * y - 2.0 * y,
            ConicSpec::OsculatingParabola { a } => (1.0 - x * x - y * y) + 2.0 * a * y * (x + 1.0),
        }
    }
}

impl fmt::Display for ConicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b() {
            Some(b) => write!(f, "{}(a={}, b={})", self.family(), self.a(), b),
            None => write!(f, "{}(a={})", self.family(), self.a()),
        }
    }
}

/// Named conic classes. `Display` yields the variant name verbatim; the CLI
/// and golden files rely on that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicClass {
    AbsoluteConic,
    Circle,
    CircleEnclosingAbsolute,
    Hypercycle,
    HypercycleEnclosingAbsolute,
    HypercycleExcludingAbsolute,
    ConcaveHyperbola,
    ConvexHyperbola,
    HyperbolaExcludingAbsolute,
    Ellipse,
    EllipseEnclosingAbsolute,
    Empty,
    Horocycle,
    HorocycleEnclosingAbsolute,
    EllipticParabola,
    ParabolaEnclosingAbsolute,
    TwoSidedParabola,
    ConcaveHyperbolicParabola,
    ConvexHyperbolicParabola,
    ParabolaExcludingAbsolute,
    SemiHyperbola,
    OsculatingParabola,
}

impl ConicClass {
    pub const ALL: [ConicClass; 22] = [
        ConicClass::AbsoluteConic,
        ConicClass::Circle,
        ConicClass::CircleEnclosingAbsolute,
        ConicClass::Hypercycle,
        ConicClass::HypercycleEnclosingAbsolute,
        ConicClass::HypercycleExcludingAbsolute,
        ConicClass::ConcaveHyperbola,
        ConicClass::ConvexHyperbola,
        ConicClass::HyperbolaExcludingAbsolute,
        ConicClass::Ellipse,
        ConicClass::EllipseEnclosingAbsolute,
        ConicClass::Empty,
        ConicClass::Horocycle,
        ConicClass::HorocycleEnclosingAbsolute,
        ConicClass::EllipticParabola,
        ConicClass::ParabolaEnclosingAbsolute,
        ConicClass::TwoSidedParabola,
        ConicClass::ConcaveHyperbolicParabola,
        ConicClass::ConvexHyperbolicParabola,
        ConicClass::ParabolaExcludingAbsolute,
        ConicClass::SemiHyperbola,
        ConicClass::OsculatingParabola,
    ];

    pub fn family(self) -> Family {
        use ConicClass::*;
        match self {
            AbsoluteConic
            | Circle
            | CircleEnclosingAbsolute
            | Hypercycle
            | HypercycleEnclosingAbsolute
            | HypercycleExcludingAbsolute
            | ConcaveHyperbola
            | ConvexHyperbola
            | HyperbolaExcludingAbsolute
            | Ellipse
            | EllipseEnclosingAbsolute
            | Empty => Family::Central,
            Horocycle
            | HorocycleEnclosingAbsolute
            | EllipticParabola
            | ParabolaEnclosingAbsolute
            | TwoSidedParabola
            | ConcaveHyperbolicParabola
            | ConvexHyperbolicParabola
            | ParabolaExcludingAbsolute => Family::Parabola,
            SemiHyperbola => Family::SemiHyperbola,
            OsculatingParabola => Family::OsculatingParabola,
        }
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn unclassifiable(spec: &ConicSpec) -> Error {
    Error::UnclassifiableParameters {
        family: spec.family().name(),
        a: spec.a(),
        b: spec.b().unwrap_or(f64::NAN),
    }
}

/// Look up the class of a conic in its family's inequality table.
///
/// Parameter combinations that the tables do not list (for example a
/// central conic with `a = 0 < b`, or a parabola with `a·b = 0`) are
/// reported as [`Error::UnclassifiableParameters`].
pub fn classify(spec: &ConicSpec) -> Result<ConicClass> {
    use ConicClass::*;
    let spec = spec.canonical();
    if !(spec.a().is_finite() && spec.b().is_none_or(f64::is_finite)) {
        return Err(unclassifiable(&spec));
    }
    let class = match spec {
        ConicSpec::Central { a, b } => {
            if a == 1.0 && b == 1.0 {
                AbsoluteConic
            } else if b <= 0.0 {
                // a ≤ b ≤ 0; checked before the circle rows so that a = b < 0
                // lands here rather than in "a = b < 1".
                Empty
            } else if a == b {
                if a > 1.0 {
                    Circle
                } else {
                    CircleEnclosingAbsolute
                }
            } else if a == 0.0 {
                return Err(unclassifiable(&spec));
            } else if b == 1.0 {
                if a > 0.0 {
                    HypercycleEnclosingAbsolute
                } else {
                    HypercycleExcludingAbsolute
                }
            } else if a == 1.0 {
                Hypercycle
            } else if b > 1.0 {
                if a < 0.0 {
                    ConvexHyperbola
                } else if a < 1.0 {
                    ConcaveHyperbola
                } else {
                    Ellipse
                }
            } else if a < 0.0 {
                HyperbolaExcludingAbsolute
            } else {
                EllipseEnclosingAbsolute
            }
        }
        ConicSpec::Parabola { a, b } => {
            if a == 0.0 || b == 0.0 {
                return Err(unclassifiable(&spec));
            }
            match (a > 0.0, b > 0.0) {
                _ if a == b && a > 0.0 => Horocycle,
                _ if a == b => HorocycleEnclosingAbsolute,
                (true, true) if b < a => EllipticParabola,
                (true, true) => ConcaveHyperbolicParabola,
                (false, false) if b < a => ParabolaEnclosingAbsolute,
                (false, false) => TwoSidedParabola,
                (false, true) => ConvexHyperbolicParabola,
                (true, false) => ParabolaExcludingAbsolute,
            }
        }
        ConicSpec::SemiHyperbola { .. } => {
            spec.validate().map_err(|_| unclassifiable(&spec))?;
            SemiHyperbola
        }
        ConicSpec::OsculatingParabola { .. } => {
            spec.validate().map_err(|_| unclassifiable(&spec))?;
            OsculatingParabola
        }
    };
    Ok(class)
}

/// The dual conic under the absolute polarity, expressed in the same normal
/// form (canonicalized for central conics).
pub fn dual(spec: &ConicSpec) -> Result<ConicSpec> {
    let out = match *spec {
        ConicSpec::Central { a, b } => {
            if a == 0.0 || b == 0.0 {
                return Err(Error::DivisionByZeroParameter);
            }
            ConicSpec::Central {
                a: 1.0 / a,
                b: 1.0 / b,
            }
            .canonical()
        }
        ConicSpec::Parabola { a, b } => {
            if a == 0.0 {
                return Err(Error::DivisionByZeroParameter);
            }
            ConicSpec::Parabola {
                a: -b * b / a,
                b: -b,
            }
        }
        ConicSpec::SemiHyperbola { a, b } => {
            if a == 0.0 {
                return Err(Error::DivisionByZeroParameter);
            }
            ConicSpec::SemiHyperbola { a: 1.0 / a, b: -b }
        }
        // self-dual up to a reflection
        ConicSpec::OsculatingParabola { a } => ConicSpec::OsculatingParabola { a },
    };
    Ok(out)
}

/// Point form `a` of a conic together with its line form `A = a⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicMatrices {
    pub point_matrix: Matrix3<f64>,
    pub line_matrix: Matrix3<f64>,
}

impl ConicMatrices {
    pub fn from_point_matrix(point_matrix: Matrix3<f64>) -> Result<Self> {
        let scale: f64 = point_matrix.row_iter().map(|r| r.norm()).product();
        let det = point_matrix.determinant();
        if !det.is_finite() || det.abs() <= EPS_SIGN * scale {
            return Err(Error::SingularConic);
        }
        let line_matrix = point_matrix.try_inverse().ok_or(Error::SingularConic)?;
        Ok(Self {
            point_matrix,
            line_matrix,
        })
    }

    /// `xᵀ a x`.
    pub fn point_form(&self, x: &HomPoint) -> f64 {
        let v = Vector3::from(*x.as_array());
        v.dot(&(self.point_matrix * v))
    }

    /// `u A uᵀ`.
    pub fn line_form(&self, u: &[f64; 3]) -> f64 {
        let v = Vector3::from(*u);
        v.dot(&(self.line_matrix * v))
    }
}

/// Homogenized point matrix of the normal form, and its inverse.
pub fn matrices(spec: &ConicSpec) -> Result<ConicMatrices> {
    let m = match *spec {
        ConicSpec::Central { a, b } => Matrix3::from_diagonal(&Vector3::new(a, b, -1.0)),
        ConicSpec::Parabola { a, b } => {
            Matrix3::new(a, 0.0, 0.0, 0.0, b + 1.0, -1.0, 0.0, -1.0, -(b - 1.0))
        }
        ConicSpec::SemiHyperbola { a, b } => {
            Matrix3::new(a, 0.0, 0.0, 0.0, 2.0 * b, -1.0, 0.0, -1.0, 0.0)
        }
        ConicSpec::OsculatingParabola { a } => Matrix3::new(-1.0, a, 0.0, a, -1.0, a, 0.0, a, 1.0),
    };
    ConicMatrices::from_point_matrix(m)
}

/// Signed normal-form residual at an affine point; zero on the conic.
pub fn conic_residual(spec: &ConicSpec, p: &HomPoint) -> Result<f64> {
    let (x, y) = p.to_affine().ok_or(Error::IdealPoint)?;
    Ok(spec.residual_at(x, y))
}
