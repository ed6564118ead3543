//! Generalized angle between two lines of the extended hyperbolic plane.
//!
//! Proper lines meeting inside the model get an ordinary (elliptic) angle.
//! Every other configuration gets a real distance-type value. The `±` sign
//! of the textbook formulas is resolved to the principal value, so an
//! elliptic angle is reported in `[0, π/2]` and stands for the pair
//! `{α, π − α}`.

use crate::error::{Error, Result};
use crate::projective::{dot, max_sq, HomLine, LineClass, EPS_SIGN};

/// Relative tolerance for the incidence test against a boundary line's
/// contact point.
const CONTACT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleKind {
    EllipticAngle,
    DistanceType,
    Zero,
    Undefined,
    Infinite,
}

/// Which trigonometric relation produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleFormula {
    CosForm,
    CoshForm,
    SinhForm,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedAngle {
    pub kind: AngleKind,
    /// Radians for `EllipticAngle`, hyperbolic length for `DistanceType`,
    /// `0` for `Zero` and `Undefined`, `+∞` for `Infinite`.
    pub value: f64,
    pub formula: AngleFormula,
}

impl GeneralizedAngle {
    fn elliptic(cos: f64) -> Self {
        Self {
            kind: AngleKind::EllipticAngle,
            value: cos.clamp(0.0, 1.0).acos(),
            formula: AngleFormula::CosForm,
        }
    }

    fn from_cosh(cosh: f64) -> Self {
        Self {
            kind: AngleKind::DistanceType,
            value: cosh.max(1.0).acosh(),
            formula: AngleFormula::CoshForm,
        }
    }

    fn from_sinh(sinh: f64) -> Self {
        Self {
            kind: AngleKind::DistanceType,
            value: sinh.asinh(),
            formula: AngleFormula::SinhForm,
        }
    }

    fn degenerate(kind: AngleKind) -> Self {
        let value = if kind == AngleKind::Infinite {
            f64::INFINITY
        } else {
            0.0
        };
        Self {
            kind,
            value,
            formula: AngleFormula::None,
        }
    }

    /// `cos²`, `cosh²` or `sinh²` of the value, according to the formula
    /// that produced it. `None` for the degenerate kinds.
    pub fn squared_trig(&self) -> Option<f64> {
        let t = match self.formula {
            AngleFormula::CosForm => self.value.cos(),
            AngleFormula::CoshForm => self.value.cosh(),
            AngleFormula::SinhForm => self.value.sinh(),
            AngleFormula::None => return None,
        };
        Some(t * t)
    }
}

/// `⟨u,u⟩⟨v,v⟩ − ⟨u,v⟩²`.
pub fn gram(u: &HomLine, v: &HomLine) -> f64 {
    u.lorentz(u) * v.lorentz(v) - u.lorentz(v).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GramSign {
    Positive,
    Zero,
    Negative,
}

fn gram_sign(u: &HomLine, v: &HomLine) -> GramSign {
    let g = gram(u, v);
    if g.abs() <= EPS_SIGN * (u.lorentz(u) * v.lorentz(v)).abs() {
        GramSign::Zero
    } else if g > 0.0 {
        GramSign::Positive
    } else {
        GramSign::Negative
    }
}

/// `|⟨u,v⟩| / √(⟨u,u⟩⟨v,v⟩)` for proper lines meeting at a proper point.
pub fn cos_angle(u: &HomLine, v: &HomLine) -> Result<f64> {
    if u.classify() != LineClass::Proper || v.classify() != LineClass::Proper {
        return Err(Error::PreconditionViolated(
            "cos_angle needs two proper lines",
        ));
    }
    if gram_sign(u, v) != GramSign::Positive {
        return Err(Error::PreconditionViolated(
            "cos_angle needs a positive Gram determinant",
        ));
    }
    let c = u.lorentz(v).abs() / (u.lorentz(u) * v.lorentz(v)).sqrt();
    Ok(c.min(1.0))
}

/// Hyperbolic cosine of the distance-type angle, evaluated on the poles.
///
/// Valid for two proper lines with a negative Gram determinant (length of
/// the common perpendicular) and for two outer lines (distance of the poles).
pub fn cosh_angle(u: &HomLine, v: &HomLine) -> Result<f64> {
    let ok = match (u.classify(), v.classify()) {
        (LineClass::Proper, LineClass::Proper) => gram_sign(u, v) == GramSign::Negative,
        (LineClass::Outer, LineClass::Outer) => true,
        _ => false,
    };
    if !ok {
        return Err(Error::PreconditionViolated(
            "cosh_angle needs ultraparallel proper lines or two outer lines",
        ));
    }
    let (p, q) = (u.pole(), v.pole());
    let c = p.lorentz(&q).abs() / (p.lorentz(&p) * q.lorentz(&q)).sqrt();
    Ok(c.max(1.0))
}

/// Hyperbolic sine of the distance from the outer line's pole to the proper
/// line. Argument order does not matter.
pub fn sinh_angle(u: &HomLine, v: &HomLine) -> Result<f64> {
    let (proper, outer) = match (u.classify(), v.classify()) {
        (LineClass::Proper, LineClass::Outer) => (u, v),
        (LineClass::Outer, LineClass::Proper) => (v, u),
        _ => {
            return Err(Error::PreconditionViolated(
                "sinh_angle needs one proper and one outer line",
            ))
        }
    };
    let (p, q) = (proper.pole(), outer.pole());
    Ok(p.lorentz(&q).abs() / (-p.lorentz(&p) * q.lorentz(&q)).sqrt())
}

/// Does `other` pass through the contact point of the boundary line `u`?
fn through_contact(u: &HomLine, other: &HomLine) -> bool {
    let contact = u.pole();
    let scale = (max_sq(other.as_array()) * max_sq(contact.as_array())).sqrt();
    dot(other.as_array(), contact.as_array()).abs() <= CONTACT_TOL * scale
}

/// Full case analysis over the line classes. Total: degenerate
/// configurations come back as `Zero`, `Undefined` or `Infinite`.
pub fn generalized_angle(u: &HomLine, v: &HomLine) -> GeneralizedAngle {
    use LineClass::*;
    match (u.classify(), v.classify()) {
        (Proper, Proper) => match gram_sign(u, v) {
            GramSign::Positive => GeneralizedAngle::elliptic(cos_angle(u, v).unwrap_or(1.0)),
            GramSign::Negative => GeneralizedAngle::from_cosh(cosh_angle(u, v).unwrap_or(1.0)),
            GramSign::Zero => GeneralizedAngle::degenerate(AngleKind::Zero),
        },
        (Outer, Outer) => GeneralizedAngle::from_cosh(cosh_angle(u, v).unwrap_or(1.0)),
        (Proper, Outer) | (Outer, Proper) => {
            GeneralizedAngle::from_sinh(sinh_angle(u, v).unwrap_or(0.0))
        }
        (cu, cv) => {
            // At least one boundary line. With two boundary lines the test
            // runs both ways and either hit counts.
            let hit = (cu == Boundary && through_contact(u, v))
                || (cv == Boundary && through_contact(v, u));
            if hit {
                GeneralizedAngle::degenerate(AngleKind::Undefined)
            } else {
                GeneralizedAngle::degenerate(AngleKind::Infinite)
            }
        }
    }
}
