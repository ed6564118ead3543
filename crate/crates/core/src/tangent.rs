//! Tangent lines from an external point to a conic.
//!
//! Each family has a closed-form solution in terms of the affine query point
//! `(x, y)`; lines come out as `(u₁, u₂, 1)`. The closed forms are singular on
//! the symmetry axes, so [`tangents`] falls back to [`tangents_generic`],
//! which intersects the pencil of lines through the point with the line
//! conic and solves the resulting quadratic.

use nalgebra::Vector3;

use crate::conic::{matrices, ConicMatrices, ConicSpec};
use crate::error::{Error, Result};
use crate::projective::{dot, HomLine, HomPoint};

/// Relative size below which a closed-form denominator counts as zero.
pub const DENOM_GUARD: f64 = 1e-10;
/// Relative band below zero in which a discriminant is clamped to zero.
pub const DISCRIMINANT_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TangentRoute {
    ClosedForm,
    Generic,
}

/// Which transcription of a closed-form tangent formula to evaluate.
///
/// `SignFlipped` flips one sign in the second line coordinates: for the
/// parabola `u₂` and `v₂` trade root signs, for the semi-hyperbola the root
/// in `u₂`, `v₂` uses `by + 1` instead of `by − 1`. Only `Tangent` satisfies
/// tangency; the flipped forms are kept to show that they do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FormulaVariant {
    #[default]
    Tangent,
    SignFlipped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentPair {
    pub u: HomLine,
    pub v: HomLine,
    /// The point lies on the conic and both tangents coincide.
    pub coincident: bool,
    pub route: TangentRoute,
}

impl TangentPair {
    pub fn lines(&self) -> [HomLine; 2] {
        [self.u, self.v]
    }

    /// Largest `|u·P|` over both lines.
    pub fn incidence_residual(&self, p: &HomPoint) -> f64 {
        self.lines()
            .iter()
            .map(|l| l.apply(p).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|u A uᵀ|` over both lines.
    pub fn tangency_residual(&self, m: &ConicMatrices) -> f64 {
        self.lines()
            .iter()
            .map(|l| m.line_form(l.as_array()).abs())
            .fold(0.0, f64::max)
    }

    /// Whether both pairs describe the same two lines (in either order).
    pub fn same_lines(&self, other: &TangentPair, tol: f64) -> bool {
        (self.u.same_as(&other.u, tol) && self.v.same_as(&other.v, tol))
            || (self.u.same_as(&other.v, tol) && self.v.same_as(&other.u, tol))
    }
}

fn guard(den: f64, scale: f64) -> Result<()> {
    if den == 0.0 || !den.is_finite() || den.abs() <= DENOM_GUARD * scale {
        Err(Error::DegenerateDenominator)
    } else {
        Ok(())
    }
}

/// Guard for a bare coordinate in a denominator, relative to the size of the
/// query point.
fn guard_coord(c: f64, x: f64, y: f64) -> Result<()> {
    guard(c, 1.0 + x.abs() + y.abs())
}

/// `√D` after clamping a slightly negative `D` to zero.
fn root(d: f64, scale: f64) -> Result<f64> {
    if d.is_nan() {
        return Err(Error::NotExternalPoint);
    }
    if d >= 0.0 {
        Ok(d.sqrt())
    } else if d >= -DISCRIMINANT_CLAMP * scale {
        Ok(0.0)
    } else {
        Err(Error::NotExternalPoint)
    }
}

fn closed_pair(u: (f64, f64), v: (f64, f64), s: f64) -> Result<TangentPair> {
    let mk =
        |(c1, c2): (f64, f64)| HomLine::try_new(c1, c2, 1.0).ok_or(Error::DegenerateDenominator);
    Ok(TangentPair {
        u: mk(u)?,
        v: mk(v)?,
        coincident: s == 0.0,
        route: TangentRoute::ClosedForm,
    })
}

/// Central conic `a x² + b y² = 1`.
pub fn tangents_central(a: f64, b: f64, x: f64, y: f64) -> Result<TangentPair> {
    let den = a * x * x + b * y * y;
    let den_scale = a.abs() * x * x + b.abs() * y * y;
    guard_coord(y, x, y)?;
    guard(den, den_scale)?;
    let disc = a * b * y * y * (den - 1.0);
    let s = root(disc, (a * b).abs() * y * y * (den_scale + 1.0))?;
    let line = |s: f64| (-(a * x + s) / den, (-b * y * y + x * s) / (y * den));
    closed_pair(line(s), line(-s), s)
}

/// Parabola `a x² + (b+1) y² − 2y = b − 1`.
pub fn tangents_parabola(a: f64, b: f64, x: f64, y: f64) -> Result<TangentPair> {
    tangents_parabola_variant(a, b, x, y, FormulaVariant::Tangent)
}

pub fn tangents_parabola_variant(
    a: f64,
    b: f64,
    x: f64,
    y: f64,
    variant: FormulaVariant,
) -> Result<TangentPair> {
    let b2 = b * b;
    let d1 = a * (b - 1.0) * x * x * x + b2 * x * y * y;
    let d2 = a * (b - 1.0) * x * x + b2 * y * y;
    let d2_scale = (a * (b - 1.0)).abs() * x * x + b2 * y * y;
    guard_coord(x, x, y)?;
    guard(d2, d2_scale)?;
    guard(d1, x.abs() * d2_scale)?;
    let inner = a * x * x + b * (y * y - 1.0) + (y - 1.0) * (y - 1.0);
    let inner_scale = a.abs() * x * x + b.abs() * (y * y + 1.0) + (y.abs() + 1.0).powi(2);
    let s = root(a * b2 * x * x * inner, a.abs() * b2 * x * x * inner_scale)?;
    let u2_sign = match variant {
        FormulaVariant::Tangent => 1.0,
        FormulaVariant::SignFlipped => -1.0,
    };
    let line = |s: f64| {
        (
            -(a * x * x * (b + y - 1.0) + y * s) / d1,
            (a * x * x - b2 * y + u2_sign * s) / d2,
        )
    };
    closed_pair(line(s), line(-s), s)
}

/// Semi-hyperbola `a x² + 2b y² − 2y = 0`.
pub fn tangents_semi_hyperbola(a: f64, b: f64, x: f64, y: f64) -> Result<TangentPair> {
    tangents_semi_hyperbola_variant(a, b, x, y, FormulaVariant::Tangent)
}

pub fn tangents_semi_hyperbola_variant(
    a: f64,
    b: f64,
    x: f64,
    y: f64,
    variant: FormulaVariant,
) -> Result<TangentPair> {
    guard_coord(y, x, y)?;
    let scale = a.abs() * (a.abs() * x * x + 2.0 * y.abs() * (b.abs() * y.abs() + 1.0));
    let s1 = root(a * (a * x * x + 2.0 * y * (b * y - 1.0)), scale)?;
    let s2 = match variant {
        FormulaVariant::Tangent => s1,
        FormulaVariant::SignFlipped => root(a * (a * x * x + 2.0 * y * (b * y + 1.0)), scale)?,
    };
    let u = (-(a * x + s1) / y, (a * x * x - y + x * s2) / (y * y));
    let v = ((-a * x + s1) / y, (a * x * x - y - x * s2) / (y * y));
    closed_pair(u, v, s1)
}

/// Osculating parabola `(1 − x² − y²) + 2a y(x+1) = 0`.
pub fn tangents_osculating(a: f64, x: f64, y: f64) -> Result<TangentPair> {
    let q = x * x + y * y - 2.0 * a * x * y + a * a * y * y;
    let q_scale = x * x + y * y + 2.0 * (a * x * y).abs() + a * a * y * y;
    guard_coord(y, x, y)?;
    guard(q, q_scale)?;
    let inner = x * x + y * y - 1.0 - 2.0 * a * (x + 1.0) * y;
    let inner_scale = x * x + y * y + 1.0 + 2.0 * (a * (x.abs() + 1.0) * y).abs();
    let s = root(y * y * inner, y * y * inner_scale)?;
    let t = y * y - a * x * (x + 1.0) * y + a * a * (x + 1.0) * y * y;
    let line = |s: f64| {
        (
            (-(1.0 + a * y) * (x - a * y) + s) / q,
            -(t + x * s) / (y * q),
        )
    };
    closed_pair(line(s), line(-s), s)
}

/// Root-finding oracle: tangents from `p` to the conic with line form
/// `m.line_matrix`, by solving the quadratic on the pencil through `p`.
pub fn tangents_generic(m: &ConicMatrices, p: &HomPoint) -> Result<TangentPair> {
    let pv = Vector3::from(*p.as_array());
    // Two independent lines through p: p × eᵢ for the two axes least aligned
    // with p.
    let big = (0..3)
        .max_by(|&i, &j| pv[i].abs().total_cmp(&pv[j].abs()))
        .unwrap_or(2);
    let mut axes = (0..3).filter(|&i| i != big);
    let (i, j) = (axes.next().unwrap(), axes.next().unwrap());
    let l1 = pv.cross(&Vector3::ith(i, 1.0));
    let l2 = pv.cross(&Vector3::ith(j, 1.0));

    let a = m.line_matrix;
    let alpha = l1.dot(&(a * l1));
    let beta = l1.dot(&(a * l2));
    let gamma = l2.dot(&(a * l2));
    let delta = beta * beta - alpha * gamma;
    // Δ carries rounding of order ‖A‖²‖l‖⁴ even when α, γ cancel to nearly zero.
    let norm = a.abs().max() * l1.norm_squared().max(l2.norm_squared());
    let scale = norm * norm;

    if delta < 0.0 && delta < -DISCRIMINANT_CLAMP * scale {
        return Err(Error::NoRealTangent);
    }

    let finish = |l: Vector3<f64>| -> Result<HomLine> {
        HomLine::try_new(l[0], l[1], l[2])
            .map(|h| h.normalized(DENOM_GUARD))
            .ok_or(Error::NoRealTangent)
    };

    if delta <= DISCRIMINANT_CLAMP * scale {
        // On the conic: the single tangent is the polar of p.
        let polar = m.point_matrix * pv;
        let t = finish(polar)?;
        return Ok(TangentPair {
            u: t,
            v: t,
            coincident: true,
            route: TangentRoute::Generic,
        });
    }

    // Roots (s : t) of α s² + 2β s t + γ t² = 0, in cancellation-free form.
    let sq = delta.sqrt();
    let q = -(beta + beta.signum() * sq);
    let (r1, r2) = if q != 0.0 {
        ((q, alpha), (gamma, q))
    } else {
        // β = 0 and αγ < 0
        let r = (-gamma / alpha).sqrt();
        ((r, 1.0), (-r, 1.0))
    };
    let line = |(s, t): (f64, f64)| l1 * s + l2 * t;
    Ok(TangentPair {
        u: finish(line(r1))?,
        v: finish(line(r2))?,
        coincident: false,
        route: TangentRoute::Generic,
    })
}

/// Closed-form tangents for the conic's family, falling back to the generic
/// solver where the closed form has a vanishing denominator.
pub fn tangents(spec: &ConicSpec, x: f64, y: f64) -> Result<TangentPair> {
    let closed = match *spec {
        ConicSpec::Central { a, b } => tangents_central(a, b, x, y),
        ConicSpec::Parabola { a, b } => tangents_parabola(a, b, x, y),
        ConicSpec::SemiHyperbola { a, b } => tangents_semi_hyperbola(a, b, x, y),
        ConicSpec::OsculatingParabola { a } => tangents_osculating(a, x, y),
    };
    match closed {
        Err(Error::DegenerateDenominator) => {
            let m = matrices(spec)?;
            tangents_generic(&m, &HomPoint::affine(x, y)).map_err(|e| match e {
                Error::NoRealTangent => Error::NotExternalPoint,
                other => other,
            })
        }
        other => other,
    }
}

/// Incidence of a line with an affine point, `u₁x + u₂y + u₃`.
pub fn incidence(u: &HomLine, x: f64, y: f64) -> f64 {
    dot(u.as_array(), &[x, y, 1.0])
}
