//! Compound isoptic curves.
//!
//! A point `P` outside a conic sees it under the generalized angle of the
//! two tangents through `P`. The closed-form quotients below express
//! `⟨u,v⟩² / |⟨u,u⟩⟨v,v⟩|` directly in `(x, y)`; the right-hand side is
//! `cosh²α`, `cos²α` or `sinh²α` depending on the region `P` lies in.
//!
//! The quotients are generic over [`num_traits::Num`] so they can be
//! evaluated in exact rational arithmetic as well as in `f64`.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Rem, Sub};

use num_traits::{Num, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angle::{generalized_angle, AngleKind, GeneralizedAngle};
use crate::conic::ConicSpec;
use crate::error::{Error, Result};
use crate::projective::{dot, LineClass};
use crate::tangent::{tangents, TangentPair, TangentRoute};

/// Relative size below which the quotient denominator counts as zero.
pub const SINGULAR_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsopticBranch {
    CoshBranch,
    CosBranch,
    SinhBranch,
    Invalid,
}

impl IsopticBranch {
    pub const VALID: [IsopticBranch; 3] = [
        IsopticBranch::CoshBranch,
        IsopticBranch::CosBranch,
        IsopticBranch::SinhBranch,
    ];

    /// `cosh²α`, `cos²α` or `sinh²α`.
    pub fn rhs(self, alpha: f64) -> Option<f64> {
        match self {
            IsopticBranch::CoshBranch => Some(alpha.cosh().powi(2)),
            IsopticBranch::CosBranch => Some(alpha.cos().powi(2)),
            IsopticBranch::SinhBranch => Some(alpha.sinh().powi(2)),
            IsopticBranch::Invalid => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IsopticBranch::CoshBranch => "CoshBranch",
            IsopticBranch::CosBranch => "CosBranch",
            IsopticBranch::SinhBranch => "SinhBranch",
            IsopticBranch::Invalid => "Invalid",
        }
    }
}

impl std::fmt::Display for IsopticBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A conic, a viewing angle and a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsopticQuery {
    pub conic: ConicSpec,
    pub alpha: f64,
    pub point: (f64, f64),
}

impl IsopticQuery {
    pub fn new(conic: ConicSpec, alpha: f64, point: (f64, f64)) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            conic,
            alpha,
            point,
        })
    }
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < PI {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// Numerator and signed (pre-absolute-value) denominator of an isoptic
/// quotient. The numerator is always the square of `root`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientParts<T> {
    pub root: T,
    pub numerator: T,
    pub denominator: T,
}

impl<T: Num + Copy> QuotientParts<T> {
    fn new(root: T, denominator: T) -> Self {
        Self {
            root,
            numerator: root * root,
            denominator,
        }
    }
}

fn two<T: Num + Copy>() -> T {
    T::one() + T::one()
}

fn sq<T: Num + Copy>(t: T) -> T {
    t * t
}

/// Central conic `a x² + b y² = 1`.
pub fn central_parts<T: Num + Copy>(a: T, b: T, x: T, y: T) -> QuotientParts<T> {
    let (one, two) = (T::one(), two::<T>());
    let (x2, y2) = (x * x, y * y);
    let base = a * ((b + one) * x2 - one) + (a + one) * b * y2 - b;
    let den = sq(a - one) * sq(b) * sq(y2)
        + two * (a - one) * b * (b + a * ((b - one) * x2 - one)) * y2
        + sq(a * (b - one) * x2 + a - b);
    QuotientParts::new(base, den)
}

/// Parabola `a x² + (b+1) y² − 2y = b − 1`.
pub fn parabola_parts<T: Num + Copy>(a: T, b: T, x: T, y: T) -> QuotientParts<T> {
    let (one, two) = (T::one(), two::<T>());
    let (x2, y2) = (x * x, y * y);
    let b2 = b * b;
    let base = a * (b * (two * x2 + y2 - one) + sq(y - one)) + b2 * (y2 - one);
    let bracket = sq(y + one) * sq(b2) - two * a * (two * x2 + y2 + b * sq(y + one) - one) * b2
        + sq(a) * (sq(y - one) + b2 * sq(y + one) + two * b * (two * x2 + y2 - one));
    QuotientParts::new(base, sq(y - one) * bracket)
}

/// Semi-hyperbola `a x² + 2b y² − 2y = 0`.
pub fn semi_hyperbola_parts<T: Num + Copy>(a: T, b: T, x: T, y: T) -> QuotientParts<T> {
    let (one, two) = (T::one(), two::<T>());
    let four = two * two;
    let (x2, y2) = (x * x, y * y);
    let base = two * a * (b * (x2 + y2) - y) + y2 - one;
    let den = sq(y2) + four * sq(a) * (x2 + y2) * ((sq(b) - one) * x2 + sq(b * y - one))
        - four * a * (y - (two * x2 + y2) * y + b * (sq(y2) + (x2 - one) * y2 + x2))
        - two * y2
        + one;
    QuotientParts::new(base, den)
}

/// Osculating parabola `(1 − x² − y²) + 2a y(x+1) = 0`.
pub fn osculating_parts<T: Num + Copy>(a: T, x: T, y: T) -> QuotientParts<T> {
    let (one, two) = (T::one(), two::<T>());
    let four = two * two;
    let xp = x + one;
    let base = T::zero() - two * (x * x + y * y - one) + two * a * xp * y + sq(a) * sq(xp);
    let den = sq(a) * xp * xp * xp * (four * (one - x) + four * a * y + sq(a) * xp);
    QuotientParts::new(base, den)
}

pub fn quotient_parts(conic: &ConicSpec, x: f64, y: f64) -> QuotientParts<f64> {
    match *conic {
        ConicSpec::Central { a, b } => central_parts(a, b, x, y),
        ConicSpec::Parabola { a, b } => parabola_parts(a, b, x, y),
        ConicSpec::SemiHyperbola { a, b } => semi_hyperbola_parts(a, b, x, y),
        ConicSpec::OsculatingParabola { a } => osculating_parts(a, x, y),
    }
}

/// Upper bound for the sum of absolute values of the terms of an expression:
/// every operation is replaced by its effect on magnitudes. Used to put the
/// quotient denominator on a relative scale.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Magnitude(f64);

impl Add for Magnitude {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Magnitude(self.0 + o.0)
    }
}
impl Sub for Magnitude {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: Self) -> Self {
        Magnitude(self.0 + o.0)
    }
}
impl Mul for Magnitude {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Magnitude(self.0 * o.0)
    }
}
impl Div for Magnitude {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Magnitude(self.0 / o.0)
    }
}
impl Rem for Magnitude {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        Magnitude(self.0 % o.0)
    }
}
impl Zero for Magnitude {
    fn zero() -> Self {
        Magnitude(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
}
impl One for Magnitude {
    fn one() -> Self {
        Magnitude(1.0)
    }
}
impl Num for Magnitude {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(|v| Magnitude(v.abs()))
    }
}

/// Term magnitude of the quotient denominator at `(x, y)`.
pub fn denominator_scale(conic: &ConicSpec, x: f64, y: f64) -> f64 {
    let m = |v: f64| Magnitude(v.abs());
    let parts = match *conic {
        ConicSpec::Central { a, b } => central_parts(m(a), m(b), m(x), m(y)),
        ConicSpec::Parabola { a, b } => parabola_parts(m(a), m(b), m(x), m(y)),
        ConicSpec::SemiHyperbola { a, b } => semi_hyperbola_parts(m(a), m(b), m(x), m(y)),
        ConicSpec::OsculatingParabola { a } => osculating_parts(m(a), m(x), m(y)),
    };
    parts.denominator.0
}

/// Left side of the compound isoptic equation: squared numerator over the
/// absolute denominator.
pub fn isoptic_lhs(conic: &ConicSpec, x: f64, y: f64) -> Result<f64> {
    let (parts, den) = checked_parts(conic, x, y)?;
    Ok(parts.numerator / den)
}

fn checked_parts(conic: &ConicSpec, x: f64, y: f64) -> Result<(QuotientParts<f64>, f64)> {
    let parts = quotient_parts(conic, x, y);
    let den = parts.denominator.abs();
    if den == 0.0 || !den.is_finite() || den <= SINGULAR_TOL * denominator_scale(conic, x, y) {
        return Err(Error::SingularDenominator);
    }
    Ok((parts, den))
}

/// Region of the compound isoptic containing `(x, y)`, decided from the
/// classes of the two tangents and the position relative to the model disk.
pub fn classify_branch(conic: &ConicSpec, x: f64, y: f64) -> IsopticBranch {
    match tangents(conic, x, y) {
        Ok(pair) => branch_of_pair(&pair, x, y),
        Err(_) => IsopticBranch::Invalid,
    }
}

/// Branch predicate on an already computed tangent pair. The sign of
/// `⟨u,u⟩⟨v,v⟩` equals that of `(1 − u₁² − u₂²)(1 − v₁² − v₂²)` for lines
/// scaled to `u₃ = 1`, and is independent of the scaling.
pub fn branch_of_pair(pair: &TangentPair, x: f64, y: f64) -> IsopticBranch {
    let (cu, cv) = (pair.u.classify(), pair.v.classify());
    if cu == LineClass::Boundary || cv == LineClass::Boundary {
        return IsopticBranch::Invalid;
    }
    let product_positive = cu == cv;
    let r2 = x * x + y * y;
    if product_positive && r2 > 1.0 {
        IsopticBranch::CoshBranch
    } else if r2 < 1.0 {
        IsopticBranch::CosBranch
    } else if !product_positive {
        IsopticBranch::SinhBranch
    } else {
        IsopticBranch::Invalid
    }
}

/// Classes of the two tangents through `(x, y)`, e.g. to spot points where
/// both tangents are outer lines (folded into the cosh branch).
pub fn tangent_classes(conic: &ConicSpec, x: f64, y: f64) -> Result<[LineClass; 2]> {
    let pair = tangents(conic, x, y)?;
    Ok([pair.u.classify(), pair.v.classify()])
}

/// `lhs − rhs` on the branch containing the query point.
pub fn isoptic_residual(query: &IsopticQuery) -> Result<f64> {
    check_alpha(query.alpha)?;
    let (x, y) = query.point;
    let branch = classify_branch(&query.conic, x, y);
    let rhs = branch.rhs(query.alpha).ok_or(Error::InvalidRegion)?;
    Ok(isoptic_lhs(&query.conic, x, y)? - rhs)
}

/// Residual and branch together, without re-solving for tangents.
pub fn residual_with_branch(
    conic: &ConicSpec,
    alpha: f64,
    x: f64,
    y: f64,
) -> Result<(IsopticBranch, f64)> {
    let branch = classify_branch(conic, x, y);
    let rhs = branch.rhs(alpha).ok_or(Error::InvalidRegion)?;
    Ok((branch, isoptic_lhs(conic, x, y)? - rhs))
}

/// The generalized angle under which the conic is seen from `(x, y)`,
/// computed from the tangent pair rather than from the closed-form quotient.
pub fn isoptic_angle_direct(conic: &ConicSpec, x: f64, y: f64) -> Result<GeneralizedAngle> {
    let pair = tangents(conic, x, y).map_err(|e| match e {
        Error::NoRealTangent => Error::NotExternalPoint,
        other => other,
    })?;
    let angle = generalized_angle(&pair.u, &pair.v);
    if angle.kind == AngleKind::Undefined {
        return Err(Error::UndefinedAngle);
    }
    Ok(angle)
}

/// `|lhs − f²(direct angle)|`, with `f` chosen by the branch.
pub fn oracle_consistency(conic: &ConicSpec, x: f64, y: f64) -> Result<f64> {
    let branch = classify_branch(conic, x, y);
    if branch == IsopticBranch::Invalid {
        return Err(Error::InvalidRegion);
    }
    let lhs = isoptic_lhs(conic, x, y)?;
    let angle = isoptic_angle_direct(conic, x, y)?;
    if angle.squared_trig().is_none() {
        return Err(Error::UndefinedAngle);
    }
    let f = match branch {
        IsopticBranch::CoshBranch => angle.value.cosh(),
        IsopticBranch::CosBranch => angle.value.cos(),
        IsopticBranch::SinhBranch => angle.value.sinh(),
        IsopticBranch::Invalid => unreachable!(),
    };
    Ok((lhs - f * f).abs())
}

/// Axis-aligned rectangle in model coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub const fn square(half: f64) -> Self {
        Self {
            xmin: -half,
            xmax: half,
            ymin: -half,
            ymax: half,
        }
    }

    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let ok =
            [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmin < xmax && ymin < ymax;
        if ok {
            Ok(Self {
                xmin,
                xmax,
                ymin,
                ymax,
            })
        } else {
            Err(Error::PreconditionViolated(
                "window needs xmin < xmax and ymin < ymax",
            ))
        }
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }
}

/// Region used to draw well-conditioned sample points: inside the window,
/// outside the conic and at least `margin` (in relative terms) away from the
/// model boundary, the symmetry axes, boundary tangents and singular loci of
/// the quotient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingDomain {
    pub window: Window,
    pub margin: f64,
}

impl Default for SamplingDomain {
    fn default() -> Self {
        Self {
            window: Window::square(3.0),
            margin: 1e-3,
        }
    }
}

impl SamplingDomain {
    pub fn admits(&self, conic: &ConicSpec, x: f64, y: f64) -> bool {
        let m = self.margin;
        if !self.window.contains(x, y) || x.abs() <= m || y.abs() <= m {
            return false;
        }
        if (x * x + y * y - 1.0).abs() <= m || conic.residual_at(x, y).abs() <= m {
            return false;
        }
        let Ok(pair) = tangents(conic, x, y) else {
            return false;
        };
        if pair.route != TangentRoute::ClosedForm || pair.coincident {
            return false;
        }
        let line_ok = |l: &[f64; 3]| {
            let n2 = dot(l, l);
            let lor = l[0] * l[0] + l[1] * l[1] - l[2] * l[2];
            (lor / n2).abs() > m && l[2].abs() > m * n2.sqrt()
        };
        if !line_ok(pair.u.as_array()) || !line_ok(pair.v.as_array()) {
            return false;
        }
        if branch_of_pair(&pair, x, y) == IsopticBranch::Invalid {
            return false;
        }
        let den = quotient_parts(conic, x, y).denominator.abs();
        den > m * denominator_scale(conic, x, y)
    }

    /// `n` admitted points drawn uniformly from the window by rejection,
    /// reproducibly from `seed`. Gives up after `1000 n` draws.
    pub fn sample(&self, conic: &ConicSpec, n: usize, seed: u64) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = self.window;
        let mut out = Vec::with_capacity(n);
        let mut draws = 0usize;
        while out.len() < n && draws < n.saturating_mul(1000) {
            draws += 1;
            let x = rng.random_range(w.xmin..w.xmax);
            let y = rng.random_range(w.ymin..w.ymax);
            if self.admits(conic, x, y) {
                out.push((x, y));
            }
        }
        out
    }
}
