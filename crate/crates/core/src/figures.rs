//! Parameter sets of the reference figure configurations.

use std::f64::consts::PI;

use crate::conic::{ConicClass, ConicSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureConfig {
    /// Short identifier, e.g. `"fig1-right"`.
    pub id: &'static str,
    pub conic: ConicSpec,
    pub alpha: f64,
    pub class: ConicClass,
}

const fn central(a: f64, b: f64) -> ConicSpec {
    ConicSpec::Central { a, b }
}

const fn parabola(a: f64, b: f64) -> ConicSpec {
    ConicSpec::Parabola { a, b }
}

/// Every figure configuration. Thirteen distinct conics; the
/// semi-hyperbola and the osculating parabola appear with two angles each.
pub const FIGURES: [FigureConfig; 15] = [
    FigureConfig {
        id: "fig1-right",
        conic: central(0.3, 2.0),
        alpha: PI / 2.0,
        class: ConicClass::ConcaveHyperbola,
    },
    FigureConfig {
        id: "fig2-left",
        conic: central(0.5, -2.0),
        alpha: PI / 3.0,
        class: ConicClass::HyperbolaExcludingAbsolute,
    },
    FigureConfig {
        id: "fig2-right",
        conic: central(1.1, -1.5),
        alpha: 19.0 * PI / 36.0,
        class: ConicClass::ConvexHyperbola,
    },
    FigureConfig {
        id: "fig3-left",
        conic: central(2.0, 3.0),
        alpha: 7.0 * PI / 18.0,
        class: ConicClass::Ellipse,
    },
    FigureConfig {
        id: "fig3-right",
        conic: central(0.45, 0.8),
        alpha: PI / 2.0,
        class: ConicClass::EllipseEnclosingAbsolute,
    },
    FigureConfig {
        id: "fig4-left",
        conic: parabola(2.0, 1.5),
        alpha: PI / 3.0,
        class: ConicClass::EllipticParabola,
    },
    FigureConfig {
        id: "fig4-right",
        conic: parabola(-2.5, -5.0),
        alpha: 7.0 * PI / 18.0,
        class: ConicClass::ParabolaEnclosingAbsolute,
    },
    FigureConfig {
        id: "fig5-left",
        conic: parabola(-5.0, -2.7),
        alpha: PI / 2.0,
        class: ConicClass::TwoSidedParabola,
    },
    FigureConfig {
        id: "fig5-right",
        conic: parabola(1.0, 2.0),
        alpha: PI / 2.0,
        class: ConicClass::ConcaveHyperbolicParabola,
    },
    FigureConfig {
        id: "fig6-left",
        conic: parabola(-2.0, 1.5),
        alpha: PI / 3.0,
        class: ConicClass::ConvexHyperbolicParabola,
    },
    FigureConfig {
        id: "fig6-right",
        conic: parabola(0.8, -0.4),
        alpha: PI / 3.0,
        class: ConicClass::ParabolaExcludingAbsolute,
    },
    FigureConfig {
        id: "fig7-left",
        conic: ConicSpec::SemiHyperbola { a: 1.4, b: 0.5 },
        alpha: PI / 4.0,
        class: ConicClass::SemiHyperbola,
    },
    FigureConfig {
        id: "fig7-right",
        conic: ConicSpec::SemiHyperbola { a: 1.4, b: 0.5 },
        alpha: 8.0 * PI / 18.0,
        class: ConicClass::SemiHyperbola,
    },
    FigureConfig {
        id: "fig8-left",
        conic: ConicSpec::OsculatingParabola { a: 0.4 },
        alpha: PI / 3.0,
        class: ConicClass::OsculatingParabola,
    },
    FigureConfig {
        id: "fig8-right",
        conic: ConicSpec::OsculatingParabola { a: 0.4 },
        alpha: 2.0 * PI / 3.0,
        class: ConicClass::OsculatingParabola,
    },
];

/// The thirteen distinct conics among [`FIGURES`], in order.
pub fn distinct_conics() -> Vec<FigureConfig> {
    let mut out: Vec<FigureConfig> = Vec::new();
    for f in FIGURES {
        if !out.iter().any(|g| g.conic == f.conic) {
            out.push(f);
        }
    }
    out
}

pub fn find(id: &str) -> Option<&'static FigureConfig> {
    FIGURES.iter().find(|f| f.id == id)
}
