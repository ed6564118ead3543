#![allow(dead_code)]

use isoptic_core::conic::{classify, ConicSpec};
use isoptic_core::figures::distinct_conics;
use isoptic_core::projective::HomLine;
use proptest::prelude::*;

/// A parameter away from zero and from the `|t| = 1` boundaries.
pub fn param() -> impl Strategy<Value = f64> {
    prop_oneof![-3.0..-0.05, 0.05..3.0f64]
        .prop_filter("near 1", |t: &f64| (t.abs() - 1.0).abs() > 0.02)
}

/// Any classifiable conic in normal form.
pub fn conic() -> impl Strategy<Value = ConicSpec> {
    prop_oneof![
        (param(), param()).prop_map(|(a, b)| ConicSpec::Central { a, b }),
        (param(), param()).prop_map(|(a, b)| ConicSpec::Parabola { a, b }),
        (param(), -0.95..0.95f64).prop_map(|(a, b)| ConicSpec::SemiHyperbola { a, b }),
        (0.05..3.0f64).prop_map(|a| ConicSpec::OsculatingParabola { a }),
    ]
    .prop_filter("unclassifiable", |c| classify(c).is_ok())
}

/// One of the conics of the figure catalog.
pub fn catalog_conic() -> impl Strategy<Value = ConicSpec> {
    let all: Vec<ConicSpec> = distinct_conics().into_iter().map(|f| f.conic).collect();
    proptest::sample::select(all)
}

pub fn line() -> impl Strategy<Value = HomLine> {
    [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64].prop_filter_map("zero vector", HomLine::from_array)
}

/// A line not within `1e-3` (relative) of the boundary class.
pub fn clear_line() -> impl Strategy<Value = HomLine> {
    line().prop_filter("nearly tangent to the absolute", |l| {
        let n2: f64 = l.as_array().iter().map(|c| c * c).sum();
        (l.lorentz(l) / n2).abs() > 1e-3
    })
}

pub fn point() -> impl Strategy<Value = (f64, f64)> {
    (-3.0..3.0f64, -3.0..3.0f64)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
