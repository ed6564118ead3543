//! Scenes of a conic, the model disk and the compound isoptic, serialized
//! as SVG or CSV. Output is deterministic for identical inputs.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::conic::ConicSpec;
use crate::contour::{
    extract_contours_refined, extract_contours_where, level_forms, polyline_length, sample_field,
    Polyline, ScalarField,
};
use crate::error::Result;
use crate::format::num;
use crate::isoptic::{
    check_alpha, classify_branch, denominator_scale, isoptic_lhs, quotient_parts, IsopticBranch,
    Window,
};

/// Side of the square SVG viewBox.
pub const VIEWBOX: f64 = 1000.0;

/// Contour vertices where `|den|` falls below this fraction of its term
/// scale are dropped. Rounding in the denominator alone shifts the left side
/// there by more than `f64::EPSILON / CONDITION_GUARD` relative, so the vertex
/// cannot be placed on the curve to useful accuracy.
pub const CONDITION_GUARD: f64 = 1e-8;

/// Whether the quotient at `(x, y)` is well enough conditioned to place a
/// contour vertex.
pub fn well_conditioned(conic: &ConicSpec, x: f64, y: f64) -> bool {
    let den = quotient_parts(conic, x, y).denominator.abs();
    den.is_finite() && den > CONDITION_GUARD * denominator_scale(conic, x, y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub window: Window,
    /// Grid nodes per axis.
    pub resolution: usize,
    /// Segments used to draw the absolute conic.
    pub circle_segments: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            window: Window::square(2.0),
            resolution: 512,
            circle_segments: 720,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchContours {
    pub branch: IsopticBranch,
    pub polylines: Vec<Polyline>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub conic: ConicSpec,
    pub alpha: f64,
    pub window: Window,
    /// Unit circle.
    pub absolute: Polyline,
    /// Zero set of the conic's normal form.
    pub conic_curve: Vec<Polyline>,
    /// One entry per valid branch, in [`IsopticBranch::VALID`] order.
    pub isoptic: Vec<BranchContours>,
}

/// Residual of `branch` at `(x, y)`, or `None` off that branch.
pub fn branch_residual(
    conic: &ConicSpec,
    alpha: f64,
    branch: IsopticBranch,
    x: f64,
    y: f64,
) -> Option<f64> {
    if classify_branch(conic, x, y) != branch {
        return None;
    }
    Some(isoptic_lhs(conic, x, y).ok()? - branch.rhs(alpha)?)
}

pub fn render_scene(conic: &ConicSpec, alpha: f64, opts: &RenderOptions) -> Result<Scene> {
    check_alpha(alpha)?;
    let n = opts.resolution;
    let w = opts.window;

    let field = sample_field(conic, alpha, w, n, n)?;
    let isoptic = IsopticBranch::VALID
        .iter()
        .map(|&branch| {
            let keep = |x: f64, y: f64| {
                classify_branch(conic, x, y) == branch && well_conditioned(conic, x, y)
            };
            let polylines = level_forms(branch, alpha)
                .into_iter()
                .flat_map(|form| {
                    let f = |x: f64, y: f64| Some(form.at(conic, x, y));
                    extract_contours_where(&field.level_field(form), &f, &keep)
                })
                .collect();
            BranchContours { branch, polylines }
        })
        .collect();

    let conic_fn = |x: f64, y: f64| Some(conic.residual_at(x, y));
    let conic_field = ScalarField::from_fn(w, n, n, conic_fn)?;
    let conic_curve = extract_contours_refined(&conic_field, &conic_fn);

    let k = opts.circle_segments.max(3);
    let absolute = (0..=k)
        .map(|i| {
            let t = TAU * (i % k) as f64 / k as f64;
            (t.cos(), t.sin())
        })
        .collect();

    Ok(Scene {
        conic: *conic,
        alpha,
        window: w,
        absolute,
        conic_curve,
        isoptic,
    })
}

impl Scene {
    pub fn isoptic_polylines(&self) -> impl Iterator<Item = (IsopticBranch, &Polyline)> {
        self.isoptic
            .iter()
            .flat_map(|b| b.polylines.iter().map(move |p| (b.branch, p)))
    }

    pub fn isoptic_vertex_count(&self) -> usize {
        self.isoptic_polylines().map(|(_, p)| p.len()).sum()
    }

    pub fn isoptic_length(&self) -> f64 {
        self.isoptic_polylines()
            .map(|(_, p)| polyline_length(p))
            .sum()
    }

    fn to_view(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let w = &self.window;
        (
            (x - w.xmin) / w.width() * VIEWBOX,
            (w.ymax - y) / w.height() * VIEWBOX,
        )
    }

    fn path_data<'a>(&self, lines: impl IntoIterator<Item = &'a Polyline>) -> String {
        let mut d = String::new();
        for line in lines {
            for (k, &p) in line.iter().enumerate() {
                let (sx, sy) = self.to_view(p);
                let cmd = if k == 0 { 'M' } else { 'L' };
                if !d.is_empty() {
                    d.push(' ');
                }
                let _ = write!(d, "{cmd}{sx:.3} {sy:.3}");
            }
        }
        d
    }

    /// SVG 1.1 document: paths only, model `y` pointing up.
    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">",
            v = VIEWBOX
        );
        let mut group = |id: &str, style: &str, d: String| {
            if !d.is_empty() {
                let _ = writeln!(
                    s,
                    "<g id=\"{id}\" fill=\"none\" {style}>\n<path d=\"{d}\"/>\n</g>"
                );
            }
        };
        for b in &self.isoptic {
            let color = match b.branch {
                IsopticBranch::CoshBranch => "#c0392b",
                IsopticBranch::CosBranch => "#2166ac",
                IsopticBranch::SinhBranch => "#1b7837",
                IsopticBranch::Invalid => "#777777",
            };
            group(
                &format!("isoptic-{}", b.branch.name()),
                &format!("stroke=\"{color}\" stroke-width=\"2.5\""),
                self.path_data(&b.polylines),
            );
        }
        group(
            "conic",
            "stroke=\"#555555\" stroke-width=\"2\" stroke-dasharray=\"10 6\"",
            self.path_data(&self.conic_curve),
        );
        group(
            "absolute",
            "stroke=\"#000000\" stroke-width=\"2\"",
            self.path_data([&self.absolute]),
        );
        s.push_str("</svg>\n");
        s
    }

    /// `branch,polyline,x,y` rows for the isoptic contours; polyline ids
    /// count from 0 within each branch.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("branch,polyline,x,y\n");
        for b in &self.isoptic {
            for (id, line) in b.polylines.iter().enumerate() {
                for &(x, y) in line {
                    let _ = writeln!(s, "{},{},{},{}", b.branch.name(), id, num(x), num(y));
                }
            }
        }
        s
    }
}
