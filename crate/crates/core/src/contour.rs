//! Scalar fields on a regular grid and their zero contours (marching
//! squares with linear interpolation).
//!
//! Nodes where the field is undefined are masked; any cell touching a masked
//! node is skipped. Saddle cells are resolved by the sign at the cell center.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::conic::ConicSpec;
use crate::error::{Error, Result};
use crate::isoptic::{
    check_alpha, classify_branch, isoptic_lhs, quotient_parts, IsopticBranch, Window,
};

pub type Polyline = Vec<(f64, f64)>;

/// Bisection steps when refining a contour vertex along its cell edge.
const REFINE_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    /// Row-major, `values[j * nx + i]` at node `(i, j)`. Meaningful only
    /// where `mask` is true.
    pub values: Vec<f64>,
    pub mask: Vec<bool>,
}

impl ScalarField {
    /// Sample `f` on an `nx × ny` grid spanning `window`, rows in parallel.
    /// `None` (or a non-finite value) masks the node.
    pub fn from_fn<F>(window: Window, nx: usize, ny: usize, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Option<f64> + Sync,
    {
        let flat = grid_map(window, nx, ny, |x, y| f(x, y).filter(|v| v.is_finite()))?;
        Ok(Self::from_options(window, nx, ny, flat))
    }

    fn from_options(window: Window, nx: usize, ny: usize, flat: Vec<Option<f64>>) -> Self {
        Self {
            window,
            nx,
            ny,
            mask: flat.iter().map(Option::is_some).collect(),
            values: flat.into_iter().map(|v| v.unwrap_or(0.0)).collect(),
        }
    }

    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        let w = &self.window;
        (
            w.xmin + i as f64 * w.width() / (self.nx - 1) as f64,
            w.ymin + j as f64 * w.height() / (self.ny - 1) as f64,
        )
    }

    pub fn value(&self, i: usize, j: usize) -> Option<f64> {
        let k = j * self.nx + i;
        self.mask[k].then_some(self.values[k])
    }

    /// Larger of the two grid spacings.
    pub fn cell_size(&self) -> f64 {
        (self.window.width() / (self.nx - 1) as f64)
            .max(self.window.height() / (self.ny - 1) as f64)
    }

    pub fn masked_fraction(&self) -> f64 {
        self.mask.iter().filter(|m| !**m).count() as f64 / self.mask.len() as f64
    }

    /// Whether the point falls in a cell whose four corners are all unmasked.
    pub fn in_valid_cell(&self, x: f64, y: f64) -> bool {
        let w = &self.window;
        let fi = (x - w.xmin) / w.width() * (self.nx - 1) as f64;
        let fj = (y - w.ymin) / w.height() * (self.ny - 1) as f64;
        let eps = 1e-9;
        let is = [(fi - eps).floor(), (fi + eps).floor()];
        let js = [(fj - eps).floor(), (fj + eps).floor()];
        // a vertex on a shared edge belongs to either neighbouring cell
        is.iter().any(|&ci| {
            js.iter().any(|&cj| {
                ci >= 0.0
                    && cj >= 0.0
                    && (ci as usize) < self.nx - 1
                    && (cj as usize) < self.ny - 1
                    && self.cell_valid(ci as usize, cj as usize)
            })
        })
    }

    fn cell_valid(&self, i: usize, j: usize) -> bool {
        let k = j * self.nx + i;
        self.mask[k] && self.mask[k + 1] && self.mask[k + self.nx] && self.mask[k + self.nx + 1]
    }
}

/// Isoptic quantities sampled on a grid.
///
/// `field` is the residual `lhs − rhs(α)`, masked off the valid branches and
/// on singular loci of the quotient. Contours are traced on [`LevelForm`]s of
/// the quotient root and signed denominator instead, which stay finite across
/// poles and branch boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct IsopticField {
    pub field: ScalarField,
    pub branches: Vec<IsopticBranch>,
    pub root: Vec<f64>,
    pub den: Vec<f64>,
}

impl IsopticField {
    /// `form` at every node, masked only where it is not finite.
    pub fn level_field(&self, form: LevelForm) -> ScalarField {
        let values = self
            .root
            .iter()
            .zip(&self.den)
            .map(|(&r, &d)| Some(form.eval(r, d)).filter(|v| v.is_finite()))
            .collect();
        let f = &self.field;
        ScalarField::from_options(f.window, f.nx, f.ny, values)
    }
}

/// A function of the quotient parts whose zero set, inside one branch, is
/// that branch of the isoptic.
///
/// On the cosh and sinh branches the denominator has the sign of
/// `⟨u,u⟩⟨v,v⟩`, so `lhs = c²` becomes the polynomial `root² ∓ c²·den = 0`.
/// Near a pole the curve runs within a thin band beside the pole locus; the
/// polynomial crosses zero there with a nonzero gradient, while `lhs − c²`
/// jumps through infinity. The cos branch has no poles but may have `c = 0`,
/// where only the factored form `root ∓ c·√den` changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevelForm {
    /// `root − c·√|den|`.
    Root(f64),
    /// `root² − k·den`.
    Polynomial(f64),
}

impl LevelForm {
    pub fn eval(self, root: f64, den: f64) -> f64 {
        match self {
            LevelForm::Root(c) => root - c * den.abs().sqrt(),
            LevelForm::Polynomial(k) => root * root - k * den,
        }
    }

    pub fn at(self, conic: &ConicSpec, x: f64, y: f64) -> f64 {
        let parts = quotient_parts(conic, x, y);
        self.eval(parts.root, parts.denominator)
    }
}

/// Level forms that together trace `branch` at angle `alpha`.
pub fn level_forms(branch: IsopticBranch, alpha: f64) -> Vec<LevelForm> {
    let Some(rhs) = branch.rhs(alpha) else {
        return Vec::new();
    };
    match branch {
        IsopticBranch::CoshBranch => vec![LevelForm::Polynomial(rhs)],
        IsopticBranch::SinhBranch => vec![LevelForm::Polynomial(-rhs)],
        _ if rhs > 0.0 => vec![LevelForm::Root(rhs.sqrt()), LevelForm::Root(-rhs.sqrt())],
        _ => vec![LevelForm::Root(0.0)],
    }
}

pub fn sample_field(
    conic: &ConicSpec,
    alpha: f64,
    window: Window,
    nx: usize,
    ny: usize,
) -> Result<IsopticField> {
    check_alpha(alpha)?;
    let nodes = grid_map(window, nx, ny, |x, y| {
        let b = classify_branch(conic, x, y);
        let r = b
            .rhs(alpha)
            .and_then(|rhs| Some(isoptic_lhs(conic, x, y).ok()? - rhs))
            .filter(|v| v.is_finite());
        let parts = quotient_parts(conic, x, y);
        (b, r, parts.root, parts.denominator)
    })?;
    let mut branches = Vec::with_capacity(nodes.len());
    let mut values = Vec::with_capacity(nodes.len());
    let mut root = Vec::with_capacity(nodes.len());
    let mut den = Vec::with_capacity(nodes.len());
    for (b, r, q, d) in nodes {
        branches.push(b);
        values.push(r);
        root.push(q);
        den.push(d);
    }
    Ok(IsopticField {
        field: ScalarField::from_options(window, nx, ny, values),
        branches,
        root,
        den,
    })
}

/// Evaluate `f` at every grid node, row-major, rows in parallel.
fn grid_map<T, F>(window: Window, nx: usize, ny: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64, f64) -> T + Sync,
{
    if nx < 2 || ny < 2 {
        return Err(Error::PreconditionViolated(
            "grid needs at least 2 nodes per axis",
        ));
    }
    let (dx, dy) = (
        window.width() / (nx - 1) as f64,
        window.height() / (ny - 1) as f64,
    );
    let rows: Vec<Vec<T>> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let y = window.ymin + j as f64 * dy;
            (0..nx).map(|i| f(window.xmin + i as f64 * dx, y)).collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    /// Between nodes (i, j) and (i+1, j).
    H(usize, usize),
    /// Between nodes (i, j) and (i, j+1).
    V(usize, usize),
}

impl EdgeKey {
    fn ends(self) -> ((usize, usize), (usize, usize)) {
        match self {
            EdgeKey::H(i, j) => ((i, j), (i + 1, j)),
            EdgeKey::V(i, j) => ((i, j), (i, j + 1)),
        }
    }
}

type Refiner<'a> = &'a dyn Fn(f64, f64) -> Option<f64>;

/// Zero contours with linearly interpolated vertices.
pub fn extract_contours(field: &ScalarField) -> Vec<Polyline> {
    march(field, None, &|_, _| true)
}

/// Zero contours with each vertex refined by bisection of `f` along its
/// cell edge; `f` also supplies the center sample for saddle cells.
pub fn extract_contours_refined<F>(field: &ScalarField, f: &F) -> Vec<Polyline>
where
    F: Fn(f64, f64) -> Option<f64>,
{
    march(field, Some(f), &|_, _| true)
}

/// Like [`extract_contours_refined`], keeping only vertices accepted by
/// `keep`; a polyline is split where a vertex is rejected.
pub fn extract_contours_where<F, K>(field: &ScalarField, f: &F, keep: &K) -> Vec<Polyline>
where
    F: Fn(f64, f64) -> Option<f64>,
    K: Fn(f64, f64) -> bool,
{
    march(field, Some(f), keep)
}

fn march(
    field: &ScalarField,
    f: Option<Refiner>,
    keep: &dyn Fn(f64, f64) -> bool,
) -> Vec<Polyline> {
    let (nx, ny) = (field.nx, field.ny);
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            if !field.cell_valid(i, j) {
                continue;
            }
            let v = [
                field.values[j * nx + i],
                field.values[j * nx + i + 1],
                field.values[(j + 1) * nx + i + 1],
                field.values[(j + 1) * nx + i],
            ];
            let pos = v.map(|x| x >= 0.0);
            let (bottom, right, top, left) = (
                EdgeKey::H(i, j),
                EdgeKey::V(i + 1, j),
                EdgeKey::H(i, j + 1),
                EdgeKey::V(i, j),
            );
            let edges = [bottom, right, top, left];
            // edge k joins corners k and k+1
            let crossing: Vec<EdgeKey> = (0..4)
                .filter(|&k| pos[k] != pos[(k + 1) % 4])
                .map(|k| edges[k])
                .collect();
            match crossing.len() {
                2 => segments.push((crossing[0], crossing[1])),
                4 => {
                    let (x0, y0) = field.node(i, j);
                    let (x1, y1) = field.node(i + 1, j + 1);
                    let center = f
                        .and_then(|f| f((x0 + x1) / 2.0, (y0 + y1) / 2.0))
                        .unwrap_or((v[0] + v[1] + v[2] + v[3]) / 4.0);
                    if (center >= 0.0) == pos[0] {
                        // corners 0 and 2 joined through the center
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                _ => {}
            }
        }
    }

    let mut solved: HashMap<EdgeKey, Option<(f64, f64)>> = HashMap::new();
    for &(a, b) in &segments {
        for e in [a, b] {
            solved
                .entry(e)
                .or_insert_with(|| edge_vertex(field, e, f).filter(|&(x, y)| keep(x, y)));
        }
    }
    let vertices: HashMap<EdgeKey, (f64, f64)> = solved
        .into_iter()
        .filter_map(|(e, p)| Some((e, p?)))
        .collect();
    // a segment ending on an edge without a vertex cannot be drawn
    segments.retain(|(a, b)| vertices.contains_key(a) && vertices.contains_key(b));

    let mut at_edge: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        at_edge.entry(a).or_default().push(k);
        at_edge.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut forward = vec![a, b];
        extend_chain(&mut forward, &segments, &at_edge, &mut used);
        let mut backward = vec![a];
        if forward.first() != forward.last() {
            extend_chain(&mut backward, &segments, &at_edge, &mut used);
        }
        backward.reverse();
        backward.pop();
        backward.extend(forward);
        out.push(backward.into_iter().map(|e| vertices[&e]).collect());
    }
    out
}

fn next_edge(
    current: EdgeKey,
    segments: &[(EdgeKey, EdgeKey)],
    at_edge: &HashMap<EdgeKey, Vec<usize>>,
    used: &mut [bool],
) -> Option<EdgeKey> {
    let k = at_edge.get(&current)?.iter().copied().find(|&k| !used[k])?;
    used[k] = true;
    let (a, b) = segments[k];
    Some(if a == current { b } else { a })
}

/// Follow unused segments from the last edge of `chain` until the chain
/// closes on its first edge or runs out.
fn extend_chain(
    chain: &mut Vec<EdgeKey>,
    segments: &[(EdgeKey, EdgeKey)],
    at_edge: &HashMap<EdgeKey, Vec<usize>>,
    used: &mut [bool],
) {
    while let Some(next) = next_edge(chain[chain.len() - 1], segments, at_edge, used) {
        chain.push(next);
        if next == chain[0] {
            break;
        }
    }
}

/// Vertex of the contour on edge `e`. With `f`, the linear estimate is
/// refined by bisection; the edge yields no vertex if `f` is undefined on it
/// or the sign change is a pole rather than a root.
fn edge_vertex(field: &ScalarField, e: EdgeKey, f: Option<Refiner>) -> Option<(f64, f64)> {
    let ((i0, j0), (i1, j1)) = e.ends();
    let (p0, p1) = (field.node(i0, j0), field.node(i1, j1));
    let (v0, v1) = (
        field.values[j0 * field.nx + i0],
        field.values[j1 * field.nx + i1],
    );
    let lerp = |t: f64| (p0.0 + t * (p1.0 - p0.0), p0.1 + t * (p1.1 - p0.1));
    let Some(f) = f else {
        let t = if v0 == v1 { 0.5 } else { v0 / (v0 - v1) };
        return Some(lerp(t));
    };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let lo_pos = v0 >= 0.0;
    for _ in 0..REFINE_STEPS {
        let mid = 0.5 * (lo + hi);
        let (x, y) = lerp(mid);
        let fm = f(x, y).filter(|v| v.is_finite())?;
        if (fm >= 0.0) == lo_pos {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    let (a, b) = (lerp(lo), lerp(hi));
    let (fa, fb) = (f(a.0, a.1)?, f(b.0, b.1)?);
    if fa.abs().min(fb.abs()) > v0.abs().max(v1.abs()) {
        return None;
    }
    Some(if fb.abs() < fa.abs() { b } else { a })
}

/// Euclidean length of a polyline.
pub fn polyline_length(p: &[(f64, f64)]) -> f64 {
    p.windows(2)
        .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
        .sum()
}
