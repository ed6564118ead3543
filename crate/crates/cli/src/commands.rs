//! Subcommand implementations. Each returns the record printed on stdout.

use std::fs;

use isoptic_core::angle::generalized_angle;
use isoptic_core::conic::{classify, dual, matrices, ConicSpec};
use isoptic_core::figures;
use isoptic_core::isoptic::{
    isoptic_angle_direct, isoptic_lhs, oracle_consistency, residual_with_branch, tangent_classes,
    SamplingDomain, Window,
};
use isoptic_core::projective::HomLine;
use isoptic_core::render::{render_scene, RenderOptions};
use isoptic_core::tangent::tangents;

use crate::args::{Command, ConicArgs, Format, IsopticCommand, RenderArgs};
use crate::output::Record;
use crate::CliError;

/// Largest `|lhs − f²|` accepted by `isoptic check`.
const CHECK_TOL: f64 = 1e-8;
const CHECK_SAMPLES: usize = 1000;

pub fn run(command: &Command, format: Format) -> Result<String, CliError> {
    let record = match command {
        Command::Classify(c) => classify_cmd(&spec(c)?)?,
        Command::Dual(c) => dual_cmd(&spec(c)?)?,
        Command::Matrices(c) => matrices_cmd(&spec(c)?)?,
        Command::Tangents { conic, point } => tangents_cmd(&spec(conic)?, *point)?,
        Command::Angle { u, v } => angle_cmd(u, v)?,
        Command::Isoptic(IsopticCommand::Eval {
            conic,
            alpha,
            point,
        }) => eval_cmd(&spec(conic)?, *alpha, *point)?,
        Command::Isoptic(IsopticCommand::Check { conic, point }) => {
            check_cmd(&spec(conic)?, *point)?
        }
        Command::Render(args) => return render_cmd(args, format),
    };
    Ok(record.render(format))
}

fn spec(c: &ConicArgs) -> Result<ConicSpec, CliError> {
    let spec = c.spec().map_err(CliError::Usage)?;
    spec.validate()?;
    Ok(spec)
}

fn conic_record(spec: &ConicSpec) -> Record {
    let r = Record::new()
        .text("family", spec.family())
        .real("a", spec.a());
    match spec.b() {
        Some(b) => r.real("b", b),
        None => r,
    }
}

fn classify_cmd(spec: &ConicSpec) -> Result<Record, CliError> {
    Ok(Record::new().text("class", classify(spec)?))
}

fn dual_cmd(spec: &ConicSpec) -> Result<Record, CliError> {
    let d = dual(spec)?;
    Ok(conic_record(&d).text("class", classify(&d)?))
}

fn matrices_cmd(spec: &ConicSpec) -> Result<Record, CliError> {
    let m = matrices(spec)?;
    // row-major
    let point: Vec<f64> = m.point_matrix.transpose().iter().copied().collect();
    let line: Vec<f64> = m.line_matrix.transpose().iter().copied().collect();
    Ok(Record::new()
        .reals("point_matrix", &point)
        .reals("line_matrix", &line))
}

fn tangents_cmd(spec: &ConicSpec, (x, y): (f64, f64)) -> Result<Record, CliError> {
    let pair = tangents(spec, x, y)?;
    let [cu, cv] = tangent_classes(spec, x, y)?;
    Ok(Record::new()
        .reals("u", pair.u.as_array())
        .reals("v", pair.v.as_array())
        .text("u_class", format!("{cu:?}"))
        .text("v_class", format!("{cv:?}"))
        .text("route", format!("{:?}", pair.route))
        .text("coincident", pair.coincident))
}

fn angle_cmd(u: &[f64; 3], v: &[f64; 3]) -> Result<Record, CliError> {
    let line = |c: &[f64; 3], flag: &str| {
        HomLine::from_array(*c)
            .ok_or_else(|| CliError::Usage(format!("--{flag} is the zero vector")))
    };
    let a = generalized_angle(&line(u, "u")?, &line(v, "v")?);
    Ok(Record::new()
        .text("kind", format!("{:?}", a.kind))
        .real("value", a.value)
        .text("formula", format!("{:?}", a.formula)))
}

fn eval_cmd(spec: &ConicSpec, alpha: f64, (x, y): (f64, f64)) -> Result<Record, CliError> {
    isoptic_core::isoptic::check_alpha(alpha)?;
    let lhs = isoptic_lhs(spec, x, y)?;
    let (branch, residual) = residual_with_branch(spec, alpha, x, y)?;
    Ok(Record::new()
        .text("branch", branch)
        .real("residual", residual)
        .real("lhs", lhs)
        .real("rhs", lhs - residual))
}

fn check_cmd(spec: &ConicSpec, point: Option<(f64, f64)>) -> Result<Record, CliError> {
    if let Some((x, y)) = point {
        let deviation = oracle_consistency(spec, x, y)?;
        let angle = isoptic_angle_direct(spec, x, y)?;
        return Ok(Record::new()
            .text("kind", format!("{:?}", angle.kind))
            .real("angle", angle.value)
            .real("lhs", isoptic_lhs(spec, x, y)?)
            .real("deviation", deviation)
            .text("pass", deviation < CHECK_TOL));
    }
    let points = SamplingDomain::default().sample(spec, CHECK_SAMPLES, 0);
    let mut worst = 0.0_f64;
    for &(x, y) in &points {
        worst = worst.max(oracle_consistency(spec, x, y)?);
    }
    Ok(Record::new()
        .text("samples", points.len())
        .real("max_deviation", worst)
        .text("pass", !points.is_empty() && worst < CHECK_TOL))
}

fn render_cmd(args: &RenderArgs, format: Format) -> Result<String, CliError> {
    let (conic, alpha) = match &args.figure {
        Some(id) => {
            let fig = figures::find(id)
                .ok_or_else(|| CliError::Usage(format!("unknown figure `{id}`")))?;
            (fig.conic, fig.alpha)
        }
        None => {
            let c = ConicArgs {
                family: args.family.expect("required by the grammar"),
                a: args.a.expect("required by the grammar"),
                b: args.b,
            };
            (spec(&c)?, args.alpha.expect("required by the grammar"))
        }
    };
    let mut opts = RenderOptions {
        resolution: args.resolution as usize,
        ..RenderOptions::default()
    };
    if let Some([xmin, xmax, ymin, ymax]) = args.window {
        opts.window = Window::new(xmin, xmax, ymin, ymax)?;
    }
    let scene = render_scene(&conic, alpha, &opts)?;
    let body = match format {
        Format::Csv => scene.to_csv(),
        Format::Human | Format::Kv => scene.to_svg(),
    };
    let Some(path) = &args.out else {
        return Ok(body);
    };
    fs::write(path, body).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let summary = conic_record(&conic)
        .real("alpha", alpha)
        .text("out", path.display())
        .text("polylines", scene.isoptic_polylines().count())
        .text("vertices", scene.isoptic_vertex_count())
        .real("length", scene.isoptic_length());
    Ok(summary.render(if format == Format::Csv {
        Format::Kv
    } else {
        format
    }))
}
