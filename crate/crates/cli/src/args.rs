//! Flag grammar shared by every subcommand.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isoptic_core::conic::{ConicSpec, Family};

#[derive(Debug, Parser)]
#[command(
    name = "isoptic",
    version,
    about = "Generalized conics, tangents, angles and isoptic curves in the Cayley-Klein model \
             of the extended hyperbolic plane",
    after_help = "Angles are in radians. Points are `x,y`, lines `a,b,c`, windows \
                  `xmin,xmax,ymin,ymax`."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for results on stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Kv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Kv,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class of a conic in its family's table.
    Classify(ConicArgs),
    /// Dual conic parameters.
    Dual(ConicArgs),
    /// Point and line matrices of a conic.
    Matrices(ConicArgs),
    /// Tangent lines from an external point.
    Tangents {
        #[command(flatten)]
        conic: ConicArgs,
        #[arg(long, value_parser = parse_point)]
        point: (f64, f64),
    },
    /// Generalized angle between two lines.
    Angle {
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        u: [f64; 3],
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        v: [f64; 3],
    },
    /// Isoptic residual and oracle checks.
    #[command(subcommand)]
    Isoptic(IsopticCommand),
    /// Draw a conic, the model circle and the isoptic as SVG or CSV.
    Render(RenderArgs),
}

#[derive(Debug, Subcommand)]
pub enum IsopticCommand {
    /// Branch and residual at a point for a viewing angle.
    Eval {
        #[command(flatten)]
        conic: ConicArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: (f64, f64),
    },
    /// Compare the closed-form quotient with the angle between the tangents,
    /// at one point or over 1000 sampled points.
    Check {
        #[command(flatten)]
        conic: ConicArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<(f64, f64)>,
    },
}

#[derive(Debug, Args)]
pub struct ConicArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Second parameter; not used by the osculating family.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
}

impl ConicArgs {
    pub fn spec(&self) -> Result<ConicSpec, String> {
        match (self.family, self.b) {
            (Family::OsculatingParabola, None) => Ok(ConicSpec::OsculatingParabola { a: self.a }),
            (Family::OsculatingParabola, Some(_)) => {
                Err("--b is not used by the osculating family".to_owned())
            }
            (family, Some(b)) => Ok(ConicSpec::from_family(family, self.a, b)),
            (family, None) => Err(format!("the {family} family needs --b")),
        }
    }
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Take conic and angle from a reference figure, e.g. `fig1-right`.
    #[arg(long, conflicts_with_all = ["family", "a", "b", "alpha"])]
    pub figure: Option<String>,
    #[arg(long, required_unless_present = "figure")]
    pub family: Option<Family>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "figure")]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, required_unless_present = "figure")]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<[f64; 4]>,
    /// Grid nodes per axis.
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(2..=8192))]
    pub resolution: u32,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_reals<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("`{p}` is not a finite decimal number"))?;
    }
    Ok(out)
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    parse_reals::<2>(s).map(|[x, y]| (x, y))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    parse_reals(s)
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    parse_reals(s)
}
