//! Subcommands. Exit codes: 0 when every requested check holds, 1 when a
//! check fails or the analysis hits a numerical error, 2 for invalid input.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxface_core::gallery::{self, GalleryParams};
use maxface_core::global::{osserman_report, Completeness};
use maxface_core::mesh::{build_chart_grid, generate_companion_mesh, generate_mesh, Chart, GridSpec};
use maxface_core::singular::{default_region, trace_all, Region};
use maxface_core::{Complex64, Maxface, Tolerances, WeierstrassData};

use crate::export::{write_csv, write_obj};
use crate::report::{SingularJson, VerifyJson};
use crate::{parse_tolerances, InputError, SurfaceDescription};

#[derive(Debug, Parser)]
#[command(name = "maxface", version, about = "Maxfaces from rational Weierstrass data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Periods, ends, completeness, the Osserman-type inequality and total curvature.
    Verify(VerifyArgs),
    /// Trace and classify the singular set.
    Singular(SingularArgs),
    /// Triangulate the surface (or its companion) and write OBJ or CSV.
    Mesh(MeshArgs),
    /// Built-in examples.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum GalleryAction {
    /// List entries with their parameters.
    List,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source_kind")]
pub struct SourceKind {
    /// Gallery entry name.
    #[arg(long)]
    gallery: Option<String>,
    /// JSON surface description.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Source {
    #[command(flatten)]
    kind: SourceKind,
    /// Catenoid scale.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Lopez-Ros parameter.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Number of ends of the Jorge-Meeks companion.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Fail unless the surface is complete.
    #[arg(long)]
    require_complete: bool,
    /// Fail unless the Osserman-type inequality is an equality.
    #[arg(long)]
    require_osserman_equality: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SingularArgs {
    #[command(flatten)]
    source: Source,
    /// CX CY R_MIN R_MAX
    #[arg(long, num_args = 4, value_name = "N", allow_negative_numbers = true, conflicts_with = "rect")]
    annulus: Option<Vec<f64>>,
    /// X0 Y0 X1 Y1
    #[arg(long, num_args = 4, value_name = "N", allow_negative_numbers = true)]
    rect: Option<Vec<f64>>,
    /// Include every traced sample.
    #[arg(long)]
    samples: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ChartArg {
    Identity,
    Inversion,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Obj,
    Csv,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    source: Source,
    /// [CX CY] R_MIN R_MAX N_R N_THETA
    #[arg(long, num_args = 4..=6, value_name = "N", allow_negative_numbers = true, conflicts_with = "rect")]
    polar: Option<Vec<f64>>,
    /// X0 Y0 X1 Y1 N_U N_V
    #[arg(long, num_args = 6, value_name = "N", allow_negative_numbers = true)]
    rect: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "identity")]
    chart: ChartArg,
    /// Mesh the companion minimal surface instead.
    #[arg(long)]
    companion: bool,
    /// Defaults to the extension of --out, else obj.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Input(InputError),
    Analysis(maxface_core::Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<maxface_core::Error> for Failure {
    fn from(e: maxface_core::Error) -> Self {
        Failure::Analysis(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Input(InputError::Usage(msg.into()))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, tol_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = parse_tolerances(tol_env.unwrap_or(""))
        .map_err(Failure::from)
        .and_then(|tol| dispatch(cli.command, &tol, out, err));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Analysis(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, tol: &Tolerances, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, Failure> {
    match command {
        Command::Verify(args) => verify(args, tol, out, err),
        Command::Singular(args) => singular(args, tol, out),
        Command::Mesh(args) => mesh(args, tol, out, err),
        Command::Gallery { action: GalleryAction::List } => list(tol, out),
    }
}

fn load(source: &Source, tol: &Tolerances) -> Result<Maxface, Failure> {
    let data = match (&source.kind.gallery, &source.kind.input) {
        (Some(name), _) => {
            let allowed = gallery::parameters_of(name);
            if !gallery::NAMES.contains(&name.as_str()) {
                return Err(usage(format!(
                    "unknown gallery entry `{name}` (known: {})",
                    gallery::NAMES.join(", ")
                )));
            }
            let mut params = GalleryParams::default();
            let given = [("a", source.a.is_some()), ("lambda", source.lambda.is_some()), ("n", source.n.is_some())];
            if let Some((p, _)) = given.iter().find(|(p, set)| *set && !allowed.contains(p)) {
                return Err(usage(format!("--{p} does not apply to `{name}`")));
            }
            params.a = source.a.unwrap_or(params.a);
            params.lambda = source.lambda.unwrap_or(params.lambda);
            params.n = source.n.unwrap_or(params.n);
            gallery::gallery(name, &params, tol).map_err(InputError::from)?
        }
        (None, Some(path)) => {
            if source.a.is_some() || source.lambda.is_some() || source.n.is_some() {
                return Err(usage("--a, --lambda and --n only apply to gallery entries"));
            }
            read_description(path, tol)?
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    Ok(Maxface::new(data, *tol).map_err(InputError::from)?)
}

pub fn read_description(path: &Path, tol: &Tolerances) -> Result<WeierstrassData, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.display().to_string(),
        source,
    })?;
    SurfaceDescription::parse(&text)?.to_data(tol)
}

fn emit(path: Option<&Path>, out: &mut dyn Write, write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), Failure> {
    let io = |e: std::io::Error| match path {
        Some(p) => usage(format!("cannot write {}: {e}", p.display())),
        None => usage(format!("cannot write output: {e}")),
    };
    match path {
        Some(p) => {
            let mut file = BufWriter::new(File::create(p).map_err(io)?);
            write(&mut file).and_then(|_| file.flush()).map_err(io)
        }
        None => write(out).map_err(io),
    }
}

fn json_line(value: &impl serde::Serialize) -> impl FnOnce(&mut dyn Write) -> std::io::Result<()> + '_ {
    move |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)
    }
}

fn verify(args: VerifyArgs, tol: &Tolerances, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, Failure> {
    let m = load(&args.source, tol)?;
    let report = osserman_report(&m)?;
    let json = VerifyJson::new(&report, gallery::lopez_ros_excluded(m.data(), tol));
    emit(args.out.as_deref(), out, json_line(&json))?;

    let mut ok = report.period.passes;
    if !report.period.passes {
        let _ = writeln!(err, "period condition fails: max |Re P| = {:e}", report.period.max_re_violation);
    }
    if args.require_complete && !matches!(report.completeness, Some(Completeness::Complete)) {
        let _ = writeln!(err, "surface is not complete");
        ok = false;
    }
    if args.require_osserman_equality && !(report.osserman_applicable && report.equality) {
        let _ = writeln!(
            err,
            "Osserman-type inequality is not an equality: {} vs {}",
            report.osserman_lhs, report.osserman_rhs
        );
        ok = false;
    }
    Ok(ok)
}

fn region_from(annulus: Option<&[f64]>, rect: Option<&[f64]>, m: &Maxface) -> Result<Region, Failure> {
    match (annulus, rect) {
        (Some(&[cx, cy, r_min, r_max]), _) => {
            if !(0.0 <= r_min && r_min < r_max) {
                return Err(usage("--annulus needs 0 <= R_MIN < R_MAX"));
            }
            Ok(Region::Annulus {
                center: Complex64::new(cx, cy),
                r_min,
                r_max,
            })
        }
        (_, Some(&[x0, y0, x1, y1])) => {
            if !(x0 < x1 && y0 < y1) {
                return Err(usage("--rect needs X0 < X1 and Y0 < Y1"));
            }
            Ok(Region::Box {
                min: Complex64::new(x0, y0),
                max: Complex64::new(x1, y1),
            })
        }
        _ => Ok(default_region(m)),
    }
}

fn singular(args: SingularArgs, tol: &Tolerances, out: &mut dyn Write) -> Result<bool, Failure> {
    let m = load(&args.source, tol)?;
    let region = region_from(args.annulus.as_deref(), args.rect.as_deref(), &m)?;
    let curves = trace_all(&m, &region)?;
    let json = SingularJson::new(m.data().label(), &region, &curves, args.samples);
    emit(args.out.as_deref(), out, json_line(&json))?;
    Ok(true)
}

fn count(x: f64, what: &str) -> Result<usize, Failure> {
    if x >= 1.0 && x.fract() == 0.0 && x <= 1e6 {
        Ok(x as usize)
    } else {
        Err(usage(format!("{what} must be a positive integer")))
    }
}

fn grid_spec(args: &MeshArgs) -> Result<GridSpec, Failure> {
    if let Some(p) = &args.polar {
        let (center, rest) = match p.as_slice() {
            [cx, cy, rest @ ..] if p.len() == 6 => (Complex64::new(*cx, *cy), rest),
            rest if p.len() == 4 => (Complex64::new(0.0, 0.0), rest),
            _ => return Err(usage("--polar takes [CX CY] R_MIN R_MAX N_R N_THETA")),
        };
        return Ok(GridSpec::Polar {
            center,
            r_min: rest[0],
            r_max: rest[1],
            n_r: count(rest[2], "N_R")?,
            n_theta: count(rest[3], "N_THETA")?,
        });
    }
    if let Some(&[x0, y0, x1, y1, nu, nv]) = args.rect.as_deref() {
        return Ok(GridSpec::Rect {
            min: Complex64::new(x0, y0),
            max: Complex64::new(x1, y1),
            n_u: count(nu, "N_U")?,
            n_v: count(nv, "N_V")?,
        });
    }
    Err(usage("mesh needs --polar or --rect"))
}

fn mesh(args: MeshArgs, tol: &Tolerances, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, Failure> {
    let m = load(&args.source, tol)?;
    let chart = match args.chart {
        ChartArg::Identity => Chart::Identity,
        ChartArg::Inversion => Chart::Inversion,
    };
    let format = match (args.format, args.out.as_deref().and_then(Path::extension)) {
        (Some(f), _) => f,
        (None, Some(ext)) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
        (None, Some(ext)) if ext.eq_ignore_ascii_case("obj") => Format::Obj,
        (None, Some(ext)) => return Err(usage(format!("unknown output extension `{}`", ext.to_string_lossy()))),
        (None, None) => Format::Obj,
    };
    let grid = build_chart_grid(&m, grid_spec(&args)?, chart).map_err(|e| match e {
        maxface_core::Error::InvalidParameter(_) | maxface_core::Error::EmptyGrid => usage(e.to_string()),
        e => Failure::Analysis(e),
    })?;
    let surface = if args.companion {
        generate_companion_mesh(&m, &grid)?
    } else {
        generate_mesh(&m, &grid)?
    };
    emit(args.out.as_deref(), out, |w| match format {
        Format::Obj => write_obj(&surface, w),
        Format::Csv => write_csv(&surface, w),
    })?;
    if let Some(path) = &args.out {
        let _ = writeln!(
            err,
            "wrote {} vertices, {} faces to {}",
            surface.vertices.len(),
            surface.faces.len(),
            path.display()
        );
    }
    Ok(true)
}

fn list(tol: &Tolerances, out: &mut dyn Write) -> Result<bool, Failure> {
    let defaults = GalleryParams::default();
    for name in gallery::NAMES {
        let params: Vec<String> = gallery::parameters_of(name)
            .iter()
            .map(|p| match *p {
                "a" => format!("a={}", defaults.a),
                "lambda" => format!("lambda={}", defaults.lambda),
                "n" => format!("n={}", defaults.n),
                other => other.to_string(),
            })
            .collect();
        let data = gallery::gallery(name, &defaults, tol)?;
        let excluded = gallery::lopez_ros_excluded(&data, tol);
        let params = if params.is_empty() { "-".to_string() } else { params.join(" ") };
        writeln!(out, "{name:<24} {params:<20} lopez-ros excluded: {excluded:?}")
            .map_err(|e| usage(format!("cannot write output: {e}")))?;
    }
    Ok(true)
}
