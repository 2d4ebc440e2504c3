//! Batch front end behind the `cblend` binary.
//!
//! Input files are JSON objects `{"points": [[x, y, z], ...], "apexes": [...]}`.
//! Exit codes: 0 success, 2 bad input or usage, 3 degenerate or pathological
//! geometry, 4 I/O failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::circle_blend::{build_spline, BlendProfile, CurveSample, Segment, SplineSpec};
use crate::conformal::{embed_point, Euclidean3};
use crate::error::Error;
use crate::primitives::{center_of, circle_radius, circle_through, is_flat, Circle};
use crate::sphere_blend::{make_patch, sample_mesh, Mesh};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Relative tolerance for the coplanarity guard on SVG output.
pub const COPLANAR_TOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "cblend", version, about = "Circle-blended splines and sphere-blended patches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a spline through the control points.
    Curve(CurveArgs),
    /// Sample a triangular patch given 3 vertices and 3 apexes.
    Surface(SurfaceArgs),
    /// Report radius, centre and blend angle for each control-point triple.
    Inspect(InspectArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Continuity {
    G1,
    G2,
    G3,
}

impl Continuity {
    pub fn profile(self) -> BlendProfile {
        match self {
            Continuity::G1 => BlendProfile::G1,
            Continuity::G2 => BlendProfile::G2,
            Continuity::G3 => BlendProfile::G3,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Obj,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// JSON input file, or `-` for stdin.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "g2")]
    pub continuity: Continuity,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long)]
    pub closed: bool,
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 16)]
    pub subdiv: usize,
    #[arg(long, value_enum, default_value = "obj")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InspectArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub closed: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Control-point file contents.
#[derive(Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub points: Vec<[f64; 3]>,
    #[serde(default)]
    pub apexes: Option<Vec<[f64; 3]>>,
}

/// Failure of a CLI run, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Geometry(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Geometry(_) => EXIT_GEOMETRY,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Geometry(e) => write!(f, "geometry error: {e}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Geometry(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("cblend: {e}");
            if let CliError::Input(_) = e {
                eprintln!("usage: cblend <curve|surface|inspect> INPUT [OPTIONS] (see --help)");
            }
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command) -> Result<(), CliError> {
    let (text, output) = match cmd {
        Command::Curve(a) => (render_curve(&read_input(&a.input)?, a)?, &a.output),
        Command::Surface(a) => (render_surface(&read_input(&a.input)?, a)?, &a.output),
        Command::Inspect(a) => (inspect(&read_input(&a.input)?, a.closed)?, &a.output),
    };
    write_output(output.as_deref(), &text)
}

pub fn read_input(path: &Path) -> Result<InputFile, CliError> {
    let raw = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    parse_input(&raw)
}

pub fn parse_input(raw: &str) -> Result<InputFile, CliError> {
    let input: InputFile = serde_json::from_str(raw).map_err(|e| CliError::Input(e.to_string()))?;
    let all = input.points.iter().chain(input.apexes.iter().flatten());
    if all.flatten().any(|c| !c.is_finite()) {
        return Err(CliError::Input("coordinates must be finite".into()));
    }
    Ok(input)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn points_of(input: &InputFile) -> Vec<Euclidean3> {
    input.points.iter().map(|&p| Euclidean3::from(p)).collect()
}

/// Formats `x` in positional notation with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let exp = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit; redo with one fewer place.
    let rounded: f64 = s.parse().unwrap_or(x);
    let s = if rounded != 0.0 && rounded.abs().log10().floor() as i64 > exp && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    };
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Samples with junctions emitted once: the first sample of every segment
/// after the first is dropped, and a closed curve also drops its final sample.
pub fn unique_samples(samples: &[CurveSample], closed: bool) -> Vec<CurveSample> {
    let last_segment = samples.last().map(|s| s.segment).unwrap_or(0);
    let mut out = Vec::with_capacity(samples.len());
    for (i, s) in samples.iter().enumerate() {
        let first_of_segment = i > 0 && samples[i - 1].segment != s.segment;
        let closing = closed && s.segment == last_segment && i + 1 == samples.len();
        if !first_of_segment && !closing {
            out.push(*s);
        }
    }
    out
}

pub fn curve_spec(input: &InputFile, args: &CurveArgs) -> SplineSpec {
    SplineSpec::new(points_of(input))
        .closed(args.closed)
        .profile(args.continuity.profile())
        .samples(args.samples)
        .refine(args.refine)
}

pub fn render_curve(input: &InputFile, args: &CurveArgs) -> Result<String, CliError> {
    let spec = curve_spec(input, args);
    if args.format == Format::Obj {
        return Err(CliError::Input("curve output supports csv and svg".into()));
    }
    spec.validate().map_err(|e| CliError::Input(e.to_string()))?;
    if args.format == Format::Svg && !is_coplanar(&spec.control_points) {
        return Err(CliError::Input("svg output needs coplanar control points".into()));
    }
    let samples = unique_samples(&build_spline(&spec)?, spec.closed);
    Ok(match args.format {
        Format::Svg => {
            let mut pts: Vec<Euclidean3> = samples.iter().map(|s| s.point).collect();
            if spec.closed {
                pts.push(pts[0]);
            }
            svg_polyline(&pts)
        }
        _ => curve_csv(&samples),
    })
}

pub fn curve_csv(samples: &[CurveSample]) -> String {
    let mut s = String::from("segment,lambda,x,y,z\n");
    for c in samples {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            c.segment,
            fmt_sig(c.lambda, 15),
            fmt_sig(c.point.x, 15),
            fmt_sig(c.point.y, 15),
            fmt_sig(c.point.z, 15)
        );
    }
    s
}

fn bounding_scale(pts: &[Euclidean3]) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in pts {
        for (i, c) in p.to_array().into_iter().enumerate() {
            lo[i] = lo[i].min(c);
            hi[i] = hi[i].max(c);
        }
    }
    Euclidean3::from(hi).distance(Euclidean3::from(lo))
}

/// Whether all points lie within `COPLANAR_TOL` (relative to their bounding
/// box) of one plane.
pub fn is_coplanar(pts: &[Euclidean3]) -> bool {
    if pts.len() < 4 {
        return true;
    }
    let scale = bounding_scale(pts).max(f64::MIN_POSITIVE);
    let p0 = pts[0];
    let far = |f: &dyn Fn(&Euclidean3) -> f64| *pts.iter().max_by(|a, b| f(a).total_cmp(&f(b))).unwrap();
    let p1 = far(&|p| p.distance(p0));
    let u = p1 - p0;
    let p2 = far(&|p| u.cross(*p - p0).norm());
    let normal = u.cross(p2 - p0);
    if normal.norm() <= 1e-12 * scale * scale {
        return true;
    }
    let normal = normal * (1.0 / normal.norm());
    pts.iter().all(|p| normal.dot(*p - p0).abs() <= COPLANAR_TOL * scale)
}

/// SVG with one polyline, dropping the coordinate of least variance.
pub fn svg_polyline(pts: &[Euclidean3]) -> String {
    let n = pts.len().max(1) as f64;
    let mean = pts.iter().fold(Euclidean3::ORIGIN, |a, p| a + *p) * (1.0 / n);
    let mut var = [0.0; 3];
    for p in pts {
        for (i, c) in (*p - mean).to_array().into_iter().enumerate() {
            var[i] += c * c;
        }
    }
    let drop = (0..3).fold(0, |best, i| if var[i] < var[best] { i } else { best });
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let proj: Vec<(f64, f64)> = pts
        .iter()
        .map(|p| {
            let a = p.to_array();
            // SVG's y axis points down.
            (a[keep[0]], -a[keep[1]])
        })
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &proj {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = 0.05 * span;
    let mut points = String::new();
    for (i, &(x, y)) in proj.iter().enumerate() {
        if i > 0 {
            points.push(' ');
        }
        let _ = write!(points, "{},{}", fmt_sig(x, 12), fmt_sig(y, 12));
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{}\" points=\"{}\"/>\n</svg>\n",
        fmt_sig(x0 - pad, 12),
        fmt_sig(y0 - pad, 12),
        fmt_sig(x1 - x0 + 2.0 * pad, 12),
        fmt_sig(y1 - y0 + 2.0 * pad, 12),
        fmt_sig(span / 400.0, 6),
        points
    )
}

pub fn render_surface(input: &InputFile, args: &SurfaceArgs) -> Result<String, CliError> {
    if args.format == Format::Svg {
        return Err(CliError::Input("surface output supports obj and csv".into()));
    }
    if args.subdiv == 0 {
        return Err(CliError::Input("--subdiv must be at least 1".into()));
    }
    let apexes = input
        .apexes
        .as_ref()
        .ok_or_else(|| CliError::Input("surface input needs \"apexes\"".into()))?;
    if input.points.len() != 3 || apexes.len() != 3 {
        return Err(CliError::Input(format!(
            "surface input needs 3 points and 3 apexes, got {} and {}",
            input.points.len(),
            apexes.len()
        )));
    }
    let v = [0, 1, 2].map(|i| Euclidean3::from(input.points[i]));
    let a = [0, 1, 2].map(|i| Euclidean3::from(apexes[i]));
    let mesh = sample_mesh(&make_patch(v, a)?, args.subdiv)?;
    Ok(match args.format {
        Format::Csv => mesh_csv(&mesh),
        _ => mesh_obj(&mesh),
    })
}

pub fn mesh_obj(mesh: &Mesh) -> String {
    let mut s = String::new();
    for p in &mesh.vertices {
        let _ = writeln!(s, "v {} {} {}", fmt_sig(p.x, 12), fmt_sig(p.y, 12), fmt_sig(p.z, 12));
    }
    for f in &mesh.faces {
        let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    s
}

pub fn mesh_csv(mesh: &Mesh) -> String {
    let mut s = String::from("lambda,mu,nu,x,y,z\n");
    for (p, b) in mesh.vertices.iter().zip(&mesh.params) {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            fmt_sig(b.lambda(), 15),
            fmt_sig(b.mu(), 15),
            fmt_sig(b.nu(), 15),
            fmt_sig(p.x, 15),
            fmt_sig(p.y, 15),
            fmt_sig(p.z, 15)
        );
    }
    s
}

/// One line per control-point triple: radius (or `line`), centre, and the
/// blend angle to the next triple's circle (`-` where there is none).
pub fn inspect(input: &InputFile, closed: bool) -> Result<String, CliError> {
    let pts = points_of(input);
    let m = pts.len();
    if m < 3 {
        return Err(CliError::Input(format!("inspect needs at least 3 points, got {m}")));
    }
    let x: Vec<_> = pts.iter().map(|p| embed_point(*p)).collect();
    let centres: Vec<usize> = if closed { (0..m).collect() } else { (1..m - 1).collect() };
    let circles: Vec<Circle> = centres
        .iter()
        .map(|&i| circle_through(&x[(i + m - 1) % m], &x[i], &x[(i + 1) % m]).map_err(|e| e.at_segment(i)))
        .collect::<Result<_, _>>()?;
    let mut s = String::new();
    for (k, &i) in centres.iter().enumerate() {
        let c = &circles[k];
        let _ = write!(s, "triple {} {} {}: ", (i + m - 1) % m, i, (i + 1) % m);
        if is_flat(c)? {
            s.push_str("radius line centre none");
        } else {
            let r = circle_radius(c)?;
            let o = center_of(c)?.to_euclidean();
            let _ = write!(s, "radius {r:.12} centre {:.12} {:.12} {:.12}", o.x, o.y, o.z);
        }
        let next = if k + 1 < circles.len() {
            Some(k + 1)
        } else if closed {
            Some(0)
        } else {
            None
        };
        match next {
            Some(j) => {
                let seg = Segment::new(x[i], x[centres[j]], c, &circles[j]).map_err(|e| e.at_segment(i))?;
                let _ = writeln!(s, " theta {:.12}", seg.theta());
            }
            None => s.push_str(" theta -\n"),
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(points: &[[f64; 3]]) -> InputFile {
        InputFile {
            points: points.to_vec(),
            apexes: None,
        }
    }

    fn curve_args(format: Format, closed: bool) -> CurveArgs {
        CurveArgs {
            input: PathBuf::from("-"),
            continuity: Continuity::G2,
            samples: 8,
            closed,
            refine: 0,
            format,
            output: None,
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(1.0, 12), "1.00000000000");
        assert_eq!(fmt_sig(-0.000123456789012345, 12), "-0.000123456789012");
        assert_eq!(fmt_sig(123456.7, 12), "123456.700000");
        assert_eq!(fmt_sig(0.0, 3), "0.00");
        assert_eq!(fmt_sig(-1e-300 * 1e-300, 4), "0.000");
        assert_eq!(fmt_sig(9.9999999999999, 12), "10.0000000000");
        for x in [0.1, 2.5e-7, -7.123456789012345, 1e10 / 3.0] {
            let back: f64 = fmt_sig(x, 15).parse().unwrap();
            assert!((back - x).abs() <= 1e-14 * x.abs());
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_input("{\"points\": [[0,0,0]]}").is_ok());
        assert!(matches!(parse_input("{\"pts\": []}"), Err(CliError::Input(_))));
        assert!(matches!(parse_input("[1, 2"), Err(CliError::Input(_))));
        assert!(matches!(parse_input("{\"points\": [[0,0]]}"), Err(CliError::Input(_))));
    }

    #[test]
    fn junctions_once() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [2.0, 0.0, 0.0], [3.0, 1.0, 0.0], [4.0, 0.5, 0.0]];
        let open = render_curve(&input(&pts), &curve_args(Format::Csv, false)).unwrap();
        assert_eq!(open.lines().count(), 1 + 4 * 8 + 1);
        let closed = render_curve(&input(&pts), &curve_args(Format::Csv, true)).unwrap();
        assert_eq!(closed.lines().count(), 1 + 5 * 8);
        assert!(closed.lines().nth(1).unwrap().starts_with("0,0.0"));
    }

    #[test]
    fn too_few_points_is_input_error() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [2.0, 0.0, 0.0]];
        let err = render_curve(&input(&pts), &curve_args(Format::Csv, false)).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INPUT);
        assert!(render_curve(&input(&pts), &curve_args(Format::Csv, true)).is_ok());
    }

    #[test]
    fn svg_needs_coplanar_points() {
        let flat = [[0.0, 0.0, 1.0], [1.0, 1.0, 1.0], [2.0, 0.0, 1.0], [3.0, 1.0, 1.0]];
        let svg = render_curve(&input(&flat), &curve_args(Format::Svg, false)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        let bent = [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [2.0, 0.0, 0.0], [3.0, 1.0, 1.0]];
        let err = render_curve(&input(&bent), &curve_args(Format::Svg, false)).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INPUT);
        assert!(is_coplanar(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [5.0, 0.0, 0.0]].map(Euclidean3::from)));
    }

    #[test]
    fn inspect_report() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let pts = [[1.0, 0.0, 0.0], [s, s, 0.0], [0.0, 1.0, 0.0], [-s, s, 0.0], [-1.0, 0.0, 0.0]];
        let rep = inspect(&input(&pts), false).unwrap();
        let lines: Vec<&str> = rep.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.contains("radius 1.000000000000")));
        assert!(lines[0].ends_with("theta 0.000000000000"));
        assert!(lines[2].ends_with("theta -"));
        let line = inspect(&input(&[[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [2.0, 2.0, 2.0]]), false).unwrap();
        assert!(line.contains("radius line"));
    }

    #[test]
    fn surface_counts() {
        let f = InputFile {
            points: vec![[1.0, 0.0, 0.0], [-0.5, 0.8660254037844386, 0.0], [-0.5, -0.8660254037844386, 0.0]],
            apexes: Some(vec![[0.0, 0.0, 0.5], [0.1, 0.0, 0.6], [0.0, 0.1, 0.4]]),
        };
        for (n, v, fc) in [(1, 3, 1), (16, 153, 256)] {
            let args = SurfaceArgs {
                input: PathBuf::from("-"),
                subdiv: n,
                format: Format::Obj,
                output: None,
            };
            let obj = render_surface(&f, &args).unwrap();
            assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), v);
            assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), fc);
        }
    }
}
