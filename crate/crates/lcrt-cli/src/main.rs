//! `lcrt`: generate test images, run canonical transforms and their
//! directional components over image files, sweep edge-detection
//! parameters, and benchmark the fast path against the quadratic oracle.
//!
//! Every command is deterministic for a given invocation. Relative
//! output paths are resolved under `$LCRT_OUT_DIR` when that variable is
//! set; absolute paths are used as given. Exit code is 0 only when every
//! requested output was written.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lcrt::{
    gaussian_test_image, hlcht_apply, lct_forward_2d, lcrt_apply, lcrt_apply_oracle, read_image,
    run_sweep, write_image, Axis, ComplexRaster, MetricsReport, ParamMatrix, ParamPair,
    RealRaster, SweepPlan,
};
use serde::Deserialize;

const OUT_DIR_ENV: &str = "LCRT_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "lcrt",
    version,
    about = "Canonical-transform image analysis and edge detection",
    after_help = "Relative output paths are created under $LCRT_OUT_DIR when it is set."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the centered Gaussian test image
    Gaussian(GaussianArgs),
    /// Forward 2D transform of an image; writes transform-domain components
    Lct(LctArgs),
    /// Directional Riesz-type component along one axis, with transform-domain companions
    Lcrt(LcrtArgs),
    /// Per-line Hilbert companion along one axis, with transform-domain companions
    Hlcht(HlchtArgs),
    /// Edge-detection sweep over parameter pairs from a config file
    Edge(EdgeArgs),
    /// Time the fast multiplier path against the quadratic oracle
    Bench(BenchArgs),
}

fn parse_even_size(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("bad size {s:?}: {e}"))?;
    if n < 2 || !n.is_multiple_of(2) {
        return Err(format!("size must be an even number of at least 2, got {n}"));
    }
    Ok(n)
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
    if !v.is_finite() || v <= 0.0 {
        return Err(format!("value must be positive and finite, got {v}"));
    }
    Ok(v)
}

fn parse_matrix(s: &str) -> Result<ParamMatrix, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated numbers a,b,c,d, got {} fields",
            parts.len()
        ));
    }
    let mut v = [0.0f64; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|e| format!("bad number {p:?}: {e}"))?;
    }
    ParamMatrix::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    let v: u8 = s.parse().map_err(|e| format!("bad axis {s:?}: {e}"))?;
    Axis::try_from(v)
}

fn parse_spacing(s: &str) -> Result<Spacing, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!(
            "expected two comma-separated spacings dx1,dx2, got {} fields",
            parts.len()
        ));
    }
    let mut v = [0.0f64; 2];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = parse_positive(p)?;
    }
    Ok(Spacing(v))
}

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let out: Vec<usize> = s
        .split(',')
        .map(|p| parse_even_size(p.trim()))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err("size list is empty".into());
    }
    Ok(Sizes(out))
}

/// Newtype wrappers so clap treats each comma list as one value.
#[derive(Clone)]
struct Spacing([f64; 2]);
#[derive(Clone)]
struct Sizes(Vec<usize>);

#[derive(Args)]
struct GaussianArgs {
    /// Image side length in pixels (even)
    #[arg(long, default_value = "400", value_parser = parse_even_size)]
    size: usize,
    /// Gaussian standard deviation in pixels
    #[arg(long, default_value = "50", value_parser = parse_positive)]
    sigma: f64,
    /// Output image path (.pgm for 8-bit, anything else for exact floats)
    #[arg(long, default_value = "gaussian.pgm")]
    out: PathBuf,
}

#[derive(Copy, Clone, ValueEnum)]
enum Emit {
    Amplitude,
    Real,
    Imag,
    All,
}

impl Emit {
    fn selected(self) -> &'static [Component] {
        match self {
            Emit::Amplitude => &[Component::Amplitude],
            Emit::Real => &[Component::Real],
            Emit::Imag => &[Component::Imag],
            Emit::All => &[Component::Amplitude, Component::Real, Component::Imag],
        }
    }
}

#[derive(Copy, Clone)]
enum Component {
    Amplitude,
    Real,
    Imag,
}

impl Component {
    fn name(self) -> &'static str {
        match self {
            Component::Amplitude => "amplitude",
            Component::Real => "real",
            Component::Imag => "imag",
        }
    }

    fn extract(self, r: &ComplexRaster) -> RealRaster {
        match self {
            Component::Amplitude => r.amplitude(),
            Component::Real => r.real_part(),
            Component::Imag => r.imag_part(),
        }
    }
}

#[derive(Args)]
struct LctArgs {
    /// Input image (.pgm/.ppm or the float container)
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Axis matrix a,b,c,d; repeat for a different second-axis matrix
    #[arg(long = "matrix", value_parser = parse_matrix, required = true)]
    matrix: Vec<ParamMatrix>,
    /// Output path prefix
    #[arg(long, value_name = "PREFIX")]
    out: PathBuf,
    /// Which transform-domain components to write
    #[arg(long, value_enum, default_value_t = Emit::All)]
    emit: Emit,
    /// Write exact float rasters instead of min-max normalized 8-bit PGM
    #[arg(long)]
    float: bool,
    /// Per-axis sample spacing dx1,dx2 (default unit extent, 1/n per axis)
    #[arg(long, value_parser = parse_spacing)]
    dx: Option<Spacing>,
}

#[derive(Args)]
struct LcrtArgs {
    /// Input image (.pgm/.ppm or the float container)
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Axis matrix a,b,c,d with a = d; repeat for a different second-axis matrix
    #[arg(long = "matrix", value_parser = parse_matrix, required = true)]
    matrix: Vec<ParamMatrix>,
    /// Axis of the directional component (1 or 2)
    #[arg(long, value_parser = parse_axis)]
    axis: Axis,
    /// Output path prefix
    #[arg(long, value_name = "PREFIX")]
    out: PathBuf,
    /// Write exact float rasters instead of min-max normalized 8-bit PGM
    #[arg(long)]
    float: bool,
    /// Per-axis sample spacing dx1,dx2 (default unit extent, 1/n per axis)
    #[arg(long, value_parser = parse_spacing)]
    dx: Option<Spacing>,
}

#[derive(Args)]
struct HlchtArgs {
    /// Input image (.pgm/.ppm or the float container)
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Line matrix a,b,c,d with a = d (used on both axes for the companions)
    #[arg(long = "matrix", value_parser = parse_matrix)]
    matrix: ParamMatrix,
    /// Axis the per-line operator runs along (1 or 2)
    #[arg(long, value_parser = parse_axis)]
    axis: Axis,
    /// Output path prefix
    #[arg(long, value_name = "PREFIX")]
    out: PathBuf,
    /// Write exact float rasters instead of min-max normalized 8-bit PGM
    #[arg(long)]
    float: bool,
    /// Per-axis sample spacing dx1,dx2 (default unit extent, 1/n per axis)
    #[arg(long, value_parser = parse_spacing)]
    dx: Option<Spacing>,
}

#[derive(Args)]
struct EdgeArgs {
    /// Input image, one or three channels
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Sweep config: TOML with [[sweep]] pair entries and optional dx
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory for edge maps and the manifest
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated even image sizes, e.g. 64,128,256
    #[arg(long, value_parser = parse_sizes)]
    sizes: Sizes,
    /// Output CSV path
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Axis matrix a,b,c,d with a = d; repeat for a different second-axis matrix
    #[arg(long = "matrix", value_parser = parse_matrix)]
    matrix: Vec<ParamMatrix>,
}

fn main() {
    env_logger::init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gaussian(args) => cmd_gaussian(args),
        Command::Lct(args) => cmd_lct(args),
        Command::Lcrt(args) => cmd_lcrt(args),
        Command::Hlcht(args) => cmd_hlcht(args),
        Command::Edge(args) => cmd_edge(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

/// Resolve a user-supplied output path against $LCRT_OUT_DIR.
fn resolve_out(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_raster(path: &Path, raster: &RealRaster) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating directory {}", parent.display()))?;
        }
    }
    write_image(path, raster).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn load_single_channel(path: &Path) -> Result<RealRaster> {
    let image = read_image(path).with_context(|| format!("reading {}", path.display()))?;
    if image.channels() != 1 {
        bail!(
            "{}: transform input must be single-channel, got {} channels",
            path.display(),
            image.channels()
        );
    }
    Ok(image)
}

fn lift(image: &RealRaster, dx: &Option<Spacing>) -> Result<ComplexRaster> {
    let lifted = match dx {
        Some(Spacing(dx)) => ComplexRaster::from_real_with_spacing(image, *dx),
        None => ComplexRaster::from_real(image),
    }?;
    Ok(lifted)
}

fn pair_from_matrices(matrices: &[ParamMatrix]) -> Result<ParamPair> {
    match matrices {
        [one] => Ok(ParamPair::isotropic(*one)),
        [first, second] => Ok(ParamPair::new(*first, *second)),
        _ => bail!(
            "--matrix may be given once (both axes) or twice, got {}",
            matrices.len()
        ),
    }
}

/// Write one component of a complex raster under `prefix-suffix.ext`:
/// min-max normalized 8-bit PGM, or the exact float container.
fn write_component(
    prefix: &Path,
    suffix: &str,
    raster: &ComplexRaster,
    component: Component,
    float: bool,
) -> Result<()> {
    let ext = if float { "lcrtf" } else { "pgm" };
    let name = format!(
        "{}-{suffix}.{ext}",
        prefix.file_name().map(|s| s.to_string_lossy()).unwrap_or_default()
    );
    let path = prefix.with_file_name(name);
    let values = component.extract(raster);
    let out = if float { values } else { values.normalize_unit() };
    write_raster(&path, &out)
}

fn cmd_gaussian(args: GaussianArgs) -> Result<()> {
    let image = gaussian_test_image(args.size, args.sigma);
    write_raster(&resolve_out(&args.out), &image)
}

fn cmd_lct(args: LctArgs) -> Result<()> {
    let pair = pair_from_matrices(&args.matrix)?;
    let image = load_single_channel(&args.input)?;
    let f = lift(&image, &args.dx)?;
    let spectrum = lct_forward_2d(&f, &pair)?;
    let prefix = resolve_out(&args.out);
    for &component in args.emit.selected() {
        write_component(&prefix, component.name(), &spectrum, component, args.float)?;
    }
    Ok(())
}

/// Shared tail of the two directional commands: write the spatial result
/// and its transform-domain companions.
fn write_directional_outputs(
    prefix: &Path,
    spatial: &ComplexRaster,
    pair: &ParamPair,
    float: bool,
) -> Result<()> {
    for component in [Component::Real, Component::Imag] {
        write_component(
            prefix,
            &format!("spatial-{}", component.name()),
            spatial,
            component,
            float,
        )?;
    }
    let spectrum = lct_forward_2d(spatial, pair)?;
    for component in [Component::Amplitude, Component::Real, Component::Imag] {
        write_component(
            prefix,
            &format!("lct-{}", component.name()),
            &spectrum,
            component,
            float,
        )?;
    }
    Ok(())
}

fn cmd_lcrt(args: LcrtArgs) -> Result<()> {
    let pair = pair_from_matrices(&args.matrix)?;
    let image = load_single_channel(&args.input)?;
    let f = lift(&image, &args.dx)?;
    let spatial = lcrt_apply(&f, &pair, args.axis)?;
    write_directional_outputs(&resolve_out(&args.out), &spatial, &pair, args.float)
}

fn cmd_hlcht(args: HlchtArgs) -> Result<()> {
    let image = load_single_channel(&args.input)?;
    let f = lift(&image, &args.dx)?;
    let spatial = hlcht_apply(&f, &args.matrix, args.axis)?;
    let pair = ParamPair::isotropic(args.matrix);
    write_directional_outputs(&resolve_out(&args.out), &spatial, &pair, args.float)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    /// Per-axis sample spacing; omitted means unit extent (1/n).
    dx: Option<[f64; 2]>,
    #[serde(rename = "sweep")]
    entries: Vec<SweepEntryConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepEntryConfig {
    /// Two axis matrices, each [a, b, c, d].
    pair: [[f64; 4]; 2],
}

fn report_value(report: &MetricsReport) -> toml::Value {
    let mut t = toml::value::Table::new();
    if let Some(ch) = report.channel {
        t.insert("channel".into(), (ch as i64).into());
    }
    for (i, s) in report.sharpness.iter().enumerate() {
        let key = format!("sharpness{}", i + 1);
        match s {
            Some(v) => t.insert(key, (*v).into()),
            None => t.insert(key, "undefined".into()),
        };
    }
    t.insert("global_mse".into(), report.global_mse.into());
    let rows: Vec<toml::Value> = report
        .subregion_mse
        .chunks(3)
        .map(|row| toml::Value::Array(row.iter().map(|v| (*v).into()).collect()))
        .collect();
    t.insert("subregion_mse".into(), toml::Value::Array(rows));
    toml::Value::Table(t)
}

fn matrix_value(m: &ParamMatrix) -> toml::Value {
    toml::Value::Array(vec![m.a().into(), m.b().into(), m.c().into(), m.d().into()])
}

fn cmd_edge(args: EdgeArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let config: SweepConfig = toml::from_str(&text)
        .with_context(|| format!("parsing {}", args.config.display()))?;
    if config.entries.is_empty() {
        bail!("{}: no [[sweep]] entries", args.config.display());
    }
    let mut pairs = Vec::with_capacity(config.entries.len());
    for (i, entry) in config.entries.iter().enumerate() {
        let [m1, m2] = entry.pair;
        let build = |v: [f64; 4]| {
            ParamMatrix::new(v[0], v[1], v[2], v[3])
                .with_context(|| format!("sweep entry {}", i + 1))
        };
        pairs.push(ParamPair::new(build(m1)?, build(m2)?));
    }
    let image = read_image(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let plan = SweepPlan {
        pairs,
        spacing: config.dx,
    };
    let entries = run_sweep(&image, &plan)?;

    let out_dir = resolve_out(&args.out);
    fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating directory {}", out_dir.display()))?;
    let ext = if image.channels() == 3 { "ppm" } else { "pgm" };
    let mut manifest = toml::value::Table::new();
    manifest.insert(
        "source".into(),
        args.input.display().to_string().into(),
    );
    let mut rows = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let name = format!("edge-{:02}.{ext}", i + 1);
        write_raster(&out_dir.join(&name), &entry.edge.map)?;
        let mut t = toml::value::Table::new();
        t.insert("index".into(), ((i + 1) as i64).into());
        t.insert("map".into(), name.into());
        t.insert(
            "pair".into(),
            toml::Value::Array(vec![
                matrix_value(&entry.edge.pair.m1),
                matrix_value(&entry.edge.pair.m2),
            ]),
        );
        t.insert(
            "reports".into(),
            toml::Value::Array(entry.reports.iter().map(report_value).collect()),
        );
        rows.push(toml::Value::Table(t));
    }
    manifest.insert("entry".into(), toml::Value::Array(rows));
    let path = out_dir.join("manifest.toml");
    fs::write(&path, toml::to_string(&toml::Value::Table(manifest))?)
        .with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let pair = if args.matrix.is_empty() {
        // A representative pair with nontrivial chirps on both axes.
        ParamPair::new(
            ParamMatrix::new(6.0, 50.0, 0.7, 6.0)?,
            ParamMatrix::new(3.0, 400.0, 0.02, 3.0)?,
        )
    } else {
        pair_from_matrices(&args.matrix)?
    };
    let mut csv = String::from("n,fast_ms,oracle_ms\n");
    for &n in &args.sizes.0 {
        let image = gaussian_test_image(n, n as f64 / 8.0);
        let f = ComplexRaster::from_real(&image)?;
        let fast = (0..3)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box(lcrt_apply(&f, &pair, Axis::Axis1)).ok();
                t.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min);
        let t = Instant::now();
        std::hint::black_box(lcrt_apply_oracle(&f, &pair, Axis::Axis1))?;
        let oracle = t.elapsed().as_secs_f64();
        csv.push_str(&format!(
            "{n},{:.3},{:.3}\n",
            fast * 1e3,
            oracle * 1e3
        ));
    }
    let path = resolve_out(&args.out);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating directory {}", parent.display()))?;
        }
    }
    fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}
