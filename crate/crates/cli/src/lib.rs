//! Command-line front end for `fsq-core`.
//!
//! [`run`] parses arguments, computes the complete output and only then
//! writes it, so a failing command leaves standard output empty.

pub mod emit;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use fsq_core::constants::ELECTRON_MASS;
use fsq_core::fiber::{lp_solve, lp_solve_all, Method, RadialProfile};
use fsq_core::mdr::{find_resonances, response_trace, SphereSystem, DEFAULT_PROMINENCE};
use fsq_core::numerics::DEFAULT_ROOT_TOL;
use fsq_core::waveguide::{
    cutoff_table, dispersion, dispersion_sweep, Geometry, ModeIndex, Polarization,
};
use fsq_core::wavepacket::{indistinguishability_report, GaussianPacket};
use fsq_core::{debroglie, quanta, PhysicalConstants};

pub use emit::{emit, Format, OutputSpec, Shape};

/// Environment variable holding an absolute root tolerance for the fiber solvers.
pub const TOL_ENV: &str = "FSQ_TOL";

const PC: PhysicalConstants = PhysicalConstants::CODATA2018;

#[derive(Debug, Parser)]
#[command(
    name = "fsq",
    version,
    about = "Guided-wave and resonance calculators",
    propagate_version = true
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Significant digits of every float, 6 to 17
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(6..=17))]
    precision: u8,
    /// Write to this file instead of standard output
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dispersion of one guide mode at one frequency or over a sweep
    Dispersion(DispersionArgs),
    /// Lowest-cutoff modes of a guide
    Modes(ModesArgs),
    /// Field quanta bookkeeping
    #[command(subcommand)]
    Quanta(QuantaCommand),
    /// Wave packets
    #[command(subcommand)]
    Packet(PacketCommand),
    /// Massive particle as a guided mode
    Debroglie(DebroglieArgs),
    /// Optical fiber LP modes
    #[command(subcommand)]
    Fiber(FiberCommand),
    /// Dielectric sphere resonances
    #[command(subcommand)]
    Mdr(MdrCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeometryKind {
    Rectangular,
    Circular,
}

#[derive(Debug, Args)]
struct GuideArgs {
    #[arg(long, value_enum, default_value_t = GeometryKind::Rectangular)]
    geometry: GeometryKind,
    /// Broad wall of a rectangular guide, m
    #[arg(long)]
    a: Option<f64>,
    /// Narrow wall of a rectangular guide, m
    #[arg(long)]
    b: Option<f64>,
    /// Radius of a circular guide, m
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct FrequencyArgs {
    /// Frequency, Hz
    #[arg(long)]
    freq: Option<f64>,
    /// Angular frequency, rad/s
    #[arg(long)]
    omega: Option<f64>,
}

#[derive(Debug, Args)]
struct DispersionArgs {
    #[command(flatten)]
    guide: GuideArgs,
    /// Mode label such as TE10 or TM_12_3
    #[arg(long, default_value = "TE10")]
    mode: String,
    #[command(flatten)]
    frequency: FrequencyArgs,
    /// Sweep end frequency, Hz
    #[arg(long, conflicts_with = "omega_hi")]
    freq_hi: Option<f64>,
    /// Sweep end angular frequency, rad/s
    #[arg(long)]
    omega_hi: Option<f64>,
    /// Sweep points, endpoints included
    #[arg(long, default_value_t = 11)]
    samples: usize,
}

#[derive(Debug, Args)]
struct ModesArgs {
    #[command(flatten)]
    guide: GuideArgs,
    #[arg(long, default_value_t = 10)]
    count: usize,
}

#[derive(Debug, Subcommand)]
enum QuantaCommand {
    /// Stationary half-wavelength cell of a propagating mode
    Cell(CellArgs),
    /// Fine-structure constant and its modal counterpart
    Alpha(AlphaArgs),
    /// Photon momentum in a dispersive medium
    Momentum(MomentumArgs),
}

#[derive(Debug, Args)]
struct CellArgs {
    #[command(flatten)]
    guide: GuideArgs,
    #[arg(long, default_value = "TE10")]
    mode: String,
    #[command(flatten)]
    frequency: FrequencyArgs,
}

#[derive(Debug, Args)]
struct AlphaArgs {
    /// Ratio of guide to free-space wavenumber
    #[arg(long, default_value_t = 1.0)]
    kg_over_k0: f64,
    #[arg(long, default_value = "TE")]
    polarization: String,
}

#[derive(Debug, Args)]
struct MomentumArgs {
    #[command(flatten)]
    frequency: FrequencyArgs,
    #[arg(long, default_value_t = 1.0)]
    n_phase: f64,
    #[arg(long, default_value_t = 1.0)]
    n_group: f64,
}

#[derive(Debug, Subcommand)]
enum PacketCommand {
    /// Source and finite-mode views of a Gaussian packet
    Equiv(EquivArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("carrier").required(true).args(["wavelength", "k0"])))]
#[command(group(ArgGroup::new("width").required(true).args(["q", "a_var"])))]
struct EquivArgs {
    /// Carrier wavelength, m
    #[arg(long)]
    wavelength: Option<f64>,
    /// Carrier wavenumber, rad/m
    #[arg(long)]
    k0: Option<f64>,
    /// Quality factor
    #[arg(long)]
    q: Option<f64>,
    /// Gaussian spectral parameter, rad^2/m^2
    #[arg(long)]
    a_var: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("state").required(true).args(["velocity", "beta", "wavenumber", "grid"])))]
struct DebroglieArgs {
    /// Rest mass, kg (electron by default)
    #[arg(long, default_value_t = ELECTRON_MASS)]
    mass: f64,
    /// Speed, m/s
    #[arg(long)]
    velocity: Option<f64>,
    /// Speed as a fraction of c
    #[arg(long)]
    beta: Option<f64>,
    /// Guide wavenumber, rad/m
    #[arg(long)]
    wavenumber: Option<f64>,
    /// N speeds evenly spaced strictly between 0 and c
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum FiberCommand {
    /// Guided LP modes
    Solve(FiberArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileChoice {
    Step,
    Tabulated,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodChoice {
    Analytic,
    Shooting,
}

#[derive(Debug, Args)]
struct FiberArgs {
    #[arg(long, value_enum, default_value_t = ProfileChoice::Step)]
    profile: ProfileChoice,
    #[arg(long)]
    n1: Option<f64>,
    #[arg(long)]
    n2: Option<f64>,
    /// Core radius, m
    #[arg(long)]
    core_radius: Option<f64>,
    /// Two-column CSV of radius (m) and index
    #[arg(long)]
    profile_csv: Option<PathBuf>,
    /// Vacuum wavelength, m
    #[arg(long)]
    wavelength: f64,
    /// Azimuthal order; all orders when absent
    #[arg(long)]
    l: Option<u32>,
    #[arg(long, value_enum)]
    method: Option<MethodChoice>,
}

#[derive(Debug, Subcommand)]
enum MdrCommand {
    /// Scan the TE response for resonances
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Angular order
    #[arg(long)]
    nu: u32,
    /// Refractive index of the sphere
    #[arg(long)]
    index: f64,
    /// Size-parameter window as lo:hi
    #[arg(long, value_parser = parse_range)]
    x_range: (f64, f64),
    #[arg(long, default_value_t = 20000)]
    samples: usize,
    /// Peak threshold in units of the median response
    #[arg(long, default_value_t = DEFAULT_PROMINENCE)]
    prominence: f64,
    /// Sphere radius, m
    #[arg(long, default_value_t = 1e-6)]
    radius: f64,
    /// Also write the sampled response as CSV here
    #[arg(long)]
    trace: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got '{s}'"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    Ok((num(lo)?, num(hi)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct AlphaRecord {
    pub alpha: f64,
    pub inverse_alpha: f64,
    pub kg_over_k0: f64,
    pub polarization: Polarization,
    pub modal_alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct TracePoint {
    pub x: f64,
    pub response: f64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(fsq_core::Error),
    Io(String),
}

impl From<fsq_core::Error> for Failure {
    fn from(e: fsq_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(format!("serialization failed: {e}"))
    }
}

/// Finished output of one invocation.
struct Rendered {
    main: String,
    side_files: Vec<(PathBuf, String)>,
}

impl Rendered {
    fn new(main: String) -> Self {
        Rendered {
            main,
            side_files: Vec::new(),
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code: 0 on success, 1 when a computation fails, 2 on a usage error.
/// Reads the root tolerance override from the environment.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let tol = std::env::var(TOL_ENV).ok();
    run_with_tolerance(argv, tol.as_deref(), stdout, stderr)
}

/// [`run`] with the tolerance override passed in instead of read from the
/// environment.
pub fn run_with_tolerance<I, T>(
    argv: I,
    tol: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            };
        }
    };
    let spec = OutputSpec {
        format: cli.format,
        destination: cli.output.clone(),
        precision: cli.precision as usize,
    };
    let result = parse_tolerance(tol)
        .and_then(|tol| execute(&cli.command, &spec, tol))
        .and_then(|r| deliver(r, &spec, stdout));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(
                stderr,
                "error: {msg}\n\nFor more information, try '--help'."
            );
            2
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(stderr, "{e}");
            1
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "IoError: {msg}");
            1
        }
    }
}

fn parse_tolerance(raw: Option<&str>) -> Result<f64, Failure> {
    match raw {
        None => Ok(DEFAULT_ROOT_TOL),
        Some(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(domain(format!("{TOL_ENV} must be a positive number, got '{s}'")).into()),
        },
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn deliver(r: Rendered, spec: &OutputSpec, stdout: &mut dyn Write) -> Result<(), Failure> {
    for (path, text) in &r.side_files {
        write_file(path, text)?;
    }
    match &spec.destination {
        Some(path) => write_file(path, &r.main),
        None => stdout
            .write_all(r.main.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::Io(format!("standard output: {e}"))),
    }
}

fn guide(g: &GuideArgs) -> Result<Geometry, Failure> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("{flag} is required for this geometry")))
    };
    Ok(match g.geometry {
        GeometryKind::Rectangular => Geometry::Rectangular {
            a: need(g.a, "--a")?,
            b: need(g.b, "--b")?,
        },
        GeometryKind::Circular => Geometry::Circular {
            radius: need(g.radius, "--radius")?,
        },
    })
}

fn omega(f: &FrequencyArgs) -> f64 {
    match (f.freq, f.omega) {
        (Some(hz), _) => 2.0 * std::f64::consts::PI * hz,
        (None, Some(w)) => w,
        (None, None) => unreachable!("clap enforces one of --freq and --omega"),
    }
}

fn mode(label: &str) -> Result<ModeIndex, Failure> {
    Ok(label.parse::<ModeIndex>()?)
}

fn execute(cmd: &Command, spec: &OutputSpec, tol: f64) -> Result<Rendered, Failure> {
    let one = |text: serde_json::Result<String>| -> Result<Rendered, Failure> {
        Ok(Rendered::new(text?))
    };
    match cmd {
        Command::Dispersion(args) => {
            let geom = guide(&args.guide)?;
            let m = mode(&args.mode)?;
            geom.check_mode(m)?;
            let w = omega(&args.frequency);
            let hi = args
                .freq_hi
                .map(|hz| 2.0 * std::f64::consts::PI * hz)
                .or(args.omega_hi);
            match hi {
                None => one(emit(&[dispersion(geom, m, w)?], Shape::One, spec)),
                Some(hi) => one(emit(
                    &dispersion_sweep(geom, m, w, hi, args.samples)?,
                    Shape::Many,
                    spec,
                )),
            }
        }
        Command::Modes(args) => one(emit(
            &cutoff_table(guide(&args.guide)?, args.count)?,
            Shape::Many,
            spec,
        )),
        Command::Quanta(QuantaCommand::Cell(args)) => {
            let geom = guide(&args.guide)?;
            let m = mode(&args.mode)?;
            geom.check_mode(m)?;
            let cell = quanta::build_cell(&PC, m, geom, omega(&args.frequency))?;
            one(emit(&[cell], Shape::One, spec))
        }
        Command::Quanta(QuantaCommand::Alpha(args)) => {
            let pol: Polarization = args.polarization.parse()?;
            let alpha = quanta::fine_structure_constant(&PC);
            let record = AlphaRecord {
                alpha,
                inverse_alpha: 1.0 / alpha,
                kg_over_k0: args.kg_over_k0,
                polarization: pol,
                modal_alpha: quanta::modal_fine_structure(&PC, args.kg_over_k0, pol)?,
            };
            one(emit(&[record], Shape::One, spec))
        }
        Command::Quanta(QuantaCommand::Momentum(args)) => {
            let w = omega(&args.frequency);
            if !(w > 0.0 && args.n_phase > 0.0 && args.n_group > 0.0) {
                return Err(domain("frequency and indices must be positive").into());
            }
            one(emit(
                &[quanta::photon_momentum(&PC, w, args.n_phase, args.n_group)],
                Shape::One,
                spec,
            ))
        }
        Command::Packet(PacketCommand::Equiv(args)) => {
            let k0 = match (args.k0, args.wavelength) {
                (Some(k), _) => k,
                (None, Some(l)) if l > 0.0 => 2.0 * std::f64::consts::PI / l,
                (None, l) => {
                    return Err(domain(format!("wavelength must be positive, got {l:?}")).into())
                }
            };
            let packet = match (args.q, args.a_var) {
                (Some(q), _) => GaussianPacket::from_quality(args.amplitude, k0, q)?,
                (None, Some(a)) => GaussianPacket::new(args.amplitude, k0, a)?,
                (None, None) => unreachable!("clap enforces one of --q and --a-var"),
            };
            one(emit(
                &[indistinguishability_report(&packet)?],
                Shape::One,
                spec,
            ))
        }
        Command::Debroglie(args) => {
            let m0 = args.mass;
            if let Some(n) = args.grid {
                if n == 0 {
                    return Err(domain("grid needs at least one point").into());
                }
                let states = (1..=n)
                    .map(|i| debroglie::from_velocity(&PC, m0, PC.c * i as f64 / (n + 1) as f64))
                    .collect::<fsq_core::Result<Vec<_>>>()?;
                return one(emit(&states, Shape::Many, spec));
            }
            let state = match (args.velocity, args.beta, args.wavenumber) {
                (Some(v), _, _) => debroglie::from_velocity(&PC, m0, v)?,
                (_, Some(b), _) => debroglie::from_velocity(&PC, m0, b * PC.c)?,
                (_, _, Some(k)) => debroglie::from_wavenumber(&PC, m0, k)?,
                _ => unreachable!("clap enforces one state selector"),
            };
            one(emit(&[state], Shape::One, spec))
        }
        Command::Fiber(FiberCommand::Solve(args)) => {
            let profile = match args.profile {
                ProfileChoice::Step => {
                    let need = |v: Option<f64>, flag: &str| {
                        v.ok_or_else(|| {
                            Failure::Usage(format!("{flag} is required for a step profile"))
                        })
                    };
                    RadialProfile::step(
                        need(args.n1, "--n1")?,
                        need(args.n2, "--n2")?,
                        need(args.core_radius, "--core-radius")?,
                    )?
                }
                ProfileChoice::Tabulated => {
                    let path = args.profile_csv.as_deref().ok_or_else(|| {
                        Failure::Usage("--profile-csv is required for a tabulated profile".into())
                    })?;
                    RadialProfile::from_csv_path(path)?
                }
            };
            if !(args.wavelength > 0.0 && args.wavelength.is_finite()) {
                return Err(domain(format!(
                    "wavelength must be positive, got {}",
                    args.wavelength
                ))
                .into());
            }
            let k0 = 2.0 * std::f64::consts::PI / args.wavelength;
            let method = match args.method {
                Some(MethodChoice::Analytic) => Method::Analytic,
                Some(MethodChoice::Shooting) => Method::Shooting,
                None if profile.is_step() => Method::Analytic,
                None => Method::Shooting,
            };
            let modes = match args.l {
                Some(l) => lp_solve(&profile, l, k0, method, tol)?,
                None => lp_solve_all(&profile, k0, method, tol)?,
            };
            one(emit(&modes, Shape::Many, spec))
        }
        Command::Mdr(MdrCommand::Scan(args)) => {
            let sys = SphereSystem::new(args.index, args.radius, args.nu)?;
            let (lo, hi) = args.x_range;
            let records = find_resonances(&sys, lo, hi, args.samples, args.prominence)?;
            let mut out = Rendered::new(emit(&records, Shape::Many, spec)?);
            if let Some(path) = &args.trace {
                let trace: Vec<TracePoint> = response_trace(&sys, lo, hi, args.samples)?
                    .into_iter()
                    .map(|(x, response)| TracePoint { x, response })
                    .collect();
                let csv = OutputSpec {
                    format: Format::Csv,
                    ..spec.clone()
                };
                out.side_files
                    .push((path.clone(), emit(&trace, Shape::Many, &csv)?));
            }
            Ok(out)
        }
    }
}

fn domain(msg: impl Into<String>) -> fsq_core::Error {
    fsq_core::Error::DomainError(msg.into())
}
