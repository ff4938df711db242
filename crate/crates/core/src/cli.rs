//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when a computation or I/O
//! step fails. Data goes to files or the output stream, diagnostics to the
//! error stream.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{kernel_power_sum, kernel_sum_bound, tail_bound};
use crate::corpus::{
    make_counterexample, make_shifted_sinc, make_sinc_sq_product, make_tilde_f, normalize_to_pi,
    sample_function, CorpusFunction, Family,
};
use crate::error::Error;
use crate::kernels::{Complex, ComplexPoint};
use crate::lattice::{enum_multi_indices, Bandwidth, LatticeSpacing, MultiIndex, TruncationWindow};
use crate::reconstruct::{Method, Series};
use crate::sampleio::{read_samples, write_field, write_samples, Grid, SampleSet};

/// Comma-separated reals; `pi` expands to the double nearest pi.
#[derive(Debug, Clone)]
struct Reals(Vec<f64>);

#[derive(Debug, Clone)]
struct Radii(Vec<u32>);

/// Comma-separated `start:stop:step` axes.
#[derive(Debug, Clone)]
struct GridSpec(Vec<Vec<f64>>);

fn parse_real(token: &str) -> Result<f64, String> {
    let v = match token.trim() {
        "pi" => PI,
        "-pi" => -PI,
        t => t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{token:?} is not finite"))
    }
}

fn parse_reals(s: &str) -> Result<Reals, String> {
    s.split(',')
        .map(parse_real)
        .collect::<Result<_, _>>()
        .map(Reals)
}

fn parse_radii(s: &str) -> Result<Radii, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Radii)
}

/// Inclusive of `start`; inclusive of `stop` when `(stop - start)/step` is an
/// integer within `1e-9`.
fn parse_axis(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("axis {s:?} is not start:stop:step"));
    };
    let (start, stop, step) = (parse_real(start)?, parse_real(stop)?, parse_real(step)?);
    if !(step > 0.0) || stop < start {
        return Err(format!("axis {s:?} needs step > 0 and stop >= start"));
    }
    let ratio = (stop - start) / step;
    let nearest = ratio.round();
    let last = if (ratio - nearest).abs() <= 1e-9 {
        nearest
    } else {
        ratio.floor()
    };
    if last > 1e7 {
        return Err(format!("axis {s:?} has too many points"));
    }
    Ok((0..=last as u64).map(|i| start + i as f64 * step).collect())
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    s.split(',')
        .map(parse_axis)
        .collect::<Result<_, _>>()
        .map(GridSpec)
}

fn parse_multi_index(s: &str) -> Result<MultiIndex, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "bandsample",
    about = "Sampling series for multidimensional bandlimited functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a corpus function and its partials on a lattice window
    Sample(SampleArgs),
    /// Evaluate a series from a sample file on a grid and write CSV
    Reconstruct(ReconstructArgs),
    /// Compare a reconstruction with the corpus function it was sampled from
    Compare(CompareArgs),
    /// Report a truncation certificate for one channel
    Bound(BoundArgs),
    /// Show the legacy two-dimensional formula annihilating a nonzero function
    DemoCounterexample(DemoCounterexampleArgs),
    /// Show the full series against the series with one channel dropped
    DemoTildeF(DemoTildeFArgs),
    /// Audit windowed power sums of the sinc kernel against their uniform bound
    KernelCheck(KernelCheckArgs),
}

#[derive(Debug, Clone, Args)]
struct CorpusArgs {
    /// Family: sinc-sq-product, shifted-sinc, counterexample, tilde-f
    #[arg(long, value_parser = parse_family)]
    corpus: Family,
    /// Per-axis shift for shifted-sinc (default all zero)
    #[arg(long, value_parser = parse_reals, allow_hyphen_values = true)]
    shift: Option<Reals>,
    /// Surviving channel of tilde-f as a bit string, axis 1 first
    #[arg(long, value_parser = parse_multi_index)]
    k_tilde: Option<MultiIndex>,
    /// Bump sharpness for counterexample and tilde-f, clamped to (0, 1]
    #[arg(long, default_value_t = 1.0)]
    sharpness: f64,
    /// Rescale to bandwidth (pi, ..., pi) before sampling
    #[arg(long)]
    normalize: bool,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Bandwidth per axis, comma-separated (`pi` accepted)
    #[arg(long, value_parser = parse_reals)]
    sigma: Reals,
    /// Window radius per axis
    #[arg(long, value_parser = parse_radii)]
    tau: Radii,
    /// Lattice factor: 1 samples values on (pi/sigma)Z^n, 2 values and all mixed partials on (2pi/sigma)Z^n
    #[arg(long, default_value_t = 2)]
    theta: u8,
    /// Output file (default: output stream)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    /// Sample file
    #[arg(long)]
    samples: PathBuf,
    /// Series: wks, hermite1, hermite-nd, legacy2d
    #[arg(long, value_parser = parse_method)]
    method: Method,
    /// Evaluation grid, start:stop:step per axis, comma-separated
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: GridSpec,
    /// Drop one channel from the hermite-nd series
    #[arg(long, value_parser = parse_multi_index)]
    drop_channel: Option<MultiIndex>,
    /// Output CSV file (default: output stream)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Sample file
    #[arg(long)]
    samples: PathBuf,
    /// Series: wks, hermite1, hermite-nd, legacy2d
    #[arg(long, value_parser = parse_method)]
    method: Method,
    /// Evaluation grid, start:stop:step per axis, comma-separated
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: GridSpec,
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Sample file (theta = 2)
    #[arg(long)]
    samples: PathBuf,
    /// Channel as a bit string, axis 1 first
    #[arg(long, value_parser = parse_multi_index)]
    k: MultiIndex,
    /// Kept window radius per axis
    #[arg(long, value_parser = parse_radii)]
    tau_inner: Radii,
    /// Hölder exponent (default max(p, 2))
    #[arg(long)]
    p1: Option<f64>,
    /// Probe grid, start:stop:step per axis, comma-separated
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    probe_grid: GridSpec,
}

#[derive(Debug, Args)]
struct DemoCounterexampleArgs {
    /// Bandwidth per axis (two axes)
    #[arg(long, value_parser = parse_reals)]
    sigma: Reals,
    /// Window radius per axis
    #[arg(long, value_parser = parse_radii)]
    tau: Radii,
    /// Probe grid (default -2:2:0.25 on each axis)
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// Bump sharpness, clamped to (0, 1]
    #[arg(long, default_value_t = 1.0)]
    sharpness: f64,
}

#[derive(Debug, Args)]
struct DemoTildeFArgs {
    /// Bandwidth per axis
    #[arg(long, value_parser = parse_reals)]
    sigma: Reals,
    /// Window radius per axis
    #[arg(long, value_parser = parse_radii)]
    tau: Radii,
    /// Surviving channel as a bit string, axis 1 first
    #[arg(long, value_parser = parse_multi_index)]
    k_tilde: MultiIndex,
    /// Probe grid (default -2:2:0.25 on each axis)
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// Bump sharpness, clamped to (0, 1]
    #[arg(long, default_value_t = 1.0)]
    sharpness: f64,
}

#[derive(Debug, Args)]
struct KernelCheckArgs {
    /// Exponents r > 1, comma-separated
    #[arg(long, value_parser = parse_reals, default_value = "1.5,2,3")]
    r: Reals,
    /// Number of random (a, x) pairs per exponent
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    /// Window radius of the sums
    #[arg(long, default_value_t = 10_000)]
    radius: u32,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(Error::Io(e))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the tool on `args` (without the program name) using the process streams.
pub fn run(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the tool with explicit output and error streams.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("bandsample".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let result = match cli.command {
        Command::Sample(a) => sample(a, out),
        Command::Reconstruct(a) => reconstruct(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Bound(a) => bound(a, out),
        Command::DemoCounterexample(a) => demo_counterexample(a, out),
        Command::DemoTildeF(a) => demo_tilde_f(a, out),
        Command::KernelCheck(a) => kernel_check(a, out, err),
    };
    let result = result.and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn build_corpus(
    args: &CorpusArgs,
    sigma: &Bandwidth,
) -> std::result::Result<CorpusFunction, Failure> {
    let n = sigma.dim();
    let f = match args.corpus {
        Family::SincSqProduct => make_sinc_sq_product(sigma),
        Family::ShiftedSinc => {
            let shift = args.shift.clone().map_or_else(|| vec![0.0; n], |s| s.0);
            make_shifted_sinc(sigma, &shift)?
        }
        Family::Counterexample => make_counterexample(sigma, args.sharpness)?,
        Family::TildeF => {
            let k = args
                .k_tilde
                .ok_or_else(|| Failure::Usage("tilde-f needs --k-tilde".into()))?;
            make_tilde_f(sigma, &k, args.sharpness)?
        }
    };
    Ok(if args.normalize {
        normalize_to_pi(&f)
    } else {
        f
    })
}

fn bandwidth(sigma: &Reals) -> std::result::Result<Bandwidth, Failure> {
    Ok(Bandwidth::new(sigma.0.clone())?)
}

fn window(tau: &Radii, dim: usize) -> std::result::Result<TruncationWindow, Failure> {
    if tau.0.len() != dim {
        return Err(Failure::Usage(format!(
            "expected {dim} window radii, got {}",
            tau.0.len()
        )));
    }
    Ok(TruncationWindow::new(tau.0.clone())?)
}

fn grid(spec: &GridSpec) -> std::result::Result<Grid, Failure> {
    Ok(Grid::new(spec.0.clone())?)
}

fn default_grid(spec: &Option<GridSpec>, dim: usize) -> std::result::Result<Grid, Failure> {
    match spec {
        Some(s) => grid(s),
        None => Ok(Grid::uniform(dim, -2.0, 2.0, 17)?),
    }
}

fn load(path: &Path) -> std::result::Result<SampleSet, Failure> {
    let file = File::open(path)?;
    Ok(read_samples(BufReader::new(file))?)
}

/// Writes through `body` to `path`, or to `out` when no path is given.
fn emit(
    path: &Option<PathBuf>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> crate::Result<()>,
) -> Outcome {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => body(out)?,
    }
    Ok(())
}

fn max_abs(values: &[Complex]) -> f64 {
    values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn eval_corpus(f: &CorpusFunction, grid: &Grid) -> crate::Result<Vec<Complex>> {
    grid.points()
        .map(|x| f.eval(&ComplexPoint::real(&x)))
        .collect()
}

fn sample(a: SampleArgs, out: &mut dyn Write) -> Outcome {
    let sigma = bandwidth(&a.sigma)?;
    let tau = window(&a.tau, sigma.dim())?;
    let spacing = LatticeSpacing::from_theta(a.theta).map_err(|e| Failure::Usage(e.to_string()))?;
    let f = build_corpus(&a.corpus, &sigma)?;
    let ks = match spacing {
        LatticeSpacing::Nyquist => vec![MultiIndex::zero(sigma.dim())?],
        LatticeSpacing::Double => enum_multi_indices(sigma.dim())?,
    };
    let set = sample_function(&f, spacing, &tau, &ks)?;
    emit(&a.out, out, |w| write_samples(&set, w))
}

fn reconstruct(a: ReconstructArgs, out: &mut dyn Write) -> Outcome {
    let set = load(&a.samples)?;
    let grid = grid(&a.grid)?;
    let values = Series::new(&set, a.method, a.drop_channel)?.eval_grid(&grid)?;
    emit(&a.out, out, |w| write_field(&values, &grid, set.kind(), w))
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> Outcome {
    let set = load(&a.samples)?;
    let f = build_corpus(&a.corpus, set.sigma())?;
    let grid = grid(&a.grid)?;
    let approx = Series::new(&set, a.method, None)?.eval_grid(&grid)?;
    let exact = eval_corpus(&f, &grid)?;
    let errors: Vec<f64> = approx
        .iter()
        .zip(&exact)
        .map(|(a, e)| (a - e).norm())
        .collect();
    let max = errors.iter().copied().fold(0.0, f64::max);
    let mean = errors.iter().sum::<f64>() / errors.len() as f64;
    writeln!(out, "method {}", a.method)?;
    writeln!(out, "points {}", errors.len())?;
    writeln!(out, "max_abs_error {max:.16e}")?;
    writeln!(out, "mean_abs_error {mean:.16e}")?;
    Ok(())
}

fn bound(a: BoundArgs, out: &mut dyn Write) -> Outcome {
    let set = load(&a.samples)?;
    let inner = window(&a.tau_inner, set.dim())?;
    let p1 = a.p1.unwrap_or(set.p().max(2.0));
    let report = tail_bound(&set, &a.k, &inner, p1, &grid(&a.probe_grid)?)?;
    write!(out, "{report}")?;
    Ok(())
}

fn demo_counterexample(a: DemoCounterexampleArgs, out: &mut dyn Write) -> Outcome {
    let sigma = bandwidth(&a.sigma)?;
    if sigma.dim() != 2 {
        return Err(Failure::Usage(
            "the legacy formula is two-dimensional; pass two bandwidths".into(),
        ));
    }
    let tau = window(&a.tau, 2)?;
    let grid = default_grid(&a.grid, 2)?;
    let f = make_counterexample(&sigma, a.sharpness)?;
    let set = sample_function(&f, LatticeSpacing::Double, &tau, &enum_multi_indices(2)?)?;
    let legacy = Series::new(&set, Method::Legacy2d, None)?.eval_grid(&grid)?;
    let full = Series::new(&set, Method::HermiteNd, None)?.eval_grid(&grid)?;
    let exact = eval_corpus(&f, &grid)?;
    writeln!(out, "points {}", grid.len())?;
    writeln!(out, "max_abs_legacy2d {:.16e}", max_abs(&legacy))?;
    writeln!(out, "max_abs_hermite_nd {:.16e}", max_abs(&full))?;
    writeln!(out, "max_abs_f {:.16e}", max_abs(&exact))?;
    Ok(())
}

fn demo_tilde_f(a: DemoTildeFArgs, out: &mut dyn Write) -> Outcome {
    let sigma = bandwidth(&a.sigma)?;
    let n = sigma.dim();
    let tau = window(&a.tau, n)?;
    let grid = default_grid(&a.grid, n)?;
    let f = make_tilde_f(&sigma, &a.k_tilde, a.sharpness)?;
    let set = sample_function(&f, LatticeSpacing::Double, &tau, &enum_multi_indices(n)?)?;
    let full = Series::new(&set, Method::HermiteNd, None)?.eval_grid(&grid)?;
    let dropped = Series::new(&set, Method::HermiteNd, Some(a.k_tilde))?.eval_grid(&grid)?;
    let exact = eval_corpus(&f, &grid)?;
    let err: Vec<Complex> = full.iter().zip(&exact).map(|(a, e)| a - e).collect();
    writeln!(out, "k_tilde {}", a.k_tilde)?;
    writeln!(out, "points {}", grid.len())?;
    writeln!(out, "max_abs_dropped {:.16e}", max_abs(&dropped))?;
    writeln!(out, "max_abs_full {:.16e}", max_abs(&full))?;
    writeln!(out, "max_abs_f {:.16e}", max_abs(&exact))?;
    writeln!(out, "max_error_full {:.16e}", max_abs(&err))?;
    Ok(())
}

fn kernel_check(a: KernelCheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut violated = false;
    for &r in &a.r.0 {
        let bound = kernel_sum_bound(r, 1)?;
        let mut max_sum = 0.0_f64;
        let mut min_sum = f64::INFINITY;
        for _ in 0..a.pairs {
            let scale: f64 = rng.gen_range(0.25..4.0);
            let x: f64 = rng.gen_range(-10.0..10.0);
            let s = kernel_power_sum(scale, x, r, a.radius);
            max_sum = max_sum.max(s);
            min_sum = min_sum.min(s);
        }
        let ok = max_sum <= bound + 1e-6;
        violated |= !ok;
        writeln!(
            out,
            "r {r} bound {bound:.16e} min_sum {min_sum:.16e} max_sum {max_sum:.16e} {}",
            if ok { "pass" } else { "fail" }
        )?;
    }
    if violated {
        writeln!(err, "kernel sums exceeded their bound")?;
        return Err(Failure::Compute(Error::InvalidArgument(
            "kernel bound violated".into(),
        )));
    }
    Ok(())
}
