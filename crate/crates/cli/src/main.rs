mod config;
mod manifest;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flicker_fec::analysis::{
    failure_curve_to_csv, flicker_metrics, op_count, predict_scheme_curve, predictions_to_csv,
    rll_failure_curve, run_length_histogram, table1_mapping,
};
use flicker_fec::balancing::index_width;
use flicker_fec::polar::{construct_ga, shorten, CheckNode, ReliabilityProfile};
use flicker_fec::rll::{rll_redundancy, RedundancyScheme};
use flicker_fec::scheme::{Scheme, Variant};
use flicker_fec::sim::{curve_to_csv, format_sig, transmitted_frames, Simulator, StopRule};

use manifest::Manifest;

const DEFAULT_DESIGN_SNR_DB: f64 = 2.5;

/// Flicker-free polar coding for visible light links.
#[derive(Debug, Parser)]
#[command(name = "flickerfec", version, args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a polar code by Gaussian approximation.
    Construct(ConstructArgs),
    /// Monte-Carlo BER/FER curve.
    Simulate(SimulateArgs),
    /// Theoretical FER curve under SC decoding.
    Predict(PredictArgs),
    /// Run-length histogram and RLL failure rates of transmitted frames.
    Runs(RunsArgs),
    /// Redundancy of each line code for an N-bit payload.
    Redundancy(RedundancyArgs),
    /// Decoding operation counts.
    Complexity(ComplexityArgs),
    /// Longest-run period and switching frequency at an optical clock.
    Flicker(FlickerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Precision {
    F32,
    F64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckRule {
    Exact,
    MinSum,
}

impl CheckRule {
    fn name(self) -> &'static str {
        match self {
            CheckRule::Exact => "exact",
            CheckRule::MinSum => "min-sum",
        }
    }
}

#[derive(Debug, Args)]
struct ConstructArgs {
    /// Mother code length (power of two).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Design Eb/N0 in dB.
    #[arg(long, default_value_t = DEFAULT_DESIGN_SNR_DB, allow_negative_numbers = true)]
    design_snr_db: f64,
    /// Shorten to this many transmitted bits.
    #[arg(long)]
    shorten_to: Option<usize>,
    /// Code file to write.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SchemeArgs {
    #[arg(long, default_value = "proposed")]
    variant: Variant,
    /// Main polar code length; non-powers of two are shortened.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Length p' of the prefix code (proposed scheme only).
    #[arg(long)]
    prefix_n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DESIGN_SNR_DB, allow_negative_numbers = true)]
    design_snr_db: f64,
}

impl SchemeArgs {
    fn build(&self) -> Result<Scheme> {
        Ok(Scheme::design(
            self.variant,
            self.n,
            self.k,
            self.prefix_n,
            self.design_snr_db,
        )?)
    }

    fn describe(&self, m: Manifest) -> Manifest {
        m.with("variant", self.variant.to_string())
            .with_usize("n", self.n)
            .with_usize("k", self.k)
            .with_opt("prefix_n", self.prefix_n.map(|p| p as i64))
            .with("design_snr_db", self.design_snr_db)
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    #[arg(long, allow_negative_numbers = true)]
    ebno_start: f64,
    #[arg(long, allow_negative_numbers = true)]
    ebno_stop: f64,
    #[arg(long)]
    ebno_step: f64,
    #[arg(long)]
    min_frame_errors: u64,
    #[arg(long)]
    max_frames: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Precision::F64)]
    precision: Precision,
    #[arg(long, value_enum, default_value_t = CheckRule::Exact)]
    check_node: CheckRule,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    prefix_n: Option<usize>,
    /// Must equal the index width ⌈log2 N⌉.
    #[arg(long, requires = "prefix_n")]
    prefix_k: Option<usize>,
    /// Eb/N0 sweep `start:stop:step` in dB.
    #[arg(long, allow_hyphen_values = true)]
    ebno: String,
    #[arg(long, default_value_t = DEFAULT_DESIGN_SNR_DB, allow_negative_numbers = true)]
    design_snr_db: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunsArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    #[arg(long)]
    frames: u64,
    #[arg(long)]
    seed: u64,
    /// Histogram CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write RLL failure rates for l = 0..=max_l here.
    #[arg(long)]
    failure_out: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    max_l: usize,
    #[arg(long, default_value_t = 100)]
    min_failures: u64,
    /// Frame cap for the failure rates (defaults to --frames).
    #[arg(long)]
    max_frames: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct RedundancyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    prefix_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComplexityArgs {
    /// Single count for this scheme (1b2b, 4b6b or proposed) at --n.
    #[arg(long, requires = "n")]
    scheme: Option<RedundancyScheme>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 16)]
    prefix_n: usize,
    /// Information length for the rate-matched table.
    #[arg(long, default_value_t = 256)]
    k: usize,
    /// Overall rates for the rate-matched table.
    #[arg(long = "rate", default_values_t = [0.5, 0.25])]
    rates: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FlickerArgs {
    #[arg(long)]
    max_run: usize,
    #[arg(long)]
    clock_hz: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
fn sweep(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    ensure!(
        start.is_finite() && stop.is_finite(),
        "Eb/N0 bounds must be finite"
    );
    ensure!(
        step > 0.0 && step.is_finite(),
        "Eb/N0 step must be positive"
    );
    ensure!(stop >= start, "Eb/N0 stop {stop} is below start {start}");
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn parse_sweep(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad sweep `{text}`"))?;
    match parts[..] {
        [a] => sweep(a, a, 1.0),
        [a, b, step] => sweep(a, b, step),
        _ => bail!("sweep `{text}` must be start:stop:step"),
    }
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        ensure!(w >= 1, "--workers must be at least 1");
        builder = builder.num_threads(w);
    }
    Ok(builder.build()?)
}

/// Writes the whole text at once, or prints it.
fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn out_name(out: Option<&PathBuf>) -> Option<String> {
    out.map(|p| p.display().to_string())
}

fn construct(args: ConstructArgs) -> Result<()> {
    ensure!(args.k >= 1, "k must be at least 1");
    ensure!(args.k <= args.n, "k = {} exceeds n = {}", args.k, args.n);
    let length = args.shorten_to.unwrap_or(args.n);
    let rate = args.k as f64 / length as f64;
    let (mut spec, _) = construct_ga(args.n, args.k, args.design_snr_db, rate)?;
    if let Some(target) = args.shorten_to {
        spec = shorten(&spec, target)?;
    }
    let profile = ReliabilityProfile::evaluate(args.n, length, args.design_snr_db, rate);
    let mut table = String::from("index,mean,q,role\n");
    for i in 0..args.n {
        let role = if spec.shortened_set().contains(&i) {
            "shortened"
        } else if spec.frozen_mask()[i] {
            "frozen"
        } else {
            "info"
        };
        let mean = profile.means()[i];
        let mean = if mean.is_finite() {
            format_sig(mean)
        } else {
            "inf".into()
        };
        table.push_str(&format!(
            "{i},{mean},{},{role}\n",
            format_sig(profile.q_values()[i])
        ));
    }
    if let Some(path) = &args.out {
        fs::write(path, spec.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    let manifest = Manifest::new("construct")
        .with_usize("n", args.n)
        .with_usize("k", args.k)
        .with("design_snr_db", args.design_snr_db)
        .with_opt("shorten_to", args.shorten_to.map(|s| s as i64));
    print!(
        "{}",
        manifest.wrap(out_name(args.out.as_ref()).as_deref(), &table)
    );
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let scheme = args.scheme.build()?;
    let ebnos = sweep(args.ebno_start, args.ebno_stop, args.ebno_step)?;
    let stop = StopRule::new(args.min_frame_errors, args.max_frames)?;
    let check = match args.check_node {
        CheckRule::Exact => CheckNode::Exact,
        CheckRule::MinSum => CheckNode::MinSum,
    };
    let sim = Simulator::new(scheme.clone()).with_check_node(check);
    let points = pool(args.workers)?.install(|| match args.precision {
        Precision::F32 => sim.run_curve::<f32>(&ebnos, stop, args.seed),
        Precision::F64 => sim.run_curve::<f64>(&ebnos, stop, args.seed),
    })?;
    let manifest = args
        .scheme
        .describe(Manifest::new("simulate"))
        .with("ebno_start", args.ebno_start)
        .with("ebno_stop", args.ebno_stop)
        .with("ebno_step", args.ebno_step)
        .with_u64("min_frame_errors", args.min_frame_errors)
        .with_u64("max_frames", args.max_frames)
        .with_u64("seed", args.seed)
        .with(
            "precision",
            match args.precision {
                Precision::F32 => "f32",
                Precision::F64 => "f64",
            },
        )
        .with("check_node", args.check_node.name());
    emit(
        args.out.as_ref(),
        &manifest.wrap(
            out_name(args.out.as_ref()).as_deref(),
            &curve_to_csv(&scheme, &points),
        ),
    )
}

fn predict(args: PredictArgs) -> Result<()> {
    let variant = if args.prefix_n.is_some() {
        Variant::Proposed
    } else {
        Variant::Plain
    };
    if let Some(pk) = args.prefix_k {
        let width = index_width(args.n);
        ensure!(
            pk == width,
            "prefix k = {pk} must equal the balancing index width {width} for n = {}",
            args.n
        );
    }
    let scheme = Scheme::design(variant, args.n, args.k, args.prefix_n, args.design_snr_db)?;
    let ebnos = parse_sweep(&args.ebno)?;
    let points = predict_scheme_curve(&scheme, &ebnos)?;
    let manifest = Manifest::new("predict")
        .with_usize("n", args.n)
        .with_usize("k", args.k)
        .with_opt("prefix_n", args.prefix_n.map(|p| p as i64))
        .with_opt("prefix_k", args.prefix_k.map(|p| p as i64))
        .with("ebno", args.ebno.as_str())
        .with("design_snr_db", args.design_snr_db);
    emit(
        args.out.as_ref(),
        &manifest.wrap(
            out_name(args.out.as_ref()).as_deref(),
            &predictions_to_csv(&points),
        ),
    )
}

fn runs(args: RunsArgs) -> Result<()> {
    let scheme = args.scheme.build()?;
    let max_frames = args.max_frames.unwrap_or(args.frames);
    let source = transmitted_frames(&scheme, args.seed);
    let pool = pool(args.workers)?;
    let histogram = pool.install(|| run_length_histogram(&source, args.frames))?;
    let failures =
        match args.failure_out {
            Some(_) => Some(pool.install(|| {
                rll_failure_curve(&source, args.max_l, args.min_failures, max_frames)
            })?),
            None => None,
        };
    let manifest = args
        .scheme
        .describe(Manifest::new("runs"))
        .with_u64("frames", args.frames)
        .with_u64("seed", args.seed);
    let histogram_text = manifest.wrap(out_name(args.out.as_ref()).as_deref(), &histogram.to_csv());
    let failure_text = failures.map(|curve| {
        manifest
            .clone()
            .with_usize("max_l", args.max_l)
            .with_u64("min_failures", args.min_failures)
            .with_u64("max_frames", max_frames)
            .wrap(
                out_name(args.failure_out.as_ref()).as_deref(),
                &failure_curve_to_csv(&curve),
            )
    });
    emit(args.out.as_ref(), &histogram_text)?;
    if let (Some(path), Some(text)) = (&args.failure_out, failure_text) {
        emit(Some(path), &text)?;
    }
    eprintln!(
        "runs shorter than 8: {:.4} of runs, {:.4} of bits; longest run {}",
        histogram.fraction_of_runs_below(8),
        histogram.fraction_of_bits_below(8),
        histogram.max_run()
    );
    Ok(())
}

fn redundancy(args: RedundancyArgs) -> Result<()> {
    let mut body = String::from("scheme,redundancy\n");
    for scheme in RedundancyScheme::ALL {
        let r = rll_redundancy(scheme, args.n, Some(args.prefix_n))?;
        body.push_str(&format!("{scheme},{}\n", format_sig(r)));
    }
    let manifest = Manifest::new("redundancy")
        .with_usize("n", args.n)
        .with_usize("prefix_n", args.prefix_n);
    emit(
        args.out.as_ref(),
        &manifest.wrap(out_name(args.out.as_ref()).as_deref(), &body),
    )
}

fn complexity(args: ComplexityArgs) -> Result<()> {
    let mut body = String::from("scheme,rate,N,p_prime,ops\n");
    let mut manifest = Manifest::new("complexity").with_usize("prefix_n", args.prefix_n);
    if let Some(scheme) = args.scheme {
        let n = args.n.expect("clap enforces --n with --scheme");
        let p = if scheme == RedundancyScheme::Proposed {
            args.prefix_n
        } else {
            0
        };
        let ops = op_count(scheme, n, p)?;
        body.push_str(&format!("{scheme},,{n},{p},{ops}\n"));
        manifest = manifest
            .with("scheme", scheme.to_string())
            .with_usize("n", n);
    } else {
        for &rate in &args.rates {
            for row in table1_mapping(args.k, rate, args.prefix_n)? {
                body.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.scheme,
                    format_sig(row.rate),
                    row.n,
                    row.prefix_length,
                    row.ops
                ));
            }
        }
        manifest = manifest.with_usize("k", args.k).with(
            "rate",
            toml::Value::Array(args.rates.iter().map(|&r| r.into()).collect()),
        );
    }
    emit(
        args.out.as_ref(),
        &manifest.wrap(out_name(args.out.as_ref()).as_deref(), &body),
    )
}

fn flicker(args: FlickerArgs) -> Result<()> {
    let m = flicker_metrics(args.max_run, args.clock_hz)?;
    let body = format!(
        "max_run,clock_hz,period_seconds,switching_frequency_hz,compliant\n{},{},{},{},{}\n",
        args.max_run,
        format_sig(args.clock_hz),
        format_sig(m.period_seconds),
        format_sig(m.switching_frequency_hz),
        m.compliant
    );
    let manifest = Manifest::new("flicker")
        .with_usize("max_run", args.max_run)
        .with("clock_hz", args.clock_hz);
    emit(
        args.out.as_ref(),
        &manifest.wrap(out_name(args.out.as_ref()).as_deref(), &body),
    )
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Simulate(a) => simulate(a),
        Command::Predict(a) => predict(a),
        Command::Runs(a) => runs(a),
        Command::Redundancy(a) => redundancy(a),
        Command::Complexity(a) => complexity(a),
        Command::Flicker(a) => flicker(a),
    }
}

fn main() -> ExitCode {
    let result = config::expand_args(std::env::args_os().collect())
        .and_then(|args| run(Cli::parse_from(args)));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
