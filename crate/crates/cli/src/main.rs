//! `cvdc` — command-line front end for the dense-coding simulator.
//!
//! Subcommands: `simulate` (one experiment run), `capacity-curve`
//! (CSV/JSON capacity series per channel), `crossing` (capacity crossover
//! photon number), `traces` (analyzer time traces or spectra), and
//! `convert` (dB to squeezing parameter and back).

use clap::{Parser, Subcommand};
use cvdc_core::capacity::{self, ChannelModel};
use cvdc_core::traces::{self, TraceKind};
use cvdc_core::{protocol, Error as CoreError};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

mod config;
mod output;

use output::{Emitter, Format};

#[derive(Debug)]
pub enum CliError {
    /// Usage or configuration problem; exit code 2.
    Usage(String),
    /// Domain/physics error from the core; exit code 1.
    Domain(CoreError),
    /// I/O failure while writing output; exit code 1.
    Io(std::io::Error),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn io(e: std::io::Error) -> Self {
        CliError::Io(e)
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "output: {e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Config(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

#[derive(Parser)]
#[command(name = "cvdc", version, about = "Continuous-variable dense-coding simulator")]
struct Cli {
    /// TOML config file with [experiment] and [trace] sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a config value, e.g. --set experiment.r=0.23026
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// RNG seed for trace synthesis (overrides trace.seed).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one dense-coding experiment and report the decoded statistics.
    Simulate,
    /// Capacity versus photon number for a list of channels.
    CapacityCurve {
        /// Comma-separated channels; fixed-r channels accept `:r=VALUE`.
        #[arg(
            long,
            default_value = "dense-coding,dense-coding-optimal,coherent-1q,coherent-2q,squeezed-homodyne,holevo-limit"
        )]
        channels: String,
        #[arg(long, default_value_t = 0.0)]
        n_min: f64,
        #[arg(long, default_value_t = 5.0)]
        n_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Squeezing parameter for channels that need one (default: experiment.r).
        #[arg(long)]
        r: Option<f64>,
    },
    /// Photon number at which two channel capacities cross.
    Crossing {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        /// Squeezing parameter for channels that need one (default: experiment.r).
        #[arg(long)]
        r: Option<f64>,
    },
    /// Synthesize zero-span time traces (default) or swept spectra.
    Traces {
        /// Emit the two-channel spectrum instead of time traces.
        #[arg(long)]
        spectrum: bool,
        /// Comma-separated kinds for time traces.
        #[arg(
            long,
            default_value = "shot-noise,epr-noise,squeezed-locked,squeezed-scanned"
        )]
        kinds: String,
    },
    /// Convert a squeezing level in dB to the parameter r, or back.
    Convert {
        #[arg(long, conflicts_with = "r")]
        db: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
    },
}

#[derive(Serialize)]
struct SimulateRecord {
    r: f64,
    alpha_re: f64,
    alpha_im: f64,
    x_mean: f64,
    x_variance: f64,
    x_rel_db: f64,
    p_mean: f64,
    p_variance: f64,
    p_rel_db: f64,
    epr_variance: f64,
    epr_rel_db: f64,
    separability_cross_cov: f64,
    signal_photons: f64,
    squeeze_photons: f64,
    excess_photons: Option<f64>,
    n_bar: f64,
}

#[derive(Serialize)]
struct CapacityRecord {
    channel: String,
    n_bar: f64,
    info_nats: Option<f64>,
    info_bits: Option<f64>,
    feasible: bool,
}

#[derive(Serialize)]
struct CrossingRecord {
    channel_a: String,
    channel_b: String,
    n_lo: f64,
    n_hi: f64,
    crossing_n_bar: f64,
    info_nats_at_crossing: f64,
}

#[derive(Serialize)]
struct TraceRecord {
    kind: String,
    axis: f64,
    power_db: f64,
}

#[derive(Serialize)]
struct ConvertRecord {
    db: f64,
    r: f64,
}

fn parse_channel(spec: &str, default_r: f64) -> Result<ChannelModel, CliError> {
    let (name, opt) = match spec.split_once(':') {
        Some((n, o)) => (n.trim(), Some(o.trim())),
        None => (spec.trim(), None),
    };
    let r = match opt {
        Some(o) => {
            let raw = o
                .strip_prefix("r=")
                .ok_or_else(|| CliError::usage(format!("bad channel option `{o}` in `{spec}`")))?;
            raw.parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad r value in `{spec}`")))?
        }
        None => default_r,
    };
    match name {
        "dense-coding" | "dc" => Ok(ChannelModel::DenseCoding { r }),
        "dense-coding-optimal" | "dc-opt" => Ok(ChannelModel::DenseCodingOptimal),
        "coherent-1q" => Ok(ChannelModel::Coherent1q),
        "coherent-2q" => Ok(ChannelModel::Coherent2q),
        "squeezed-homodyne" | "sq-hom" => Ok(ChannelModel::SqueezedHomodyne { r }),
        "holevo-limit" | "holevo" => Ok(ChannelModel::HolevoLimit),
        other => Err(CliError::usage(format!("unknown channel `{other}`"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = config::load(cli.config.as_deref(), &cli.overrides)?;
    if let Some(seed) = cli.seed {
        cfg.trace.seed = seed;
    }
    cfg.experiment.validate()?;

    match cli.command {
        Command::Simulate => {
            let exp = cfg.experiment;
            let res = protocol::run_experiment(&exp)?;
            let excess = exp
                .antisqueeze_r_plus
                .map(|rp| capacity::excess_photons(exp.r, rp))
                .transpose()?;
            let record = SimulateRecord {
                r: exp.r,
                alpha_re: exp.alpha_re,
                alpha_im: exp.alpha_im,
                x_mean: res.x_channel.mean,
                x_variance: res.x_channel.variance,
                x_rel_db: res.x_channel.rel_db,
                p_mean: res.p_channel.mean,
                p_variance: res.p_channel.variance,
                p_rel_db: res.p_channel.rel_db,
                epr_variance: res.epr_variance,
                epr_rel_db: 10.0 * (res.epr_variance / 0.5).log10(),
                separability_cross_cov: res.separability_cross_cov,
                signal_photons: exp.alpha().norm_sqr(),
                squeeze_photons: exp.r.sinh().powi(2),
                excess_photons: excess,
                n_bar: exp.mean_photon_budget() + excess.unwrap_or(0.0),
            };
            let mut emitter = Emitter::new(cli.output.as_ref(), cli.format, "simulate")?;
            emitter.record(&record)?;
        }
        Command::CapacityCurve {
            channels,
            n_min,
            n_max,
            points,
            r,
        } => {
            if points < 2 || n_max <= n_min || n_min < 0.0 {
                return Err(CliError::usage(format!(
                    "bad grid: n_min={n_min}, n_max={n_max}, points={points}"
                )));
            }
            let default_r = r.unwrap_or(cfg.experiment.r);
            let models: Vec<ChannelModel> = channels
                .split(',')
                .map(|s| parse_channel(s, default_r))
                .collect::<Result<_, _>>()?;
            let mut emitter = Emitter::new(cli.output.as_ref(), cli.format, "capacity-curve")?;
            for model in &models {
                for k in 0..points {
                    let n_bar = n_min + (n_max - n_min) * k as f64 / (points - 1) as f64;
                    let record = match model.info_nats(n_bar) {
                        Ok(i) => CapacityRecord {
                            channel: model.label(),
                            n_bar,
                            info_nats: Some(i),
                            info_bits: Some(capacity::nats_to_bits(i)),
                            feasible: true,
                        },
                        Err(CoreError::InfeasibleBudget { .. }) => CapacityRecord {
                            channel: model.label(),
                            n_bar,
                            info_nats: None,
                            info_bits: None,
                            feasible: false,
                        },
                        Err(e) => return Err(e.into()),
                    };
                    emitter.record(&record)?;
                }
            }
        }
        Command::Crossing { a, b, lo, hi, r } => {
            let default_r = r.unwrap_or(cfg.experiment.r);
            let model_a = parse_channel(&a, default_r)?;
            let model_b = parse_channel(&b, default_r)?;
            let root = capacity::crossing(&model_a, &model_b, lo, hi)?;
            let record = CrossingRecord {
                channel_a: model_a.label(),
                channel_b: model_b.label(),
                n_lo: lo,
                n_hi: hi,
                crossing_n_bar: root,
                info_nats_at_crossing: model_a.info_nats(root)?,
            };
            let mut emitter = Emitter::new(cli.output.as_ref(), cli.format, "crossing")?;
            emitter.record(&record)?;
        }
        Command::Traces { spectrum, kinds } => {
            let mut emitter = Emitter::new(cli.output.as_ref(), cli.format, "traces")?;
            if spectrum {
                let tc = if cfg.trace.span_hz > 0.0 {
                    cfg.trace
                } else {
                    traces::TraceConfig {
                        span_hz: 1e6,
                        ..cfg.trace
                    }
                };
                for sig in [tc.am_signal, tc.pm_signal].into_iter().flatten() {
                    let (lo, hi) = (tc.center_hz - tc.span_hz / 2.0, tc.center_hz + tc.span_hz / 2.0);
                    if sig.freq_hz < lo || sig.freq_hz > hi {
                        eprintln!(
                            "warning: signal at {} Hz outside span [{lo}, {hi}] Hz",
                            sig.freq_hz
                        );
                    }
                }
                let (x, p) = traces::spectrum_trace(&cfg.experiment, &tc)?;
                for (label, tr) in [("spectrum-x", &x), ("spectrum-p", &p)] {
                    for (axis, db) in tr.axis.iter().zip(&tr.power_db) {
                        emitter.record(&TraceRecord {
                            kind: label.into(),
                            axis: *axis,
                            power_db: *db,
                        })?;
                    }
                }
            } else {
                for name in kinds.split(',') {
                    let kind = TraceKind::ALL
                        .iter()
                        .find(|k| k.label() == name.trim())
                        .copied()
                        .ok_or_else(|| CliError::usage(format!("unknown trace kind `{name}`")))?;
                    let tr = traces::time_trace(&cfg.experiment, &cfg.trace, kind)?;
                    for (axis, db) in tr.axis.iter().zip(&tr.power_db) {
                        emitter.record(&TraceRecord {
                            kind: kind.label().into(),
                            axis: *axis,
                            power_db: *db,
                        })?;
                    }
                }
            }
        }
        Command::Convert { db, r } => {
            let record = match (db, r) {
                (Some(db), None) => ConvertRecord {
                    db,
                    r: capacity::db_to_r(db)?,
                },
                (None, Some(r)) => ConvertRecord {
                    db: capacity::r_to_db(r)?,
                    r,
                },
                _ => {
                    return Err(CliError::usage(
                        "convert needs exactly one of --db or --r",
                    ))
                }
            };
            let mut emitter = Emitter::new(cli.output.as_ref(), cli.format, "convert")?;
            emitter.record(&record)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
