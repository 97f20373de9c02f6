//! `gammacap`: certified analytic-capacity bounds from the command line.
//!
//! Subcommands:
//! * `capacity <geometry.json>`: staged certified bracket for a compact set;
//! * `subadd <config.json>`: union-ratio sweep over a radius grid (CSV);
//! * `rational <map.json>`: level-set capacity verdict for a rational map.
//!
//! Exit codes: 0 success / gap target met; 1 usage, schema or solve error;
//! 2 stage limit (or conditioning stop) before the gap target; 3 rational
//! map whose sublevel set is not fully `n`-connected.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gammacap::emit;
use gammacap::manifest::RunManifest;
use gammacap::runner::{init_thread_pool, parallel_sweep, StdClock};
use gammacap::schema::{GeometryFile, RationalFile, SubaddFile};
use gammacap_core::capacity::{
    compute_bounds, RefinementScheme, SolverConfig, StopReason, DEFAULT_CONDITION_LIMIT,
};
use gammacap_core::experiments::{
    asymptotic_fit, monotonicity_scan, verify_ahlfors, DiskPairConfig, ExperimentError, SweepConfig,
    VerifyConfig,
};
use gammacap_core::quadrature::QuadratureConfig;

#[derive(Parser)]
#[command(name = "gammacap", version, about = "Certified bounds for analytic capacity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum EmitFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a staged certified bracket for the capacity of a compact set.
    Capacity {
        /// Geometry file (JSON).
        file: PathBuf,
        /// Simple-pole ring refinement up to this many rings per component.
        #[arg(long, conflicts_with_all = ["monomial", "corner_basis"])]
        rings: Option<u32>,
        /// Monomial refinement `(z-anchor)^{-k}` up to this order.
        #[arg(long, conflicts_with = "corner_basis")]
        monomial: Option<u32>,
        /// Corner-adapted fractional-power family (needs corners).
        #[arg(long)]
        corner_basis: bool,
        /// Maximal order of the corner-adapted family.
        #[arg(long = "n", requires = "corner_basis", default_value_t = 6)]
        corner_degree: u32,
        /// Stop once the bracket is this tight (absolute).
        #[arg(long, default_value_t = 1e-10)]
        gap_target: f64,
        /// Absolute quadrature tolerance per boundary integral.
        #[arg(long, default_value_t = 1e-9)]
        quad_tol: f64,
        /// Stop refining when the Gram condition estimate exceeds this.
        #[arg(long, default_value_t = DEFAULT_CONDITION_LIMIT)]
        condition_limit: f64,
        /// First refinement stage (defaults per scheme).
        #[arg(long)]
        first_stage: Option<u32>,
        /// Dump the final stage's trial family as JSON to stderr.
        #[arg(long)]
        dump_basis: bool,
        #[arg(long, value_enum, default_value_t)]
        emit: EmitFormat,
    },
    /// Sweep the union ratio γ(E∪F)/(γ(E)+γ(F)) over a radius grid.
    Subadd {
        /// Sweep configuration file (JSON).
        file: PathBuf,
        /// Number of radius grid points.
        #[arg(long, default_value_t = 500)]
        r_steps: usize,
        /// Override the seed of a random center layout.
        #[arg(long)]
        seed: Option<u64>,
        /// Ring count the per-point solves start at.
        #[arg(long, default_value_t = 1)]
        start_rings: u32,
        /// Ring cap for per-point refinement.
        #[arg(long, default_value_t = 3)]
        max_rings: u32,
        /// Per-point ratio bracket gap target.
        #[arg(long, default_value_t = 1e-3)]
        ratio_gap: f64,
        #[arg(long, value_enum, default_value_t = EmitFormat::Csv)]
        emit: EmitFormat,
    },
    /// Verify whether a rational map is extremal on its level set.
    Rational {
        /// Residue/pole file (JSON).
        file: PathBuf,
        /// Maximal pole order of the trial family.
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Boundary samples per strand (doubled automatically on ambiguity).
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        /// Absolute quadrature tolerance per boundary integral.
        #[arg(long, default_value_t = 1e-9)]
        quad_tol: f64,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        emit: EmitFormat,
    },
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Capacity {
            file,
            rings,
            monomial,
            corner_basis,
            corner_degree,
            gap_target,
            quad_tol,
            condition_limit,
            first_stage,
            dump_basis,
            emit,
        } => {
            let bytes = std::fs::read(&file).with_context(|| format!("cannot read {}", file.display()))?;
            let text = String::from_utf8(bytes.clone()).context("geometry file is not UTF-8")?;
            let set = GeometryFile::parse(&text)?.into_set()?;
            let (scheme, max_stage) = if corner_basis {
                (RefinementScheme::CornerAdapted, corner_degree)
            } else if let Some(k) = monomial {
                (RefinementScheme::Monomial, k)
            } else {
                (RefinementScheme::PoleRings, rings.unwrap_or(4))
            };
            if gap_target <= 0.0 {
                bail!("--gap-target must be positive");
            }
            let cfg = SolverConfig {
                scheme,
                first_stage,
                max_stage,
                gap_target,
                quadrature: QuadratureConfig { abs_tol: quad_tol, ..Default::default() },
                condition_limit,
            };
            let mut manifest = RunManifest::new(
                "capacity",
                &bytes,
                serde_json::json!({
                    "scheme": format!("{scheme:?}"),
                    "max_stage": max_stage,
                    "gap_target": gap_target,
                    "quad_tol": quad_tol,
                    "condition_limit": condition_limit,
                }),
            );
            let clock = StdClock::new();
            let run = compute_bounds(&set, &cfg, &clock).map_err(|e| anyhow::anyhow!("{e}"))?;
            match emit {
                EmitFormat::Table => print!("{}", emit::capacity_table(&run)),
                EmitFormat::Csv => print!("{}", emit::capacity_csv(&run)),
                EmitFormat::Json => println!("{}", serde_json::to_string_pretty(&emit::capacity_json(&run))?),
            }
            if dump_basis {
                if let Some(last) = run.stages.last() {
                    let basis = match scheme {
                        RefinementScheme::PoleRings => {
                            Ok(gammacap_core::basis::simple_pole_basis(&set, last.stage))
                        }
                        RefinementScheme::Monomial => gammacap_core::basis::monomial_basis(&set, last.stage),
                        RefinementScheme::CornerAdapted => gammacap_core::basis::corner_basis(&set, last.stage),
                    };
                    if let Ok(b) = basis {
                        eprintln!("basis: {}", serde_json::to_string(&emit::basis_json(&b))?);
                    }
                }
            }
            manifest.stages = emit::capacity_json(&run)["stages"].clone();
            manifest.total_elapsed_seconds = clock_total(&clock);
            manifest.emit_to_stderr();
            Ok(match run.stop {
                StopReason::GapTargetMet => ExitCode::from(0),
                StopReason::StageFailed { .. } => ExitCode::from(1),
                StopReason::MaxStageReached | StopReason::IllConditioned { .. } => ExitCode::from(2),
            })
        }
        Command::Subadd { file, r_steps, seed, start_rings, max_rings, ratio_gap, emit } => {
            if r_steps == 0 {
                bail!("--r-steps must be at least 1");
            }
            if start_rings > max_rings {
                bail!("--start-rings must not exceed --max-rings");
            }
            let bytes = std::fs::read(&file).with_context(|| format!("cannot read {}", file.display()))?;
            let text = String::from_utf8(bytes.clone()).context("config file is not UTF-8")?;
            let (centers_e, centers_f) = SubaddFile::parse(&text)?.into_centers(seed)?;
            let cfg = DiskPairConfig::with_default_grid(centers_e, centers_f, r_steps)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            let sweep = SweepConfig {
                start_rings,
                max_rings,
                ratio_gap_target: ratio_gap,
                ..Default::default()
            };
            let mut manifest = RunManifest::new(
                "subadd",
                &bytes,
                serde_json::json!({
                    "r_steps": r_steps,
                    "seed": seed,
                    "start_rings": start_rings,
                    "max_rings": max_rings,
                    "ratio_gap": ratio_gap,
                }),
            );
            let clock = StdClock::new();
            let results = parallel_sweep(&cfg, &sweep);
            let computed: Vec<_> = results.iter().filter_map(|(_, p)| *p).collect();
            let violations = monotonicity_scan(&computed);
            match emit {
                EmitFormat::Csv | EmitFormat::Table => {
                    println!("{}", emit::SWEEP_CSV_HEADER);
                    for (_, point) in &results {
                        if let Some(p) = point {
                            println!("{}", emit::sweep_csv_row(p));
                        }
                    }
                }
                EmitFormat::Json => {
                    let rows: Vec<serde_json::Value> = computed
                        .iter()
                        .map(|p| {
                            serde_json::json!({
                                "r": p.r,
                                "ratio_lower": p.ratio_lower,
                                "ratio_upper": p.ratio_upper,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows)?);
                }
            }
            eprint!("{}", emit::sweep_summary(&results, &violations));
            if let Ok(fit) = asymptotic_fit(&computed, 0.01 * cfg.min_gap) {
                eprintln!(
                    "small-r fit: R(r) ~ 1 - C r^2 with C = {:.6} (relative residual {:.3e}, {} points)",
                    fit.c, fit.residual, fit.points_used
                );
            }
            manifest.total_elapsed_seconds = clock_total(&clock);
            manifest.emit_to_stderr();
            Ok(ExitCode::from(0))
        }
        Command::Rational { file, degree, samples, quad_tol, emit } => {
            let bytes = std::fs::read(&file).with_context(|| format!("cannot read {}", file.display()))?;
            let text = String::from_utf8(bytes.clone()).context("map file is not UTF-8")?;
            let map = RationalFile::parse(&text)?.into_map()?;
            let cfg = VerifyConfig {
                degree,
                samples,
                quadrature: QuadratureConfig { abs_tol: quad_tol, ..Default::default() },
                ..Default::default()
            };
            let mut manifest = RunManifest::new(
                "rational",
                &bytes,
                serde_json::json!({"degree": degree, "samples": samples, "quad_tol": quad_tol}),
            );
            let clock = StdClock::new();
            match verify_ahlfors(&map, &cfg, &clock) {
                Ok(report) => {
                    match emit {
                        EmitFormat::Json | EmitFormat::Csv => {
                            println!("{}", serde_json::to_string_pretty(&emit::rational_json(&report))?)
                        }
                        EmitFormat::Table => print!("{}", emit::rational_table(&report)),
                    }
                    manifest.stages = emit::rational_json(&report)["stages"].clone();
                    manifest.total_elapsed_seconds = clock_total(&clock);
                    manifest.emit_to_stderr();
                    Ok(ExitCode::from(0))
                }
                Err(ExperimentError::CriticalValueOutsideDisk { values }) => {
                    let vals: Vec<[f64; 2]> = values.iter().map(|v| [v.re, v.im]).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "error": "critical-value-outside-disk",
                            "critical_values": vals,
                        }))?
                    );
                    manifest.emit_to_stderr();
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(anyhow::anyhow!("{e}")),
            }
        }
    }
}

fn clock_total(clock: &StdClock) -> f64 {
    use gammacap_core::Clock;
    clock.now()
}
