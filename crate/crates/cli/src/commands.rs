use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use g2abs::analytic::{g2_analytic_curve, visibility_analytic, visibility_on_grid};
use g2abs::montecarlo::{
    validate_cell, visibility_from_curve_with, visibility_monte_carlo, Extraction, McSettings,
};
use g2abs::optimize::{maximize_visibility, RatioOptimum, SearchBox};
use g2abs::{path_probabilities, BeamSplitter, ExperimentConfig, PairKind};
use serde::Serialize;

use crate::format::{fmt_g, g9};
use crate::grid::{parse_increasing, parse_values, GridError};
use crate::{G2Args, Mode, SweepArgs, ValidateArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Domain(#[from] g2abs::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0} validation cell(s) failed: {1}")]
    ValidationFailed(usize, String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ValidationFailed(..) => 1,
            CliError::Grid(_) | CliError::Domain(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, contents).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

#[derive(Serialize)]
struct VisibilityJson {
    pair: String,
    x: f64,
    r: f64,
    visibility: f64,
}

pub fn visibility(pair: PairKind, x: f64, r: f64, json: bool) -> Result<()> {
    let v = visibility_analytic(pair, x, BeamSplitter::new(r)?)?;
    if json {
        println!(
            "{}",
            to_json(&VisibilityJson {
                pair: pair.to_string(),
                x,
                r,
                visibility: v,
            })
        );
    } else {
        println!("{v:.9}");
    }
    Ok(())
}

/// Grids behind the published visibility figures.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// lt surface over x and R.
    #[value(name = "fig2")]
    Fig2,
    /// lt versus R for x = 0.1, 0.5, 0.71, 2, 5, 10.
    #[value(name = "fig3")]
    Fig3,
    /// lt versus x with the caption values 0.05 … 0.5 read as reflectivities.
    #[value(name = "fig4-r")]
    Fig4R,
    /// lt versus R with the caption values 0.05 … 0.5 read as ratios.
    #[value(name = "fig4-x")]
    Fig4X,
    /// ll surface.
    #[value(name = "fig5")]
    Fig5,
    /// tt surface.
    #[value(name = "fig6")]
    Fig6,
    /// ss surface.
    #[value(name = "fig7")]
    Fig7,
    /// sl surface.
    #[value(name = "fig8")]
    Fig8,
    /// st surface.
    #[value(name = "fig9")]
    Fig9,
}

const SURFACE_X: &str = "log:0.01:10:100";
const SURFACE_R: &str = "0.01:0.98:98";
const LINE_R: &str = "0:1:101";
const CAPTION_VALUES: &str = "0.05,0.1,0.2,0.3,0.4,0.5";

impl Preset {
    fn grid(self) -> (PairKind, &'static str, &'static str) {
        match self {
            Preset::Fig2 => (PairKind::LT, SURFACE_X, SURFACE_R),
            Preset::Fig3 => (PairKind::LT, "0.1,0.5,0.71,2,5,10", LINE_R),
            Preset::Fig4R => (PairKind::LT, "log:0.01:10:100", CAPTION_VALUES),
            Preset::Fig4X => (PairKind::LT, CAPTION_VALUES, LINE_R),
            Preset::Fig5 => (PairKind::LL, SURFACE_X, SURFACE_R),
            Preset::Fig6 => (PairKind::TT, SURFACE_X, SURFACE_R),
            Preset::Fig7 => (PairKind::SS, SURFACE_X, SURFACE_R),
            Preset::Fig8 => (PairKind::SL, SURFACE_X, SURFACE_R),
            Preset::Fig9 => (PairKind::ST, SURFACE_X, SURFACE_R),
        }
    }
}

/// CSV body with header `pair,x,R,visibility`, x-major.
pub fn sweep_csv(pair: PairKind, xs: &[f64], rs: &[f64]) -> Result<String> {
    let mut csv = String::from("pair,x,R,visibility\n");
    for &x in xs {
        for &r in rs {
            let v = visibility_on_grid(pair, x, r)?;
            writeln!(csv, "{pair},{},{},{}", g9(x), g9(r), g9(v)).unwrap();
        }
    }
    Ok(csv)
}

pub fn sweep(args: SweepArgs) -> Result<()> {
    let (pair, xs, rs) = match args.preset {
        Some(preset) => {
            let (pair, x, r) = preset.grid();
            (pair, parse_values(x)?, parse_values(r)?)
        }
        None => (
            args.pair.expect("clap enforces --pair"),
            parse_values(args.x.as_deref().expect("clap enforces --x"))?,
            parse_values(args.r.as_deref().expect("clap enforces --r"))?,
        ),
    };
    let csv = sweep_csv(pair, &xs, &rs)?;
    emit(args.out.as_deref(), &csv)
}

#[derive(Serialize)]
struct McVisibilityJson {
    pair: String,
    x: f64,
    r: f64,
    delta_nu: f64,
    n_realizations: u64,
    seed: u64,
    extraction: &'static str,
    visibility: f64,
    stderr: f64,
    g2_max: f64,
    g2_min: f64,
    visibility_analytic: f64,
}

pub fn g2(args: G2Args) -> Result<()> {
    let bs = BeamSplitter::new(args.r)?;
    let tau = match &args.tau {
        Some(list) => parse_increasing(list)?,
        None => ExperimentConfig::default_tau_grid(args.delta_nu)?,
    };
    let cfg = ExperimentConfig::new(args.pair, args.x, bs, args.delta_nu, tau)?;
    let mut csv = String::new();
    match args.mode {
        Mode::Analytic => {
            let p = path_probabilities(cfg.ratio, cfg.bs)?;
            let curve = g2_analytic_curve(cfg.pair, &p, cfg.delta_nu, &cfg.tau);
            csv.push_str("tau,g2\n");
            for (t, g) in curve.tau.iter().zip(&curve.g2) {
                writeln!(csv, "{},{}", g9(*t), g9(*g)).unwrap();
            }
            emit(args.out.as_deref(), &csv)
        }
        Mode::Mc => {
            let mc = McSettings::new(args.n, args.seed);
            let run = visibility_monte_carlo(&cfg, &mc)?;
            let extraction = if args.raw_extrema {
                Extraction::RawExtrema
            } else {
                Extraction::Fit
            };
            let result = match extraction {
                Extraction::Fit => run.result,
                Extraction::RawExtrema => {
                    visibility_from_curve_with(&run.curve, cfg.delta_nu, extraction)?
                }
            };
            csv.push_str("tau,g2,stderr\n");
            let zeros = vec![0.0; run.curve.len()];
            let se = run.curve.stderr.as_deref().unwrap_or(&zeros);
            for ((t, g), s) in run.curve.tau.iter().zip(&run.curve.g2).zip(se) {
                writeln!(csv, "{},{},{}", g9(*t), g9(*g), g9(*s)).unwrap();
            }
            emit(args.out.as_deref(), &csv)?;

            let report = if args.json {
                to_json(&McVisibilityJson {
                    pair: cfg.pair.to_string(),
                    x: cfg.ratio,
                    r: args.r,
                    delta_nu: cfg.delta_nu,
                    n_realizations: run.curve.n_realizations,
                    seed: args.seed,
                    extraction: if args.raw_extrema {
                        "raw-extrema"
                    } else {
                        "fit"
                    },
                    visibility: result.v,
                    stderr: run.stderr,
                    g2_max: result.g2_max,
                    g2_min: result.g2_min,
                    visibility_analytic: visibility_analytic(cfg.pair, cfg.ratio, bs)?,
                })
            } else {
                format!("V = {} +/- {}", g9(result.v), g9(run.stderr))
            };
            // keep the CSV on stdout clean when no --out is given
            if args.out.is_some() {
                println!("{report}");
            } else {
                eprintln!("{report}");
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CellJson {
    pair: String,
    x: f64,
    r: f64,
    v_analytic: f64,
    v_mc: f64,
    stderr: f64,
    deviation: f64,
    bound: f64,
    passed: bool,
}

pub fn validate(args: ValidateArgs) -> Result<()> {
    let pairs = if args.pair.is_empty() {
        PairKind::ALL.to_vec()
    } else {
        args.pair.clone()
    };
    let xs = parse_values(&args.x)?;
    let rs = parse_values(&args.r)?;
    let mc = McSettings::new(args.n, args.seed);

    let mut cells = Vec::new();
    for &pair in &pairs {
        for &x in &xs {
            for &r in &rs {
                cells.push(validate_cell(pair, x, r, args.delta_nu, &mc)?);
            }
        }
    }

    if args.json {
        let rows: Vec<CellJson> = cells
            .iter()
            .map(|c| CellJson {
                pair: c.pair.to_string(),
                x: c.x,
                r: c.r,
                v_analytic: c.v_analytic,
                v_mc: c.v_mc,
                stderr: c.stderr,
                deviation: c.deviation(),
                bound: c.bound(),
                passed: c.passed(),
            })
            .collect();
        println!("{}", to_json(&rows));
    } else {
        println!("pair  x          R          V_analytic   V_mc         |dV|         3SE          status");
        for c in &cells {
            println!(
                "{:<5} {:<10} {:<10} {:<12} {:<12} {:<12} {:<12} {}",
                c.pair.label(),
                g9(c.x),
                g9(c.r),
                fmt_g(c.v_analytic, 9),
                fmt_g(c.v_mc, 9),
                fmt_g(c.deviation(), 3),
                fmt_g(3.0 * c.stderr, 3),
                if c.passed() { "PASS" } else { "FAIL" }
            );
        }
    }

    let failing: Vec<String> = cells
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}(x={}, R={})", c.pair, g9(c.x), g9(c.r)))
        .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::ValidationFailed(
            failing.len(),
            failing.join(", "),
        ))
    }
}

#[derive(Serialize)]
struct TableRowJson {
    pair: String,
    v_max: f64,
    r_max: f64,
    /// `null` when any ratio attains the maximum.
    x_max: Option<f64>,
    x_any: bool,
    x_capped: bool,
    note: Option<String>,
}

pub fn table1(json: bool) -> Result<()> {
    let search = SearchBox::default();
    let cap = search.x_range.1;
    let mut rows = Vec::new();
    for pair in PairKind::ALL {
        rows.push(maximize_visibility(pair, &search)?);
    }
    if json {
        let out: Vec<TableRowJson> = rows
            .iter()
            .map(|m| TableRowJson {
                pair: m.pair.to_string(),
                v_max: m.v_max,
                r_max: m.r_star,
                x_max: m.x_star.value(),
                x_any: m.x_star == RatioOptimum::Any,
                x_capped: matches!(m.x_star, RatioOptimum::Capped(_)),
                note: matches!(m.x_star, RatioOptimum::Capped(_))
                    .then(|| format!("-> ss limit, x capped at {}", fmt_g(cap, 3))),
            })
            .collect();
        println!("{}", to_json(&out));
        return Ok(());
    }
    println!("{:<5} {:<10} {:<6} x_max", "pair", "V_max", "R_max");
    for m in &rows {
        let x = match m.x_star {
            RatioOptimum::At(x) => fmt_g(x, 4),
            RatioOptimum::Any => "any".to_string(),
            RatioOptimum::Capped(x) => format!(
                "{} (-> ss limit, x capped at {})",
                fmt_g(x, 4),
                fmt_g(cap, 3)
            ),
        };
        println!(
            "{:<5} {:<10.7} {:<6} {}",
            m.pair.label(),
            m.v_max,
            fmt_g(m.r_star, 6),
            x
        );
    }
    Ok(())
}
