//! The `beilinson` command line.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical mismatch,
//! 2 when a result depends on degrees outside the computed window, and 3
//! for usage, parse and unsupported-input errors.

mod chart;
mod output;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use chart::Overlay;
pub use output::{Format, IntRange, Output, Table};

use crate::complexes::{slice_key, ChainComplex, ComplexJson};
use crate::cyclic::{CyclicPipeline, Variant};
use crate::derham::{kahler_forms, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::exactlin::Field;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_WINDOW: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

/// Thread count variable read when `--threads` is absent.
pub const THREADS_ENV: &str = "BEILINSON_THREADS";

#[derive(Parser, Debug)]
#[command(name = "beilinson", version, about = "Filtered Hochschild, cyclic and de Rham computations over exact fields")]
pub struct Cli {
    /// Output format: json, csv or ascii.
    #[arg(long, global = true, default_value = "ascii")]
    pub format: Format,
    /// Coefficient field: rationals or fp:p.
    #[arg(long, global = true, default_value = "rationals")]
    pub field: Field,
    /// Worker threads (defaults to $BEILINSON_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// `poly:d`, `trunc:x^m` or a JSON presentation file.
    #[arg(long)]
    pub algebra: String,
    #[arg(long, default_value_t = 4)]
    pub weight_max: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hochschild homology dimensions per degree and weight.
    Hochschild {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Also compare with Kähler forms through the HKR map.
        #[arg(long)]
        hkr: bool,
    },
    /// Negative cyclic, periodic or cyclic homology dimensions.
    Cyclic {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "negative")]
        variant: Variant,
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        degrees: IntRange,
    },
    /// Compare the hearts of HC⁻ and HP with Hodge-truncated de Rham complexes.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "0..2", allow_hyphen_values = true)]
        u: IntRange,
        /// CW level of the HC⁻ comparison.
        #[arg(long, default_value_t = 0)]
        s: i64,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Pages of the CW spectral sequence of HC⁻.
    Ss {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Number of pages, starting from E_2.
        #[arg(long, default_value_t = 1)]
        pages: usize,
        /// Largest CW index shown.
        #[arg(long, default_value_t = 3)]
        columns: i64,
        /// Restrict the chart to one weight.
        #[arg(long)]
        weight: Option<u32>,
        /// Mark the cells of τ^B_{≥r}.
        #[arg(long, allow_hyphen_values = true)]
        overlay_beilinson: Option<i64>,
        /// Mark the cells of F^t_HKR.
        #[arg(long)]
        overlay_hkr: Option<i64>,
        /// Mark the cells of F^s_CW.
        #[arg(long)]
        overlay_cw: Option<i64>,
    },
    /// Dump the Hochschild complex as JSON.
    Complex {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Homology of a complex read from a JSON dump.
    Homology {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Result of a command: its output and exit status.
#[derive(Clone, Debug)]
pub struct Run {
    pub output: Output,
    pub status: i32,
}

fn algebra(args: &AlgebraArgs, field: Field) -> Result<AlgebraPresentation> {
    Ok(AlgebraPresentation::parse(&args.algebra)?.with_field(field))
}

fn cmd_hochschild(args: &AlgebraArgs, field: Field, hkr: bool) -> Result<Run> {
    let r = algebra(args, field)?;
    let pipeline = CyclicPipeline::new(&r, args.weight_max)?;
    let h = pipeline.hochschild();
    let c = h.complex();
    let forms = if hkr {
        if !r.is_polynomial() {
            return Err(Error::Unsupported(format!("--hkr for {} (not a polynomial algebra)", r.label())));
        }
        Some((0..=r.vars()).map(|p| kahler_forms(&r, p, args.weight_max)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    let omega = |n: i64, w: u32| -> usize {
        forms
            .as_ref()
            .and_then(|f| f.get(n as usize))
            .map_or(0, |k| k.dim(w))
    };
    let mut dims = BTreeMap::new();
    let mut hkr_ok = true;
    let mut first_failure = None;
    for n in c.degrees() {
        for w in 0..=args.weight_max {
            let d = c.betti(n, w)?;
            dims.insert((n, w), d);
            if forms.is_some() {
                let iso = d == omega(n, w) && {
                    let m = if (n as usize) <= r.vars() {
                        h.hkr_on_homology(n as usize, w)?
                    } else {
                        crate::exactlin::Matrix::zeros(field, d, 0)
                    };
                    m.rows() == m.cols() && m.rank() == m.rows()
                };
                if !iso && first_failure.is_none() {
                    first_failure = Some((n, w));
                }
                hkr_ok &= iso;
            }
        }
    }
    let mut headers = vec!["n", "w", "hh"];
    if hkr {
        headers.push("omega");
    }
    let mut table = Table::new(&headers);
    for (&(n, w), &d) in &dims {
        let mut row = vec![n.to_string(), w.to_string(), d.to_string()];
        if hkr {
            row.push(omega(n, w).to_string());
        }
        table.push(row);
    }
    let mut grid = Table::new(&[]);
    grid.headers = std::iter::once("n \\ w".to_string())
        .chain((0..=args.weight_max).map(|w| w.to_string()))
        .collect();
    for n in c.degrees() {
        grid.push(
            std::iter::once(n.to_string())
                .chain((0..=args.weight_max).map(|w| dims[&(n, w)].to_string()))
                .collect(),
        );
    }
    let mut ascii = format!("HH of {} over {}\n{}", r.label(), field, grid.to_ascii());
    let mut json = json!({
        "algebra": r.label(),
        "field": field.to_string(),
        "weight_max": args.weight_max,
        "hh": dims.iter().map(|(&(n, w), &d)| (slice_key(n, w), Value::from(d))).collect::<serde_json::Map<_, _>>(),
    });
    if hkr {
        let om: serde_json::Map<_, _> = dims
            .keys()
            .map(|&(n, w)| (slice_key(n, w), Value::from(omega(n, w))))
            .collect();
        json["omega"] = om.into();
        json["hkr_match"] = hkr_ok.into();
        json["first_mismatch"] = first_failure.map(|(n, w)| slice_key(n, w)).into();
        ascii.push_str(&format!("HKR: {}\n", if hkr_ok { "Omega^n(w) = HH_n(w) for all slices" } else { "MISMATCH" }));
        if let Some((n, w)) = first_failure {
            ascii.push_str(&format!("first mismatch at degree {n}, weight {w}\n"));
        }
    }
    Ok(Run {
        output: Output {
            json,
            table,
            ascii: Some(ascii),
        },
        status: if hkr_ok { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn cmd_cyclic(args: &AlgebraArgs, field: Field, variant: Variant, degrees: IntRange) -> Result<Run> {
    let r = algebra(args, field)?;
    let pipeline = CyclicPipeline::new(&r, args.weight_max)?;
    let model = pipeline.model(variant, degrees.lo, degrees.hi)?;
    let c = model.complex();
    let window_limited = !model.is_exact_on(degrees.lo, degrees.hi);
    let mut dims = BTreeMap::new();
    for n in degrees.iter() {
        for w in 0..=args.weight_max {
            dims.insert((n, w), if c.in_window(n) { c.betti(n, w)? } else { 0 });
        }
    }
    let mut table = Table::new(&["n", "w", "dim"]);
    for (&(n, w), &d) in &dims {
        table.push(vec![n.to_string(), w.to_string(), d.to_string()]);
    }
    let mut grid = Table::new(&[]);
    grid.headers = std::iter::once("n \\ w".to_string())
        .chain((0..=args.weight_max).map(|w| w.to_string()))
        .collect();
    for n in degrees.iter() {
        grid.push(
            std::iter::once(n.to_string())
                .chain((0..=args.weight_max).map(|w| dims[&(n, w)].to_string()))
                .collect(),
        );
    }
    let name = match variant {
        Variant::Negative => "HC^-",
        Variant::Periodic => "HP",
        Variant::Cyclic => "HC",
    };
    let json = json!({
        "algebra": r.label(),
        "variant": variant.to_string(),
        "weight_max": args.weight_max,
        "degrees": [degrees.lo, degrees.hi],
        "dims": dims.iter().map(|(&(n, w), &d)| (slice_key(n, w), Value::from(d))).collect::<serde_json::Map<_, _>>(),
        "window_limited": window_limited,
    });
    Ok(Run {
        output: Output {
            json,
            table,
            ascii: Some(format!("{name} of {} over {field}\n{}", r.label(), grid.to_ascii())),
        },
        status: if window_limited { EXIT_WINDOW } else { EXIT_OK },
    })
}

fn cmd_verify(args: &AlgebraArgs, field: Field, us: IntRange, s: i64, report: Option<&PathBuf>) -> Result<Run> {
    let r = algebra(args, field)?;
    if !r.is_polynomial() {
        return Err(Error::Unsupported(format!(
            "de Rham comparison for {} (only polynomial algebras are smooth here)",
            r.label()
        )));
    }
    let pipeline = CyclicPipeline::new(&r, args.weight_max)?;
    let results: Vec<_> = us
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|u| Ok((u, pipeline.beilinson(u, s)?.1, pipeline.hp(u)?.1)))
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["check", "u", "passed", "differential_match", "window_limited", "first_mismatch"]);
    let mut ascii = format!("verify {} (weights <= {}, u in {us}, s = {s})\n", r.label(), args.weight_max);
    let mut mismatch = None;
    let mut limited = false;
    for (u, b, hp) in &results {
        for (name, passed, diff, wl, first) in [
            ("hc-", b.passed(), b.comparison.differential_match, b.window_limited, b.comparison.first_mismatch),
            ("hp", hp.passed(), hp.periodic.differential_match, hp.window_limited, hp.periodic.first_mismatch),
        ] {
            let first_key = first.map(|(i, w)| slice_key(i, w)).unwrap_or_default();
            table.push(vec![
                name.into(),
                u.to_string(),
                passed.to_string(),
                diff.to_string(),
                wl.to_string(),
                first_key.clone(),
            ]);
            ascii.push_str(&format!(
                "u = {u:>2}  {name:<4} {}{}\n",
                if passed { "ok" } else { "MISMATCH" },
                if wl { " (window-limited)" } else { "" }
            ));
            if !passed && mismatch.is_none() {
                mismatch = Some(format!("{name} at u = {u}, slice {first_key}"));
            }
            limited |= wl;
        }
    }
    let status = if mismatch.is_some() {
        EXIT_MISMATCH
    } else if limited {
        EXIT_WINDOW
    } else {
        EXIT_OK
    };
    if let Some(m) = &mismatch {
        ascii.push_str(&format!("first counterexample: {m}\n"));
    }
    let json = json!({
        "algebra": r.label(),
        "weight_max": args.weight_max,
        "u": [us.lo, us.hi],
        "s": s,
        "passed": mismatch.is_none(),
        "window_limited": limited,
        "first_counterexample": mismatch,
        "beilinson": results.iter().map(|(_, b, _)| b.to_json()).collect::<Vec<_>>(),
        "hp": results.iter().map(|(_, _, h)| h.to_json()).collect::<Vec<_>>(),
    });
    if let Some(path) = report {
        let text = serde_json::to_string_pretty(&json).expect("values serialize");
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Run {
        output: Output {
            json,
            table,
            ascii: Some(ascii),
        },
        status,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_ss(
    args: &AlgebraArgs,
    field: Field,
    pages: usize,
    columns: i64,
    weight: Option<u32>,
    overlay: Overlay,
) -> Result<Run> {
    let r = algebra(args, field)?;
    let pipeline = CyclicPipeline::new(&r, args.weight_max)?;
    let t_max = pipeline.degree_cap();
    let lo = -2 * columns.max(0);
    let ss = pipeline.cw_spectral_sequence(lo, t_max, pages.max(1))?;
    let weights: Vec<u32> = match weight {
        Some(w) if w <= args.weight_max => vec![w],
        Some(w) => {
            return Err(Error::Unsupported(format!("weight {w} above --weight-max {}", args.weight_max)))
        }
        None => (0..=args.weight_max).collect(),
    };
    let s_max = 2 * columns.max(0);
    let mut table = Table::new(&["page", "s", "t", "w", "dim"]);
    let mut ascii = String::new();
    let mut json_pages = Vec::new();
    for page in &ss {
        let label = format!("E_{}", 2 * page.r());
        let mut entries = serde_json::Map::new();
        for ((s, t, w), d) in page.bigraded() {
            if s <= s_max && weights.contains(&w) {
                table.push(vec![label.clone(), s.to_string(), t.to_string(), w.to_string(), d.to_string()]);
                entries.insert(format!("({s},{t},{w})"), d.into());
            }
        }
        json_pages.push(json!({ "label": label, "r": page.r(), "entries": entries }));
        let title = format!("{label} of HC^-({}), weights {:?}", r.label(), weights);
        ascii.push_str(&chart::render(page, &title, &weights, s_max, t_max, &overlay));
        ascii.push('\n');
    }
    let json = json!({
        "algebra": r.label(),
        "weight_max": args.weight_max,
        "columns": columns,
        "pages": json_pages,
        "overlay": overlay.to_json(),
    });
    Ok(Run {
        output: Output {
            json,
            table,
            ascii: Some(ascii),
        },
        status: EXIT_OK,
    })
}

fn cmd_complex(args: &AlgebraArgs, field: Field) -> Result<Run> {
    let r = algebra(args, field)?;
    let pipeline = CyclicPipeline::new(&r, args.weight_max)?;
    let c = pipeline.hochschild().complex();
    let json = serde_json::to_value(c.to_json()).expect("complexes serialize");
    Ok(Run {
        output: Output {
            ascii: Some(serde_json::to_string_pretty(&json).expect("values serialize") + "\n"),
            json,
            table: dims_table(c),
        },
        status: EXIT_OK,
    })
}

fn dims_table(c: &ChainComplex) -> Table {
    let mut t = Table::new(&["n", "w", "dim"]);
    for n in c.degrees() {
        for w in 0..=c.weight_cap() {
            t.push(vec![n.to_string(), w.to_string(), c.dim(n, w).to_string()]);
        }
    }
    t
}

fn cmd_homology(input: &PathBuf) -> Result<Run> {
    let text = std::fs::read_to_string(input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
    let dump: ComplexJson = serde_json::from_str(&text).map_err(|e| Error::Parse {
        input: input.display().to_string(),
        position: e.column(),
        message: e.to_string(),
    })?;
    let c = ChainComplex::from_json(&dump)?;
    let mut table = Table::new(&["n", "w", "betti"]);
    let mut dims = serde_json::Map::new();
    for n in c.degrees() {
        for w in 0..=c.weight_cap() {
            let b = c.betti(n, w)?;
            table.push(vec![n.to_string(), w.to_string(), b.to_string()]);
            dims.insert(slice_key(n, w), b.into());
        }
    }
    Ok(Run {
        output: Output {
            json: json!({ "window": [c.window().0, c.window().1], "betti": dims }),
            table,
            ascii: None,
        },
        status: EXIT_OK,
    })
}

/// Runs a parsed command without printing.
pub fn execute(cli: &Cli) -> Result<Run> {
    let field = cli.field;
    match &cli.command {
        Command::Hochschild { algebra, hkr } => cmd_hochschild(algebra, field, *hkr),
        Command::Cyclic {
            algebra,
            variant,
            degrees,
        } => cmd_cyclic(algebra, field, *variant, *degrees),
        Command::Verify { algebra, u, s, report } => cmd_verify(algebra, field, *u, *s, report.as_ref()),
        Command::Ss {
            algebra,
            pages,
            columns,
            weight,
            overlay_beilinson,
            overlay_hkr,
            overlay_cw,
        } => cmd_ss(
            algebra,
            field,
            *pages,
            *columns,
            *weight,
            Overlay {
                beilinson: *overlay_beilinson,
                hkr: *overlay_hkr,
                cw: *overlay_cw,
            },
        ),
        Command::Complex { algebra } => cmd_complex(algebra, field),
        Command::Homology { input } => cmd_homology(input),
    }
}

fn configure_threads(flag: Option<usize>) {
    let n = flag.or_else(|| std::env::var(THREADS_ENV).ok()?.trim().parse().ok());
    if let Some(n) = n.filter(|&n| n > 0) {
        // a second configuration attempt in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args`, runs the command, writes to `out`/`err` and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    configure_threads(cli.threads);
    match execute(&cli).and_then(|run| Ok((run.output.render(cli.format)?, run.status))) {
        Ok((text, status)) => {
            let _ = write!(out, "{text}");
            status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
