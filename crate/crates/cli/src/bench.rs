//! Solver runs over generated families, reported as CSV.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, ValueEnum};
use indef_core::embed::class_count;
use indef_core::families::{complete_skeleton, glued_fan, random_metric, triangulated_grid};
use indef_core::{
    solve_gluing, solve_greene, solve_spanning, GreeneOptions, IndefiniteMetric, Mode, SimplicialComplex,
    SpanningOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::Method;
use crate::error::CliError;

/// Gluing runs whose assembled map would exceed this many coordinates are
/// skipped.
pub const GLUING_COORDINATE_BUDGET: usize = 2_000_000;

pub const HEADER: [&str; 10] = [
    "method", "n", "d", "V", "E", "p", "q", "residual", "iters", "millis",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Skeleton,
    Grid,
    GluedFan,
}

impl Family {
    fn default_sizes(self) -> &'static str {
        match self {
            Family::Skeleton => "4,5,6,7,8",
            Family::Grid => "3,4,5",
            Family::GluedFan => "1,2",
        }
    }

    /// Skeleton sizes are the simplex dimension `N`, grid sizes the side
    /// length, fan sizes the number of glued skeleta.
    pub fn build(self, size: usize, skeleton_dim: usize) -> Result<SimplicialComplex, CliError> {
        let c = match self {
            Family::Skeleton => complete_skeleton(size, skeleton_dim),
            Family::Grid => triangulated_grid(size),
            Family::GluedFan => glued_fan(size),
        };
        c.map_err(CliError::from_core)
    }
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Comma-separated sizes; an empty string yields the header only.
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long, env = "INDEF_EMBED_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Skeleton dimension `k` for the skeleton family.
    #[arg(long, default_value_t = 1)]
    pub skeleton_dim: usize,
    /// Comma-separated subset of greene,spanning,gluing.
    #[arg(long, default_value = "greene,spanning,gluing")]
    pub methods: String,
    /// Write 0 in the millis column so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: &'static str,
    pub n: usize,
    pub d: usize,
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    pub p: usize,
    pub q: usize,
    pub residual: f64,
    pub iters: usize,
    pub millis: u128,
}

fn parse_list<T>(s: &str, what: &str, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| item(t).ok_or_else(|| CliError::Parse(format!("bad {what} `{t}`"))))
        .collect()
}

fn run_one(
    method: Method,
    c: &Arc<SimplicialComplex>,
    m: &IndefiniteMetric<f64>,
    seed: u64,
    tol: f64,
) -> Result<BenchRow, CliError> {
    let (n, d) = (c.dimension(), c.max_degree());
    let greene = GreeneOptions {
        tol,
        seed,
        ..GreeneOptions::default()
    };
    let start = Instant::now();
    let (p, q, residual, iters) = match method {
        Method::Greene => {
            let (_, r) = solve_greene(c, m, &greene).map_err(CliError::from_core)?;
            (r.q, r.q, r.residual, r.newton_iters)
        }
        Method::Spanning => {
            let opts = SpanningOptions {
                seed,
                ..SpanningOptions::default()
            };
            let (_, s) = solve_spanning(c, m, &opts).map_err(CliError::from_core)?;
            (s.p, s.q, s.residual, s.family.draws)
        }
        Method::Gluing => {
            let coords = 4 * Mode::Embedding.min_dimension(n, d) * class_count(d);
            if coords * c.vertex_count() > GLUING_COORDINATE_BUDGET {
                return Err(CliError::Input(format!(
                    "gluing skipped: {} coordinates exceed the budget",
                    coords * c.vertex_count()
                )));
            }
            let (_, s) = solve_gluing(c, m, &greene).map_err(CliError::from_core)?;
            let iters = s.report.stars.iter().map(|r| r.newton_iters).sum();
            (s.p, s.p, s.report.residual, iters)
        }
    };
    Ok(BenchRow {
        method: method.name(),
        n,
        d,
        vertices: c.vertex_count(),
        edges: c.edge_count(),
        p,
        q,
        residual,
        iters,
        millis: start.elapsed().as_millis(),
    })
}

/// Runs every (size, method) pair in parallel. Each size draws its metric
/// from its own ChaCha stream, so rows do not depend on scheduling.
pub fn bench(args: &BenchArgs) -> Result<(Vec<BenchRow>, Vec<String>), CliError> {
    let sizes = parse_list(
        args.sizes.as_deref().unwrap_or(args.family.default_sizes()),
        "size",
        |t| t.parse::<usize>().ok(),
    )?;
    let methods = parse_list(&args.methods, "method", |t| Method::from_str(t, true).ok())?;
    let mut jobs = Vec::new();
    for (i, &size) in sizes.iter().enumerate() {
        let c = Arc::new(args.family.build(size, args.skeleton_dim)?);
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        rng.set_stream(i as u64);
        let m: IndefiniteMetric<f64> = random_metric(&c, &mut rng, -10.0, 10.0);
        for &method in &methods {
            jobs.push((method, size, c.clone(), m.clone()));
        }
    }
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(method, _, c, m)| scope.spawn(move || run_one(*method, c, m, args.seed, args.tol)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("bench worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for ((method, size, _, _), result) in jobs.iter().zip(results) {
        match result {
            Ok(mut row) => {
                if args.no_timing {
                    row.millis = 0;
                }
                rows.push(row);
            }
            Err(e) => failures.push(format!("{} size {size}: {e}", method.name())),
        }
    }
    Ok((rows, failures))
}

pub fn write_rows(rows: &[BenchRow], out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(HEADER).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io("csv", e))
}

/// Writes the CSV, then reports failed runs on stderr and exits with the
/// solver code if any run failed.
pub fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (rows, failures) = bench(args)?;
    match &args.output {
        Some(path) => {
            let mut file =
                std::fs::File::create(path).map_err(|e| CliError::io(&path.display().to_string(), e))?;
            write_rows(&rows, &mut file)?;
        }
        None => write_rows(&rows, out)?,
    }
    if failures.is_empty() {
        return Ok(());
    }
    for f in &failures {
        eprintln!("{f}");
    }
    Err(CliError::Solver(format!("{} run(s) failed", failures.len())))
}
