//! Subcommand implementations. Each computes a structured result and
//! renders it separately, so callers can use either.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use indef_core::embed::class_count;
use indef_core::verify::{verify_all, VerificationReport};
use indef_core::{
    classify, obstruction, solve_gluing, solve_greene, solve_spanning, Classification, GluingOptions,
    GreeneOptions, Mode, Obstruction, ObstructionOptions, Sign, SimplicialMap, SpanningOptions,
};

use crate::document::{load_complex, read_file, EmbeddingDocument, Polyhedron};
use crate::error::CliError;

/// Geometric tolerance for all injectivity checks.
pub const EPS_GEO: f64 = 1e-9;
/// Spanning is a direct solve; its accuracy follows the basis conditioning,
/// so it is never held to a tighter residual than this.
pub const SPANNING_FLOOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Greene,
    Spanning,
    Gluing,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Greene => "greene",
            Method::Spanning => "spanning",
            Method::Gluing => "gluing",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Embedding,
    Local,
    Immersion,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Embedding => Mode::Embedding,
            ModeArg::Local => Mode::LocalEmbedding,
            ModeArg::Immersion => Mode::Immersion,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    /// Complex document (JSON).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Greene)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = ModeArg::Embedding)]
    pub mode: ModeArg,
    #[arg(long, env = "INDEF_EMBED_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Relative residual tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write the embedding document here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Also write per-vertex coordinates as CSV.
    #[arg(long)]
    pub export_csv: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub max_newton_iters: usize,
    #[arg(long, default_value_t = 60)]
    pub max_lambda_doublings: usize,
    /// Spanning only: comma-separated signs (`+`/`-`) for the base block.
    #[arg(long)]
    pub base_signs: Option<String>,
    /// Spanning only: omit blocks whose coefficient is exactly zero.
    #[arg(long)]
    pub drop_zero_blocks: bool,
}

/// Solves and verifies; the document is returned even when verification
/// fails, alongside the failure.
pub fn embed(args: &EmbedArgs) -> Result<(EmbeddingDocument, Option<CliError>), CliError> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    let poly = load_complex(&args.input)?;
    let mode = Mode::from(args.mode);
    if args.method != Method::Spanning && (args.base_signs.is_some() || args.drop_zero_blocks) {
        return Err(CliError::Input(
            "--base-signs and --drop-zero-blocks apply to --method spanning only".into(),
        ));
    }
    let greene = GreeneOptions {
        tol: args.tol,
        max_newton_iters: args.max_newton_iters,
        max_lambda_doublings: args.max_lambda_doublings,
        seed: args.seed,
        mode,
        ..GreeneOptions::default()
    };
    let (c, m) = (&poly.complex, &poly.metric);
    let (map, mut doc, check_tol) = match args.method {
        Method::Greene => {
            let (h, report) = solve_greene(c, m, &greene).map_err(CliError::from_core)?;
            let mut doc = EmbeddingDocument::from_map("greene", mode.name(), args.seed, &h, report.residual);
            doc.lambda_final = Some(report.lambda);
            (h, doc, args.tol)
        }
        Method::Spanning => {
            if mode != Mode::Embedding {
                return Err(CliError::Input("spanning supports --mode embedding only".into()));
            }
            let base_signs = args.base_signs.as_deref().map(parse_signs).transpose()?;
            let opts = SpanningOptions {
                seed: args.seed,
                base_signs,
                drop_zero_blocks: args.drop_zero_blocks,
                ..SpanningOptions::default()
            };
            let (z, sol) = solve_spanning(c, m, &opts).map_err(CliError::from_core)?;
            let mut doc = EmbeddingDocument::from_map("spanning", mode.name(), args.seed, &z, sol.residual);
            doc.alphas = Some(sol.alphas);
            (z, doc, args.tol.max(SPANNING_FLOOR_TOL))
        }
        Method::Gluing => {
            let opts: GluingOptions<f64> = greene;
            let (z, sol) = solve_gluing(c, m, &opts).map_err(CliError::from_core)?;
            let mut doc =
                EmbeddingDocument::from_map("gluing", mode.name(), args.seed, &z, sol.report.residual);
            doc.partition = Some(sol.partition.classes);
            doc.mu = Some(sol.partition.mu);
            (z, doc, args.tol)
        }
    };
    let report = verify_all(&map, m, check_tol, EPS_GEO).map_err(CliError::from_core)?;
    doc.residual = report.isometry.max_edge_residual;
    let failure = verdict(&report, mode).err();
    Ok((doc, failure))
}

fn parse_signs(s: &str) -> Result<Vec<Sign>, CliError> {
    s.split(',')
        .map(|t| match t.trim() {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            other => Err(CliError::Input(format!("bad sign `{other}` in --base-signs"))),
        })
        .collect()
}

/// Isometry plus the injectivity level the mode promises.
pub fn verdict(report: &VerificationReport<f64>, mode: Mode) -> Result<(), CliError> {
    let iso = &report.isometry;
    if !iso.passed {
        return Err(CliError::Verification(format!(
            "residual {:e} exceeds {:e}",
            iso.max_edge_residual, iso.bound
        )));
    }
    let geometric = match mode {
        Mode::Embedding => &report.embedding,
        Mode::LocalEmbedding => &report.local_embedding,
        Mode::Immersion => &report.immersion,
    };
    if !geometric.passed {
        return Err(CliError::Verification(format!(
            "{} check failed: {:?}",
            mode.name(),
            geometric.witness
        )));
    }
    Ok(())
}

pub fn write_csv(path: &Path, map: &SimplicialMap<f64>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Input(e.to_string()))?;
    let mut header = vec!["vertex".to_string(), "label".to_string()];
    header.extend((0..map.dim()).map(|k| format!("x{k}")));
    w.write_record(&header)
        .map_err(|e| CliError::Input(e.to_string()))?;
    for (v, p) in map.points().enumerate() {
        let mut row = vec![v.to_string(), map.complex().label(v)];
        row.extend(p.iter().map(f64::to_string));
        w.write_record(&row).map_err(|e| CliError::Input(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::io("csv", e))
}

pub fn run_embed(args: &EmbedArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (doc, failure) = embed(args)?;
    let text = doc.to_json();
    match &args.output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::io(&path.display().to_string(), e))?
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("stdout", e))?,
    }
    if let Some(path) = &args.export_csv {
        let poly = load_complex(&args.input)?;
        write_csv(path, &doc.to_map(&poly.complex)?)?;
    }
    failure.map_or(Ok(()), Err)
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Embedding document (JSON).
    pub embedding: PathBuf,
    /// Complex document the embedding claims to realize.
    pub complex: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

pub struct VerifyOutcome {
    pub report: VerificationReport<f64>,
    pub mode: Mode,
    pub poly: Polyhedron,
}

pub fn verify(args: &VerifyArgs) -> Result<VerifyOutcome, CliError> {
    let doc = EmbeddingDocument::parse(&read_file(&args.embedding)?)?;
    let poly = load_complex(&args.complex)?;
    let mode: Mode = doc
        .mode
        .parse()
        .map_err(|e: indef_core::Error| CliError::Parse(e.to_string()))?;
    let map = doc.to_map(&poly.complex)?;
    let report = verify_all(&map, &poly.metric, args.tol, EPS_GEO).map_err(CliError::from_core)?;
    Ok(VerifyOutcome { report, mode, poly })
}

pub fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let VerifyOutcome { report, mode, poly } = verify(args)?;
    let iso = &report.isometry;
    let flag = |b: bool| if b { "pass" } else { "fail" };
    let mut text = format!("max_edge_residual: {:e}\n", iso.max_edge_residual);
    match iso.worst_edge {
        Some(e) => {
            let (i, j) = poly.complex.edges()[e];
            text += &format!("worst_edge: {e} ({i}, {j})\n");
        }
        None => text += "worst_edge: none\n",
    }
    text += &format!("bound: {:e}\n", iso.bound);
    text += &format!("isometry: {}\n", flag(iso.passed));
    text += &format!("embedding: {}\n", flag(report.embedding.passed));
    text += &format!("local_embedding: {}\n", flag(report.local_embedding.passed));
    text += &format!("immersion: {}\n", flag(report.immersion.passed));
    text += &format!(
        "general_position: {}\n",
        report.general_position.map_or("skipped", flag)
    );
    text += &format!("eps_geo: {:e}\n", report.eps_geo);
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("stdout", e))?;
    verdict(&report, mode)
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    /// Relative threshold for zero eigenvalues.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Classification<f64>, CliError> {
    let poly = load_complex(&args.input)?;
    Ok(classify(&poly.complex, &poly.metric, args.tol))
}

pub fn run_classify(args: &ClassifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let result = classify_cmd(args)?;
    let mut text = format!(
        "kind: {:?}\nmargin: {:e}\nsimplex\tn_plus\tn_zero\tn_minus\n",
        result.kind, result.margin
    );
    for (s, t) in &result.table {
        let s: Vec<String> = s.iter().map(usize::to_string).collect();
        text += &format!("{}\t{}\t{}\t{}\n", s.join(","), t.n_plus, t.n_zero, t.n_minus);
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("stdout", e))
}

#[derive(Debug, Clone, Args)]
pub struct ObstructArgs {
    pub input: PathBuf,
    /// Largest vertex set examined.
    #[arg(long, default_value_t = 12)]
    pub clique_cap: usize,
    /// Examine faces of the complex only, not larger cliques of its edges.
    #[arg(long)]
    pub faces_only: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

pub fn obstruct(args: &ObstructArgs) -> Result<Obstruction, CliError> {
    let poly = load_complex(&args.input)?;
    let opts = ObstructionOptions {
        clique_cap: args.clique_cap,
        cliques: !args.faces_only,
        tol: args.tol,
    };
    obstruction(&poly.complex, &poly.metric, &opts).map_err(CliError::from_core)
}

pub fn run_obstruct(args: &ObstructArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let o = obstruct(args)?;
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let text = format!(
        "p_min: {}\nq_min: {}\nwitness_plus: {}\nwitness_minus: {}\nexamined: {}\n",
        o.p_min,
        o.q_min,
        list(&o.witness_plus),
        list(&o.witness_minus),
        o.examined
    );
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("stdout", e))
}

#[derive(Debug, Clone, Args)]
pub struct InfoArgs {
    pub input: PathBuf,
}

pub fn run_info(args: &InfoArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let poly = load_complex(&args.input)?;
    let c = &poly.complex;
    let (n, d) = (c.dimension(), c.max_degree());
    let classes = class_count(d);
    let mut text = format!(
        "vertices: {}\nedges: {}\ndimension: {n}\nmax_degree: {d}\nclasses: {classes}\n",
        c.vertex_count(),
        c.edge_count()
    );
    for mode in [Mode::Embedding, Mode::LocalEmbedding, Mode::Immersion] {
        let q = mode.min_dimension(n, d);
        let p = match mode {
            Mode::Embedding => 2 * q * classes,
            _ => q * classes,
        };
        text += &format!("greene_{0}: R^{q}_{q}\ngluing_{0}: R^{p}_{p}\n", mode.name());
    }
    text += &format!("spanning_embedding: p + q = {}\n", 2 * n + 1 + c.edge_count());
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("stdout", e))
}
