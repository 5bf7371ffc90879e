//! Argument parsing and subcommand dispatch.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Display;
use std::fs;
use std::hash::{Hash, Hasher};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgereg_core::betti::{Engine, Field, Limits, Regularity, DEFAULT_MAX_GENS, DEFAULT_MAX_VARS};
use edgereg_core::colon::{associated_graph, colon_by_theorem, direct_colon};
use edgereg_core::invariants::classes::{claw_free_threshold, cycle_length};
use edgereg_core::invariants::{
    cochord_cover, induced_matching_number, is_chordal, is_cochordal, matching_number, min_maximal_matching,
    recognize_class, verify_cover, GraphClass,
};
use edgereg_core::lab::{
    check_class_bounds, check_linear_resolution_theorem, check_precise_formulas, check_product_bounds, reproduce_paper,
    Check, LabOptions, PairMode, RandomPairSpec, RegularityOracle,
};
use edgereg_core::monomial::{edge_ideal, Monomial, MonomialIdeal};
use edgereg_core::transfer::transfer_cover;
use edgereg_core::{Error, Graph};
use serde_json::{json, Value};

use crate::campaign::{run_campaign, summary_json, write_reproducers, FuzzSpec};
use crate::formats::{parse_cover, parse_graph, parse_ideal, CoverDoc};
use crate::parallel::ParallelOracle;
use crate::reports;

#[derive(Debug, Parser)]
#[command(name = "edgereg", version, about = "Regularity bounds for products of edge ideals")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Characteristic of the coefficient field: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u32,
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Both)]
    pub engine: EngineArg,
    /// Worker threads; 0 uses every core. Never changes results.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Polarized variables allowed for the Hochster engine.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_VARS, value_parser = positive())]
    pub limit_vars: usize,
    /// Minimal generators allowed for the lcm-lattice engine.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GENS, value_parser = positive())]
    pub limit_gens: usize,
    /// Lift both engine limits.
    #[arg(long, global = true)]
    pub force: bool,
    /// Where reproducers of failed checks are written.
    #[arg(long, global = true, default_value = "edgereg-failures")]
    pub out_dir: PathBuf,
}

fn positive() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Hochster,
    Lcm,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Hochster => Engine::Hochster,
            EngineArg::Lcm => Engine::Lcm,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Subgraph,
    Induced,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph invariants, a co-chordal cover certificate and class flags.
    Invariants {
        graph: PathBuf,
        /// Also write the cover certificate to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Monomial ideal arithmetic.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
    /// Decomposition of (I(H)I(G) : ab) and its associated graph.
    Colon {
        h: PathBuf,
        g: PathBuf,
        /// The edge ab of H, as `a,b`.
        #[arg(long)]
        edge: String,
    },
    /// Transfers a co-chordal cover of G to the associated graph of (IJ : ab).
    TransferCover {
        h: PathBuf,
        g: PathBuf,
        #[arg(long)]
        edge: String,
        /// Cover of G to transfer; a minimum cover is computed if absent.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    /// Graded Betti numbers and regularity.
    Regularity {
        #[arg(required_unless_present = "graph", conflicts_with = "graph")]
        ideal: Option<PathBuf>,
        /// Use the edge ideal of this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Every regularity bound for the pair H ⊆ G.
    CheckBounds { h: PathBuf, g: PathBuf },
    /// Seeded random campaign of checks.
    Fuzz {
        /// Largest vertex count.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Smallest vertex count (default: min(3, n)).
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Subgraph)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0.5)]
        edge_probability: f64,
    },
    /// Recomputes the worked examples and compares with the published values.
    ReproducePaper,
}

#[derive(Debug, Subcommand)]
pub enum IdealOp {
    /// Product of two ideals over the same ring.
    Product { a: PathBuf, b: PathBuf },
    /// (I : m) for a monomial such as `x4*x5` or `x6^2`.
    Colon {
        ideal: PathBuf,
        #[arg(long)]
        by: String,
    },
    /// Squarefree polarization.
    Polarize { ideal: PathBuf },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input: exit status 2.
    Usage(String),
    /// A check failed: exit status 1.
    Check {
        message: String,
        reproducer: Option<PathBuf>,
    },
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Core errors: engine disagreement is a failed check, the rest are input problems.
fn core_error(e: Error) -> Failure {
    match e {
        Error::EngineMismatch(_) => Failure::Check {
            message: e.to_string(),
            reproducer: None,
        },
        _ => usage(e),
    }
}

/// Validated run configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub options: LabOptions,
    pub jobs: usize,
    pub seed: u64,
    pub format: Option<Format>,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Result<RunConfig, Failure> {
        let field = Field::from_characteristic(g.characteristic).map_err(usage)?;
        let limits = if g.force {
            Limits::unlimited()
        } else {
            Limits {
                max_vars: g.limit_vars,
                max_gens: g.limit_gens,
            }
        };
        Ok(RunConfig {
            options: LabOptions {
                field,
                limits,
                engine: g.engine.into(),
            },
            jobs: g.jobs,
            seed: g.seed,
            format: g.format,
            out_dir: g.out_dir.clone(),
        })
    }

    pub fn oracle(&self) -> ParallelOracle {
        ParallelOracle(self.options)
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::Usage(
                format!("--format {f:?} is not available for this subcommand").to_lowercase(),
            ))
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read_input(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_ideal(path: &Path) -> Result<MonomialIdeal, Failure> {
    parse_ideal(&read_input(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_edge(s: &str) -> Result<(String, String), Failure> {
    match s.split(',').map(str::trim).collect::<Vec<_>>()[..] {
        [a, b] if !a.is_empty() && !b.is_empty() => Ok((a.into(), b.into())),
        _ => Err(Failure::Usage(format!("--edge expects `a,b`, got {s:?}"))),
    }
}

/// `x4*x5`, `x6^2`, or `1`.
fn parse_monomial(i: &MonomialIdeal, s: &str) -> Result<Monomial, Failure> {
    let mut parts = Vec::new();
    if s.trim() != "1" {
        for factor in s.split('*').map(str::trim) {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<u32>()
                        .map_err(|_| usage(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            parts.push((name, e));
        }
    }
    i.monomial(&parts).map_err(usage)
}

/// Writes `value` under a name derived from its content; returns the path.
fn dump(dir: &Path, kind: &str, value: &Value) -> Result<PathBuf, Failure> {
    let text = reports::pretty(value);
    let mut hasher = DefaultHasher::new();
    text.hash(&mut hasher);
    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let path = dir.join(format!("{kind}-{:016x}.json", hasher.finish()));
    fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn check_failure(cfg: &RunConfig, kind: &str, message: String, value: &Value) -> Failure {
    match dump(&cfg.out_dir, kind, value) {
        Ok(path) => Failure::Check {
            message,
            reproducer: Some(path),
        },
        Err(e) => e,
    }
}

/// `key  value` lines; nested keys are dotted.
fn flat_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, rows);
                }
            }
            Value::String(s) => rows.push((prefix.into(), s.clone())),
            other => rows.push((prefix.into(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, x)| format!("{k:<width$}  {x}\n")).collect()
}

fn emit(out: &mut dyn Write, fmt: Format, v: &Value) -> Result<(), Failure> {
    let text = match fmt {
        Format::Table => flat_table(v),
        _ => reports::pretty(v),
    };
    out.write_all(text.as_bytes()).map_err(usage)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv of utf-8 fields")
}

/// Flag value or `null` when the recognizer is beyond its size limit.
fn flag(r: edgereg_core::Result<bool>) -> Result<Value, Failure> {
    match r {
        Ok(b) => Ok(json!(b)),
        Err(Error::LimitExceeded(_)) => Ok(Value::Null),
        Err(e) => Err(usage(e)),
    }
}

fn invariants(cfg: &RunConfig, out: &mut dyn Write, path: &Path, certificate: Option<&Path>) -> Result<(), Failure> {
    let fmt = cfg.format(Format::Json, &[Format::Json, Format::Table])?;
    let g = load_graph(path)?;
    let (k, cover) = cochord_cover(&g).map_err(usage)?;
    let verdict = verify_cover(&g, &cover).map_err(usage)?;
    let cover_doc = serde_json::to_value(CoverDoc::from_cover(&cover)).expect("covers serialize");
    if let Some(p) = certificate {
        fs::write(p, reports::pretty(&cover_doc)).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    let not = |r: edgereg_core::Result<bool>| r.map(|b| !b);
    let claw = match claw_free_threshold(&g) {
        Ok(n) => json!(n),
        Err(Error::LimitExceeded(_)) => Value::Null,
        Err(e) => return Err(usage(e)),
    };
    let v = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "nu": induced_matching_number(&g).map_err(usage)?,
        "mat": matching_number(&g).map_err(usage)?,
        "MM": min_maximal_matching(&g).map_err(usage)?,
        "cochord": k,
        "cochord_certificate": cover_doc,
        "certificate": reports::cover_verdict(&verdict),
        "certificate_path": certificate.map(|p| p.display().to_string()),
        "classes": {
            "chordal": flag(is_chordal(&g))?,
            "cochordal": flag(is_cochordal(&g))?,
            "gap_free": flag(recognize_class(&g, GraphClass::GapFree))?,
            "weakly_chordal": flag(recognize_class(&g, GraphClass::WeaklyChordal))?,
            "bipartite": flag(recognize_class(&g, GraphClass::Bipartite))?,
            "unmixed_bipartite": flag(recognize_class(&g, GraphClass::UnmixedBipartite))?,
            "dominating_induced_matching": flag(recognize_class(&g, GraphClass::DominatingInducedMatching))?,
            "c4_free": flag(not(recognize_class(&g, GraphClass::ContainsInducedC4)))?,
            "diamond_free": flag(not(recognize_class(&g, GraphClass::ContainsInducedDiamond)))?,
            "cricket_free": flag(not(recognize_class(&g, GraphClass::ContainsInducedCricket)))?,
            "claw_free_from": claw,
            "cycle_length": cycle_length(&g),
        },
    });
    emit(out, fmt, &v)
}

fn ideal_op(cfg: &RunConfig, out: &mut dyn Write, op: &IdealOp) -> Result<(), Failure> {
    let fmt = cfg.format(Format::Json, &[Format::Json, Format::Table])?;
    let v = match op {
        IdealOp::Product { a, b } => {
            let (a, b) = (load_ideal(a)?, load_ideal(b)?);
            reports::ideal(&a.product(&b).map_err(usage)?)
        }
        IdealOp::Colon { ideal, by } => {
            let i = load_ideal(ideal)?;
            let m = parse_monomial(&i, by)?;
            reports::ideal(&i.colon(&m).map_err(usage)?)
        }
        IdealOp::Polarize { ideal } => {
            let p = load_ideal(ideal)?.polarize();
            let copies: serde_json::Map<String, Value> = p
                .target
                .vars()
                .iter()
                .zip(&p.copies)
                .map(|(name, &(src, k))| (name.clone(), json!([p.source.vars()[src], k])))
                .collect();
            json!({"ideal": reports::ideal(&p.target), "copies": copies})
        }
    };
    emit(out, fmt, &v)
}

fn colon(cfg: &RunConfig, out: &mut dyn Write, h: &Path, g: &Path, edge: &str) -> Result<(), Failure> {
    let fmt = cfg.format(Format::Json, &[Format::Json, Format::Table])?;
    let (h, g) = (load_graph(h)?, load_graph(g)?);
    let (a, b) = parse_edge(edge)?;
    let d = colon_by_theorem(&h, &g, (&a, &b)).map_err(usage)?;
    let direct = direct_colon(&h, &g, (&a, &b)).map_err(usage)?;
    let p = associated_graph(&h, &g, (&a, &b)).map_err(usage)?;
    let v = reports::colon(&d, &direct, &p);
    emit(out, fmt, &v)?;
    if d.ideal != direct || d.ideal.gens().iter().any(|m| m.degree() != 2) {
        let report = json!({"H": reports::graph(&h), "G": reports::graph(&g), "colon": v});
        return Err(check_failure(
            cfg,
            "colon",
            "structure theorem disagrees with the direct colon".into(),
            &report,
        ));
    }
    Ok(())
}

fn transfer(
    cfg: &RunConfig,
    out: &mut dyn Write,
    h: &Path,
    g: &Path,
    edge: &str,
    cover: Option<&Path>,
) -> Result<(), Failure> {
    let fmt = cfg.format(Format::Json, &[Format::Json, Format::Table])?;
    let (h, g) = (load_graph(h)?, load_graph(g)?);
    let (a, b) = parse_edge(edge)?;
    let (input, computed) = match cover {
        Some(p) => (
            parse_cover(&read_input(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?,
            false,
        ),
        None => (cochord_cover(&g).map_err(usage)?.1, true),
    };
    let t = transfer_cover(&h, &g, (&a, &b), &input).map_err(usage)?;
    let inserted: Vec<Value> = t
        .inserted
        .iter()
        .map(|class| class.iter().map(|(x, y)| json!([x, y])).collect())
        .collect();
    let v = json!({
        "edge": [a, b],
        "input_cover": CoverDoc::from_cover(&input),
        "input_cover_computed": computed,
        "associated_graph": reports::graph(&t.associated.graph),
        "cover": CoverDoc::from_cover(&t.cover),
        "inserted": inserted,
        "classes": t.cover.len(),
        "verdict": reports::cover_verdict(&t.verdict),
    });
    emit(out, fmt, &v)?;
    if !t.verdict.is_valid() || t.cover.len() > input.len() {
        let report = json!({"H": reports::graph(&h), "G": reports::graph(&g), "transfer": v});
        return Err(check_failure(
            cfg,
            "transfer",
            "transferred cover does not verify".into(),
            &report,
        ));
    }
    Ok(())
}

fn betti_display(r: &Regularity) -> String {
    let cols = r.table.projective_dimension().map_or(0, |p| p + 1);
    let rows: Vec<usize> = {
        let mut v: Vec<usize> = r.table.entries().map(|(i, j, _)| j - i).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let cell = |x: u64| if x == 0 { ".".to_string() } else { x.to_string() };
    let mut lines = vec![std::iter::once("".to_string())
        .chain((0..cols).map(|i| i.to_string()))
        .collect::<Vec<_>>()];
    let totals: Vec<u64> = (0..cols)
        .map(|i| r.table.entries().filter(|e| e.0 == i).map(|e| e.2).sum())
        .collect();
    lines.push(
        std::iter::once("total:".to_string())
            .chain(totals.into_iter().map(cell))
            .collect(),
    );
    for d in rows {
        lines.push(
            std::iter::once(format!("{d}:"))
                .chain((0..cols).map(|i| cell(r.table.get(i, i + d))))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..=cols)
        .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for l in &lines {
        let row: Vec<String> = l.iter().zip(&widths).map(|(x, &w)| format!("{x:>w$}")).collect();
        s.push_str(row.join(" ").trim_end());
        s.push('\n');
    }
    s.push_str(&format!("regularity: {}\n", r.value));
    s
}

fn regularity(cfg: &RunConfig, out: &mut dyn Write, ideal: Option<&Path>, graph: Option<&Path>) -> Result<(), Failure> {
    let fmt = cfg.format(Format::Csv, &[Format::Csv, Format::Json, Format::Table])?;
    let i = match (ideal, graph) {
        (_, Some(g)) => edge_ideal(&load_graph(g)?),
        (Some(p), None) => load_ideal(p)?,
        (None, None) => return Err(Failure::Usage("give an ideal file or --graph".into())),
    };
    let r = match cfg.oracle().betti(&i) {
        Ok(r) => r,
        Err(e @ Error::EngineMismatch(_)) => {
            let report = json!({"ideal": reports::ideal(&i), "error": e.to_string()});
            return Err(check_failure(cfg, "engine-mismatch", e.to_string(), &report));
        }
        Err(e) => return Err(usage(e)),
    };
    let text = match fmt {
        Format::Csv => {
            let mut s = csv_text(
                &["i", "j", "rank"],
                r.table
                    .entries()
                    .map(|(i, j, k)| vec![i.to_string(), j.to_string(), k.to_string()]),
            );
            s.push_str(&format!("# regularity: {}\n", r.value));
            s
        }
        Format::Json => reports::pretty(&reports::regularity(&r, cfg.options.field.characteristic())),
        Format::Table => betti_display(&r),
    };
    out.write_all(text.as_bytes()).map_err(usage)
}

/// Secondary checks degrade to a note when something is out of scale.
fn or_skipped<T>(r: edgereg_core::Result<T>, render: impl Fn(&T) -> Value) -> Result<Value, Failure> {
    match r {
        Ok(x) => Ok(render(&x)),
        Err(Error::LimitExceeded(why)) => Ok(json!({"skipped": why})),
        Err(e) => Err(core_error(e)),
    }
}

fn check_bounds(cfg: &RunConfig, out: &mut dyn Write, h: &Path, g: &Path) -> Result<(), Failure> {
    let fmt = cfg.format(Format::Json, &[Format::Json, Format::Table])?;
    let (h, g) = (load_graph(h)?, load_graph(g)?);
    if !h.subgraph_relation(&g).is_subgraph() {
        return Err(Failure::Usage("H is not a subgraph of G".into()));
    }
    let oracle = cfg.oracle();
    let bounds = check_product_bounds(&h, &g, &oracle).map_err(core_error)?;
    let precise = check_precise_formulas(&h, &g, &oracle);
    let linear = check_linear_resolution_theorem(&h, &g, &oracle);
    let class = check_class_bounds(&h, &g, &oracle);
    let ok = bounds.all_hold()
        && precise.as_ref().map_or(true, |r| r.holds() != Some(false))
        && linear.as_ref().map_or(true, |r| r.holds() != Some(false))
        && class.as_ref().map_or(true, |r| !r.any_failure());
    let v = json!({
        "product_bounds": reports::bound_report(&bounds),
        "precise_formulas": or_skipped(precise, reports::precise)?,
        "linear_resolution": or_skipped(linear, reports::linear_resolution)?,
        "class_bounds": or_skipped(class, reports::class_bounds)?,
        "all_hold": ok,
    });
    emit(out, fmt, &v)?;
    if !ok {
        return Err(check_failure(
            cfg,
            "check-bounds",
            "a regularity bound failed".into(),
            &v,
        ));
    }
    Ok(())
}

fn fuzz(cfg: &RunConfig, out: &mut dyn Write, cmd: &Command) -> Result<(), Failure> {
    let Command::Fuzz {
        n,
        n_min,
        count,
        checks,
        mode,
        edge_probability,
    } = cmd
    else {
        unreachable!("fuzz arguments")
    };
    let fmt = cfg.format(Format::Json, &[Format::Json, Format::Table, Format::Csv])?;
    let checks = if checks == "all" {
        Check::ALL.to_vec()
    } else {
        checks
            .split(',')
            .map(|c| Check::from_name(c.trim()).ok_or_else(|| Failure::Usage(format!("unknown check {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let spec = FuzzSpec {
        pairs: RandomPairSpec {
            n_min: n_min.unwrap_or((*n).min(3)),
            n_max: *n,
            edge_probability: *edge_probability,
            mode: match mode {
                ModeArg::Subgraph => PairMode::Subgraph,
                ModeArg::Induced => PairMode::Induced,
            },
            seed: cfg.seed,
        },
        count: *count,
        checks,
    };
    let oracle = cfg.oracle();
    let summary = run_campaign(&spec, &oracle).map_err(Failure::Usage)?;
    let paths = write_reproducers(&summary, &cfg.out_dir, &oracle).map_err(usage)?;
    let v = summary_json(&summary, &paths);
    match fmt {
        Format::Csv => {
            let rows = summary.tallies.iter().map(|(name, t)| {
                vec![
                    name.to_string(),
                    t.pass.to_string(),
                    t.fail.to_string(),
                    t.inapplicable.to_string(),
                    t.skipped.to_string(),
                ]
            });
            let text = csv_text(&["check", "pass", "fail", "inapplicable", "skipped"], rows);
            out.write_all(text.as_bytes()).map_err(usage)?;
        }
        _ => emit(out, fmt, &v)?,
    }
    match paths.first() {
        None => Ok(()),
        Some(first) => Err(Failure::Check {
            message: format!("{} failing instance(s)", paths.len()),
            reproducer: Some(first.clone()),
        }),
    }
}

fn reproduce(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let fmt = cfg.format(Format::Table, &[Format::Json, Format::Table, Format::Csv])?;
    let rows = reproduce_paper(&cfg.oracle()).map_err(core_error)?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.example.to_string(),
                r.quantity.to_string(),
                r.expected.clone(),
                r.computed.clone(),
                r.matched.to_string(),
            ]
        })
        .collect();
    let header = ["example", "quantity", "expected", "computed", "match"];
    let as_json = Value::Array(
        cells
            .iter()
            .zip(&rows)
            .map(|(c, r)| {
                json!({"example": c[0], "quantity": c[1], "expected": c[2], "computed": c[3], "match": r.matched})
            })
            .collect(),
    );
    let text = match fmt {
        Format::Csv => csv_text(&header, cells.clone()),
        Format::Json => reports::pretty(&as_json),
        Format::Table => {
            let widths: Vec<usize> = (0..header.len())
                .map(|c| {
                    cells
                        .iter()
                        .map(|r| r[c].len())
                        .chain([header[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |r: &[String]| {
                let s: Vec<String> = r.iter().zip(&widths).map(|(x, &w)| format!("{x:<w$}")).collect();
                format!("{}\n", s.join("  ").trim_end())
            };
            let mut s = line(&header.map(String::from));
            for r in &cells {
                s.push_str(&line(r));
            }
            s
        }
    };
    out.write_all(text.as_bytes()).map_err(usage)?;
    let bad = rows.iter().filter(|r| !r.matched).count();
    if bad > 0 {
        return Err(check_failure(
            cfg,
            "reproduce-paper",
            format!("{bad} row(s) do not match"),
            &as_json,
        ));
    }
    Ok(())
}

fn dispatch(cli: &Cli, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Invariants { graph, certificate } => invariants(cfg, out, graph, certificate.as_deref()),
        Command::Ideal { op } => ideal_op(cfg, out, op),
        Command::Colon { h, g, edge } => colon(cfg, out, h, g, edge),
        Command::TransferCover { h, g, edge, cover } => transfer(cfg, out, h, g, edge, cover.as_deref()),
        Command::Regularity { ideal, graph } => regularity(cfg, out, ideal.as_deref(), graph.as_deref()),
        Command::CheckBounds { h, g } => check_bounds(cfg, out, h, g),
        cmd @ Command::Fuzz { .. } => fuzz(cfg, out, cmd),
        Command::ReproducePaper => reproduce(cfg, out),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status: 0 success, 1 failed check, 2 usage or input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let result = RunConfig::from_args(&cli.global).and_then(|cfg| {
        if cli.global.force {
            let _ = writeln!(
                err,
                "warning: --force lifts the engine limits; runtimes can grow without bound"
            );
        }
        // output is buffered so the pool never touches the caller's writer
        let mut buf = Vec::new();
        let r = if cfg.jobs == 0 {
            dispatch(&cli, &cfg, &mut buf)
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.jobs)
                .build()
                .map_err(usage)?
                .install(|| dispatch(&cli, &cfg, &mut buf))
        };
        out.write_all(&buf).map_err(usage)?;
        r
    });
    let _ = out.flush();
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check { message, reproducer }) => {
            let _ = writeln!(err, "check failed: {message}");
            if let Some(p) = reproducer {
                let _ = writeln!(err, "reproducer: {}", p.display());
            }
            1
        }
    }
}
