//! `cmcells`: families, cellular characters and cells from the command line.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 numeric
//! ambiguity (rerun with another seed), 3 failed verification or violated
//! invariant.

use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cmcells::characters::{irr_characters, CharacterTable};
use cmcells::config::{parse_c_arg, parse_k_arg, Format, RunConfig};
use cmcells::families::{cm_families, FamilyReport};
use cmcells::gaudin::cells::{mults_report, CellReport};
use cmcells::gaudin::{cellular_characters, left_cells, right_cells, two_sided_candidate, CellKind};
use cmcells::info::{group_info, GroupInfo, OrderedMap};
use cmcells::verify::{run_suite, Status, Suite, VerifyOptions, VerifyReport};
use cmcells::{Error, ParamC, ReflectionGroup};

#[derive(Parser)]
#[command(name = "cmcells", version, about = "Calogero-Moser families, cellular characters and cells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group data: order, reflections, degrees, character table, fake degrees.
    Info(Common),
    /// Calogero-Moser families at a parameter.
    Families(Common),
    /// Cellular characters from the Gaudin eigenspaces at v* = 0.
    Cellular(Common),
    /// Left, right or two-sided cells by eigenvalue path tracking.
    Cells {
        #[command(flatten)]
        common: Common,
        /// left, right or two-sided.
        #[arg(long, default_value = "left")]
        kind: String,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        /// dunkl, families, cells, minpoly, hilbert or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Degree cap for the Dunkl relations.
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON config, inline (starting with `{`) or a file path. Flags override it.
    #[arg(long)]
    config: Option<String>,
    /// cyclic, b2 or dihedral.
    #[arg(long)]
    group: Option<String>,
    /// Order of the cyclic group.
    #[arg(long)]
    d: Option<u32>,
    /// Order of the rotation subgroup of a dihedral group.
    #[arg(long)]
    m: Option<u32>,
    /// `c` parameters: `a=1,b=2` or `1,2` in class order.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// `k` parameters: `1,1,-2`, orbits separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Total degree of the Hilbert series.
    #[arg(long)]
    trunc: Option<usize>,
    /// json or table.
    #[arg(long)]
    format: Option<String>,
}

/// Failures sorted by exit code.
enum Failure {
    Config(anyhow::Error),
    Ambiguity(anyhow::Error),
    Failed(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericAmbiguity(_) => Failure::Ambiguity(e.into()),
            Error::Invariant(_) => Failure::Failed(e.into()),
            _ => Failure::Config(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Config(e)
    }
}

fn load_config(common: &Common) -> Result<RunConfig, Failure> {
    let mut cfg = match &common.config {
        None => RunConfig::default(),
        Some(s) if s.trim_start().starts_with('{') => RunConfig::from_json(s)?,
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading config {path}"))?;
            RunConfig::from_json(&text)?
        }
    };
    if let Some(g) = &common.group {
        cfg.group = g.clone();
    }
    cfg.d = common.d.or(cfg.d);
    cfg.m = common.m.or(cfg.m);
    if let Some(c) = &common.c {
        cfg.c = Some(parse_c_arg(c)?);
        cfg.k = None;
    }
    if let Some(k) = &common.k {
        if common.c.is_some() {
            return Err(Error::Config("give either --c or --k, not both".into()).into());
        }
        cfg.k = Some(parse_k_arg(k)?);
        cfg.c = None;
    }
    cfg.seed = common.seed.or(cfg.seed);
    cfg.samples = common.samples.or(cfg.samples);
    cfg.trunc = common.trunc.or(cfg.trunc);
    if let Some(f) = &common.format {
        cfg.format = Some(Format::parse(f)?);
    }
    if cfg.group.is_empty() {
        return Err(Error::Config("no group given (--group or config)".into()).into());
    }
    Ok(cfg)
}

fn class_literals(g: &ReflectionGroup, c: &ParamC) -> OrderedMap<String> {
    OrderedMap(g.class_names.iter().cloned().zip(c.values.iter().map(|v| v.to_string())).collect())
}

#[derive(Serialize)]
struct FamiliesOut {
    group: String,
    c: OrderedMap<String>,
    #[serde(flatten)]
    families: FamilyReport,
}

#[derive(Serialize)]
struct CellsOut {
    group: String,
    c: OrderedMap<String>,
    seed: u64,
    #[serde(flatten)]
    cells: CellReport,
}

#[derive(Serialize)]
struct CellularOut {
    group: String,
    c: OrderedMap<String>,
    seed: u64,
    characters: Vec<OrderedMap<u64>>,
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Table => print!("{}", table()),
    }
    Ok(())
}

fn info_table(i: &GroupInfo) -> String {
    let mut s = format!("{}  order {}  rank {}  degrees {:?}\n", i.group, i.order, i.dim, i.degrees);
    s += &format!(
        "reflections {}  classes {:?}\n",
        i.reflections,
        i.reflection_classes.iter().map(|c| (&c.name, c.size)).collect::<Vec<_>>()
    );
    s += &format!("{:<8} {:>3} {:>3}  {:<24} values\n", "char", "deg", "b", "fake degree");
    for c in &i.characters {
        s += &format!("{:<8} {:>3} {:>3}  {:<24} {}\n", c.name, c.degree, c.b, c.fake_degree, c.values.join("  "));
    }
    s
}

fn chars_line(mults: &OrderedMap<u64>) -> String {
    mults.0.iter().map(|(n, m)| if *m == 1 { n.clone() } else { format!("{m}{n}") }).collect::<Vec<_>>().join(" + ")
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Info(common) => {
            let cfg = load_config(&common)?;
            let g = cfg.build_group()?;
            let info = group_info(&g)?;
            emit(cfg.format.unwrap_or_default(), &info, || info_table(&info))?;
        }
        Command::Families(common) => {
            let cfg = load_config(&common)?;
            let g = cfg.build_group()?;
            let table = irr_characters(&g)?;
            let c = cfg.params(&g)?;
            let fam = cm_families(&g, &table, &c)?;
            let out = FamiliesOut { group: g.kind.label(), c: class_literals(&g, &c), families: fam.report(&table) };
            emit(cfg.format.unwrap_or_default(), &out, || {
                let mut s = format!("{}  c = {:?}  exact {}\n", out.group, out.c.0, out.families.exact);
                for b in &out.families.blocks {
                    s += &format!(
                        "{{{}}}  eu = {}  Σχ(1)² = {}  min b: {}\n",
                        b.chars.join(", "),
                        b.euler_value,
                        b.sum_dim_sq,
                        b.min_b
                    );
                }
                s
            })?;
        }
        Command::Cellular(common) => {
            let cfg = load_config(&common)?;
            let g = cfg.build_group()?;
            let table = irr_characters(&g)?;
            let c = cfg.params(&g)?;
            let seed = cfg.seed()?;
            let cc = cellular_characters(&g, &table, &c, seed)?;
            let out = CellularOut {
                group: g.kind.label(),
                c: class_literals(&g, &c),
                seed,
                characters: cc.iter().map(|x| mults_report(&table, &x.mults)).collect(),
            };
            emit(cfg.format.unwrap_or_default(), &out, || {
                out.characters.iter().map(|m| chars_line(m) + "\n").collect()
            })?;
        }
        Command::Cells { common, kind } => {
            let cfg = load_config(&common)?;
            let kind = CellKind::parse(&kind).map_err(|e| Error::Config(e.to_string()))?;
            let g = cfg.build_group()?;
            let table = irr_characters(&g)?;
            let c = cfg.params(&g)?;
            let seed = cfg.seed()?;
            let p = match kind {
                CellKind::Left => left_cells(&g, &table, &c, seed)?,
                CellKind::Right => right_cells(&g, &table, &c, seed)?,
                CellKind::TwoSided => two_sided_candidate(&g, &table, &c, seed)?,
            };
            let out = CellsOut { group: g.kind.label(), c: class_literals(&g, &c), seed, cells: p.report(&g, &table) };
            emit(cfg.format.unwrap_or_default(), &out, || cells_table(&out, &table))?;
        }
        Command::Verify { common, suite, cap } => {
            let suite = Suite::parse(&suite)?;
            let cfg = load_config(&common)?;
            let g = cfg.build_group()?;
            let defaults = VerifyOptions::default();
            let opts = VerifyOptions {
                seed: cfg.seed()?,
                samples: cfg.samples.unwrap_or(defaults.samples),
                cap: cap.or(cfg.cap).unwrap_or(defaults.cap),
                trunc: cfg.trunc.unwrap_or(defaults.trunc),
            };
            let report = run_suite(&g, suite, opts)?;
            emit(cfg.format.unwrap_or_default(), &report, || verify_table(&report))?;
            if !report.passed {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cells_table(out: &CellsOut, _table: &CharacterTable) -> String {
    let r = &out.cells;
    let mut s = format!("{}  c = {:?}  seed {}  kind {:?}\n", out.group, out.c.0, out.seed, r.kind);
    for (b, cc) in r.blocks.iter().zip(&r.cellular_characters) {
        s += &format!(
            "{{{}}}  eu -> {:.6}{:+.6}i  char {}\n",
            b.elements.join(", "),
            b.euler_limit.re,
            b.euler_limit.im,
            chars_line(&cc.mults)
        );
    }
    if let Some(e) = r.exact {
        s += &format!("exact {e}\n");
    }
    s += &format!("margin {:?}  retries {}\n", r.diagnostics.margin, r.diagnostics.retries);
    s
}

fn verify_table(r: &VerifyReport) -> String {
    let mut s = format!("{}  suite {:?}  seed {}\n", r.group, r.suite, r.seed);
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        s += &format!("{tag}  {:<22} {}  {}\n", c.name, c.statement, c.detail);
    }
    s += if r.passed { "all checks passed\n" } else { "some checks failed\n" };
    s
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CM_CELLS_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("CM_CELLS_THREADS={v:?} is not a count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Ambiguity(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
