//! Command-line front end: `list`, `verify`, `construct`, `reduce`, `regress`.
//!
//! Exit codes: 0 when every verdict matches its expectation, 1 on a failed
//! expectation, 2 on usage or input errors, 3 when a check is inconclusive.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{self, CatalogEntry, Check, RunOptions};
use crate::construct::{dynamical_yb_from_ternary, ternary_from_yb, yb_from_ternary, ConstructionKind, Preconditions};
use crate::dsl::{self, DefinitionKind};
use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::lax::{check_refactorization, check_strongness, LaxMatrix};
use crate::quasigroup::{BuiltinQuasigroup, Quasigroup};
use crate::reduce::{check_compatibility, reduce_lax, reduce_map, ConstraintFunction};
use crate::yb::{
    check_3d_consistency, check_dynamical_yb, check_invariance, check_involution, check_map_equality, check_symmetry,
    check_ternary_equality, check_yb, CheckOptions, DynamicalYbMap, ParametricTernarySystem, ParametricYbMap, Source,
    SymmetryKind, Verdict, VerificationReport,
};

pub const DEFAULT_FIELD: &str = "fp:2305843009213693951";

#[derive(Parser, Debug)]
#[command(name = "ybmaps", version, about = "Verify, construct and reduce parametric Yang-Baxter maps")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// `q`, `fp` or `fp:<prime>`.
    #[arg(long, global = true, default_value = DEFAULT_FIELD)]
    pub field: String,
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Random spectral values per refactorization check (zeta = 0 is always added).
    #[arg(long = "zeta-points", global = true, default_value_t = 3)]
    pub zeta_points: usize,
    /// Perturbed candidates per sample in the strongness check.
    #[arg(long, global = true, default_value_t = 10)]
    pub perturbations: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Refuse to build when a precondition does not pass (default).
    #[arg(long, global = true, overrides_with = "no_strict")]
    pub strict: bool,
    /// Build anyway and report failed preconditions.
    #[arg(long = "no-strict", global = true, overrides_with = "strict")]
    pub no_strict: bool,
    /// Worker cap (default: machine parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Catalog entries with their expected flags.
    List,
    /// Run one verifier on a catalog entry or a DSL file.
    Verify(VerifyArgs),
    /// Build a YB map from a ternary system (or `inverse`: a ternary system from a map) and verify it.
    Construct(ConstructArgs),
    /// Restrict a map to a compatible constraint `x_k = f(other coordinates)` and verify the result.
    Reduce(ReduceArgs),
    /// Run every catalog expectation.
    Regress,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Yb,
    #[value(name = "3d")]
    ThreeD,
    Lax,
    Invariance,
    Involution,
    Dynamical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    #[value(alias = "pass")]
    Yes,
    #[value(alias = "fail")]
    No,
}

impl Expect {
    fn verdict(self) -> Verdict {
        match self {
            Expect::Yes => Verdict::Pass,
            Expect::No => Verdict::Fail,
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub check: VerifyKind,
    /// Catalog name or path to a DSL file.
    pub target: String,
    /// Expected outcome; defaults to the catalog expectation, else `yes`.
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
    #[arg(long)]
    pub quasigroup: Option<String>,
    /// With `3d`: also check this symmetry (homogeneous, division, loop, abelian).
    #[arg(long)]
    pub symmetry: Option<String>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// group, abelian_additive, division, loop, abelian_general, shibukawa_dynamical or inverse.
    pub kind: String,
    #[arg(long)]
    pub ternary: Option<String>,
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long)]
    pub quasigroup: Option<String>,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long)]
    pub map: String,
    /// `zero`, `constant(c)` or an expression in x1.. and p1...
    #[arg(long)]
    pub constraint: String,
    /// 1-based coordinate fixed by the constraint.
    #[arg(long)]
    pub index: usize,
    /// Catalog map the reduced map should equal.
    #[arg(long)]
    pub compare: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub subject: String,
    pub check: String,
    pub anchor: Option<String>,
    /// `None` for informational rows (preconditions in lenient mode).
    pub expected: Option<Verdict>,
    pub matches: bool,
    pub report: VerificationReport,
}

impl Row {
    fn new(
        subject: &str,
        check: &str,
        anchor: Option<&str>,
        expected: Option<Verdict>,
        report: VerificationReport,
    ) -> Self {
        Row {
            subject: subject.to_string(),
            check: check.to_string(),
            anchor: anchor.map(str::to_string),
            expected,
            matches: expected.is_none_or(|v| v == report.verdict),
            report,
        }
    }

    fn status(&self) -> Status {
        if self.matches {
            Status::Ok
        } else if self.report.verdict == Verdict::Inconclusive {
            Status::Inconclusive
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Output {
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub samples: usize,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
    pub status: Status,
}

impl Output {
    fn status_of(rows: &[Row]) -> Status {
        let s: Vec<Status> = rows.iter().map(Row::status).collect();
        if s.contains(&Status::Fail) {
            Status::Fail
        } else if s.contains(&Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Ok
        }
    }

    fn render_text(&self) -> String {
        let mut out =
            format!("{} [field {}, seed {}, samples {}]\n", self.command, self.field, self.seed, self.samples);
        for r in &self.rows {
            out.push_str(&r.report.summary_line());
            out.push('\n');
            let expected = match r.expected {
                Some(v) => format!("expected {v}{}", if r.matches { "" } else { "  MISMATCH" }),
                None => "informational".to_string(),
            };
            out.push_str(&format!("    {}: {expected}", r.check));
            if let Some(a) = &r.anchor {
                out.push_str(&format!("  [{a}]"));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!(
            "status: {}\n",
            serde_json::to_value(self.status).expect("status").as_str().unwrap_or("")
        ));
        out
    }
}

#[derive(Serialize)]
struct ListedEntry<'a> {
    name: &'a str,
    kind: &'a str,
    param_arity: usize,
    contexts: Vec<String>,
    checks: Vec<String>,
    anchor: &'a str,
    fixture: Option<&'a str>,
}

#[derive(Serialize)]
struct Listing<'a> {
    command: &'static str,
    entries: Vec<ListedEntry<'a>>,
}

struct Context {
    cfg: FieldConfig,
    opts: CheckOptions,
    run: RunOptions,
    strict: bool,
}

impl Context {
    fn new(g: &GlobalArgs) -> Result<Self> {
        let cfg = FieldConfig::parse(&g.field, g.seed)?;
        let mut opts = CheckOptions::new(g.samples);
        if let Some(j) = g.jobs {
            opts = opts.with_jobs(j);
        }
        let run = RunOptions { check: opts.clone(), zeta_points: g.zeta_points, perturbations: g.perturbations };
        Ok(Context { cfg, opts, run, strict: !g.no_strict })
    }

    fn pre(&self) -> Preconditions {
        Preconditions::Check { cfg: self.cfg.clone(), opts: self.opts.clone(), strict: self.strict }
    }

    fn output(&self, command: String, rows: Vec<Row>, notes: Vec<String>) -> Output {
        Output {
            command,
            field: self.cfg.field().label(),
            seed: self.cfg.rng_seed,
            samples: self.opts.samples,
            status: Output::status_of(&rows),
            rows,
            notes,
        }
    }
}

/// A resolved command-line target.
enum Target {
    Entry(&'static CatalogEntry),
    Map(ParametricYbMap, Option<String>),
    Ternary(ParametricTernarySystem, Option<String>),
}

fn resolve(name: &str) -> Result<Target> {
    if let Ok(e) = catalog::lookup(name) {
        return Ok(Target::Entry(e));
    }
    let path = Path::new(name);
    if !path.is_file() {
        return Err(Error::UnknownEntry(name.to_string()));
    }
    let def = dsl::load(path)?;
    let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name).to_string();
    let q = def.quasigroup().map(str::to_string);
    Ok(match def.kind() {
        DefinitionKind::YbMap => Target::Map(def.into_yb_map(&label)?, q),
        DefinitionKind::Ternary => Target::Ternary(def.into_ternary(&label)?, q),
    })
}

impl Target {
    fn name(&self) -> &str {
        match self {
            Target::Entry(e) => e.name,
            Target::Map(m, _) => m.name(),
            Target::Ternary(t, _) => t.name(),
        }
    }

    fn anchor(&self) -> Option<&'static str> {
        match self {
            Target::Entry(e) => Some(e.anchor),
            _ => None,
        }
    }

    fn map(&self) -> Result<ParametricYbMap> {
        match self {
            Target::Entry(e) => e.map().cloned(),
            Target::Map(m, _) => Some(m.clone()),
            Target::Ternary(..) => None,
        }
        .ok_or_else(|| Error::IncompatibleStructure(format!("{} is not a YB map", self.name())))
    }

    fn ternary(&self) -> Result<ParametricTernarySystem> {
        match self {
            Target::Entry(e) => e.ternary().cloned(),
            Target::Ternary(t, _) => Some(t.clone()),
            Target::Map(..) => None,
        }
        .ok_or_else(|| Error::IncompatibleStructure(format!("{} is not a ternary system", self.name())))
    }

    fn quasigroup(&self, flag: Option<&str>) -> Result<Option<Quasigroup>> {
        let name = match (flag, self) {
            (Some(q), _) => Some(q.to_string()),
            (None, Target::Entry(e)) => e.contexts.first().map(|q| q.name()),
            (None, Target::Map(_, q) | Target::Ternary(_, q)) => q.clone(),
        };
        name.map(|n| Quasigroup::builtin(&n)).transpose()
    }

    /// The catalog expectation for checks matching `pick`.
    fn expected(&self, pick: impl Fn(&Check) -> bool) -> Option<Verdict> {
        match self {
            Target::Entry(e) => e.checks.iter().find(|c| pick(c)).map(|c| c.expected()),
            _ => None,
        }
    }

    /// A catalog Lax entry for this target: the entry itself or the one built on its map.
    fn lax(&self) -> Result<(&'static CatalogEntry, LaxMatrix, ParametricYbMap)> {
        if let Target::Entry(e) = self {
            if let Some((l, m)) = e.lax() {
                return Ok((e, l.clone(), m.clone()));
            }
            for cand in catalog::list() {
                if let Some((l, m)) = cand.lax() {
                    if m.name() == e.name {
                        return Ok((cand, l.clone(), m.clone()));
                    }
                }
            }
        }
        Err(Error::IncompatibleStructure(format!("no Lax matrix is known for {}", self.name())))
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn verify(args: &VerifyArgs, ctx: &Context) -> Result<Output> {
    let target = resolve(&args.target)?;
    let (cfg, opts) = (&ctx.cfg, &ctx.opts);
    let anchor = target.anchor();
    let subject = target.name().to_string();
    let expect = |pick: &dyn Fn(&Check) -> bool| {
        Some(args.expect.map(Expect::verdict).or_else(|| target.expected(pick)).unwrap_or(Verdict::Pass))
    };
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    match args.check {
        VerifyKind::Yb => {
            let r = check_yb(&target.map()?, cfg, opts)?;
            rows.push(Row::new(&subject, "yb", anchor, expect(&|c| *c == Check::Yb), r));
        }
        VerifyKind::ThreeD => {
            let t = target.ternary()?;
            let r = check_3d_consistency(&t, cfg, opts)?;
            rows.push(Row::new(&subject, "3d", anchor, expect(&|c| *c == Check::Consistency3d), r));
            if let Some(s) = &args.symmetry {
                let kind = SymmetryKind::parse(s)?;
                let q = target
                    .quasigroup(args.quasigroup.as_deref())?
                    .ok_or_else(|| usage("--symmetry needs --quasigroup"))?;
                let b = q.builtin_kind();
                let r = check_symmetry(&t, kind, &q, cfg, opts)?;
                let check = format!("symmetry:{kind}/{}", q.name());
                rows.push(Row::new(
                    &subject,
                    &check,
                    anchor,
                    expect(&|c| matches!(c, Check::Symmetry(k, bq) if *k == kind && Some(*bq) == b)),
                    r,
                ));
            }
        }
        VerifyKind::Lax => {
            let (entry, lax, map) = target.lax()?;
            let r = check_refactorization(&lax, &map, cfg, opts, ctx.run.zeta_points)?;
            let exp = |c: Check| Some(args.expect.map(Expect::verdict).unwrap_or(c.expected()));
            rows.push(Row::new(entry.name, "refactorization", Some(entry.anchor), exp(Check::Refactorization), r));
            if entry.checks.contains(&Check::Strongness) {
                let r = check_strongness(&lax, &map, cfg, opts, ctx.run.perturbations)?;
                rows.push(Row::new(entry.name, "strongness", Some(entry.anchor), exp(Check::Strongness), r));
            }
        }
        VerifyKind::Invariance => {
            let q =
                target.quasigroup(args.quasigroup.as_deref())?.ok_or_else(|| usage("invariance needs --quasigroup"))?;
            let b = q.builtin_kind();
            let r = check_invariance(&target.map()?, &q, cfg, opts)?;
            let check = format!("invariance/{}", q.name());
            rows.push(Row::new(
                &subject,
                &check,
                anchor,
                expect(&|c| matches!(c, Check::Invariance(bq) if Some(*bq) == b)),
                r,
            ));
        }
        VerifyKind::Involution => {
            let r = check_involution(&target.map()?, cfg, opts)?;
            rows.push(Row::new(&subject, "involution", anchor, expect(&|c| matches!(c, Check::Involution(_))), r));
        }
        VerifyKind::Dynamical => {
            let q = target
                .quasigroup(args.quasigroup.as_deref())?
                .unwrap_or_else(|| Quasigroup::from_builtin(BuiltinQuasigroup::Additive));
            let d: DynamicalYbMap = match &target {
                Target::Ternary(t, _) => dynamical_yb_from_ternary(t, &q, None, &ctx.pre())?,
                Target::Entry(e) if e.ternary().is_some() => {
                    dynamical_yb_from_ternary(e.ternary().expect("ternary"), &q, None, &ctx.pre())?
                }
                _ => {
                    notes.push("a plain YB map is checked as a constant dynamical map".into());
                    DynamicalYbMap::constant(&target.map()?, q.clone())?
                }
            };
            let r = check_dynamical_yb(&d, cfg, opts)?;
            rows.push(Row::new(&subject, "dynamical", anchor, expect(&|_| false), r));
        }
    }
    let check = format!("{:?}", args.check).to_lowercase().replace("threed", "3d");
    Ok(ctx.output(format!("verify {check} {}", args.target), rows, notes))
}

fn precondition_rows(source: &Source, subject: &str, strict: bool) -> Vec<Row> {
    match source {
        Source::Constructed(recipe) => recipe
            .preconditions
            .iter()
            .map(|r| {
                let check = format!("precondition: {}", r.identity);
                Row::new(subject, &check, None, strict.then_some(Verdict::Pass), r.clone())
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn construct(args: &ConstructArgs, ctx: &Context) -> Result<Output> {
    let kind = ConstructionKind::parse(&args.kind)?;
    let (cfg, opts) = (&ctx.cfg, &ctx.opts);
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let command;
    match kind {
        ConstructionKind::Inverse => {
            let name = args.map.as_deref().ok_or_else(|| usage("construct inverse needs --map"))?;
            command = format!("construct inverse --map {name}");
            let target = resolve(name)?;
            let map = target.map()?;
            let q = target.quasigroup(args.quasigroup.as_deref())?.unwrap_or_else(|| kind.default_quasigroup());
            let t = ternary_from_yb(&map, &q, &ctx.pre())?;
            rows.extend(precondition_rows(t.source(), name, ctx.strict));
            rows.push(Row::new(t.name(), "3d", None, Some(Verdict::Pass), check_3d_consistency(&t, cfg, opts)?));
            if let Some(known) = q.builtin_kind().and_then(|b| catalog::known_inverse(name, b)) {
                let entry = catalog::lookup(known)?;
                let r = check_ternary_equality(&t, entry.ternary().expect("ternary entry"), cfg, opts)?;
                if r.passed() {
                    notes.push(format!("confirmed: the constructed ternary system equals {known} ({})", entry.anchor));
                }
                rows.push(Row::new(t.name(), &format!("equals {known}"), Some(entry.anchor), Some(Verdict::Pass), r));
            }
        }
        _ => {
            let name = args.ternary.as_deref().ok_or_else(|| usage("construct needs --ternary"))?;
            command = format!("construct {kind} --ternary {name}");
            let target = resolve(name)?;
            let t = target.ternary()?;
            let q = match &args.quasigroup {
                Some(q) => Quasigroup::builtin(q)?,
                None => kind.default_quasigroup(),
            };
            if kind == ConstructionKind::ShibukawaDynamical {
                let d = dynamical_yb_from_ternary(&t, &q, None, &ctx.pre())?;
                rows.push(Row::new(
                    d.name(),
                    "dynamical",
                    None,
                    Some(Verdict::Pass),
                    check_dynamical_yb(&d, cfg, opts)?,
                ));
            } else {
                let map = yb_from_ternary(&t, kind, &q, &ctx.pre())?;
                rows.extend(precondition_rows(map.source(), name, ctx.strict));
                rows.push(Row::new(map.name(), "yb", None, Some(Verdict::Pass), check_yb(&map, cfg, opts)?));
                if let Some(known) = q.builtin_kind().and_then(|b| catalog::known_construction(name, kind.name(), b)) {
                    let entry = catalog::lookup(known)?;
                    let r = check_map_equality(&map, entry.map().expect("map entry"), cfg, opts)?;
                    if r.passed() {
                        notes.push(format!("confirmed: the constructed map equals {known} ({})", entry.anchor));
                    }
                    rows.push(Row::new(
                        map.name(),
                        &format!("equals {known}"),
                        Some(entry.anchor),
                        Some(Verdict::Pass),
                        r,
                    ));
                }
            }
        }
    }
    if rows.iter().any(|r| r.expected.is_none() && !r.report.passed()) {
        notes.push("a precondition did not pass; the object was built anyway (--no-strict)".into());
    }
    Ok(ctx.output(command, rows, notes))
}

fn reduce(args: &ReduceArgs, ctx: &Context) -> Result<Output> {
    let (cfg, opts) = (&ctx.cfg, &ctx.opts);
    let target = resolve(&args.map)?;
    let map = target.map()?;
    let f = ConstraintFunction::parse(&args.constraint, map.dim(), args.index, map.param_arity())?;
    let command = format!("reduce --map {} --constraint {} --index {}", args.map, args.constraint, args.index);
    let compat = check_compatibility(&map, &f, cfg, opts)?;
    let compatible = compat.passed();
    let mut rows = vec![Row::new(map.name(), "compatibility", target.anchor(), Some(Verdict::Pass), compat)];
    let mut notes = Vec::new();
    if !compatible && ctx.strict {
        notes.push("the constraint is not compatible with the map; nothing was reduced".into());
        return Ok(ctx.output(command, rows, notes));
    }
    let reduced = reduce_map(&map, &f, &Preconditions::Skip)?;
    rows.push(Row::new(reduced.name(), "yb", None, Some(Verdict::Pass), check_yb(&reduced, cfg, opts)?));
    if let Ok((_, lax, _)) = target.lax() {
        let rl = reduce_lax(&lax, &f)?;
        let r = check_refactorization(&rl, &reduced, cfg, opts, ctx.run.zeta_points)?;
        rows.push(Row::new(
            reduced.name(),
            &format!("refactorization with {}", rl.name()),
            None,
            Some(Verdict::Pass),
            r,
        ));
    }
    if let Some(name) = &args.compare {
        let entry = catalog::lookup(name)?;
        let other = entry.map().ok_or_else(|| Error::IncompatibleStructure(format!("{name} is not a YB map")))?;
        let r = check_map_equality(&reduced, other, cfg, opts)?;
        rows.push(Row::new(reduced.name(), &format!("equals {name}"), Some(entry.anchor), Some(Verdict::Pass), r));
    }
    Ok(ctx.output(command, rows, notes))
}

fn regress(ctx: &Context) -> Result<Output> {
    let run = catalog::run_all(&ctx.cfg, &ctx.run)?;
    let rows = run
        .rows
        .into_iter()
        .map(|r| Row::new(&r.entry, &r.check, Some(&r.anchor), Some(r.expected), r.report))
        .collect();
    Ok(ctx.output("regress".into(), rows, Vec::new()))
}

fn list(format: Format) -> String {
    let entries: Vec<ListedEntry> = catalog::list()
        .iter()
        .map(|e| ListedEntry {
            name: e.name,
            kind: e.kind.name(),
            param_arity: e.param_arity(),
            contexts: e.contexts.iter().map(|q| q.name()).collect(),
            checks: e.checks.iter().map(|c| c.to_string()).collect(),
            anchor: e.anchor,
            fixture: e.fixture,
        })
        .collect();
    match format {
        Format::Json => {
            let listing = Listing { command: "list", entries };
            serde_json::to_string_pretty(&listing).expect("listing serializes") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for e in entries {
                out.push_str(&format!(
                    "{:<22} {:<10} arity {}  {}\n",
                    e.name,
                    e.kind,
                    e.param_arity,
                    e.checks.join(", ")
                ));
                out.push_str(&format!("    {}\n", e.anchor));
            }
            out
        }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let ctx = Context::new(&cli.global)?;
    match &cli.command {
        Command::Verify(a) => verify(a, &ctx),
        Command::Construct(a) => construct(a, &ctx),
        Command::Reduce(a) => reduce(a, &ctx),
        Command::Regress => regress(&ctx),
        Command::List => unreachable!("handled before execute"),
    }
}

/// Parses `args` (program name first), writes the report to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let format = cli.global.format;
    if let Command::List = cli.command {
        let _ = out.write_all(list(format).as_bytes());
        return 0;
    }
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(Error::PreconditionFailed(report)) => {
            let ctx = Context::new(&cli.global).expect("parsed before");
            let subject = report.subject.clone();
            let row =
                Row::new(&subject, &format!("precondition: {}", report.identity), None, Some(Verdict::Pass), *report);
            ctx.output(
                command_label(&cli.command),
                vec![row],
                vec!["a precondition did not pass; nothing was built (use --no-strict to build anyway)".into()],
            )
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&output).expect("output serializes") + "\n",
        Format::Text => output.render_text(),
    };
    let _ = out.write_all(text.as_bytes());
    output.status.exit_code()
}

fn command_label(c: &Command) -> String {
    match c {
        Command::List => "list".into(),
        Command::Verify(a) => format!("verify {}", a.target),
        Command::Construct(a) => format!("construct {}", a.kind),
        Command::Reduce(a) => format!("reduce --map {}", a.map),
        Command::Regress => "regress".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["ybmaps"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["verify", "yb", "adler", "--samples", "20"]).0, 0);
        assert_eq!(call(&["verify", "involution", "fourparam", "--samples", "20"]).0, 0);
        assert_eq!(call(&["verify", "involution", "fourparam", "--expect", "yes", "--samples", "20"]).0, 1);
        assert_eq!(call(&["verify", "yb", "no_such_map"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["verify", "yb", "adler", "--field", "fp:15"]).0, 2);
    }

    #[test]
    fn strict_flag_pairs() {
        let cli = Cli::try_parse_from(["ybmaps", "--no-strict", "--strict", "regress"]).unwrap();
        assert!(!cli.global.no_strict);
        let cli = Cli::try_parse_from(["ybmaps", "regress", "--no-strict"]).unwrap();
        assert!(cli.global.no_strict);
    }

    #[test]
    fn text_report_shows_anchor() {
        let (code, out, _) = call(&["verify", "yb", "adler", "--samples", "10"]);
        assert_eq!(code, 0);
        assert!(out.contains(catalog::lookup("adler").unwrap().anchor));
    }
}
