//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 success, 1 domain-negative result, 2 input error,
//! 3 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use orbifill_core::chen_ruan::{cr_of_filling, cr_pairing_check, Convention, CrRing, FillingCrProfile};
use orbifill_core::constraints::{admissible, constraint_for_boundary, rp_report, BoundaryDescriptor};
use orbifill_core::floer::{
    build_ledger, check_ledger, known_differentials, rank_bookkeeping, sh_vanishing, CellProfiles, CoefficientRing,
    DifferentialEntry, FloerError, Provenance,
};
use orbifill_core::group::{catalog, FiniteUnitaryGroup, DEFAULT_MAX_ORDER};
use orbifill_core::reeb::{families, loop_components, mclean_discrepancy, PeriodValue};
use orbifill_core::span::{composition_check, pushpull, PointOrbifoldSpan, SpanError, TableGroup};
use serde_json::{json, Value};

use crate::battery;
use crate::cache::{load_group, CACHE_ENV};
use crate::doc::{json_digest, read_text, sha256_hex, FillingDocument, GroupDocument, GroupRef, SpanDocument};
use crate::error::CliError;
use crate::report::{self, rational, Format, Report};

/// Library cap for `cr sweep` and `span random` when `--max-order` is absent.
pub const SMALL_GROUP_ORDER: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "orbifill", version, about = "Exact invariants of isolated quotient singularities C^n/G")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Same as --format json.
    #[arg(long, global = true, conflicts_with_all = ["format", "table"])]
    pub json: bool,
    /// Same as --format table.
    #[arg(long, global = true, conflicts_with = "format")]
    pub table: bool,
    /// Directory for enumerated-group cache entries.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Group order cap (enumeration; library size for `cr sweep` and `span random`).
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn output_format(&self) -> Format {
        match (self.format, self.json, self.table) {
            (Some(f), _, _) => f,
            (None, true, _) => Format::Json,
            _ => Format::Table,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerated group, conjugacy classes and ages.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Chen-Ruan cohomology.
    #[command(subcommand)]
    Cr(CrCmd),
    /// Reeb orbit families of the standard contact form on S^{2n-1}/G.
    #[command(subcommand)]
    Reeb(ReebCmd),
    /// Floer generator ledger.
    #[command(subcommand)]
    Ledger(LedgerCmd),
    /// Spans of point orbifolds.
    #[command(subcommand)]
    Span(SpanCmd),
    /// Order constraints from the boundary.
    #[command(subcommand)]
    Constraints(ConstraintsCmd),
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Order, conjugacy classes, ages and whether the singularity is isolated
    Info { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct ConventionArg {
    /// Cup-product summation: orbit-representative-sum (orbit) or full-pair-sum (full).
    #[arg(long, value_parser = parse_convention)]
    pub convention: Option<Convention>,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    Convention::parse(s)
        .ok_or_else(|| format!("unknown convention {s:?}; expected orbit-representative-sum or full-pair-sum"))
}

#[derive(Debug, Subcommand)]
pub enum CrCmd {
    /// Sectors, cup products and pairing. Exits 1 if the convention is not associative.
    Ring {
        file: PathBuf,
        #[command(flatten)]
        convention: ConventionArg,
    },
    /// Graded ranks for a filling with isolated singularities.
    Filling { profile: PathBuf },
    /// Associativity of both conventions over the isolated test battery.
    Sweep,
}

#[derive(Debug, Subcommand)]
pub enum ReebCmd {
    /// Families with period below the slope, discrepancy and loop components.
    Families {
        file: PathBuf,
        #[arg(long, value_parser = parse_period)]
        slope: PeriodValue,
    },
}

fn parse_period(s: &str) -> Result<PeriodValue, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum LedgerCmd {
    /// Generators at a slope, known differential entries and their checks.
    Build {
        file: PathBuf,
        #[arg(long, value_parser = parse_period)]
        slope: PeriodValue,
        /// Morse profile `CLASS@PERIOD=i,j,...`, e.g. `1a@1=0,3`. Repeatable.
        #[arg(long)]
        profile: Vec<String>,
        /// Extra differential entry `SOURCE,TARGET,COEFFICIENT` to check. Repeatable.
        #[arg(long)]
        entry: Vec<String>,
    },
    /// Whether symplectic cohomology vanishes over the ring. Exits 1 if not.
    Vanishing {
        file: PathBuf,
        #[arg(long, value_parser = parse_ring)]
        ring: CoefficientRing,
    },
}

fn parse_ring(s: &str) -> Result<CoefficientRing, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum SpanCmd {
    /// Pull-push weights and composition of consecutive spans. Exits 1 on any inequality.
    Check { file: PathBuf },
    /// Seeded random composable pairs over the small-group library.
    Random {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstraintsCmd {
    /// Divisor constraints for `lens:k,n`, `brieskorn:k,n`, `subcritical:n` or `dilation:n`.
    Boundary {
        #[arg(value_parser = parse_boundary)]
        descriptor: BoundaryDescriptor,
    },
    /// Whether the group order meets the constraints. Exits 1 if not, or if none apply.
    Admit {
        file: PathBuf,
        #[arg(long, value_parser = parse_boundary)]
        boundary: BoundaryDescriptor,
    },
    /// Uniqueness of the filling of RP^{2n-1}.
    Rp { n: u32 },
}

fn parse_boundary(s: &str) -> Result<BoundaryDescriptor, String> {
    s.parse().map_err(|e: orbifill_core::constraints::ConstraintError| e.to_string())
}

/// Result of a command: the report and whether the queried property holds.
pub struct Outcome {
    pub report: Report,
    pub holds: bool,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, holds: true }
    }
}

struct Context<'a> {
    cache_dir: Option<PathBuf>,
    max_order: Option<usize>,
    log: &'a mut dyn Write,
}

impl Context<'_> {
    fn load(&mut self, path: &Path) -> Result<(GroupDocument, FiniteUnitaryGroup), CliError> {
        let doc = GroupDocument::read(path)?;
        let (g, _) = load_group(&doc, self.cache_dir.as_deref(), self.max_order.unwrap_or(DEFAULT_MAX_ORDER), self.log)
            .map_err(|e| locate(path, e))?;
        Ok((doc, g))
    }
}

fn locate(path: &Path, e: CliError) -> CliError {
    match e {
        CliError::Input(m) if !m.starts_with(&path.display().to_string()) => {
            CliError::Input(format!("{}: {m}", path.display()))
        }
        other => other,
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let format = cli.output_format();
    let mut ctx = Context { cache_dir: cli.cache_dir.clone(), max_order: cli.max_order, log: err };
    match dispatch(&cli.command, &mut ctx) {
        Ok(o) => {
            let _ = write!(out, "{}", o.report.render(format));
            i32::from(!o.holds)
        }
        Err(e) => {
            let _ = writeln!(ctx.log, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    match cmd {
        Command::Group(GroupCmd::Info { file }) => {
            let (doc, g) = ctx.load(file)?;
            let mut r = Report::new("group info", report::group_payload(&g));
            r.input_digest = Some(doc.digest());
            Ok(Outcome::ok(r))
        }
        Command::Cr(CrCmd::Ring { file, convention }) => {
            let conv = convention.convention.unwrap_or(Convention::DEFAULT);
            let (doc, g) = ctx.load(file)?;
            let ring = CrRing::new(&g, conv).map_err(|e| locate(file, e.into()))?;
            let other_conv = match conv {
                Convention::FullPairSum => Convention::OrbitRepresentativeSum,
                Convention::OrbitRepresentativeSum => Convention::FullPairSum,
            };
            let other = CrRing::new(&g, other_conv)?;
            let pairing = cr_pairing_check(&g, &ring);
            let holds = ring.associativity_failures().is_empty();
            if !pairing.all_pass() {
                return Err(CliError::Internal(format!("{}: Poincaré pairing check failed", file.display())));
            }
            let mut r = Report::new("cr ring", report::ring_payload(&ring, &other, &pairing));
            r.input_digest = Some(doc.digest());
            r.convention = conv;
            Ok(Outcome { report: r, holds })
        }
        Command::Cr(CrCmd::Filling { profile }) => {
            let text = read_text(profile)?;
            let origin = profile.display().to_string();
            let fd = FillingDocument::parse(&text, &origin)?;
            let coefficient: CoefficientRing =
                fd.coefficient.parse().map_err(|e| CliError::Input(format!("{origin}: coefficient: {e}")))?;
            let base = profile.parent().unwrap_or(Path::new("."));
            let mut groups = Vec::new();
            for s in &fd.singularities {
                groups.push(ctx.load(&base.join(s))?.1);
            }
            let ranks = cr_of_filling(&FillingCrProfile {
                betti: fd.betti.clone(),
                singularities: groups.iter().collect(),
                coefficient,
                torsion_note: fd.torsion_note.clone(),
            })
            .map_err(|e| locate(profile, e.into()))?;
            let mut r = Report::new("cr filling", report::graded_ranks(&ranks));
            r.input_digest = Some(json_digest(&text, &origin)?);
            Ok(Outcome::ok(r))
        }
        Command::Cr(CrCmd::Sweep) => sweep(ctx.max_order.unwrap_or(SMALL_GROUP_ORDER)),
        Command::Reeb(ReebCmd::Families { file, slope }) => {
            let (doc, g) = ctx.load(file)?;
            let fams = families(&g, slope).map_err(|e| locate(file, e.into()))?;
            let disc = mclean_discrepancy(&g)?;
            let loops = loop_components(&g);
            let mut r = Report::new("reeb families", report::reeb_payload(&g, slope.value(), &fams, &disc, &loops));
            r.input_digest = Some(doc.digest());
            Ok(Outcome::ok(r))
        }
        Command::Ledger(LedgerCmd::Build { file, slope, profile, entry }) => {
            let (doc, g) = ctx.load(file)?;
            ledger(&doc, &g, slope, profile, entry).map_err(|e| locate(file, e))
        }
        Command::Ledger(LedgerCmd::Vanishing { file, ring }) => {
            let (doc, g) = ctx.load(file)?;
            let vanishes = sh_vanishing(&g, *ring).map_err(|e| locate(file, e.into()))?;
            let payload = json!({
                "group_order": g.order(),
                "ring": ring.to_string(),
                "order_is_unit": ring.is_unit(g.order() as u64),
                "vanishes": vanishes,
            });
            let mut r = Report::new("ledger vanishing", payload);
            r.input_digest = Some(doc.digest());
            Ok(Outcome { report: r, holds: vanishes })
        }
        Command::Span(SpanCmd::Check { file }) => span_check(file, ctx),
        Command::Span(SpanCmd::Random { trials, seed }) => {
            let max = ctx.max_order.unwrap_or(SMALL_GROUP_ORDER);
            let outcome = battery::run(*trials, *seed, max)?;
            let failures: Vec<Value> = outcome
                .failures()
                .map(
                    |t| json!({"trial": t.index, "groups": t.groups, "lhs": rational(&t.lhs), "rhs": rational(&t.rhs)}),
                )
                .collect();
            let orbits: usize = outcome.trials.iter().map(|t| t.orbits).sum();
            let payload = json!({
                "trials": trials,
                "max_order": max,
                "library_size": battery::library(max.max(1)).len(),
                "fiber_product_components": orbits,
                "all_equal": outcome.all_equal(),
                "failures": failures,
            });
            let mut r = Report::new("span random", payload);
            r.seed = Some(*seed);
            Ok(Outcome { report: r, holds: outcome.all_equal() })
        }
        Command::Constraints(ConstraintsCmd::Boundary { descriptor }) => {
            let c = constraint_for_boundary(*descriptor);
            let mut r = Report::new("constraints boundary", report::constraint_payload(&c));
            r.input_digest = Some(sha256_hex(descriptor.to_string().as_bytes()));
            Ok(Outcome::ok(r))
        }
        Command::Constraints(ConstraintsCmd::Admit { file, boundary }) => {
            let (doc, g) = ctx.load(file)?;
            let c = constraint_for_boundary(*boundary);
            let a = if c.applicable { Some(admissible(&g, *boundary)?) } else { None };
            let holds = a.as_ref().is_some_and(|a| a.admissible);
            let mut r = Report::new("constraints admit", report::admissibility_payload(&c, a.as_ref()));
            r.input_digest = Some(doc.digest());
            Ok(Outcome { report: r, holds })
        }
        Command::Constraints(ConstraintsCmd::Rp { n }) => {
            let rp = rp_report(*n)?;
            Ok(Outcome::ok(Report::new("constraints rp", report::rp_payload(&rp))))
        }
    }
}

fn sweep(max_order: usize) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut full_all = true;
    let mut orbit_all = true;
    let mut every_group_passes = true;
    for p in catalog::isolated_battery(max_order) {
        let g = p.enumerate(max_order.max(1))?;
        let full = CrRing::new(&g, Convention::FullPairSum)?.associativity_failures().len();
        let orbit = CrRing::new(&g, Convention::OrbitRepresentativeSum)?.associativity_failures().len();
        full_all &= full == 0;
        orbit_all &= orbit == 0;
        every_group_passes &= full == 0 || orbit == 0;
        rows.push(json!({
            "group": g.name(),
            "order": g.order(),
            "dimension": g.dimension(),
            "full_pair_sum_failures": full,
            "orbit_representative_sum_failures": orbit,
        }));
    }
    let passing: Vec<&str> = [(Convention::OrbitRepresentativeSum, orbit_all), (Convention::FullPairSum, full_all)]
        .into_iter()
        .filter(|(_, ok)| *ok)
        .map(|(c, _)| c.as_str())
        .collect();
    let payload = json!({
        "max_order": max_order,
        "groups": rows,
        "passing_conventions": passing,
        "default": Convention::DEFAULT.as_str(),
        "every_group_has_a_passing_convention": every_group_passes,
    });
    Ok(Outcome { report: Report::new("cr sweep", payload), holds: every_group_passes })
}

/// `CLASS@PERIOD=i,j,...`.
fn parse_profile(g: &FiniteUnitaryGroup, spec: &str) -> Result<((usize, PeriodValue), Vec<u32>), CliError> {
    let bad = |m: &str| CliError::Input(format!("--profile {spec:?}: {m}"));
    let (family, idx) = spec.split_once('=').ok_or_else(|| bad("expected CLASS@PERIOD=i,j,..."))?;
    let (label, period) = family.rsplit_once('@').ok_or_else(|| bad("expected CLASS@PERIOD before '='"))?;
    let class = g
        .classes()
        .iter()
        .position(|c| c.label == label.trim())
        .ok_or_else(|| bad(&format!("no conjugacy class labelled {:?}", label.trim())))?;
    let period: PeriodValue = period.parse().map_err(|e: String| bad(&e))?;
    let indices = idx
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<u32>().map_err(|_| bad(&format!("bad Morse index {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(((class, period), indices))
}

fn parse_entry(spec: &str) -> Result<DifferentialEntry, CliError> {
    let bad = || CliError::Input(format!("--entry {spec:?}: expected SOURCE,TARGET,COEFFICIENT"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [s, t, c] = parts.as_slice() else { return Err(bad()) };
    Ok(DifferentialEntry {
        source: s.parse().map_err(|_| bad())?,
        target: t.parse().map_err(|_| bad())?,
        coefficient: c.parse().map_err(|_| bad())?,
        provenance: Provenance::UserSupplied,
    })
}

fn ledger(
    doc: &GroupDocument,
    g: &FiniteUnitaryGroup,
    slope: &PeriodValue,
    profiles: &[String],
    extra: &[String],
) -> Result<Outcome, CliError> {
    let mut cells = CellProfiles::new();
    for p in profiles {
        let (k, v) = parse_profile(g, p)?;
        cells.insert(k, v);
    }
    let ledger = build_ledger(g, slope, &cells)?;
    let mut entries = known_differentials(&ledger);
    let established = entries.len();
    for e in extra {
        entries.push(parse_entry(e)?);
    }
    let ring = CrRing::new(g, Convention::DEFAULT)?;
    let book = rank_bookkeeping(&ledger, &ring);
    let (report, violation) = match check_ledger(&ledger, &entries) {
        Ok(rep) => (rep, Value::Null),
        Err(FloerError::InvariantViolation { entry, rule }) if entry >= established => {
            let rep = check_ledger(&ledger, &entries[..established])?;
            (rep, json!({"entry": entry, "rule": rule.as_str()}))
        }
        Err(FloerError::InvariantViolation { entry, rule }) => {
            return Err(CliError::Internal(format!("established entry {entry} violates {rule}")))
        }
        Err(e) => return Err(e.into()),
    };
    let holds = violation.is_null();
    let mut payload = report::ledger_payload(g, &ledger, &entries, &report, &book);
    payload.as_object_mut().expect("object payload").insert("violation".into(), violation);
    let mut r = Report::new("ledger build", payload);
    r.input_digest = Some(doc.digest());
    Ok(Outcome { report: r, holds })
}

fn resolve(name: &str, gref: &GroupRef, base: &Path, ctx: &mut Context<'_>) -> Result<TableGroup, CliError> {
    let locus = |m: String| CliError::Input(format!("groups.{name}: {m}"));
    match gref {
        GroupRef::Table(rows) => TableGroup::new(rows.clone()).map_err(|e| locus(e.to_string())),
        GroupRef::Library(n) => battery::library_group(n).ok_or_else(|| locus(format!("unknown library group {n:?}"))),
        GroupRef::File(p) => Ok(TableGroup::from_unitary(&ctx.load(&base.join(p))?.1)),
    }
}

fn span_check(file: &Path, ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let text = read_text(file)?;
    let origin = file.display().to_string();
    let doc = SpanDocument::parse(&text, &origin)?;
    let base = file.parent().unwrap_or(Path::new("."));
    let mut groups = std::collections::BTreeMap::new();
    for (name, gref) in &doc.groups {
        groups.insert(name.as_str(), resolve(name, gref, base, ctx).map_err(|e| locate(file, e))?);
    }
    let mut spans = Vec::new();
    for (i, s) in doc.spans.iter().enumerate() {
        let get = |n: &String| {
            groups
                .get(n.as_str())
                .cloned()
                .ok_or_else(|| CliError::Input(format!("{origin}: spans[{i}]: unknown group {n:?}")))
        };
        let span = PointOrbifoldSpan::new(get(&s.left)?, get(&s.middle)?, get(&s.right)?, s.s.clone(), s.t.clone())
            .map_err(|e| CliError::Input(format!("{origin}: spans[{i}]: {e}")))?;
        spans.push(span);
    }
    let weights: Vec<Value> =
        spans.iter().enumerate().map(|(i, s)| json!({"span": i, "pushpull": rational(&pushpull(s))})).collect();
    let mut compositions = Vec::new();
    let mut holds = true;
    for (i, pair) in spans.windows(2).enumerate() {
        let c = composition_check(&pair[0], &pair[1]).map_err(|e| match e {
            SpanError::MiddleMismatch => CliError::Input(format!(
                "{origin}: spans[{i}] and spans[{}]: right group of the first differs from the left group of the second",
                i + 1
            )),
            other => CliError::Input(format!("{origin}: spans[{i}]: {other}")),
        })?;
        holds &= c.equal && c.decomposition.orbit_stabilizer_holds();
        compositions.push(report::composition(i, &c));
    }
    let payload = json!({"spans": weights, "compositions": compositions, "all_equal": holds});
    let mut r = Report::new("span check", payload);
    r.input_digest = Some(json_digest(&text, &origin)?);
    Ok(Outcome { report: r, holds })
}
