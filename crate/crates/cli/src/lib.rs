//! The `ainf` command line: file-level pipelines over `ainf-core` with JSON
//! or text reports and the exit codes 0 (all checks pass), 1 (a check
//! failed) and 2 (usage or input error).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ainf_core::auslander::AuslanderCategory;
use ainf_core::filtration::{appendix_filtration, check_filtration, degree_filtration, Filtration};
use ainf_core::format::{category_to_spec, parse_cochain_spec, parse_spec, to_json, Workbench};
use ainf_core::hochschild::{deform_by_cocycle, hochschild_differential, DeformOptions, HochschildError};
use ainf_core::perfmod::{sod_report, SodReport};
use ainf_core::{par, AInfCategory, Check, ValidationReport, Witness};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Rounds of perturbed lifts in `gamma build`.
const LIFT_ROUNDS: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "ainf", version, about = "Exact checks for finite A-infinity algebras, filtrations and their Auslander categories")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the parallel sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure, Stasheff identities and (if present) the filtration.
    Validate { file: PathBuf },
    /// Stasheff identities up to an arity.
    Stasheff {
        file: PathBuf,
        #[arg(long)]
        max_arity: Option<usize>,
    },
    #[command(subcommand)]
    Filtration(FiltrationCommand),
    #[command(subcommand)]
    Gamma(GammaCommand),
    /// Semi-orthogonality report for the Auslander category.
    Sod { file: PathBuf },
    /// Deform the square-zero extension by a cochain.
    Deform {
        file: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum FiltrationCommand {
    /// Check the filtration stored in the file.
    Check { file: PathBuf },
    /// Write the file with its degree filtration.
    Degree {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the file with the two-degree filtration for the given κ.
    Appendix {
        file: PathBuf,
        #[arg(long)]
        kappa: i64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GammaCommand {
    /// Build the Auslander category and write it as a category file.
    Build {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WitnessRecord {
    pub n: usize,
    pub tuple: Vec<String>,
    pub check: String,
    pub discrepancy: Vec<(String, String)>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// The machine-readable report printed by every subcommand.
#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub tables: BTreeMap<String, Value>,
    pub witnesses: Vec<WitnessRecord>,
    /// Milliseconds per phase.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            verdict: "PASS".to_string(),
            tables: BTreeMap::new(),
            witnesses: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    fn passed(&self) -> bool {
        self.verdict == "PASS"
    }

    fn table(&mut self, name: &str, value: Value) {
        self.tables.insert(name.to_string(), value);
    }

    /// Adds the checks to the `checks` table and their witnesses.
    fn absorb(&mut self, report: &ValidationReport) {
        for c in &report.checks {
            self.check(c);
        }
    }

    /// [`absorb`](Self::absorb) with the check names prefixed.
    fn absorb_as(&mut self, prefix: &str, report: &ValidationReport) {
        for c in &report.checks {
            self.check(&Check {
                name: format!("{prefix}{}", c.name),
                ..c.clone()
            });
        }
    }

    fn check(&mut self, c: &Check) {
        let entry = json!({ "name": c.name, "passed": c.passed, "failures": c.failures });
        match self.tables.entry("checks".to_string()).or_insert_with(|| Value::Array(Vec::new())) {
            Value::Array(a) => a.push(entry),
            _ => unreachable!("checks is always an array"),
        }
        if !c.passed {
            self.verdict = "FAIL".to_string();
        }
        self.witnesses.extend(c.witnesses.iter().map(|w| record(&c.name, w)));
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    fn finish(mut self) -> Self {
        self.witnesses.sort();
        self
    }

    fn render_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, self.verdict);
        for c in self.tables.get("checks").and_then(Value::as_array).into_iter().flatten() {
            let mark = if c["passed"].as_bool() == Some(true) { "ok  " } else { "FAIL" };
            s += &format!("  [{mark}] {} ({} failures)\n", c["name"].as_str().unwrap_or(""), c["failures"]);
        }
        for (name, value) in self.tables.iter().filter(|(k, _)| *k != "checks") {
            match value.as_array() {
                Some(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
                    s += &format!("  {name}:\n");
                    for row in rows {
                        let cells: Vec<String> = row.as_array().unwrap().iter().map(cell).collect();
                        s += &format!("    {}\n", cells.join(" "));
                    }
                }
                _ => s += &format!("  {name}: {}\n", cell(value)),
            }
        }
        for w in &self.witnesses {
            let disc: Vec<String> = w.discrepancy.iter().map(|(l, x)| format!("{x}*{l}")).collect();
            s += &format!("  witness [{}] ({}): {}", w.check, w.tuple.join(", "), disc.join(" + "));
            if !w.note.is_empty() {
                s += &format!(" [{}]", w.note);
            }
            s.push('\n');
        }
        for (phase, ms) in &self.timings {
            s += &format!("  time {phase}: {ms:.1} ms\n");
        }
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn record(check: &str, w: &Witness) -> WitnessRecord {
    WitnessRecord {
        n: w.arity,
        tuple: w.tuple.clone(),
        check: check.to_string(),
        discrepancy: w.discrepancy.clone(),
        note: w.note.clone(),
    }
}

/// Why a command stopped before producing a report.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<Report, UsageError>;

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Workbench, UsageError> {
    let text = read(path)?;
    let spec = parse_spec(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    spec.load().map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), UsageError> {
    std::fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// The file's filtration, or the two-degree one when only κ is given.
fn resolve_filtration(w: &Workbench, report: &mut Report) -> Result<Filtration, UsageError> {
    if let Some(f) = &w.filtration {
        report.table("filtration_source", json!("file"));
        return Ok(f.clone());
    }
    if let Some(kappa) = w.kappa {
        report.table("filtration_source", json!(format!("two-degree construction, kappa = {kappa}")));
        return Ok(appendix_filtration(&w.category, kappa)?.0);
    }
    Err(UsageError(
        "the file has neither a filtration nor parameters.kappa; run `filtration degree` or `filtration appendix` first".into(),
    ))
}

/// Structure checks, then the filtration check. Returns false (with the
/// report marked failed) if either fails.
fn precheck(r: &AInfCategory, f: &Filtration, report: &mut Report) -> Result<bool, UsageError> {
    let structure = report.time("structure", || r.validate_structure());
    report.absorb(&structure);
    if !structure.passed() {
        return Ok(false);
    }
    let fc = report.time("filtration", || check_filtration(r, f))?;
    report.absorb(&fc);
    report.table("filtration_dims", json!(f.dims()));
    Ok(fc.passed())
}

fn validate(path: &Path) -> Outcome {
    let w = load(path)?;
    let mut report = Report::new("validate");
    let structure = report.time("structure", || w.category.validate_structure());
    report.absorb(&structure);
    report.table("dim", json!(w.category.dim()));
    report.table("objects", json!(w.category.objects()));
    if structure.passed() {
        let st = report.time("stasheff", || w.category.check_stasheff(None));
        report.absorb(&st);
        if let Some(f) = &w.filtration {
            let fc = report.time("filtration", || check_filtration(&w.category, f))?;
            report.absorb(&fc);
            report.table("filtration_dims", json!(f.dims()));
        }
    }
    Ok(report)
}

fn stasheff(path: &Path, max_arity: Option<usize>) -> Outcome {
    let w = load(path)?;
    let mut report = Report::new("stasheff");
    let structure = w.category.validate_structure();
    if !structure.passed() {
        report.absorb(&structure);
        return Ok(report);
    }
    let st = report.time("stasheff", || w.category.check_stasheff(max_arity));
    report.table("max_arity", json!(st.checks.len()));
    report.absorb(&st);
    Ok(report)
}

fn filtration_check(path: &Path) -> Outcome {
    let w = load(path)?;
    let f = w
        .filtration
        .as_ref()
        .ok_or_else(|| UsageError(format!("{}: no filtration section", path.display())))?;
    let mut report = Report::new("filtration check");
    precheck(&w.category, f, &mut report)?;
    report.table("n", json!(f.n()));
    Ok(report)
}

fn filtration_write(path: &Path, output: &Path, kappa: Option<i64>) -> Outcome {
    let w = load(path)?;
    let name = if kappa.is_some() { "filtration appendix" } else { "filtration degree" };
    let mut report = Report::new(name);
    let structure = w.category.validate_structure();
    if !structure.passed() {
        report.absorb(&structure);
        return Ok(report);
    }
    let f = match kappa {
        Some(k) => {
            let (f, params) = report.time("construct", || appendix_filtration(&w.category, k))?;
            report.table("a", json!(params.a));
            report.table("plateau", json!(params.n_big));
            f
        }
        None => report.time("construct", || degree_filtration(&w.category))?,
    };
    precheck(&w.category, &f, &mut report)?;
    report.table("n", json!(f.n()));
    let param = kappa.or(w.kappa);
    write(output, &to_json(&category_to_spec(&w.category, Some(&f), param)))?;
    Ok(report)
}

fn gamma_build(path: &Path, output: &Path) -> Outcome {
    let w = load(path)?;
    let mut report = Report::new("gamma build");
    let f = resolve_filtration(&w, &mut report)?;
    if !precheck(&w.category, &f, &mut report)? {
        return Ok(report);
    }
    let a = report.time("build", || AuslanderCategory::build(&w.category, &f))?;
    report.table("n", json!(a.n()));
    report.table("hom_dims", json!(a.hom_dims()));
    let structure = report.time("gamma structure", || a.gamma().validate_structure());
    report.absorb_as("gamma ", &structure);
    report.absorb(&a.check_index_inequalities());
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let lifts = report.time("lift independence", || a.check_lift_independence(LIFT_ROUNDS, &mut rng));
    report.absorb(&lifts);
    write(output, &to_json(&category_to_spec(a.gamma(), None, None)))?;
    Ok(report)
}

fn sod(path: &Path) -> Outcome {
    let w = load(path)?;
    let mut report = Report::new("sod");
    let f = resolve_filtration(&w, &mut report)?;
    if !precheck(&w.category, &f, &mut report)? {
        return Ok(report);
    }
    let a = report.time("build", || AuslanderCategory::build(&w.category, &f))?;
    let s: SodReport = report.time("sod", || sod_report(&a))?;
    report.table("n", json!(s.n));
    report.table("hom_dims", json!(a.hom_dims()));
    report.table("hom_P_S", json!(SodReport::totals(&s.p_to_s)));
    report.table("hom_S_S", json!(SodReport::totals(&s.s_to_s)));
    report.table("hom_P_S_graded", graded(&s.p_to_s));
    report.table("hom_S_S_graded", graded(&s.s_to_s));
    report.table("rbar_cohomology", json!(s.rbar));
    report.table("endomorphisms", json!(s.endomorphisms));
    report.table("generation", json!(s.generation));
    report.absorb(&s.report);
    Ok(report)
}

fn graded(table: &[Vec<BTreeMap<i64, usize>>]) -> Value {
    json!(table
        .iter()
        .map(|row| row
            .iter()
            .map(|m| m.iter().map(|(d, k)| format!("{d}:{k}")).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn deform(path: &Path, cochain: &Path, output: &Path) -> Outcome {
    let w = load(path)?;
    let c = &w.category;
    let spec = parse_cochain_spec(&read(cochain)?).map_err(|e| UsageError(format!("{}: {e}", cochain.display())))?;
    let (m, eta) = spec.load(c).map_err(|e| UsageError(format!("{}: {e}", cochain.display())))?;
    let mut report = Report::new("deform");
    let structure = c.validate_structure();
    if !structure.passed() {
        report.absorb(&structure);
        return Ok(report);
    }
    report.table("cochain_degree", json!(eta.degree));
    let mut normalized = Check::new("normalized");
    match eta.check_normalized(c) {
        Ok(()) => {}
        Err(HochschildError::NotNormalized(tuple)) => normalized.fail(Witness {
            arity: tuple.len(),
            tuple,
            discrepancy: Vec::new(),
            note: "cochain is nonzero on a unit".into(),
        }),
        Err(e) => return Err(e.into()),
    }
    report.check(&normalized);
    if !normalized.passed {
        return Ok(report);
    }
    let d = report.time("differential", || hochschild_differential(c, &m, &eta))?;
    let mut cocycle = Check::new("cocycle");
    for (&k, table) in &d.components {
        for (key, v) in table {
            cocycle.fail(Witness {
                arity: k,
                tuple: c.labels_of(key),
                discrepancy: v.iter().map(|(i, x)| (m.basis()[*i].label.clone(), x.to_string())).collect(),
                note: "d(eta) is nonzero".into(),
            });
        }
    }
    report.check(&cocycle);
    let e = deform_by_cocycle(c, &m, &eta, DeformOptions::default())?;
    let st = report.time("stasheff", || e.check_stasheff(None));
    report.absorb_as("deformed ", &st);
    report.table("dim", json!(e.dim()));
    write(output, &to_json(&category_to_spec(&e, None, None)))?;
    Ok(report)
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Stasheff { file, max_arity } => stasheff(file, *max_arity),
        Command::Filtration(FiltrationCommand::Check { file }) => filtration_check(file),
        Command::Filtration(FiltrationCommand::Degree { file, output }) => filtration_write(file, output, None),
        Command::Filtration(FiltrationCommand::Appendix { file, kappa, output }) => filtration_write(file, output, Some(*kappa)),
        Command::Gamma(GammaCommand::Build { file, output }) => gamma_build(file, output),
        Command::Sod { file } => sod(file),
        Command::Deform { file, cochain, output } => deform(file, cochain, output),
    }
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = par::with_jobs(cli.jobs, || dispatch(&cli));
    match outcome {
        Ok(report) => {
            let report = report.finish();
            let text = match cli.format {
                Format::Json => to_json(&report),
                Format::Text => report.render_text(),
            };
            let _ = out.write_all(text.as_bytes());
            if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
