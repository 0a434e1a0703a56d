use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tmlogic::chrono::{check_constraints, mark_absent, replay, state_sequence, Occurrence};
use tmlogic::logic::classical_reading;
use tmlogic::{
    derive_tm, dot_chronology, dot_static, entails_classical, enumerate_traces, eval_tm, parse_annotated,
    parse_annotated_list, parse_constraint_body, parse_formula, parse_mode_assignment, parse_model,
    verify_consequence, Chronology, ConsequenceVerdict, Constraint, Diagnostic, Document, EntailmentVerdict,
    EventMode, Formula, Trace, DEFAULT_BOUND,
};

#[derive(Parser)]
#[command(name = "tmlogic", version, about = "Check, simulate and reason about thinging machine models")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON object per line.
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Tm,
    Classical,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a model file.
    Check { file: PathBuf },
    /// Evaluate a formula under a mode assignment (unlisted atoms are potential).
    Eval {
        #[arg(long, default_value = "")]
        assign: String,
        #[arg(long)]
        formula: String,
    },
    /// Decide whether annotated premises entail a conclusion.
    Entail {
        /// Comma-separated annotated formulas, e.g. "(A|B)@actual, A@absent".
        #[arg(long, default_value = "")]
        premises: String,
        #[arg(long)]
        conclusion: String,
        #[arg(long, value_enum, default_value_t = Engine::Tm)]
        engine: Engine,
    },
    /// List the traces of a chronology.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        chronology: Option<String>,
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Keep only traces that satisfy every choice group exactly.
        #[arg(long)]
        complete_only: bool,
    },
    /// Check the model's constraints on every trace up to the bound.
    Constraints {
        file: PathBuf,
        #[arg(long)]
        chronology: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Check a candidate constraint against the model up to the bound.
    Consequence {
        file: PathBuf,
        /// `lhs => rhs` or `lhs ~> rhs`.
        #[arg(long)]
        constraint: String,
        #[arg(long)]
        chronology: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Write a DOT rendering of the static model or a chronology.
    Export {
        file: PathBuf,
        /// `static`, `chronology` or `chronology:<id>`.
        #[arg(long, default_value = "static")]
        what: String,
        /// Events of a trace, space or comma separated; `!E` marks an absent occurrence.
        #[arg(long)]
        trace: Option<String>,
        /// Mark an event of the trace absent, with the events that depend on it.
        #[arg(long)]
        absent: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that ends the run with exit status 2.
struct Failure(String);

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Self {
        Failure(d.to_string())
    }
}

impl From<tmlogic::ChronoError> for Failure {
    fn from(e: tmlogic::ChronoError) -> Self {
        Failure(e.to_string())
    }
}

impl From<tmlogic::LogicError> for Failure {
    fn from(e: tmlogic::LogicError) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Out {
    format: Format,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            let _ = writeln!(self.stdout, "{}", line.as_ref());
        }
    }

    fn record(&mut self, value: Value) {
        if self.format == Format::Json {
            let _ = writeln!(self.stdout, "{value}");
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = read(path)?;
    match parse_model(&text) {
        Ok(parsed) => {
            for w in &parsed.warnings {
                eprintln!("{}:{w}", path.display());
            }
            Ok(parsed.document)
        }
        Err(diags) => {
            for d in &diags {
                eprintln!("{}:{d}", path.display());
            }
            Err(Failure(format!("{}: {} error(s)", path.display(), diags.iter().filter(|d| d.is_error()).count())))
        }
    }
}

fn pick_chronology<'a>(doc: &'a Document, name: Option<&str>) -> Result<&'a Chronology, Failure> {
    doc.chronology(name).ok_or_else(|| {
        Failure(match name {
            Some(n) => format!("no chronology named `{n}`"),
            None if doc.chronologies.is_empty() => "the model declares no chronology".into(),
            None => format!(
                "the model declares several chronologies ({}); pick one with --chronology",
                doc.chronologies.keys().cloned().collect::<Vec<_>>().join(", ")
            ),
        })
    })
}

fn diagnostic_json(file: &Path, d: &Diagnostic) -> Value {
    json!({
        "kind": "diagnostic",
        "file": file.display().to_string(),
        "code": d.code.as_str(),
        "severity": d.severity.to_string(),
        "line": d.pos.map(|p| p.line),
        "column": d.pos.map(|p| p.column),
        "message": d.message,
    })
}

fn check(out: &mut Out, file: &Path) -> Outcome {
    let text = read(file)?;
    let diags = tmlogic::check_model(&text);
    for d in &diags {
        out.text(format!("{}:{d}", file.display()));
        out.record(diagnostic_json(file, d));
    }
    let errors = diags.iter().filter(|d| d.is_error()).count();
    out.text(format!("{}: {errors} error(s), {} warning(s)", file.display(), diags.len() - errors));
    out.record(json!({"kind": "summary", "errors": errors, "warnings": diags.len() - errors}));
    Ok(errors == 0)
}

fn eval(out: &mut Out, assign: &str, formula: &str) -> Outcome {
    let formula = parse_formula(formula)?;
    let mut sigma = parse_mode_assignment(assign)?;
    sigma.complete_over(formula.atoms());
    let mode = eval_tm(&formula, &sigma)?;
    out.text(mode.as_str());
    out.record(json!({"kind": "eval", "formula": formula.to_string(), "assignment": sigma.to_string(), "mode": mode.as_str()}));
    Ok(true)
}

fn verdict_json(engine: &str, v: &EntailmentVerdict) -> Value {
    json!({
        "kind": "verdict",
        "engine": engine,
        "status": v.status.as_str(),
        "derivation": v.derivation.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "countermodels": v.countermodels.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "conflicts": v.conflicts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn print_verdict(out: &mut Out, engine: &str, v: &EntailmentVerdict) {
    out.text(format!("{engine}: {}", v.status));
    for s in &v.derivation {
        out.text(format!("  {s}"));
    }
    for c in &v.countermodels {
        out.text(format!("  countermodel: {c}"));
    }
    for c in &v.conflicts {
        out.text(format!("  conflict: {c}"));
    }
    out.record(verdict_json(engine, v));
}

fn entail(out: &mut Out, premises: &str, conclusion: &str, engine: Engine) -> Outcome {
    let premises = parse_annotated_list(premises)?;
    let goal = parse_annotated(conclusion)?;
    let mut all_entailed = true;
    if matches!(engine, Engine::Tm | Engine::Both) {
        let v = derive_tm(&premises, &goal)?;
        all_entailed &= v.is_entailed();
        print_verdict(out, "tm", &v);
    }
    if matches!(engine, Engine::Classical | Engine::Both) {
        let ps: Vec<Formula> = premises.iter().map(classical_reading).collect();
        let v = entails_classical(&ps, &classical_reading(&goal))?;
        all_entailed &= v.is_entailed();
        print_verdict(out, "classical", &v);
    }
    Ok(all_entailed)
}

fn simulate(
    out: &mut Out,
    file: &Path,
    chronology: Option<&str>,
    start: Option<&str>,
    bound: usize,
    complete_only: bool,
) -> Outcome {
    let doc = load(file)?;
    let chron = pick_chronology(&doc, chronology)?;
    let Some(start) = start.or(chron.start()) else {
        return Err(Failure(format!("chronology `{}` has no events", chron.name)));
    };
    let traces = enumerate_traces(chron, start, bound, complete_only)?;
    for t in &traces {
        out.text(t.to_string());
        out.record(json!({"kind": "trace", "events": t.events().collect::<Vec<_>>()}));
    }
    out.text(format!("{} trace(s)", traces.len()));
    out.record(json!({"kind": "summary", "traces": traces.len()}));
    Ok(true)
}

fn constraints(out: &mut Out, file: &Path, chronology: Option<&str>, bound: usize) -> Outcome {
    let doc = load(file)?;
    let chron = pick_chronology(&doc, chronology)?;
    let report = check_constraints(&doc.model, chron, &doc.constraint_list(), bound)?;
    for v in &report.violations {
        let trace = &report.traces[v.trace_index];
        out.text(format!(
            "violation: {} ({}) at state {} after {} in trace {trace}",
            v.constraint,
            doc.constraints[&v.constraint],
            v.position,
            v.event.as_deref().unwrap_or("start"),
        ));
        out.record(json!({
            "kind": "violation",
            "constraint": v.constraint,
            "trace": trace.to_string(),
            "position": v.position,
            "event": v.event,
            "state": v.state.to_string(),
        }));
    }
    out.text(format!(
        "{} constraint(s), {} trace(s), {} violation(s), {} undecided at the bound",
        doc.constraints.len(),
        report.traces.len(),
        report.violations.len(),
        report.undecided
    ));
    out.record(json!({
        "kind": "summary",
        "constraints": doc.constraints.len(),
        "traces": report.traces.len(),
        "violations": report.violations.len(),
        "undecided": report.undecided,
    }));
    Ok(report.holds())
}

fn consequence(out: &mut Out, file: &Path, text: &str, chronology: Option<&str>, bound: usize) -> Outcome {
    let doc = load(file)?;
    let chron = pick_chronology(&doc, chronology)?;
    let (lhs, kind, rhs) = parse_constraint_body(text)?;
    let candidate = Constraint {
        name: "candidate".into(),
        lhs,
        kind,
        rhs,
    };
    if let Some(a) = candidate
        .lhs
        .atoms()
        .into_iter()
        .chain(candidate.rhs.atoms())
        .find(|a| !doc.model.atoms.contains_key(*a))
    {
        return Err(Failure(format!("unknown atom `{a}`")));
    }
    match verify_consequence(&doc.model, chron, &candidate, bound)? {
        ConsequenceVerdict::ProvenToBound { bound, traces_checked } => {
            out.text(format!("Proven-to-bound: {candidate} holds on {traces_checked} trace(s) up to {bound} events"));
            out.record(json!({"kind": "consequence", "status": "ProvenToBound", "bound": bound, "traces": traces_checked}));
            Ok(true)
        }
        ConsequenceVerdict::Counterexample { trace, violation } => {
            out.text(format!(
                "Counterexample: {candidate} fails at state {} ({}) of trace {trace}",
                violation.position, violation.state
            ));
            out.record(json!({
                "kind": "consequence",
                "status": "Counterexample",
                "trace": trace.to_string(),
                "position": violation.position,
                "event": violation.event,
                "state": violation.state.to_string(),
            }));
            Ok(false)
        }
    }
}

fn parse_trace(list: &str) -> Trace {
    let steps = list
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| match s.strip_prefix('!') {
            Some(e) => Occurrence {
                event: e.to_string(),
                mode: EventMode::Absent,
            },
            None => Occurrence {
                event: s.to_string(),
                mode: EventMode::Actual,
            },
        })
        .collect();
    Trace { steps }
}

fn export(
    out: &mut Out,
    file: &Path,
    what: &str,
    trace: Option<&str>,
    absent: &[String],
    dest: Option<&Path>,
) -> Outcome {
    let doc = load(file)?;
    let dot = match what.split_once(':') {
        None if what == "static" => {
            if trace.is_some() || !absent.is_empty() {
                return Err(Failure("--trace and --absent apply to chronology exports".into()));
            }
            dot_static(&doc.model.statics)
        }
        None if what == "chronology" => chronology_dot(&doc, None, trace, absent)?,
        Some(("chronology", id)) => chronology_dot(&doc, Some(id), trace, absent)?,
        _ => return Err(Failure(format!("--what must be static, chronology or chronology:<id>, not `{what}`"))),
    };
    match dest {
        Some(path) => {
            fs::write(path, &dot).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            out.text(format!("wrote {}", path.display()));
            out.record(json!({"kind": "export", "path": path.display().to_string(), "bytes": dot.len()}));
        }
        None => {
            if out.format == Format::Json {
                out.record(json!({"kind": "export", "dot": dot}));
            } else {
                let _ = out.stdout.write_all(dot.as_bytes());
            }
        }
    }
    Ok(true)
}

fn chronology_dot(doc: &Document, id: Option<&str>, trace: Option<&str>, absent: &[String]) -> Result<String, Failure> {
    let chron = pick_chronology(doc, id)?;
    let Some(listed) = trace else {
        if !absent.is_empty() {
            return Err(Failure("--absent needs --trace".into()));
        }
        return Ok(dot_chronology(chron, None)?);
    };
    let mut t = parse_trace(listed);
    replay(chron, &t)?;
    for e in absent {
        t = mark_absent(chron, &t, e)?;
    }
    // Fails early on events the model does not declare.
    state_sequence(&t, &doc.model)?;
    Ok(dot_chronology(chron, Some(&t))?)
}

fn run(cli: Cli) -> Outcome {
    let mut out = Out {
        format: cli.format,
        stdout: io::stdout().lock(),
    };
    match cli.command {
        Command::Check { file } => check(&mut out, &file),
        Command::Eval { assign, formula } => eval(&mut out, &assign, &formula),
        Command::Entail {
            premises,
            conclusion,
            engine,
        } => entail(&mut out, &premises, &conclusion, engine),
        Command::Simulate {
            file,
            chronology,
            start,
            bound,
            complete_only,
        } => simulate(&mut out, &file, chronology.as_deref(), start.as_deref(), bound, complete_only),
        Command::Constraints { file, chronology, bound } => constraints(&mut out, &file, chronology.as_deref(), bound),
        Command::Consequence {
            file,
            constraint,
            chronology,
            bound,
        } => consequence(&mut out, &file, &constraint, chronology.as_deref(), bound),
        Command::Export {
            file,
            what,
            trace,
            absent,
            out: dest,
        } => export(&mut out, &file, &what, trace.as_deref(), &absent, dest.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
