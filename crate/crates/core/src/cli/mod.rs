//! Command-line front end.
//!
//! Every successful run prints one JSON document on standard output; errors
//! go to standard error. Exit codes: 0 on success (including answers such as
//! an empty trace space), 1 on input or validation errors, 2 when the boundary
//! path budget is exhausted.

mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::boundary::{self, DEFAULT_BUDGET};
use crate::error::{Error, DIRECTION_HINT};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::ktheory;
use crate::rational::{parse_rational, Rational};
use crate::star::{self, FormalElement};
use crate::traces::{self, GraphTrace};

pub use report::{canonical_json, SCHEMA_VERSION};

const AFTER_HELP: &str = "Graph documents: {\"vertices\": [..], \"edges\": [{\"id\", \"src\", \"rng\"}..], \
\"infinite_bundles\": [{\"src\", \"rng\"}..]}. Edge direction: src is s(e), rng is r(e); \
paths a_1 a_2 ... satisfy s(a_i) = r(a_(i+1)), so they grow at the source end. \
Rationals are written \"p/q\".";

#[derive(Debug, Parser, PartialEq, Eq)]
#[command(
    name = "gtrace",
    version,
    about = "Exact traces, boundary measures and K-theory of finite graph C*-algebras",
    after_help = AFTER_HELP
)]
pub struct Command {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub action: Action,
}

#[derive(Debug, Subcommand, PartialEq, Eq)]
pub enum Action {
    /// Vertex classification, cycle structure and condition (K).
    Info(GraphArg),
    /// Extreme invariant measures, constraint checks and minimization.
    Traces(TracesArgs),
    /// K_0, K_1, the order unit and states induced by extreme traces.
    Ktheory(GraphArg),
    /// Boundary levels, induced measures and their identities.
    Boundary(BoundaryArgs),
    /// Products, adjoints, degree components and traces of formal elements.
    Star(StarArgs),
    /// Trace test for eventual positivity of an integer vertex vector.
    Kpositive(KpositiveArgs),
    /// Gauge-invariance certificates for all traces or a given one.
    Certify(CertifyArgs),
}

#[derive(Debug, Args, PartialEq, Eq)]
pub struct GraphArg {
    /// Graph document (JSON).
    pub graph: PathBuf,
}

#[derive(Debug, Args, PartialEq, Eq)]
pub struct TracesArgs {
    pub graph: PathBuf,
    /// List the extreme points of the trace polytope (default action).
    #[arg(long)]
    pub extreme: bool,
    /// Include the linear constraint system.
    #[arg(long)]
    pub constraints: bool,
    /// Check a measure document against the invariance constraints.
    #[arg(long, value_name = "MEASURE")]
    pub check: Option<PathBuf>,
    /// Minimize a rational vertex vector, e.g. "x:1,y:-1/2".
    #[arg(long, value_name = "VECTOR", allow_hyphen_values = true)]
    pub minimize: Option<String>,
}

#[derive(Debug, Args, PartialEq, Eq)]
pub struct BoundaryArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub depth: usize,
    /// Invariant measure to push onto the levels.
    #[arg(long, value_name = "MEASURE")]
    pub measure: Option<PathBuf>,
    /// Check the six boundary identities (requires --measure).
    #[arg(long, requires = "measure")]
    pub verify: bool,
    /// Maximum number of paths in a single level.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args, PartialEq, Eq)]
pub struct StarArgs {
    pub graph: PathBuf,
    /// Element document (JSON list of terms).
    #[arg(long, value_name = "ELEMENT")]
    pub element: PathBuf,
    /// Right factor: the result is element * times.
    #[arg(long, value_name = "ELEMENT")]
    pub times: Option<PathBuf>,
    /// Take the adjoint of the result.
    #[arg(long)]
    pub adjoint: bool,
    /// Keep only the gauge-degree component n = |a| - |b|.
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    /// Evaluate the trace of the result against this measure.
    #[arg(long, value_name = "MEASURE")]
    pub measure: Option<PathBuf>,
}

#[derive(Debug, Args, PartialEq, Eq)]
pub struct KpositiveArgs {
    pub graph: PathBuf,
    /// Integer vertex vector, e.g. "x:1,y:-1,z:0".
    #[arg(long, value_name = "VECTOR", allow_hyphen_values = true)]
    pub vector: String,
}

#[derive(Debug, Args, PartialEq, Eq)]
pub struct CertifyArgs {
    pub graph: PathBuf,
    /// Certify a single trace instead of all traces.
    #[arg(long, value_name = "MEASURE")]
    pub measure: Option<PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self.action {
            Action::Info(_) => "info",
            Action::Traces(_) => "traces",
            Action::Ktheory(_) => "ktheory",
            Action::Boundary(_) => "boundary",
            Action::Star(_) => "star",
            Action::Kpositive(_) => "kpositive",
            Action::Certify(_) => "certify",
        }
    }

    fn input_files(&self) -> Vec<&PathBuf> {
        match &self.action {
            Action::Info(a) | Action::Ktheory(a) => vec![&a.graph],
            Action::Traces(a) => std::iter::once(&a.graph).chain(a.check.as_ref()).collect(),
            Action::Boundary(a) => std::iter::once(&a.graph).chain(a.measure.as_ref()).collect(),
            Action::Star(a) => [Some(&a.graph), Some(&a.element), a.times.as_ref(), a.measure.as_ref()]
                .into_iter()
                .flatten()
                .collect(),
            Action::Kpositive(a) => vec![&a.graph],
            Action::Certify(a) => std::iter::once(&a.graph).chain(a.measure.as_ref()).collect(),
        }
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

#[derive(Debug)]
pub enum ParseError {
    /// `--help` or `--version`: print and exit 0.
    Info(String),
    Usage(String),
}

/// Parses `argv` (without the program name) and checks that every input file
/// is readable.
pub fn parse_command<I, S>(argv: I) -> Result<Command, ParseError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("gtrace")).chain(argv.into_iter().map(Into::into));
    let cmd = Command::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp
        | clap::error::ErrorKind::DisplayVersion
        | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ParseError::Info(e.to_string()),
        _ => ParseError::Usage(e.to_string()),
    })?;
    for path in cmd.input_files() {
        if let Err(e) = std::fs::File::open(path) {
            return Err(ParseError::Usage(format!("cannot read {}: {e}", path.display())));
        }
    }
    Ok(cmd)
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn failure(err: &Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } => 2,
            _ => 1,
        };
        let mut stderr = format!("error: {err}\n");
        if matches!(
            err,
            Error::DanglingEndpoint(_) | Error::Malformed(_) | Error::DuplicateId(_) | Error::EmptyId
        ) {
            stderr.push_str(&format!("note: {DIRECTION_HINT}\n"));
        }
        if let Error::BudgetExceeded { .. } = err {
            stderr.push_str("note: lower --depth or raise --budget\n");
        }
        Self {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &PathBuf) -> Result<Graph, Error> {
    Graph::parse(&read(path)?)
}

/// Measure document: `{vertex: "p/q", ...}`.
pub fn parse_measure(graph: &Graph, json: &str) -> Result<Vec<Rational>, Error> {
    let raw: BTreeMap<String, String> =
        serde_json::from_str(json).map_err(|e| Error::Malformed(format!("measure document: {e}")))?;
    let values = raw
        .into_iter()
        .map(|(k, v)| Ok((k, parse_rational(&v)?)))
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    traces::measure_from_map(graph, &values)
}

fn load_measure(graph: &Graph, path: &PathBuf) -> Result<Vec<Rational>, Error> {
    parse_measure(graph, &read(path)?)
}

/// Vector flag `"v1:1,v2:-1/2"`.
pub fn parse_vector(graph: &Graph, text: &str) -> Result<Vec<Rational>, Error> {
    let mut values = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .rsplit_once(':')
            .ok_or_else(|| Error::Malformed(format!("vector entry {item:?} is not vertex:value")))?;
        if values.insert(name.trim().to_string(), parse_rational(value)?).is_some() {
            return Err(Error::DuplicateId(name.trim().to_string()));
        }
    }
    traces::measure_from_map(graph, &values)
}

fn integer_vector(values: &[Rational]) -> Result<Vec<BigInt>, Error> {
    values
        .iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Malformed(format!("{x} is not an integer")))
            }
        })
        .collect()
}

pub fn execute(cmd: &Command) -> Outcome {
    match run(cmd) {
        Ok(doc) => Outcome {
            stdout: canonical_json(&doc),
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome::failure(&e),
    }
}

fn run(cmd: &Command) -> Result<serde_json::Value, Error> {
    let exec = cmd.exec();
    let mut doc = report::Doc::new(cmd.name());
    match &cmd.action {
        Action::Info(a) => {
            let g = load_graph(&a.graph)?;
            report::info(&mut doc, &g)?;
        }
        Action::Traces(a) => {
            let g = load_graph(&a.graph)?;
            let only_extras = a.check.is_some() || a.minimize.is_some() || a.constraints;
            if a.extreme || !only_extras {
                let extreme = traces::extreme_traces_with(&g, exec);
                doc.put("extreme_traces", report::trace_list(&g, &extreme));
            }
            if a.constraints {
                doc.put("constraints", report::constraints(&g, &traces::constraint_system(&g)));
            }
            if let Some(path) = &a.check {
                let mu = load_measure(&g, path)?;
                doc.put("check", report::invariant(&g, &traces::check_invariant(&g, &mu)?));
            }
            if let Some(text) = &a.minimize {
                let objective = parse_vector(&g, text)?;
                doc.put(
                    "minimum",
                    report::minimum(&g, &traces::minimize_over_traces(&g, &objective)?),
                );
            }
        }
        Action::Ktheory(a) => {
            let g = load_graph(&a.graph)?;
            let k = ktheory::k_groups(&g);
            report::k_groups(&mut doc, &g, &k);
            let states = traces::extreme_traces_with(&g, exec)
                .iter()
                .map(|t| ktheory::state_from_trace(&g, t))
                .collect::<Result<Vec<_>, _>>()?;
            doc.put("states", report::states(&g, &states));
        }
        Action::Boundary(a) => {
            let g = load_graph(&a.graph)?;
            doc.put("depth", a.depth.into());
            match &a.measure {
                None => {
                    let levels = (0..=a.depth)
                        .map(|n| boundary::boundary_level_with_budget(&g, n, a.budget))
                        .collect::<Result<Vec<_>, _>>()?;
                    doc.put("levels", report::levels(&g, &levels));
                }
                Some(path) => {
                    let mu = load_measure(&g, path)?;
                    let trace = GraphTrace::new(&g, mu.clone())?;
                    let levels = boundary::boundary_measure_with_budget(&g, &trace, a.depth, a.budget)?;
                    doc.put("levels", report::levels(&g, &levels));
                    if a.verify {
                        let r = boundary::verify_levels(&g, &mu, &levels, exec);
                        doc.put("report", report::boundary_report(&r));
                    }
                }
            }
        }
        Action::Star(a) => {
            let g = load_graph(&a.graph)?;
            let x = FormalElement::parse(&g, &read(&a.element)?)?;
            let mut result = x.clone();
            if let Some(path) = &a.times {
                let y = FormalElement::parse(&g, &read(path)?)?;
                result = star::multiply(&result, &y)?;
            }
            if a.adjoint {
                result = star::adjoint(&result);
            }
            if let Some(n) = a.degree {
                result = star::degree_component(&result, n);
            }
            doc.put("result", report::element(&g, &result));
            doc.put("display", result.display(&g).into());
            if let Some(path) = &a.measure {
                let mu = load_measure(&g, path)?;
                doc.put("trace", report::gaussian(&star::trace_eval(&g, &mu, &result)?));
            }
        }
        Action::Kpositive(a) => {
            let g = load_graph(&a.graph)?;
            let vector = integer_vector(&parse_vector(&g, &a.vector)?)?;
            report::positivity(&mut doc, &g, &ktheory::eventually_positive(&g, &vector)?);
        }
        Action::Certify(a) => {
            let g = load_graph(&a.graph)?;
            let trace = match &a.measure {
                Some(path) => Some(GraphTrace::new(&g, load_measure(&g, path)?)?),
                None => None,
            };
            let certs = traces::certify_gauge_invariance(&g, trace.as_ref())?;
            doc.put("scope", if trace.is_some() { "measure" } else { "all" }.into());
            doc.put("certificates", report::certificates(&g, &certs));
        }
    }
    Ok(doc.into_value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_style_commands() {
        let cmd = Command::try_parse_from(["gtrace", "traces", "fixtures/y.json", "--extreme"]).unwrap();
        assert!(matches!(cmd.action, Action::Traces(TracesArgs { extreme: true, .. })));

        let cmd = Command::try_parse_from([
            "gtrace",
            "boundary",
            "fixtures/m2.json",
            "--depth",
            "4",
            "--measure",
            "m.json",
            "--verify",
        ])
        .unwrap();
        match cmd.action {
            Action::Boundary(b) => {
                assert_eq!(b.depth, 4);
                assert!(b.verify);
                assert_eq!(b.budget, DEFAULT_BUDGET);
            }
            other => panic!("{other:?}"),
        }

        let cmd =
            Command::try_parse_from(["gtrace", "kpositive", "fixtures/c3.json", "--vector", "x:1,y:-1,z:0"]).unwrap();
        assert!(matches!(cmd.action, Action::Kpositive(KpositiveArgs { ref vector, .. }) if vector == "x:1,y:-1,z:0"));
    }

    #[test]
    fn rejects_bad_invocations() {
        assert!(matches!(
            parse_command(["frobnicate", "g.json"]),
            Err(ParseError::Usage(_))
        ));
        assert!(matches!(parse_command(["boundary", "g.json"]), Err(ParseError::Usage(m)) if m.contains("--depth")));
        assert!(
            matches!(parse_command(["traces", "g.json", "--bogus"]), Err(ParseError::Usage(m)) if m.contains("--bogus"))
        );
        assert!(matches!(
            parse_command(["info", "/nonexistent/graph.json"]),
            Err(ParseError::Usage(m)) if m.contains("cannot read")
        ));
        assert!(matches!(parse_command(["--help"]), Err(ParseError::Info(m)) if m.contains("src is s(e)")));
    }
}
