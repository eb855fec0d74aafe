//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 for success or an affirmative answer, 1 for a negative
//! finding (imperfect graph, failed sweep, not an inflation), 2 for usage or
//! input errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, validate_catalog, Catalog};
use crate::classify::{classify_pair_in, member_of_class_g, verdict_in, Outcome};
use crate::enumerate::{self as en, EnumerationQuery};
use crate::families::{build_family_in, recognize_inflation, FamilySpec};
use crate::format::{from_edge_list, from_graph6, to_graph6};
use crate::holes::is_perfect;
use crate::Graph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "clawperf", version, about = "Perfectness of claw-free graphs with one more forbidden induced subgraph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Which case a forbidden graph X falls into.
    ClassifyPair {
        x: String,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
        alpha: u8,
    },
    /// Membership and perfectness of G in the class defined by X.
    Verdict { g: String, x: String },
    /// An odd hole or antihole, if any.
    FindHole { g: String },
    /// A member of a witness family or a cycle inflation.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// ℓ for F1/F2, t for F3/F4, `k,m1,…,mk` for inflation.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        param: Vec<usize>,
        #[arg(long)]
        dot: bool,
    },
    RecognizeInflation { g: String },
    /// Isomorph-free generation under forbidden induced subgraphs.
    Enumerate {
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        forbid: Vec<String>,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        min_alpha: Option<usize>,
        #[arg(long)]
        exclude_odd_cycles: bool,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    DeriveExceptions {
        #[arg(long, default_value_t = 11)]
        n_max: usize,
    },
    Verify {
        #[arg(value_enum)]
        what: VerifyArg,
        #[arg(long)]
        n_max: Option<usize>,
    },
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    #[value(name = "F1")]
    F1,
    #[value(name = "F2")]
    F2,
    #[value(name = "F3")]
    F3,
    #[value(name = "F4")]
    F4,
    Inflation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyArg {
    Lemma5,
    Lemma6,
    Case1,
    Bull,
    Unavoidability,
    EdgeBound,
    H6Orbits,
    Families,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
    ExportDot { name: String },
    Validate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String, code: i32) -> Self {
        CommandResult {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        CommandResult {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn json_line(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("payloads serialize");
    s.push('\n');
    s
}

fn emit(v: &impl Serialize, affirmative: bool) -> CommandResult {
    CommandResult::ok(json_line(v), if affirmative { EXIT_OK } else { EXIT_NEGATIVE })
}

/// `@NAME` from the catalog, a file (graph6 or edge list), or a graph6 line.
pub fn read_graph(cat: &Catalog, spec: &str) -> Result<Graph, String> {
    if let Some(name) = spec.strip_prefix('@') {
        return cat.named(name).map_err(|e| e.to_string());
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        if let Some(Ok(g)) = first.map(from_graph6) {
            return Ok(g);
        }
        return from_edge_list(&text).map_err(|e| format!("{spec}: {e}"));
    }
    from_graph6(spec.trim()).map_err(|e| format!("{spec:?}: {e}"))
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandResult::ok(text, EXIT_OK)
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let cat = match Catalog::from_env() {
        Ok(c) => c,
        Err(e) => return CommandResult::input_error(e),
    };
    match execute(&cat, cli.command) {
        Ok(r) => r,
        Err(msg) => CommandResult::input_error(msg),
    }
}

fn execute(cat: &Catalog, command: Command) -> Result<CommandResult, String> {
    let graph = |s: &str| read_graph(cat, s);
    Ok(match command {
        Command::ClassifyPair { x, alpha } => {
            let case = classify_pair_in(cat, &graph(&x)?, alpha).map_err(|e| e.to_string())?;
            emit(&case.to_report(alpha), true)
        }
        Command::Verdict { g, x } => {
            let (g, x) = (graph(&g)?, graph(&x)?);
            let m = member_of_class_g(&g, &x);
            if !m.in_class {
                return Ok(emit(&m, false));
            }
            let v = verdict_in(cat, &g, &x).map_err(|e| e.to_string())?;
            let index = match v.outcome {
                Outcome::Exception(i) => Some(i),
                _ => None,
            };
            let out = VerdictJson {
                in_class: true,
                outcome: v.outcome.name(),
                index,
                exception_index: index,
                certificate: v.certificate.clone(),
            };
            emit(&out, v.outcome == Outcome::Perfect)
        }
        Command::FindHole { g } => {
            let p = is_perfect(&graph(&g)?);
            emit(&p, p.perfect)
        }
        Command::Generate { family, param, dot } => {
            let one = || match param.as_slice() {
                [v] => Ok(*v),
                _ => Err(format!("{family:?} takes exactly one parameter")),
            };
            let spec = match family {
                FamilyArg::F1 => FamilySpec::F1 { ell: one()? },
                FamilyArg::F2 => FamilySpec::F2 { ell: one()? },
                FamilyArg::F3 => FamilySpec::F3 { t: one()? },
                FamilyArg::F4 => FamilySpec::F4 { t: one()? },
                FamilyArg::Inflation => FamilySpec::Inflation {
                    k: param[0],
                    multiplicities: param[1..].to_vec(),
                },
            };
            let g = build_family_in(cat, &spec).map_err(|e| e.to_string())?;
            let text = if dot { g.to_dot(&format!("{family:?}")) } else { format!("{}\n", to_graph6(&g)) };
            CommandResult::ok(text, EXIT_OK)
        }
        Command::RecognizeInflation { g } => match recognize_inflation(&graph(&g)?) {
            Some(inf) => emit(&inf, true),
            None => emit(&"not an inflation", false),
        },
        Command::Enumerate {
            forbid,
            n_max,
            connected,
            min_alpha,
            exclude_odd_cycles,
            report,
            workers,
        } => {
            let mut q = EnumerationQuery::new(n_max);
            for f in &forbid {
                q = q.forbid(graph(f)?);
            }
            q.require_connected = connected;
            q.min_alpha = min_alpha;
            q.exclude_odd_cycles = exclude_odd_cycles;
            let mut graphs = Vec::new();
            let stats = en::with_workers(workers, || en::enumerate_graphs(&q, |g| graphs.push(to_graph6(g))))
                .map_err(|e| e.to_string())?;
            let mut out = serde_json::to_value(&stats).expect("report serializes");
            out["graphs"] = json!(graphs);
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&out).expect("report serializes");
                std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            emit(&out, true)
        }
        Command::DeriveExceptions { n_max } => {
            let found = en::derive_exceptions_in(cat, n_max).map_err(|e| e.to_string())?;
            let matches = en::match_exceptions(cat, &found);
            let listed: Vec<(usize, Graph)> = cat.exceptions().into_iter().filter(|(_, e)| e.order() <= n_max).collect();
            // A bijection: every derived graph matched, one per listed exception.
            let mut used: Vec<usize> = matches.iter().flatten().copied().collect();
            used.sort_unstable();
            used.dedup();
            let agrees = matches.iter().all(Option::is_some) && found.len() == listed.len() && used.len() == listed.len();
            let graphs: Vec<Value> = found
                .iter()
                .zip(&matches)
                .map(|(g, m)| json!({ "graph6": to_graph6(g), "order": g.order(), "matches": m.map(|i| format!("E{i}")) }))
                .collect();
            let out = json!({
                "n_max": n_max,
                "count": found.len(),
                "catalog_count": listed.len(),
                "matches_catalog": agrees,
                "graphs": graphs,
            });
            emit(&out, agrees)
        }
        Command::Verify { what, n_max } => verify(cat, what, n_max)?,
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let rows: Vec<Value> = cat.entries().iter().map(entry_json).collect();
                emit(&rows, true)
            }
            CatalogAction::Show { name } => {
                let e = cat.get(&name).ok_or_else(|| catalog::CatalogError::UnknownName(name.clone()).to_string())?;
                emit(&entry_json(e), true)
            }
            CatalogAction::ExportDot { name } => CommandResult::ok(cat.named(&name).map_err(|e| e.to_string())?.to_dot(&name), EXIT_OK),
            CatalogAction::Validate => {
                let r = validate_catalog(cat);
                emit(&r, r.passed())
            }
        },
    })
}

/// `index` and `exception_index` carry the same value.
#[derive(Serialize)]
struct VerdictJson {
    in_class: bool,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exception_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<crate::holes::HoleCertificate>,
}

fn entry_json(e: &catalog::CatalogEntry) -> Value {
    json!({
        "name": e.name,
        "graph6": to_graph6(&e.graph),
        "order": e.graph.order(),
        "size": e.graph.size(),
        "tags": e.tags.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn verify(cat: &Catalog, what: VerifyArg, n_max: Option<usize>) -> Result<CommandResult, String> {
    let err = |e: en::SweepError| e.to_string();
    let report = |r: en::SweepReport| emit(&r, r.passed());
    Ok(match what {
        VerifyArg::Lemma5 => report(en::verify_lemma5_in(cat, n_max.unwrap_or(10)).map_err(err)?),
        VerifyArg::Lemma6 => {
            let exceptions: Vec<Graph> = cat.exceptions().into_iter().map(|(_, g)| g).collect();
            report(en::verify_lemma6_with(cat, &exceptions, n_max.unwrap_or(11)).map_err(err)?)
        }
        VerifyArg::Case1 => {
            let n = n_max.unwrap_or(10);
            let mut reports = Vec::new();
            for name in crate::classify::SCRIPT_X {
                let x = cat.named(name).map_err(|e| e.to_string())?;
                reports.push(en::verify_case1_for(name, &x, n).map_err(err)?);
            }
            let ok = reports.iter().all(en::SweepReport::passed);
            emit(&reports, ok)
        }
        VerifyArg::Bull => {
            let b12 = cat.named("B_1_2").map_err(|e| e.to_string())?;
            report(en::verify_bull_theorem_with(&[b12], n_max.unwrap_or(11)).map_err(err)?)
        }
        VerifyArg::Unavoidability => report(en::verify_unavoidability_in(cat, n_max.unwrap_or(8)).map_err(err)?),
        VerifyArg::EdgeBound => report(en::verify_cycle_claims(n_max.unwrap_or(10)).map_err(err)?),
        VerifyArg::Families => report(en::verify_family_pipeline_in(cat, n_max.unwrap_or(7), 5).map_err(err)?),
        VerifyArg::H6Orbits => {
            let ext = en::h6_extension_orbits_in(cat).map_err(err)?;
            let ok = ext.orbits.len() == 3 && ext.pair_options.len() == 3;
            emit(&ext, ok)
        }
    })
}
