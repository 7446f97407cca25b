//! The `flatrep` command line: `check`, `search`, `obstruct`, `bundle` and
//! `canon`. [`run`] does all the work and returns what the binary prints.

pub mod cache;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use flatrep::conditions::{check_all, check_genus0, check_selfint, SwPathMode};
use flatrep::diagram::SingularLinkDiagram;
use flatrep::group::GroupName;
use flatrep::obstructions::{bundle_profile, connected_sum_obstruction, divisibility_obstruction};
use flatrep::ribbon::{betti, ribbon_genus};
use flatrep::search::{canonical_class, count_classes, enumerate_valid_decorations, Dedup, SearchError};
use flatrep::sld::{Element, SldDocument};
use flatrep::{Decoration, Group, SearchOptions};

use report::{
    CanonSummary, Command, ComponentSummary, ReportDocument, SearchSummary, EXIT_INVALID, EXIT_PASS,
};

#[derive(Debug, Parser)]
#[command(name = "flatrep", version, about = "Decorated singular link diagrams and flat SO(3) bundles")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run the four condition checks on a decorated diagram.
    Check { file: PathBuf },
    /// Enumerate every valid decoration with values in a finite group.
    Search {
        file: PathBuf,
        /// Defaults to the file's group, then octahedral.
        #[arg(long)]
        group: Option<GroupName>,
        #[arg(long, default_value_t = Dedup::So3Canonical)]
        dedup: Dedup,
        /// Evaluate the Stiefel-Whitney condition on every simple path.
        #[arg(long)]
        all_sw_paths: bool,
        /// Allow any group element on Hopf nodes, not only involutions.
        #[arg(long)]
        any_hopf_labels: bool,
        /// Directory for cached results keyed by input hash.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Divisibility and connected-sum obstructions.
    Obstruct {
        /// Defaults to the sum of the summands.
        #[arg(long)]
        b2: Option<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        summands: Option<Vec<i64>>,
    },
    /// Characteristic numbers of the bundle.
    Bundle {
        #[arg(long)]
        b1: i64,
        #[arg(long)]
        b2: i64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
    },
    /// Canonical rotation-class key of the decorated Hopf tuple.
    Canon { file: PathBuf },
}

/// Everything one invocation produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Execution {
    fn from_report(report: &ReportDocument) -> Self {
        let stderr = if report.diagnostics.is_empty() {
            String::new()
        } else {
            let line = serde_json::json!({
                "exit_code": report.exit_code(),
                "diagnostics": report.diagnostics,
            });
            format!("{line}\n")
        };
        Execution { code: report.exit_code(), stdout: format!("{}\n", report.to_json()), stderr }
    }
}

pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Execution { code: EXIT_PASS, stdout: text, stderr: String::new() }
            };
        }
    };
    let report = match cli.command {
        Cmd::Check { file } => check(&file),
        Cmd::Search { file, group, dedup, all_sw_paths, any_hopf_labels, cache } => {
            search(&file, group, dedup, all_sw_paths, !any_hopf_labels, cache.as_deref())
        }
        Cmd::Obstruct { b2, summands } => obstruct(b2, summands),
        Cmd::Bundle { b1, b2, c2 } => bundle(b1, b2, c2),
        Cmd::Canon { file } => canon(&file),
    };
    Execution::from_report(&report)
}

/// A parsed file whose diagram is well-formed and whose decorations name
/// existing nodes.
fn load(path: &Path) -> Result<(SldDocument, SingularLinkDiagram), Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| vec![format!("{}: {e}", path.display())])?;
    let doc = SldDocument::parse(&text).map_err(|e| vec![format!("{}: {e}", path.display())])?;
    let d = doc.to_diagram();
    let mut problems: Vec<String> = d.validate().violations.iter().map(|v| v.to_string()).collect();
    for (node, _) in doc.decoration().iter() {
        if d.node(node).is_none() {
            problems.push(format!("decoration of unknown node {node}"));
        }
    }
    if problems.is_empty() {
        Ok((doc, d))
    } else {
        Err(problems)
    }
}

fn rejected(command: Command, problems: Vec<String>) -> ReportDocument {
    let mut r = ReportDocument::new(command);
    r.wellformed = false;
    r.diagnostics = problems;
    r
}

fn describe(d: &SingularLinkDiagram, report: &mut ReportDocument) {
    match betti(d) {
        Ok(b) => {
            report.b1 = Some(b.b1);
            report.b2 = Some(b.b2);
        }
        Err(e) => report.diagnostics.push(format!("betti numbers: {e}")),
    }
    let genus = ribbon_genus(d).ok();
    if let Ok(p) = d.components() {
        report.components = p
            .blocks
            .iter()
            .enumerate()
            .map(|(i, block)| ComponentSummary {
                circles: block.iter().map(|c| c.to_string()).collect(),
                genus: genus.as_ref().map(|g| g[i].genus),
            })
            .collect();
    }
}

fn check(path: &Path) -> ReportDocument {
    let (doc, d) = match load(path) {
        Ok(loaded) => loaded,
        Err(problems) => return rejected(Command::Check, problems),
    };
    let mut report = ReportDocument::new(Command::Check);
    describe(&d, &mut report);
    let dec = doc.decoration();
    let missing: Vec<&str> =
        d.nodes().iter().map(|n| n.id.as_str()).filter(|id| dec.get(id).is_none()).collect();
    if !missing.is_empty() {
        report.wellformed = false;
        report.checks.genus0 = check_genus0(&d).ok();
        report.checks.selfint = check_selfint(&d).ok();
        report.diagnostics.push(format!("undecorated nodes: {}", missing.join(", ")));
        return report;
    }
    match check_all(&d, &dec, SwPathMode::Shortest) {
        Ok(conditions) => {
            for (name, v) in [
                ("genus0", &conditions.genus0),
                ("selfint", &conditions.selfint),
                ("relators", &conditions.relators),
                ("sw", &conditions.sw),
            ] {
                report.diagnostics.extend(v.diagnostics.iter().map(|m| format!("{name}: {m}")));
            }
            report.checks = conditions.into();
        }
        Err(e) => {
            report.wellformed = false;
            report.diagnostics.push(e.to_string());
        }
    }
    if let Some(b2) = report.b2.filter(|&b| b > 0) {
        if let Ok(o) = divisibility_obstruction(b2 as i64) {
            report.obstructions = Some(o.into());
        }
    }
    report
}

fn element_text(g: &flatrep::Rotation) -> String {
    Element::from_rotation(g).to_string()
}

fn search(
    path: &Path,
    group: Option<GroupName>,
    dedup: Dedup,
    all_sw_paths: bool,
    involutions_only: bool,
    cache_dir: Option<&Path>,
) -> ReportDocument {
    let (doc, d) = match load(path) {
        Ok(loaded) => loaded,
        Err(problems) => return rejected(Command::Search, problems),
    };
    let mut report = ReportDocument::new(Command::Search);
    describe(&d, &mut report);
    let name = group.or(doc.group()).unwrap_or(GroupName::Octahedral);
    let group = match Group::preset(name) {
        Ok(g) => g,
        Err(e) => {
            report.wellformed = false;
            report.diagnostics.push(e.to_string());
            return report;
        }
    };
    let mut opts = SearchOptions::new(group);
    opts.dedup = dedup;
    opts.involutions_only_on_hopfs = involutions_only;
    opts.sw_paths = if all_sw_paths { SwPathMode::AllSimple } else { SwPathMode::Shortest };

    let key = cache::key(&d, &opts);
    if let Some(hit) = cache_dir.and_then(|dir| cache::load(dir, &key)) {
        report.search = Some(hit);
        return report;
    }

    let solutions = match enumerate_valid_decorations(&d, &opts) {
        Ok(s) => s,
        Err(SearchError::Precondition { check, reason }) => {
            report.checks.genus0 = check_genus0(&d).ok();
            report.checks.selfint = check_selfint(&d).ok();
            report.diagnostics.push(format!("{check}: {reason}"));
            return report;
        }
        Err(e) => {
            report.wellformed = false;
            report.diagnostics.push(e.to_string());
            return report;
        }
    };
    let hopf_order = d.hopf_ids();
    let classes = match count_classes(&solutions, &hopf_order, &opts) {
        Ok(n) => n,
        Err(e) => {
            report.diagnostics.push(e.to_string());
            return report;
        }
    };
    let summary = SearchSummary {
        group: name.to_string(),
        dedup: dedup.to_string(),
        involutions_only_on_hopfs: involutions_only,
        all_sw_paths,
        raw_solutions: solutions.len(),
        classes,
        solutions: solutions
            .iter()
            .map(|dec| {
                dec.iter().map(|(id, g)| (id.to_string(), element_text(g))).collect::<BTreeMap<_, _>>()
            })
            .collect(),
        cached: false,
    };
    if let Some(dir) = cache_dir {
        if let Err(e) = cache::store(dir, &key, &summary) {
            report.diagnostics.push(format!("cache not written: {e}"));
        }
    }
    if summary.raw_solutions == 0 {
        report.diagnostics.push(format!("no valid decoration in the {name} group"));
    }
    report.search = Some(summary);
    report
}

fn obstruct(b2: Option<i64>, summands: Option<Vec<i64>>) -> ReportDocument {
    let mut report = ReportDocument::new(Command::Obstruct);
    let result = match (&summands, b2) {
        (Some(s), Some(b2)) if s.iter().sum::<i64>() != b2 => {
            return ReportDocument::invalid(
                Command::Obstruct,
                format!("summands sum to {}, not --b2 {b2}", s.iter().sum::<i64>()),
            );
        }
        (Some(s), _) => connected_sum_obstruction(s),
        (None, Some(b2)) => divisibility_obstruction(b2),
        (None, None) => return ReportDocument::invalid(Command::Obstruct, "need --b2 or --summands"),
    };
    match result {
        Ok(o) => {
            report.b2 = usize::try_from(summands.map_or(b2.unwrap_or_default(), |s| s.iter().sum())).ok();
            if !o.pass {
                report.diagnostics.push(o.message.clone());
            }
            report.obstructions = Some(o.into());
            report
        }
        Err(e) => ReportDocument::invalid(Command::Obstruct, e.to_string()),
    }
}

fn bundle(b1: i64, b2: i64, c2: i64) -> ReportDocument {
    match bundle_profile(b1, b2, c2) {
        Ok(p) => {
            let mut report = ReportDocument::new(Command::Bundle);
            report.b1 = usize::try_from(b1).ok();
            report.b2 = usize::try_from(b2).ok();
            report.bundle = Some(p);
            report
        }
        Err(e) => ReportDocument::invalid(Command::Bundle, e.to_string()),
    }
}

fn canon(path: &Path) -> ReportDocument {
    let (doc, d) = match load(path) {
        Ok(loaded) => loaded,
        Err(problems) => return rejected(Command::Canon, problems),
    };
    let mut report = ReportDocument::new(Command::Canon);
    describe(&d, &mut report);
    let dec: Decoration = doc.decoration();
    let hopf_order: Vec<String> = d.hopf_ids().iter().map(|s| s.to_string()).collect();
    let tuple: Result<Vec<_>, _> =
        hopf_order.iter().map(|id| dec.get(id).cloned().ok_or_else(|| id.clone())).collect();
    let tuple = match tuple {
        Ok(t) => t,
        Err(id) => return ReportDocument::invalid(Command::Canon, format!("undecorated Hopf node {id}")),
    };
    let key = match canonical_class(&tuple) {
        Ok(k) => Some(k.to_string()),
        Err(e) => {
            report.diagnostics.push(e.to_string());
            None
        }
    };
    report.canon = Some(CanonSummary { hopf_order, key });
    report
}
