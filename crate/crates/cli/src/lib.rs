//! Front end for `dicirc`: argument parsing, command dispatch and report output.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dicirc_core::cayley::{parse_spec_fields, validate_spec};
use dicirc_core::classifier::{classify, difference_set_lambda, Classification, ClassifierError};
use dicirc_core::fourier::{
    coset_profile, dft, fourier_lemma_counting_form, fourier_lemma_residuals, is_transversal, unit_orbits,
    IntegerFunction, DEFAULT_TOLERANCE,
};
use dicirc_core::metrics::{is_distance_regular, DistancePartition, DrgOutcome};
use dicirc_core::search::{
    search_difference_sets, specs_from_difference_set, survey_with_classifier, verify_family_iii, SpecRecordKey,
    SurveyOptions, MAX_SURVEY_N,
};
use dicirc_core::structure::{antipodal_classes, bipartition, is_primitive, recognize_family};
use dicirc_core::{build_graph, ConnectionSpec, Dicyclic, GroupTable};
use thiserror::Error;

use report::{
    complex_pair, write_summary_csv, CheckReport, ClassifyReport, FourierReport, LemmaRow, ReportBody, ReportDocument,
    SearchReport, SearchRun, ShellTransform, SurveyDocument, TransversalRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CROSS_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dicirc", version, about = "Distance-regular Cayley graphs on dicyclic groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a spec, build the graph, test distance-regularity and classify.
    Check(SpecArgs),
    /// Run the counting classifier only and print its evidence.
    Classify(SpecArgs),
    /// Enumerate every spec for each n and cross-check BFS against the classifier.
    Survey(SurveyArgs),
    /// Search for difference sets in a cyclic or dicyclic group.
    SearchDs(SearchArgs),
    /// Transforms, unit orbits and transversal diagnostics for a spec.
    Fourier(FourierArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Spec string such as "n=2; R=1,3; T=0,1,2,3".
    #[arg(value_name = "SPEC")]
    pub spec: Option<String>,
    #[arg(long = "spec", value_name = "SPEC")]
    pub spec_flag: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FourierArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<u32>,
    /// Inclusive range `A..B`.
    #[arg(long = "n-range", value_name = "A..B")]
    pub n_range: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also write the CSV summary to this path.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Evaluate every spec, not only canonical representatives.
    #[arg(long = "no-dedup")]
    pub no_dedup: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// `cyclic:M` or `dic:N` (order 4N).
    #[arg(long)]
    pub group: String,
    /// Without `--k` and `--lambda`, every admissible non-trivial `(k, λ)` is searched.
    #[arg(long, requires = "lambda")]
    pub k: Option<usize>,
    #[arg(long, requires = "k")]
    pub lambda: Option<usize>,
    #[arg(long)]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Classify,
    Survey,
    SearchDs,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupChoice {
    Cyclic(usize),
    Dicyclic(u32),
}

impl GroupChoice {
    fn table(self) -> GroupTable {
        match self {
            GroupChoice::Cyclic(m) => GroupTable::cyclic(m),
            GroupChoice::Dicyclic(n) => Dicyclic::new(n).expect("n >= 1").table(),
        }
    }

    fn order(self) -> usize {
        match self {
            GroupChoice::Cyclic(m) => m,
            GroupChoice::Dicyclic(n) => 4 * n as usize,
        }
    }

    fn label(self, index: usize) -> String {
        match self {
            GroupChoice::Cyclic(_) => index.to_string(),
            GroupChoice::Dicyclic(n) => Dicyclic::new(n).expect("n >= 1").element_at(index).to_string(),
        }
    }

    fn name(self) -> String {
        match self {
            GroupChoice::Cyclic(m) => format!("cyclic:{m}"),
            GroupChoice::Dicyclic(n) => format!("dic:{n}"),
        }
    }
}

/// Validated settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub ns: Vec<u32>,
    pub spec: Option<String>,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub format: Format,
    pub tolerance: f64,
    pub workers: Option<usize>,
    pub dedup: bool,
    pub limit: Option<usize>,
    pub group: Option<GroupChoice>,
    pub params: Option<(usize, usize)>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Spec(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        EXIT_USAGE
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || usage(format!("--n-range: expected A..B with 1 <= A <= B, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn parse_group(s: &str) -> Result<GroupChoice, CliError> {
    let bad = || usage(format!("--group: expected cyclic:M or dic:N, got {s:?}"));
    let (kind, size) = s.split_once(':').ok_or_else(bad)?;
    let size: usize = size.trim().parse().map_err(|_| bad())?;
    if size == 0 || size > 64 {
        return Err(usage(format!("--group: order must be between 1 and 64, got {s:?}")));
    }
    match kind.trim() {
        "cyclic" | "Z" => Ok(GroupChoice::Cyclic(size)),
        "dic" | "Dic" if size <= 16 => Ok(GroupChoice::Dicyclic(size as u32)),
        "dic" | "Dic" => Err(usage(format!("--group: Dic_{size} has order above 64"))),
        _ => Err(bad()),
    }
}

fn check_tolerance(t: Option<f64>) -> Result<f64, CliError> {
    match t {
        None => Ok(DEFAULT_TOLERANCE),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(usage(format!("--tolerance must be a positive number, got {t}"))),
    }
}

fn pick_spec(args: &SpecArgs) -> Result<String, CliError> {
    match (&args.spec, &args.spec_flag) {
        (Some(_), Some(_)) => Err(usage("--spec: give the spec either positionally or with --spec, not both")),
        (None, None) => Err(usage("--spec: a spec string is required")),
        (Some(s), None) | (None, Some(s)) => Ok(s.clone()),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let mut config = RunConfig {
            command: CommandKind::Check,
            ns: Vec::new(),
            spec: None,
            out: None,
            summary: None,
            format: Format::Text,
            tolerance: DEFAULT_TOLERANCE,
            workers: None,
            dedup: true,
            limit: None,
            group: None,
            params: None,
        };
        let output = |c: &mut RunConfig, o: OutputArgs| {
            c.format = o.format;
            c.out = o.out;
        };
        match cli.command {
            Command::Check(a) | Command::Classify(a) if a.output.format == Format::Csv => {
                return Err(usage("--format: csv is only available for survey"));
            }
            Command::Check(a) => {
                config.spec = Some(pick_spec(&a)?);
                output(&mut config, a.output);
            }
            Command::Classify(a) => {
                config.command = CommandKind::Classify;
                config.spec = Some(pick_spec(&a)?);
                output(&mut config, a.output);
            }
            Command::Fourier(a) => {
                if a.spec.output.format == Format::Csv {
                    return Err(usage("--format: csv is only available for survey"));
                }
                config.command = CommandKind::Fourier;
                config.spec = Some(pick_spec(&a.spec)?);
                config.tolerance = check_tolerance(a.tolerance)?;
                output(&mut config, a.spec.output);
            }
            Command::Survey(a) => {
                config.command = CommandKind::Survey;
                config.ns = match (a.n, &a.n_range) {
                    (Some(n), None) => vec![n],
                    (None, Some(r)) => parse_range(r)?.collect(),
                    _ => return Err(usage("--n: give either --n or --n-range")),
                };
                if let Some(&bad) = config.ns.iter().find(|&&n| n == 0 || n > MAX_SURVEY_N) {
                    return Err(usage(format!("--n: {bad} is outside 1..={MAX_SURVEY_N}")));
                }
                if a.workers == Some(0) {
                    return Err(usage("--workers must be at least 1"));
                }
                config.workers = a.workers;
                config.dedup = !a.no_dedup;
                config.tolerance = check_tolerance(a.tolerance)?;
                config.summary = a.summary;
                output(&mut config, a.output);
            }
            Command::SearchDs(a) => {
                if a.output.format == Format::Csv {
                    return Err(usage("--format: csv is only available for survey"));
                }
                config.command = CommandKind::SearchDs;
                config.group = Some(parse_group(&a.group)?);
                config.params = a.k.zip(a.lambda);
                config.limit = a.limit;
                output(&mut config, a.output);
            }
        }
        Ok(config)
    }
}

type Classifier<'a> = &'a (dyn Fn(&ConnectionSpec) -> Result<Classification, ClassifierError> + Sync);

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_classifier(args, &classify, out, err)
}

/// [`run`] with the classifier replaced, for exercising the cross-check alarm.
pub fn run_with_classifier<I, T>(args: I, classifier: Classifier<'_>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| execute(&config, classifier, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

/// Runs a validated configuration and returns the exit status.
pub fn execute(config: &RunConfig, classifier: Classifier<'_>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (body, text, code) = match config.command {
        CommandKind::Check => check(config, classifier)?,
        CommandKind::Classify => classify_cmd(config, classifier)?,
        CommandKind::Survey => survey_cmd(config, classifier)?,
        CommandKind::SearchDs => search_cmd(config)?,
        CommandKind::Fourier => fourier_cmd(config)?,
    };
    let doc = ReportDocument::new(body);
    let rendered = match config.format {
        Format::Json => doc.to_json(),
        Format::Text => text,
        Format::Csv => {
            let ReportBody::Survey(s) = &doc.body else {
                return Err(usage("--format: csv is only available for survey"));
            };
            let mut buf = Vec::new();
            write_summary_csv(&mut buf, &s.surveys).map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
    };
    if let (Some(path), ReportBody::Survey(s)) = (&config.summary, &doc.body) {
        let file = fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        write_summary_csv(file, &s.surveys).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    match &config.out {
        Some(path) => fs::write(path, rendered).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => out.write_all(rendered.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(code)
}

fn spec_error(input: &str, e: dicirc_core::SpecError) -> CliError {
    match e {
        dicirc_core::SpecError::Parse { position, .. } => {
            CliError::Spec(format!("{e}\n  {input}\n  {}^", " ".repeat(position.min(input.len()))))
        }
        other => CliError::Spec(other.to_string()),
    }
}

fn parse_connected(input: &str) -> Result<ConnectionSpec, CliError> {
    let (n, r, t) = parse_spec_fields(input).map_err(|e| spec_error(input, e))?;
    validate_spec(n, r, t).map_err(|e| spec_error(input, e))
}

fn parse_valid(input: &str) -> Result<ConnectionSpec, CliError> {
    input.parse().map_err(|e| spec_error(input, e))
}

type Outcome = (ReportBody, String, i32);

fn check(config: &RunConfig, classifier: Classifier<'_>) -> Result<Outcome, CliError> {
    let input = config.spec.as_deref().expect("spec set for check");
    let spec = parse_connected(input)?;
    let graph = build_graph(&spec);
    let outcome = is_distance_regular(&graph, true).map_err(|e| CliError::Spec(e.to_string()))?;
    let class = match classifier(&spec) {
        Ok(c) => c.tag,
        Err(e) => return Err(CliError::Spec(e.to_string())),
    };
    let agrees = match (&outcome, class.predicted_array(graph.vertex_count())) {
        (DrgOutcome::Regular(a), Some(p)) => *a == p,
        (DrgOutcome::NotRegular(_), None) => true,
        _ => false,
    };
    let (antipodal, primitive) = match outcome.array() {
        Some(a) => (
            Some(antipodal_classes(&graph, a.diameter()).is_some()),
            Some(is_primitive(&graph, a.diameter())),
        ),
        None => (None, None),
    };
    let report = CheckReport {
        spec: (&spec).into(),
        vertex_count: graph.vertex_count(),
        valency: spec.valency(),
        drg: outcome.is_regular(),
        array: outcome.array().cloned(),
        witness: match &outcome {
            DrgOutcome::NotRegular(w) => Some(w.to_string()),
            DrgOutcome::Regular(_) => None,
        },
        class,
        agrees,
        bipartite: bipartition(&graph).is_some(),
        antipodal,
        antipodal_single_fibre: outcome.array().is_some_and(|a| a.diameter() == 1),
        primitive,
        family: recognize_family(&graph),
    };
    let mut text = format!("spec: {spec}\nvertices: {}, valency: {}\n", report.vertex_count, report.valency);
    match (&report.array, &report.witness) {
        (Some(a), _) => text += &format!("distance-regular: yes, array {a}\n"),
        (None, Some(w)) => text += &format!("distance-regular: no ({w})\n"),
        (None, None) => {}
    }
    text += &format!("class: {}\n", report.class);
    text += &format!("bipartite: {}", yes_no(report.bipartite));
    if let (Some(a), Some(p)) = (report.antipodal, report.primitive) {
        let note = if report.antipodal_single_fibre { " (single fibre, diameter-1 convention)" } else { "" };
        text += &format!(", antipodal: {}{note}, primitive: {}", yes_no(a), yes_no(p));
    }
    text += &format!("\nfamily: {}", report.family.primary);
    if !report.family.also.is_empty() {
        let also: Vec<String> = report.family.also.iter().map(|t| t.to_string()).collect();
        text += &format!(" (also {})", also.join(", "));
    }
    text += &format!("\ncross-check: {}\n", if agrees { "agree" } else { "DISAGREE" });
    let code = if agrees { EXIT_OK } else { EXIT_CROSS_CHECK };
    Ok((ReportBody::Check(report), text, code))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classify_cmd(config: &RunConfig, classifier: Classifier<'_>) -> Result<Outcome, CliError> {
    let input = config.spec.as_deref().expect("spec set for classify");
    let spec = parse_connected(input)?;
    let classification = classifier(&spec).map_err(|e| CliError::Spec(e.to_string()))?;
    let mut text = format!("spec: {spec}\nclass: {}\n", classification.tag);
    for e in &classification.evidence {
        text += &format!("  {e}\n");
    }
    let report = ClassifyReport {
        spec: (&spec).into(),
        classification,
    };
    Ok((ReportBody::Classify(report), text, EXIT_OK))
}

fn survey_cmd(config: &RunConfig, classifier: Classifier<'_>) -> Result<Outcome, CliError> {
    let options = SurveyOptions {
        dedup: config.dedup,
        workers: config.workers,
        tolerance: config.tolerance,
    };
    let mut surveys = Vec::new();
    let mut text = String::new();
    for &n in &config.ns {
        let report = survey_with_classifier(n, &options, classifier).map_err(|e| usage(format!("--n: {e}")))?;
        text += &format!(
            "n = {n}: {} specs, {} connected, {} canonical classes, {} evaluated\n",
            report.total_specs, report.connected_specs, report.canonical_classes, report.evaluated_specs
        );
        text += &format!(
            "  DRGs: {} (complete {}, complete multipartite {}, bipartite d=3 {})\n",
            report.drgs.len(),
            report.class_counts.complete,
            report.class_counts.complete_multipartite,
            report.class_counts.bipartite_d3
        );
        for d in &report.drgs {
            let spec = d.spec.to_spec().expect("survey specs are valid");
            text += &format!("    {spec}  {}  {}\n", d.array, d.class);
        }
        if report.cross_check_failures.is_empty() {
            text += "  cross-check: BFS and classifier agree on every spec\n";
        } else {
            for f in &report.cross_check_failures {
                let spec = f.spec.to_spec().expect("survey specs are valid");
                text += &format!("  CROSS-CHECK FAILURE {spec}: BFS says {}, classifier says {}\n", f.bfs, f.classified);
            }
        }
        surveys.push(report);
    }
    let failed = surveys.iter().any(|s| !s.reproduces_classification());
    let code = if failed { EXIT_CROSS_CHECK } else { EXIT_OK };
    Ok((ReportBody::Survey(SurveyDocument { surveys }), text, code))
}

/// Admissible non-trivial `(k, λ)` for order `v`: `2 <= k <= v - 2`, `k(k-1) = λ(v-1)`.
fn admissible_params(v: usize) -> Vec<(usize, usize)> {
    if v < 4 {
        return Vec::new();
    }
    (2..=v - 2)
        .filter(|k| (k * (k - 1)) % (v - 1) == 0)
        .map(|k| (k, k * (k - 1) / (v - 1)))
        .collect()
}

fn search_cmd(config: &RunConfig) -> Result<Outcome, CliError> {
    let group = config.group.expect("group set for search-ds");
    let table = group.table();
    let v = group.order();
    let params = match config.params {
        Some(p) => vec![p],
        None => admissible_params(v),
    };
    let mut runs = Vec::new();
    let mut text = format!("group {} (order {v})\n", group.name());
    if params.is_empty() {
        text += "  no admissible non-trivial (v, k, λ)\n";
    }
    for (k, lambda) in params {
        let solutions = search_difference_sets(&table, v, k, lambda, config.limit).map_err(|e| {
            usage(format!("--k/--lambda: {e}"))
        })?;
        let verified = solutions.iter().all(|s| {
            difference_set_lambda(&table, s).ok().flatten().is_some_and(|i| i.lambda == lambda)
        });
        let elements: Vec<Vec<String>> = solutions
            .iter()
            .map(|s| s.iter().map(|&i| group.label(i)).collect())
            .collect();
        let (family_iii, family_iii_outcome) = match group {
            GroupChoice::Dicyclic(h) => {
                let mut specs: Vec<ConnectionSpec> =
                    solutions.iter().flat_map(|s| specs_from_difference_set(h, s)).collect();
                specs.sort();
                specs.dedup();
                let checks: Vec<_> = specs.iter().map(verify_family_iii).collect();
                // The family array {k, k-1, k-μ; 1, μ, k} has μ equal to the design's λ.
                let mu = lambda;
                let outcome = if checks.is_empty() {
                    format!("no family-(iii) instance at n={} via this construction", 2 * h)
                } else if checks.iter().all(|c| c.consistent_with(k, mu)) {
                    format!("{} family-(iii) instance(s) at n={}, all verified", checks.len(), 2 * h)
                } else {
                    format!("inconsistent: a rebuilt Dic({},R,T) fails verification", 2 * h)
                };
                (Some(checks), Some(outcome))
            }
            GroupChoice::Cyclic(_) => (None, None),
        };
        text += &format!("  (v,k,λ) = ({v},{k},{lambda}): {} translate class(es)\n", solutions.len());
        for e in &elements {
            text += &format!("    {{{}}}\n", e.join(", "));
        }
        if let Some(o) = &family_iii_outcome {
            text += &format!("    {o}\n");
        }
        runs.push(SearchRun {
            k,
            lambda,
            solutions,
            elements,
            verified,
            family_iii,
            family_iii_outcome,
        });
    }
    let report = SearchReport {
        group: group.name(),
        v,
        limit: config.limit,
        runs,
    };
    Ok((ReportBody::SearchDs(report), text, EXIT_OK))
}

fn fourier_cmd(config: &RunConfig) -> Result<Outcome, CliError> {
    let input = config.spec.as_deref().expect("spec set for fourier");
    let spec = parse_valid(input)?;
    let m = 2 * spec.n() as usize;
    let orbits = unit_orbits(m);
    let graph = build_graph(&spec);
    let mut text = format!("spec: {spec}\nunit orbits of Z_{m}:\n");
    for o in &orbits.orbits {
        text += &format!("  O_{}: {:?}\n", o.order, o.members);
    }

    let mut shells = Vec::new();
    let mut lemma = None;
    if let Ok(dp) = DistancePartition::new(&graph, 0) {
        for (i, (r, t)) in dp.exponent_shells(spec.n()).into_iter().enumerate() {
            let rh = dft(&IntegerFunction::characteristic(&r));
            let th = dft(&IntegerFunction::characteristic(&t));
            shells.push(ShellTransform {
                distance: i,
                r: r.to_vec(),
                t: t.to_vec(),
                r_hat: (0..m).map(|z| complex_pair(rh.at(z))).collect(),
                t_hat: (0..m).map(|z| complex_pair(th.at(z))).collect(),
                r_orbit_union: orbits.is_union_of_orbits(&r),
                t_orbit_union: orbits.is_union_of_orbits(&t),
            });
        }
        let outcome = is_distance_regular(&graph, true).map_err(|e| CliError::Spec(e.to_string()))?;
        if let DrgOutcome::Regular(array) = &outcome {
            let residuals = fourier_lemma_residuals(&spec, &dp, &outcome).map_err(|e| CliError::Spec(e.to_string()))?;
            let counting = fourier_lemma_counting_form(&spec, &dp, &outcome).map_err(|e| CliError::Spec(e.to_string()))?;
            lemma = Some(LemmaRow {
                array: array.clone(),
                residuals,
                tolerance: config.tolerance,
                holds: residuals.within(config.tolerance),
                counting_form_holds: counting,
            });
        }
    } else {
        text += "graph is disconnected: no distance shells\n";
    }
    for s in &shells {
        text += &format!("distance {}: R_{0} = {:?}, T_{0} = {:?}\n", s.distance, s.r, s.t);
        text += &format!("  R^ = {}\n  T^ = {}\n", fmt_pairs(&s.r_hat), fmt_pairs(&s.t_hat));
    }

    let transversals: Vec<TransversalRow> = (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| {
            let (r, t) = (spec.r(), spec.t());
            TransversalRow {
                divisor: d,
                r_transversal: is_transversal(r, d).expect("d divides m"),
                t_transversal: is_transversal(t, d).expect("d divides m"),
                r_profile: coset_profile(r, d).expect("d divides m").counts,
                t_profile: coset_profile(t, d).expect("d divides m").counts,
            }
        })
        .collect();
    text += "coset profiles (divisor: R | T):\n";
    for row in &transversals {
        text += &format!("  {}: {:?} | {:?}\n", row.divisor, row.r_profile, row.t_profile);
    }
    match &lemma {
        Some(l) => {
            text += &format!(
                "transform identities for {}: residuals {:.3e}, {:.3e} -> {}; counting form {}\n",
                l.array,
                l.residuals.first,
                l.residuals.second,
                if l.holds { "hold" } else { "FAIL" },
                if l.counting_form_holds { "holds" } else { "FAILS" }
            );
        }
        None => text += "not distance-regular: transform identities not applicable\n",
    }
    let report = FourierReport {
        spec: SpecRecordKey::from(&spec),
        modulus: m,
        orbits,
        shells,
        transversals,
        lemma,
    };
    Ok((ReportBody::Fourier(report), text, EXIT_OK))
}

fn fmt_pairs(v: &[[f64; 2]]) -> String {
    let parts: Vec<String> = v.iter().map(|[re, im]| format!("{re:.4}{im:+.4}i")).collect();
    format!("[{}]", parts.join(", "))
}
