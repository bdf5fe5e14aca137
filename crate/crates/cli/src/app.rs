//! Argument parsing and the mapping from parsed arguments to library
//! calls, output documents and exit codes.
//!
//! Everything observable is deterministic: documents are built from the
//! parsed arguments and the scenario alone (no environment, clock or
//! network input), so identical invocations produce byte-identical output.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use punditry::bayes::BayesNet;
use punditry::classify::{classify_information, InfoKind};
use punditry::domain::Categorical;
use punditry::factor::Assignment;
use punditry::models::{
    build_maid, posterior_tk_given_d, prior_vote_dist, pundit_policy, trusting_policy,
    vote_dist_trusting,
};
use punditry::scenario::{ModelKind, PunditContext, Scenario};
use punditry::search::{find_anomalous_scenario, SearchConfig};
use punditry::verify::{
    verify_aligned_no_harm, verify_anomalous, verify_directional_info, verify_negative_mixture,
    verify_posterior_mixture, verify_uninformative_publications, Verdict, VerificationReport,
};
use punditry::{Error, Result};

use crate::file::{self, Loaded, ScenarioFile};
use crate::report::{Cell, Document, Format, Section};

/// The run succeeded; for `verify`, the verdict was not `Violated`.
pub const EXIT_OK: i32 = 0;
/// A check came back `Violated`, a search found no witness, or validation
/// found invariant violations.
pub const EXIT_FAIL: i32 = 1;
/// Usage or input errors, including unreadable or ill-formed scenarios.
pub const EXIT_INPUT: i32 = 2;

/// Exact inference and analysis for voter/pundit scenarios.
#[derive(Debug, Parser)]
#[command(name = "punditry", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

/// Which model to compile for `infer`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// The voter reads the candidate's message at face value.
    Trusting,
    /// The pundit observes the message privately and publishes a verdict.
    Pundit,
    /// The voter reads the pundit's publication, modelling the pundit.
    Suspicious,
}

impl Model {
    fn kind(self) -> ModelKind {
        match self {
            Model::Trusting => ModelKind::TrustingVoter,
            Model::Pundit => ModelKind::BiasedPundit,
            Model::Suspicious => ModelKind::SuspiciousVoter,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Model::Trusting => "trusting",
            Model::Pundit => "pundit",
            Model::Suspicious => "suspicious",
        }
    }
}

/// Whose decision rule `policy` prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Agent {
    /// The voter's vote as a function of believed similarity.
    Voter,
    /// The pundit's publication as a function of observed message and
    /// pundit position.
    Pundit,
}

impl Agent {
    fn name(self) -> &'static str {
        match self {
            Agent::Voter => "voter",
            Agent::Pundit => "pundit",
        }
    }
}

/// Which claim `verify` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    /// A strictly directional message moves expected support the same way
    /// (needs --ti and --d).
    Thm1,
    /// A mixture of strictly negative messages still cannot raise expected
    /// support (needs --ti and --mix).
    Cor,
    /// A constant publication marginal leaves every posterior at the prior
    /// (uses the pundit context).
    Prop1,
    /// The suspicious posterior is the α-blend of the trusting posterior
    /// and the prior when the publication marginal has constant diagonal α
    /// (uses the pundit context).
    Prop2,
    /// A pundit sharing the voter's position never lowers that voter's
    /// expected utility (needs --ti).
    Prop3,
    /// One publication is good news at face value and bad news through the
    /// pundit model, or vice versa (needs --ti and --b).
    Thm2,
}

impl Claim {
    fn name(self) -> &'static str {
        match self {
            Claim::Thm1 => "thm1",
            Claim::Cor => "cor",
            Claim::Prop1 => "prop1",
            Claim::Prop2 => "prop2",
            Claim::Prop3 => "prop3",
            Claim::Thm2 => "thm2",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a scenario and report every invariant violation.
    Validate {
        /// Bundled scenario name or path to a scenario file.
        #[arg(long)]
        scenario: String,
    },

    /// Exact conditional distribution of one variable in a compiled model.
    Infer {
        /// Bundled scenario name or path to a scenario file.
        #[arg(long)]
        scenario: String,
        /// Model to compile.
        #[arg(long, value_enum)]
        model: Model,
        /// Variable to query.
        #[arg(long, value_name = "VAR")]
        query: String,
        /// Observed evidence; repeatable.
        #[arg(long, value_name = "VAR=LABEL")]
        evidence: Vec<String>,
        /// Treat the pundit's position as known to be this label
        /// (overrides the scenario file's pundit context).
        #[arg(long, value_name = "POSITION")]
        tj: Option<String>,
    },

    /// Print a solved decision rule.
    Policy {
        /// Bundled scenario name or path to a scenario file.
        #[arg(long)]
        scenario: String,
        /// Whose rule to solve.
        #[arg(long, value_enum)]
        agent: Agent,
    },

    /// Classify a message as strictly negative, strictly positive, neutral
    /// or mixed information for one voter.
    Classify {
        /// Bundled scenario name or path to a scenario file.
        #[arg(long)]
        scenario: String,
        /// The voter's position.
        #[arg(long, value_name = "POSITION")]
        ti: String,
        /// The message to classify.
        #[arg(long, value_name = "MESSAGE")]
        d: String,
    },

    /// Check one analysis claim on a scenario.  Flags not used by the
    /// chosen claim are ignored.
    Verify {
        /// Bundled scenario name or path to a scenario file.
        #[arg(long)]
        scenario: String,
        /// Claim to check.
        #[arg(long, value_enum)]
        claim: Claim,
        /// The voter's position (thm1, cor, prop3, thm2).
        #[arg(long, value_name = "POSITION")]
        ti: Option<String>,
        /// The observed message (thm1).
        #[arg(long, value_name = "MESSAGE")]
        d: Option<String>,
        /// The pundit's publication (thm2).
        #[arg(long, value_name = "MESSAGE")]
        b: Option<String>,
        /// Mixture weight over messages; repeatable (cor).
        #[arg(long, value_name = "MESSAGE=WEIGHT")]
        mix: Vec<String>,
        /// Treat the pundit's position as known to be this label
        /// (overrides the scenario file's pundit context).
        #[arg(long, value_name = "POSITION")]
        tj: Option<String>,
    },

    /// Search seeded candidate scenarios for one where a publication is
    /// good news at face value and bad news through the pundit model.
    SearchAnomalous {
        /// Seed of the candidate stream.
        #[arg(long, default_value_t = SearchConfig::default().seed)]
        seed: u64,
        /// Maximum number of candidates to evaluate.
        #[arg(long, default_value_t = SearchConfig::default().budget)]
        budget: usize,
        /// Control run: give the pundit the voter's own position (the
        /// search is then expected to come up empty).
        #[arg(long)]
        aligned: bool,
        /// Write the witness scenario to this path as a scenario file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },

    /// Walk the bundled scenarios through the main queries.
    Demo,
}

/// Captured output of one run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parse arguments (`argv[0]` included), run, capture output and exit code.
pub fn run<I, T>(args: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Err(e) => {
            let rendered = e.render().to_string();
            let code = i32::from(e.use_stderr()) * EXIT_INPUT;
            if e.use_stderr() {
                RunResult { stdout: String::new(), stderr: rendered, code }
            } else {
                // --help and --version parse as "errors" but succeed.
                RunResult { stdout: rendered, stderr: String::new(), code }
            }
        }
        Ok(cli) => {
            let format = cli.format;
            match execute(cli) {
                Ok((doc, code)) => {
                    RunResult { stdout: doc.render(format), stderr: String::new(), code }
                }
                Err(err) => RunResult {
                    stdout: String::new(),
                    stderr: format!("error: {err}\n"),
                    code: EXIT_INPUT,
                },
            }
        }
    }
}

/// Run one parsed command, producing the output document and exit code.
pub fn execute(cli: Cli) -> Result<(Document, i32)> {
    let format = cli.format;
    match cli.command {
        Command::Validate { scenario } => {
            let loaded = file::load(&scenario)?;
            run_validate(&scenario, &loaded, format)
        }
        Command::Infer { scenario, model, query, evidence, tj } => {
            let loaded = file::load(&scenario)?;
            loaded.scenario.validate()?;
            run_infer(&scenario, &loaded, model, &query, &evidence, tj.as_deref(), format)
        }
        Command::Policy { scenario, agent } => {
            let loaded = file::load(&scenario)?;
            loaded.scenario.validate()?;
            run_policy(&scenario, &loaded.scenario, agent, format)
        }
        Command::Classify { scenario, ti, d } => {
            let loaded = file::load(&scenario)?;
            run_classify(&scenario, &loaded.scenario, &ti, &d, format)
        }
        Command::Verify { scenario, claim, ti, d, b, mix, tj } => {
            let loaded = file::load(&scenario)?;
            loaded.scenario.validate()?;
            run_verify(&scenario, &loaded, claim, ti, d, b, &mix, tj.as_deref(), format)
        }
        Command::SearchAnomalous { seed, budget, aligned, out } => {
            run_search(seed, budget, aligned, out.as_deref(), format)
        }
        Command::Demo => run_demo(format),
    }
}

/// Canonical command echo: flags in declaration order, format last.
fn echo(subcommand: &str, args: &[(&str, String)], format: Format) -> String {
    let mut s = format!("punditry {subcommand}");
    for (flag, value) in args {
        if value.is_empty() {
            s.push_str(&format!(" --{flag}"));
        } else {
            s.push_str(&format!(" --{flag} {value}"));
        }
    }
    s.push_str(&format!(" --format {}", format.name()));
    s
}

/// The pundit context: the `--tj` flag beats the scenario file's setting,
/// both beat the prior.
fn resolve_context(flag: Option<&str>, loaded: &Loaded) -> Result<PunditContext> {
    match flag.or(loaded.context.as_deref()) {
        None => Ok(PunditContext::Prior),
        Some(label) => {
            if loaded.scenario.t_domain.index_of(label).is_none() {
                return Err(Error::Input(format!(
                    "pundit position `{label}` is not in the position domain (positions: {})",
                    loaded.scenario.t_domain.names().join(", ")
                )));
            }
            Ok(PunditContext::Known(label.to_string()))
        }
    }
}

fn field_row(field: &str, value: impl Into<Cell>) -> Vec<Cell> {
    vec![field.into(), value.into()]
}

fn join_names(names: &[&str]) -> String {
    names.join(", ")
}

fn scenario_summary(loaded: &Loaded) -> Section {
    let sc = &loaded.scenario;
    let mut s = Section::new("scenario").columns(["field", "value"]);
    s.push_row(field_row("origin", loaded.origin.as_str()));
    if let Some(name) = &loaded.name {
        s.push_row(field_row("name", name.as_str()));
    }
    s.push_row(field_row("positions", join_names(&sc.t_domain.names())));
    s.push_row(field_row("messages", join_names(&sc.d_domain.names())));
    s.push_row(field_row("similarity values", join_names(&sc.s_domain.names())));
    s.push_row(field_row("support values", join_names(&sc.y_domain.names())));
    s.push_row(field_row(
        "pundit context",
        loaded.context.clone().map_or_else(|| "prior".to_string(), |c| format!("known({c})")),
    ));
    s.push_row(field_row(
        "anticipated voter",
        sc.assumed_ti.clone().unwrap_or_else(|| "prior".to_string()),
    ));
    if let Some(d) = &loaded.description {
        s.note(d);
    }
    s
}

fn run_validate(spec: &str, loaded: &Loaded, format: Format) -> Result<(Document, i32)> {
    let mut doc = Document::new(echo("validate", &[("scenario", spec.to_string())], format));
    doc.push(scenario_summary(loaded));
    let problems = loaded.scenario.problems();
    let mut section = Section::new("invariant violations").columns(["problem"]);
    for p in &problems {
        section.push_row(vec![p.as_str().into()]);
    }
    if problems.is_empty() {
        section.note("none: every invariant holds");
    }
    doc.push(section);
    let code = if problems.is_empty() { EXIT_OK } else { EXIT_FAIL };
    Ok((doc, code))
}

fn variable_list(bn: &BayesNet) -> String {
    bn.nodes().iter().map(|n| n.var.id()).collect::<Vec<_>>().join(", ")
}

fn parse_evidence(bn: &BayesNet, pairs: &[String], model: Model) -> Result<Assignment> {
    let mut assignment = Assignment::new();
    for pair in pairs {
        let (var, label) = pair
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("evidence `{pair}`: expected VAR=LABEL")))?;
        let v = bn.var(var).ok_or_else(|| {
            Error::Input(format!(
                "evidence `{pair}`: `{var}` is not a variable of the {} model (variables: {})",
                model.name(),
                variable_list(bn)
            ))
        })?;
        if v.domain().index_of(label).is_none() {
            return Err(Error::Input(format!(
                "evidence `{pair}`: `{label}` is not a label of `{var}` (labels: {})",
                v.domain().names().join(", ")
            )));
        }
        assignment.set(var, label);
    }
    Ok(assignment)
}

#[allow(clippy::too_many_arguments)]
fn run_infer(
    spec: &str,
    loaded: &Loaded,
    model: Model,
    query: &str,
    evidence: &[String],
    tj: Option<&str>,
    format: Format,
) -> Result<(Document, i32)> {
    let ctx = resolve_context(tj, loaded)?;
    let mut args = vec![
        ("scenario", spec.to_string()),
        ("model", model.name().to_string()),
        ("query", query.to_string()),
    ];
    for pair in evidence {
        args.push(("evidence", pair.clone()));
    }
    if let Some(t) = tj {
        args.push(("tj", t.to_string()));
    }
    let mut doc = Document::new(echo("infer", &args, format));

    let bn = build_maid(&loaded.scenario, model.kind(), &ctx)?.compile()?;
    if bn.var(query).is_none() {
        return Err(Error::Input(format!(
            "query `{query}`: not a variable of the {} model (variables: {})",
            model.name(),
            variable_list(&bn)
        )));
    }
    let assignment = parse_evidence(&bn, evidence, model)?;
    let dist = bn.infer(query, &assignment)?;

    let title = if assignment.is_empty() {
        format!("P({query})")
    } else {
        format!("P({query} | {assignment})")
    };
    let mut section = Section::new(title).columns([query, "probability"]);
    for (label, &p) in dist.domain().labels().iter().zip(dist.probs()) {
        section.push_row(vec![label.name().into(), p.into()]);
    }
    section.note(format!("model: {}; pundit context: {ctx}", model.kind()));
    doc.push(section);
    Ok((doc, EXIT_OK))
}

fn run_policy(spec: &str, sc: &Scenario, agent: Agent, format: Format) -> Result<(Document, i32)> {
    let args = vec![("scenario", spec.to_string()), ("agent", agent.name().to_string())];
    let mut doc = Document::new(echo("policy", &args, format));
    match agent {
        Agent::Voter => {
            let policy = trusting_policy(sc)?;
            let mut columns: Vec<String> =
                policy.info().iter().map(|v| v.id().to_string()).collect();
            columns.push(policy.decision().id().to_string());
            let mut section = Section::new(format!("decision rule for {}", policy.decision().id()))
                .columns(columns);
            for (info_idx, choice) in policy.iter_rows() {
                let mut row: Vec<Cell> = policy
                    .info()
                    .iter()
                    .zip(&info_idx)
                    .map(|(v, &i)| v.domain().label(i).name().into())
                    .collect();
                row.push(policy.decision().domain().label(choice).name().into());
                section.push_row(row);
            }
            section.note("expected-utility argmax; ties go to the first label");
            doc.push(section);
        }
        Agent::Pundit => {
            let policy = pundit_policy(sc)?;
            let columns: Vec<String> = policy.scope().iter().map(|v| v.id().to_string()).collect();
            let decision = columns.last().cloned().unwrap_or_default();
            let mut section = Section::new(format!("decision rule for {decision}")).columns(
                columns[..columns.len() - 1]
                    .iter()
                    .cloned()
                    .chain(std::iter::once(decision.clone())),
            );
            for (idx, value) in policy.entries() {
                if value > 0.5 {
                    let row: Vec<Cell> = policy
                        .scope()
                        .iter()
                        .zip(&idx)
                        .map(|(v, &i)| v.domain().label(i).name().into())
                        .collect();
                    section.push_row(row);
                }
            }
            section.note("expected-utility argmax; ties go to the first label");
            doc.push(section);
        }
    }
    Ok((doc, EXIT_OK))
}

fn run_classify(
    spec: &str,
    sc: &Scenario,
    ti: &str,
    d: &str,
    format: Format,
) -> Result<(Document, i32)> {
    let args = vec![("scenario", spec.to_string()), ("ti", ti.to_string()), ("d", d.to_string())];
    let mut doc = Document::new(echo("classify", &args, format));
    let cls = classify_information(sc, ti, d)?;

    let mut verdict = Section::new("classification").columns(["field", "value"]);
    verdict.push_row(field_row("voter position", ti));
    verdict.push_row(field_row("message", d));
    verdict.push_row(field_row("verdict", cls.kind.to_string()));
    doc.push(verdict);

    let mut shift = Section::new("similarity belief shift").columns([
        "similarity",
        "before",
        "after",
        "change",
    ]);
    for (i, label) in sc.s_domain.labels().iter().enumerate() {
        shift.push_row(vec![
            label.name().into(),
            cls.base.probs()[i].into(),
            cls.conditional.probs()[i].into(),
            cls.deltas[i].into(),
        ]);
    }
    doc.push(shift);

    if !cls.triples.is_empty() {
        let mut transfers = Section::new("matched mass transfers").columns(["from", "to", "mass"]);
        for t in &cls.triples {
            let (from, to) = match cls.kind {
                InfoKind::StrictlyNegative => (&t.upper, &t.lower),
                _ => (&t.lower, &t.upper),
            };
            transfers.push_row(vec![from.name().into(), to.name().into(), t.delta.into()]);
        }
        doc.push(transfers);
    }
    Ok((doc, EXIT_OK))
}

/// A `VerificationReport` as one document section.
fn report_section(report: &VerificationReport) -> Section {
    let mut s = Section::new(format!("claim {}", report.claim)).columns(["quantity", "value"]);
    s.push_row(field_row("verdict", report.verdict.to_string()));
    for m in &report.margins {
        s.push_row(vec![m.name.as_str().into(), m.value.into()]);
    }
    if let Some(w) = &report.witness {
        s.push_row(field_row("witness", w.to_string()));
    }
    for note in &report.notes {
        s.note(note);
    }
    s
}

fn verdict_exit(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Violated => EXIT_FAIL,
        Verdict::Verified | Verdict::Inapplicable => EXIT_OK,
    }
}

fn require<'a>(opt: &'a Option<String>, flag: &str, claim: Claim) -> Result<&'a str> {
    opt.as_deref()
        .ok_or_else(|| Error::Input(format!("--{flag} is required for --claim {}", claim.name())))
}

fn parse_mixture(sc: &Scenario, mix: &[String]) -> Result<Categorical> {
    if mix.is_empty() {
        return Err(Error::Input(
            "--mix is required for --claim cor (repeat MESSAGE=WEIGHT)".into(),
        ));
    }
    let mut weights = vec![0.0; sc.d_domain.len()];
    let mut seen = vec![false; sc.d_domain.len()];
    for pair in mix {
        let (message, weight) = pair
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("mixture `{pair}`: expected MESSAGE=WEIGHT")))?;
        let idx = sc.d_domain.index_of(message).ok_or_else(|| {
            Error::Input(format!(
                "mixture `{pair}`: unknown message `{message}` (messages: {})",
                sc.d_domain.names().join(", ")
            ))
        })?;
        if seen[idx] {
            return Err(Error::Input(format!(
                "mixture `{pair}`: message `{message}` appears twice"
            )));
        }
        seen[idx] = true;
        weights[idx] = weight
            .parse::<f64>()
            .map_err(|e| Error::Input(format!("mixture `{pair}`: bad weight `{weight}`: {e}")))?;
    }
    Categorical::new(sc.d_domain.clone(), weights)
        .map_err(|e| Error::Input(format!("mixture weights: {e}")))
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    spec: &str,
    loaded: &Loaded,
    claim: Claim,
    ti: Option<String>,
    d: Option<String>,
    b: Option<String>,
    mix: &[String],
    tj: Option<&str>,
    format: Format,
) -> Result<(Document, i32)> {
    let sc = &loaded.scenario;
    let mut args = vec![("scenario", spec.to_string()), ("claim", claim.name().to_string())];
    let report = match claim {
        Claim::Thm1 => {
            let ti = require(&ti, "ti", claim)?;
            let d = require(&d, "d", claim)?;
            args.push(("ti", ti.to_string()));
            args.push(("d", d.to_string()));
            verify_directional_info(sc, ti, d)?
        }
        Claim::Cor => {
            let ti = require(&ti, "ti", claim)?;
            let h = parse_mixture(sc, mix)?;
            args.push(("ti", ti.to_string()));
            for pair in mix {
                args.push(("mix", pair.clone()));
            }
            verify_negative_mixture(sc, ti, &h)?
        }
        Claim::Prop1 => {
            let ctx = resolve_context(tj, loaded)?;
            if let Some(t) = tj {
                args.push(("tj", t.to_string()));
            }
            verify_uninformative_publications(sc, &ctx)?
        }
        Claim::Prop2 => {
            let ctx = resolve_context(tj, loaded)?;
            if let Some(t) = tj {
                args.push(("tj", t.to_string()));
            }
            verify_posterior_mixture(sc, &ctx)?
        }
        Claim::Prop3 => {
            let ti = require(&ti, "ti", claim)?;
            args.push(("ti", ti.to_string()));
            verify_aligned_no_harm(sc, ti)?
        }
        Claim::Thm2 => {
            let ti = require(&ti, "ti", claim)?;
            let b = require(&b, "b", claim)?;
            let ctx = resolve_context(tj, loaded)?;
            args.push(("ti", ti.to_string()));
            args.push(("b", b.to_string()));
            if let Some(t) = tj {
                args.push(("tj", t.to_string()));
            }
            verify_anomalous(sc, &ctx, ti, b)?
        }
    };
    let mut doc = Document::new(echo("verify", &args, format));
    doc.push(report_section(&report));
    Ok((doc, verdict_exit(report.verdict)))
}

fn run_search(
    seed: u64,
    budget: usize,
    aligned: bool,
    out: Option<&std::path::Path>,
    format: Format,
) -> Result<(Document, i32)> {
    let mut args = vec![("seed", seed.to_string()), ("budget", budget.to_string())];
    if aligned {
        args.push(("aligned", String::new()));
    }
    if let Some(path) = out {
        args.push(("out", path.display().to_string()));
    }
    let mut doc = Document::new(echo("search-anomalous", &args, format));

    let cfg = SearchConfig { seed, budget, aligned, ..SearchConfig::default() };
    cfg.validate()?;
    let outcome = find_anomalous_scenario(&cfg)?;

    let mut summary = Section::new("search").columns(["field", "value"]);
    summary.push_row(field_row("seed", seed));
    summary.push_row(field_row("budget", budget));
    summary.push_row(field_row("aligned control", if aligned { "yes" } else { "no" }));
    summary.push_row(field_row("candidates tried", outcome.tried));
    summary
        .push_row(field_row("witness found", if outcome.witness.is_some() { "yes" } else { "no" }));
    doc.push(summary);

    let Some(witness) = outcome.witness else {
        let mut empty = Section::new("result");
        empty.note("no anomalous-update witness within the budget");
        doc.push(empty);
        return Ok((doc, EXIT_FAIL));
    };

    let sc = &witness.scenario;
    let mut inputs = Section::new("witness").columns(["field", "value"]);
    inputs.push_row(field_row("candidate index", witness.index));
    inputs.push_row(field_row("voter position (t_i)", witness.t_i.as_str()));
    inputs.push_row(field_row("publication (b)", witness.b.as_str()));
    inputs.push_row(field_row("pundit context", witness.ctx.to_string()));
    inputs.push_row(field_row(
        "anticipated voter",
        sc.assumed_ti.clone().unwrap_or_else(|| "prior".to_string()),
    ));
    doc.push(inputs);

    doc.push(report_section(&witness.report));

    let mut priors = Section::new("witness priors").columns(["position", "t_i", "t_k", "t_j"]);
    for (i, label) in sc.t_domain.labels().iter().enumerate() {
        priors.push_row(vec![
            label.name().into(),
            sc.prior_ti.probs()[i].into(),
            sc.prior_tk.probs()[i].into(),
            sc.prior_tj.probs()[i].into(),
        ]);
    }
    doc.push(priors);

    let nd = sc.d_domain.len();
    let mut messages = Section::new("witness message table P(message | position)").columns(
        std::iter::once("position".to_string())
            .chain(sc.d_domain.names().iter().map(|s| s.to_string())),
    );
    for (t, label) in sc.t_domain.labels().iter().enumerate() {
        let mut row: Vec<Cell> = vec![label.name().into()];
        for d in 0..nd {
            row.push(sc.cpt_d.values()[t * nd + d].into());
        }
        messages.push_row(row);
    }
    doc.push(messages);

    let mut reputation = Section::new("witness reputation costs (published × observed)").columns(
        std::iter::once("published".to_string())
            .chain(sc.d_domain.names().iter().map(|s| s.to_string())),
    );
    for (b_idx, label) in sc.d_domain.labels().iter().enumerate() {
        let mut row: Vec<Cell> = vec![label.name().into()];
        for c in 0..nd {
            row.push(sc.reputation.values()[b_idx * nd + c].into());
        }
        reputation.push_row(row);
    }
    doc.push(reputation);

    if let Some(path) = out {
        let description = format!(
            "anomalous-update witness from the seeded search (seed {seed}, candidate {}): \
             publication {} moves the trusting and suspicious voters' expected support in \
             opposite directions",
            witness.index, witness.b
        );
        let scenario_file = ScenarioFile::from_scenario(
            sc,
            Some(&witness.ctx),
            Some("anomalous"),
            Some(&description),
        )?;
        scenario_file.save(path)?;
        let mut saved = Section::new("saved");
        saved.note(format!("witness scenario written to {}", path.display()));
        doc.push(saved);
    }

    Ok((doc, EXIT_OK))
}

fn run_demo(format: Format) -> Result<(Document, i32)> {
    let mut doc = Document::new(echo("demo", &[], format));

    let mut index =
        Section::new("bundled scenarios").columns(["name", "positions", "messages", "invariants"]);
    for name in file::bundled_names() {
        let loaded = file::load(name)?;
        index.push_row(vec![
            (*name).into(),
            join_names(&loaded.scenario.t_domain.names()).into(),
            join_names(&loaded.scenario.d_domain.names()).into(),
            if loaded.scenario.problems().is_empty() { "ok" } else { "violated" }.into(),
        ]);
    }
    doc.push(index);

    let loaded = file::load("table2")?;
    let sc = &loaded.scenario;
    sc.validate()?;
    let voter = sc.t_domain.label(0).name().to_string();

    let mut posteriors = Section::new("table2: trusting posterior P(T_k | D_k)").columns(
        std::iter::once("message".to_string())
            .chain(sc.t_domain.names().iter().map(|s| s.to_string())),
    );
    for d in sc.d_domain.names() {
        let posterior = posterior_tk_given_d(sc, d)?;
        let mut row: Vec<Cell> = vec![d.into()];
        row.extend(posterior.probs().iter().map(|&p| Cell::from(p)));
        posteriors.push_row(row);
    }
    doc.push(posteriors);

    let mut support = Section::new(format!("table2: expected support of a {voter} voter"))
        .columns(["observation", "expected support"]);
    support
        .push_row(vec!["none (prior)".into(), prior_vote_dist(sc, &voter)?.expectation()?.into()]);
    for d in sc.d_domain.names() {
        support.push_row(vec![
            format!("D_k = {d}").into(),
            vote_dist_trusting(sc, &voter, d)?.expectation()?.into(),
        ]);
    }
    doc.push(support);

    let mut kinds = Section::new(format!("table2: message classification for a {voter} voter"))
        .columns(["message", "verdict"]);
    for d in sc.d_domain.names() {
        let cls = classify_information(sc, &voter, d)?;
        kinds.push_row(vec![d.into(), cls.kind.to_string().into()]);
    }
    doc.push(kinds);

    let cfg = SearchConfig::default();
    let outcome = find_anomalous_scenario(&cfg)?;
    let mut search =
        Section::new(format!("anomalous-update search at the default seed {}", cfg.seed));
    match &outcome.witness {
        Some(w) => {
            search.note(format!(
                "witness at candidate {}: a {} voter reading publication {} — \
                 see the bundled `anomalous` scenario",
                w.index, w.t_i, w.b
            ));
            doc.push(search);
            doc.push(report_section(&w.report));
        }
        None => {
            search.note("no witness within the default budget");
            doc.push(search);
        }
    }

    Ok((doc, EXIT_OK))
}
