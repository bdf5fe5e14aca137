//! The on-disk scenario format: one JSON document per scenario.
//!
//! The format is strict: `schema_version` must be `1`, unknown fields are
//! rejected, and every map key must be a declared label — a typo fails the
//! load with the full field path instead of silently becoming a zero.
//! Probability and cost entries may be *omitted*, in which case they are
//! zero; the similarity table may list each unordered pair of positions
//! once and the mirrored row is filled in (listing both is allowed only if
//! they agree exactly).
//!
//! Loading checks shape (labels, paths, the zero-diagonal reputation rule)
//! but deliberately not the numeric invariants — row sums, off-diagonal
//! positivity — so that `validate` can load a questionable file and report
//! every violation at once.  Saving writes every entry densely; loading a
//! saved file reproduces each numeric value bit for bit.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use punditry::domain::{Categorical, Domain, DomainRef};
use punditry::factor::{Factor, Var};
use punditry::scenario::{table, PunditContext, Scenario};
use punditry::{Error, Result};
use serde::{Deserialize, Serialize};

/// The one schema version this build reads and writes.
pub const SCHEMA_VERSION: u32 = 1;

/// Election scenario with four positions and four messages; the larger of
/// the two bundled fixtures.
pub const BUNDLED_TABLE2: &str = include_str!("../scenarios/table2.json");

/// Two-position scenario on which a published message moves the trusting
/// and the suspicious voter in opposite directions (found by
/// `search-anomalous` at its default seed and committed as data).
pub const BUNDLED_ANOMALOUS: &str = include_str!("../scenarios/anomalous.json");

/// Names accepted by `--scenario` without touching the filesystem.
pub fn bundled_names() -> &'static [&'static str] {
    &["table2", "anomalous"]
}

/// Look up a bundled scenario body by name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "table2" => Some(BUNDLED_TABLE2),
        "anomalous" => Some(BUNDLED_ANOMALOUS),
        _ => None,
    }
}

/// Rows of a two-level table: outer key, then inner key, then value.
pub type Rows = BTreeMap<String, BTreeMap<String, f64>>;

/// Serialised form of a scenario.  Field and section names double as the
/// paths used in load-error and validation messages.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub domains: DomainsSection,
    pub priors: PriorsSection,
    pub cpts: CptsSection,
    /// Voter payoff by similarity label, then support label.
    pub utility: Rows,
    /// Pundit reputational cost by published message, then observed
    /// message.  The diagonal must be zero: an accurate publication never
    /// costs reputation.
    pub reputation: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pundit: Option<PunditSection>,
}

/// Label sets for the four variables every table ranges over.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainsSection {
    pub positions: Vec<String>,
    pub messages: Vec<String>,
    /// Similarity values, strictly increasing.
    pub similarity: Vec<f64>,
    /// Support (vote) values, strictly increasing.
    pub support: Vec<f64>,
}

/// Position priors for the voter (`t_i`), candidate (`t_k`) and pundit
/// (`t_j`).  Omitted labels have probability zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorsSection {
    pub t_i: BTreeMap<String, f64>,
    pub t_k: BTreeMap<String, f64>,
    pub t_j: BTreeMap<String, f64>,
}

/// The two conditional tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CptsSection {
    /// `P(message | position)` rows, keyed by position then message.
    pub message: Rows,
    /// `P(similarity | position_a, position_b)` rows, keyed by the two
    /// positions then the similarity label.  Symmetric: each unordered
    /// pair may be listed once.
    pub similarity: BTreeMap<String, Rows>,
}

/// Optional pundit-side settings.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PunditSection {
    /// When set, analyses condition on the pundit holding this position;
    /// otherwise they average over the `t_j` prior.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
    /// When set, the pundit anticipates the response of a voter of exactly
    /// this position; otherwise it averages over the `t_i` prior.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticipated_voter: Option<String>,
}

/// A scenario extracted from a parsed document, plus the file-level
/// settings that travel with it.
#[derive(Debug)]
pub struct FileParts {
    pub scenario: Scenario,
    /// `pundit.context` from the document, if any.
    pub context: Option<String>,
    pub name: Option<String>,
    pub description: Option<String>,
}

/// A scenario parsed from a file plus the file-level settings that sit
/// outside the `Scenario` struct proper.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub scenario: Scenario,
    /// `pundit.context` from the file, if any.
    pub context: Option<String>,
    pub name: Option<String>,
    pub description: Option<String>,
    /// Where the scenario came from, for error messages: a bundled name
    /// or a filesystem path.
    pub origin: String,
}

fn input(path: impl fmt::Display, msg: impl fmt::Display) -> Error {
    Error::Input(format!("{path}: {msg}"))
}

/// The payload of an error, without its kind prefix, for re-wrapping under
/// a field path.
fn payload(e: &Error) -> &str {
    match e {
        Error::Structural(s)
        | Error::Input(s)
        | Error::ZeroEvidence(s)
        | Error::Specification(s)
        | Error::Resource(s) => s,
    }
}

fn dist_from_map(
    path: &str,
    map: &BTreeMap<String, f64>,
    domain: &DomainRef,
    what: &str,
) -> Result<Categorical> {
    let mut probs = vec![0.0; domain.len()];
    for (k, &v) in map {
        let idx = domain
            .index_of(k)
            .ok_or_else(|| input(format!("{path}.{k}"), format!("unknown {what} `{k}`")))?;
        if !v.is_finite() {
            return Err(input(format!("{path}.{k}"), format!("value {v} is not finite")));
        }
        probs[idx] = v;
    }
    Categorical::new(domain.clone(), probs).map_err(|e| input(path, payload(&e)))
}

/// Read one inner row into a dense vector over `domain`; missing keys are
/// zero, unknown keys and non-finite values are errors.
fn row_from_map(
    path: &str,
    map: &BTreeMap<String, f64>,
    domain: &DomainRef,
    what: &str,
) -> Result<Vec<f64>> {
    let mut row = vec![0.0; domain.len()];
    for (k, &v) in map {
        let idx = domain
            .index_of(k)
            .ok_or_else(|| input(format!("{path}.{k}"), format!("unknown {what} `{k}`")))?;
        if !v.is_finite() {
            return Err(input(format!("{path}.{k}"), format!("value {v} is not finite")));
        }
        row[idx] = v;
    }
    Ok(row)
}

impl ScenarioFile {
    /// Parse a JSON document.  `origin` names the source in errors.
    pub fn from_json(text: &str, origin: &str) -> Result<ScenarioFile> {
        serde_json::from_str(text).map_err(|e| input(origin, e))
    }

    /// Serialise to pretty-printed JSON with a trailing newline.  Numbers
    /// are written in shortest round-trip form, so loading the output
    /// reproduces every value exactly.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("scenario files are JSON-serialisable");
        text.push('\n');
        text
    }

    /// Write to a file.
    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())
            .map_err(|e| input(path.display(), format!("cannot write scenario file: {e}")))
    }

    /// Turn the parsed document into a `Scenario` plus the file-level
    /// settings, checking shape but not numeric invariants.
    pub fn into_parts(self) -> Result<FileParts> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(input(
                "schema_version",
                format!("expected {SCHEMA_VERSION}, found {}", self.schema_version),
            ));
        }

        let t_domain = Domain::categorical("positions", self.domains.positions.iter().cloned())
            .map_err(|e| input("domains.positions", payload(&e)))?;
        let d_domain = Domain::categorical("messages", self.domains.messages.iter().cloned())
            .map_err(|e| input("domains.messages", payload(&e)))?;
        let s_domain = Domain::numeric("similarity", &self.domains.similarity)
            .map_err(|e| input("domains.similarity", payload(&e)))?;
        let y_domain = Domain::numeric("support", &self.domains.support)
            .map_err(|e| input("domains.support", payload(&e)))?;
        let nt = t_domain.len();
        let nd = d_domain.len();
        let ns = s_domain.len();
        let ny = y_domain.len();

        let prior_ti = dist_from_map("priors.t_i", &self.priors.t_i, &t_domain, "position")?;
        let prior_tk = dist_from_map("priors.t_k", &self.priors.t_k, &t_domain, "position")?;
        let prior_tj = dist_from_map("priors.t_j", &self.priors.t_j, &t_domain, "position")?;

        for k in self.cpts.message.keys() {
            if t_domain.index_of(k).is_none() {
                return Err(input(format!("cpts.message.{k}"), format!("unknown position `{k}`")));
            }
        }
        let mut cpt_d_values = Vec::with_capacity(nt * nd);
        for t in t_domain.labels() {
            let row = self.cpts.message.get(t.name()).ok_or_else(|| {
                input("cpts.message", format!("missing row for position `{}`", t.name()))
            })?;
            let path = format!("cpts.message.{}", t.name());
            cpt_d_values.extend(row_from_map(&path, row, &d_domain, "message")?);
        }
        let cpt_d = Factor::new(
            vec![Var::new(table::POSITION, &t_domain), Var::new(table::MESSAGE, &d_domain)],
            cpt_d_values,
        )
        .map_err(|e| input("cpts.message", payload(&e)))?;

        let mut grid: Vec<Option<Vec<f64>>> = vec![None; nt * nt];
        for (a, rows) in &self.cpts.similarity {
            let ai = t_domain.index_of(a).ok_or_else(|| {
                input(format!("cpts.similarity.{a}"), format!("unknown position `{a}`"))
            })?;
            for (b, row) in rows {
                let bi = t_domain.index_of(b).ok_or_else(|| {
                    input(format!("cpts.similarity.{a}.{b}"), format!("unknown position `{b}`"))
                })?;
                let path = format!("cpts.similarity.{a}.{b}");
                grid[ai * nt + bi] = Some(row_from_map(&path, row, &s_domain, "similarity label")?);
            }
        }
        for ai in 0..nt {
            for bi in ai..nt {
                let a = t_domain.label(ai).name();
                let b = t_domain.label(bi).name();
                match (grid[ai * nt + bi].is_some(), grid[bi * nt + ai].is_some()) {
                    (false, false) => {
                        return Err(input(
                            "cpts.similarity",
                            format!("missing row for positions `{a}` and `{b}`"),
                        ));
                    }
                    (true, false) => grid[bi * nt + ai] = grid[ai * nt + bi].clone(),
                    (false, true) => grid[ai * nt + bi] = grid[bi * nt + ai].clone(),
                    (true, true) => {
                        let fwd = grid[ai * nt + bi].as_ref().expect("checked");
                        let rev = grid[bi * nt + ai].as_ref().expect("checked");
                        for (s, (x, y)) in fwd.iter().zip(rev).enumerate() {
                            if x != y {
                                return Err(input(
                                    format!("cpts.similarity.{b}.{a}.{}", s_domain.label(s).name()),
                                    format!(
                                        "conflicts with the mirrored entry \
                                         cpts.similarity.{a}.{b} ({y} vs {x})"
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        let cpt_s_values: Vec<f64> =
            grid.into_iter().flat_map(|row| row.expect("closure filled every row")).collect();
        let cpt_s = Factor::new(
            vec![
                Var::new(table::POSITION_A, &t_domain),
                Var::new(table::POSITION_B, &t_domain),
                Var::new(table::SIMILARITY, &s_domain),
            ],
            cpt_s_values,
        )
        .map_err(|e| input("cpts.similarity", payload(&e)))?;

        for k in self.utility.keys() {
            if s_domain.index_of(k).is_none() {
                return Err(input(
                    format!("utility.{k}"),
                    format!("unknown similarity label `{k}`"),
                ));
            }
        }
        let mut utility_values = vec![0.0; ns * ny];
        for (s, row) in &self.utility {
            let si = s_domain.index_of(s).expect("checked above");
            let path = format!("utility.{s}");
            let parsed = row_from_map(&path, row, &y_domain, "support label")?;
            utility_values[si * ny..(si + 1) * ny].copy_from_slice(&parsed);
        }
        let utility = Factor::new(
            vec![Var::new(table::SIMILARITY, &s_domain), Var::new(table::VOTE, &y_domain)],
            utility_values,
        )
        .map_err(|e| input("utility", payload(&e)))?;

        for k in self.reputation.keys() {
            if d_domain.index_of(k).is_none() {
                return Err(input(format!("reputation.{k}"), format!("unknown message `{k}`")));
            }
        }
        let mut reputation_values = vec![0.0; nd * nd];
        for (b, row) in &self.reputation {
            let bi = d_domain.index_of(b).expect("checked above");
            let path = format!("reputation.{b}");
            let parsed = row_from_map(&path, row, &d_domain, "message")?;
            if parsed[bi] != 0.0 {
                return Err(input(
                    format!("{path}.{b}"),
                    format!(
                        "an accurate publication must cost 0 (the reputation table is \
                         zero on its diagonal), got {}",
                        parsed[bi]
                    ),
                ));
            }
            reputation_values[bi * nd..(bi + 1) * nd].copy_from_slice(&parsed);
        }
        let reputation = Factor::new(
            vec![Var::new(table::PUBLISHED, &d_domain), Var::new(table::OBSERVED, &d_domain)],
            reputation_values,
        )
        .map_err(|e| input("reputation", payload(&e)))?;

        let pundit = self.pundit.unwrap_or_default();
        if let Some(c) = &pundit.context {
            if t_domain.index_of(c).is_none() {
                return Err(input("pundit.context", format!("unknown position `{c}`")));
            }
        }
        if let Some(t) = &pundit.anticipated_voter {
            if t_domain.index_of(t).is_none() {
                return Err(input("pundit.anticipated_voter", format!("unknown position `{t}`")));
            }
        }

        let scenario = Scenario {
            t_domain,
            d_domain,
            s_domain,
            y_domain,
            prior_ti,
            prior_tk,
            prior_tj,
            cpt_d,
            cpt_s,
            utility,
            reputation,
            assumed_ti: pundit.anticipated_voter,
        };
        Ok(FileParts {
            scenario,
            context: pundit.context,
            name: self.name,
            description: self.description,
        })
    }

    /// Serialise a scenario (dense: every entry written, zeros included).
    pub fn from_scenario(
        sc: &Scenario,
        context: Option<&PunditContext>,
        name: Option<&str>,
        description: Option<&str>,
    ) -> Result<ScenarioFile> {
        let nt = sc.t_domain.len();
        let nd = sc.d_domain.len();
        let ns = sc.s_domain.len();
        let ny = sc.y_domain.len();
        for (what, factor, size) in [
            ("message table", &sc.cpt_d, nt * nd),
            ("similarity table", &sc.cpt_s, nt * nt * ns),
            ("utility table", &sc.utility, ns * ny),
            ("reputation table", &sc.reputation, nd * nd),
        ] {
            if factor.values().len() != size {
                return Err(Error::Structural(format!(
                    "{what} has {} entries, expected {size}",
                    factor.values().len()
                )));
            }
        }
        let mut similarity_values = Vec::with_capacity(ns);
        for i in 0..ns {
            similarity_values.push(sc.s_domain.value(i)?);
        }
        let mut support_values = Vec::with_capacity(ny);
        for i in 0..ny {
            support_values.push(sc.y_domain.value(i)?);
        }

        let dist_to_map = |d: &Categorical| -> BTreeMap<String, f64> {
            d.domain()
                .labels()
                .iter()
                .zip(d.probs())
                .map(|(l, &p)| (l.name().to_string(), p))
                .collect()
        };

        let mut message = Rows::new();
        for (t, label) in sc.t_domain.labels().iter().enumerate() {
            let row: BTreeMap<String, f64> = sc
                .d_domain
                .labels()
                .iter()
                .enumerate()
                .map(|(d, m)| (m.name().to_string(), sc.cpt_d.values()[t * nd + d]))
                .collect();
            message.insert(label.name().to_string(), row);
        }

        let mut similarity = BTreeMap::new();
        for (a, la) in sc.t_domain.labels().iter().enumerate() {
            let mut rows = Rows::new();
            for (b, lb) in sc.t_domain.labels().iter().enumerate() {
                let row: BTreeMap<String, f64> = sc
                    .s_domain
                    .labels()
                    .iter()
                    .enumerate()
                    .map(|(s, l)| (l.name().to_string(), sc.cpt_s.values()[(a * nt + b) * ns + s]))
                    .collect();
                rows.insert(lb.name().to_string(), row);
            }
            similarity.insert(la.name().to_string(), rows);
        }

        let mut utility = Rows::new();
        for (s, ls) in sc.s_domain.labels().iter().enumerate() {
            let row: BTreeMap<String, f64> = sc
                .y_domain
                .labels()
                .iter()
                .enumerate()
                .map(|(y, l)| (l.name().to_string(), sc.utility.values()[s * ny + y]))
                .collect();
            utility.insert(ls.name().to_string(), row);
        }

        let mut reputation = Rows::new();
        for (b, lb) in sc.d_domain.labels().iter().enumerate() {
            let row: BTreeMap<String, f64> = sc
                .d_domain
                .labels()
                .iter()
                .enumerate()
                .map(|(c, l)| (l.name().to_string(), sc.reputation.values()[b * nd + c]))
                .collect();
            reputation.insert(lb.name().to_string(), row);
        }

        let context_label = match context {
            Some(PunditContext::Known(label)) => Some(label.clone()),
            Some(PunditContext::Prior) | None => None,
        };
        let pundit = if context_label.is_some() || sc.assumed_ti.is_some() {
            Some(PunditSection { context: context_label, anticipated_voter: sc.assumed_ti.clone() })
        } else {
            None
        };

        Ok(ScenarioFile {
            schema_version: SCHEMA_VERSION,
            name: name.map(str::to_string),
            description: description.map(str::to_string),
            domains: DomainsSection {
                positions: sc.t_domain.names().iter().map(|s| s.to_string()).collect(),
                messages: sc.d_domain.names().iter().map(|s| s.to_string()).collect(),
                similarity: similarity_values,
                support: support_values,
            },
            priors: PriorsSection {
                t_i: dist_to_map(&sc.prior_ti),
                t_k: dist_to_map(&sc.prior_tk),
                t_j: dist_to_map(&sc.prior_tj),
            },
            cpts: CptsSection { message, similarity },
            utility,
            reputation,
            pundit,
        })
    }
}

/// Resolve `--scenario`: a bundled name (`table2`, `anomalous`) or a path.
pub fn load(spec: &str) -> Result<Loaded> {
    let (text, origin): (std::borrow::Cow<'_, str>, String) = match bundled(spec) {
        Some(body) => (body.into(), format!("bundled scenario `{spec}`")),
        None => {
            let body = fs::read_to_string(spec).map_err(|e| {
                input(
                    spec,
                    format!(
                        "cannot read scenario file (bundled names are {}): {e}",
                        bundled_names().join(", ")
                    ),
                )
            })?;
            (body.into(), spec.to_string())
        }
    };
    let file = ScenarioFile::from_json(&text, &origin)?;
    let parts = file.into_parts().map_err(|e| input(&origin, payload(&e)))?;
    Ok(Loaded {
        scenario: parts.scenario,
        context: parts.context,
        name: parts.name,
        description: parts.description,
        origin,
    })
}
