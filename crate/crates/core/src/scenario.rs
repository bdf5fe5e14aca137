//! The shared parameterisation of the voter/pundit models: domains,
//! priors and the four tables every model is built from.

use std::fmt;

use crate::domain::{Categorical, DomainRef};
use crate::factor::{Factor, Var};
use crate::{Error, Result, PROB_TOL, ZERO_MASS};

/// Variable ids used by every model built from a [`Scenario`].
pub mod node {
    /// The voter's target position.
    pub const T_I: &str = "T_i";
    /// The pundit's target position.
    pub const T_J: &str = "T_j";
    /// The candidate's true position.
    pub const T_K: &str = "T_k";
    /// The message a trusting voter observes directly.
    pub const D_K: &str = "D_k";
    /// The candidate's message as privately observed by the pundit.
    pub const C_K: &str = "C_k";
    /// The message the pundit publishes.
    pub const B_K: &str = "B_k";
    /// Similarity of the candidate's position to the voter's target.
    pub const S_IK: &str = "S_ik";
    /// Similarity of the candidate's position to the pundit's target.
    pub const S_JK: &str = "S_jk";
    /// The pundit's reputational cost.
    pub const R_JK: &str = "R_jk";
    /// The voter's vote.
    pub const Y_IK: &str = "Y_ik";
    /// Utility node ids and agent ids.
    pub const U_I: &str = "U_i";
    pub const U_J: &str = "U_j";
    pub const AGENT_VOTER: &str = "i";
    pub const AGENT_PUNDIT: &str = "j";
}

/// Canonical scope ids for the raw tables stored in a [`Scenario`].
pub mod table {
    /// Row variable of the message table (a position).
    pub const POSITION: &str = "position";
    /// Column variable of the message table (a message).
    pub const MESSAGE: &str = "message";
    /// First position argument of the similarity table.
    pub const POSITION_A: &str = "position_a";
    /// Second position argument of the similarity table.
    pub const POSITION_B: &str = "position_b";
    /// Similarity value variable.
    pub const SIMILARITY: &str = "similarity";
    /// Vote variable of the utility table.
    pub const VOTE: &str = "vote";
    /// The message the pundit publishes (reputation table row).
    pub const PUBLISHED: &str = "published";
    /// The message the pundit actually observed (reputation table column).
    pub const OBSERVED: &str = "observed";
}

/// Which of the three models to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    TrustingVoter,
    BiasedPundit,
    SuspiciousVoter,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::TrustingVoter => "trusting-voter",
            ModelKind::BiasedPundit => "biased-pundit",
            ModelKind::SuspiciousVoter => "suspicious-voter",
        })
    }
}

/// What the analysis assumes about the pundit's type: either a known
/// point-mass label or the scenario's `prior_tj`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PunditContext {
    Prior,
    Known(String),
}

impl fmt::Display for PunditContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PunditContext::Prior => f.write_str("prior"),
            PunditContext::Known(label) => write!(f, "known({label})"),
        }
    }
}

/// All data defining one problem instance.
///
/// Tables use the canonical scope ids from [`table`], in these orders:
///
/// * `cpt_d`: `[position, message]` — `P(message | position)`, shared by
///   the trusting voter's observation and the pundit's private message;
/// * `cpt_s`: `[position_a, position_b, similarity]` — symmetric in the
///   two position arguments;
/// * `utility`: `[similarity, vote]` — the voter-side payoff table;
/// * `reputation`: `[published, observed]` — zero on the diagonal and
///   strictly positive off it.
///
/// `assumed_ti`: when set, the pundit anticipates the response of a voter
/// of exactly this type; when `None` it averages over `prior_ti`.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub t_domain: DomainRef,
    pub d_domain: DomainRef,
    pub s_domain: DomainRef,
    pub y_domain: DomainRef,
    pub prior_ti: Categorical,
    pub prior_tk: Categorical,
    pub prior_tj: Categorical,
    pub cpt_d: Factor,
    pub cpt_s: Factor,
    pub utility: Factor,
    pub reputation: Factor,
    pub assumed_ti: Option<String>,
}

impl Scenario {
    /// Collect every invariant violation, each prefixed with the path of
    /// the offending field.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nt = self.t_domain.len();
        let nd = self.d_domain.len();
        let ns = self.s_domain.len();
        let ny = self.y_domain.len();

        let ids = [self.t_domain.id(), self.d_domain.id(), self.s_domain.id(), self.y_domain.id()];
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                if a == b {
                    out.push(format!("domains: id `{a}` is used by two domains"));
                }
            }
        }
        if !self.s_domain.is_ordered_numeric() {
            out.push("domains.similarity: must be ordered numeric".into());
        }
        if !self.y_domain.is_ordered_numeric() {
            out.push("domains.support: must be ordered numeric".into());
        }

        for (name, prior) in [
            ("priors.t_i", &self.prior_ti),
            ("priors.t_k", &self.prior_tk),
            ("priors.t_j", &self.prior_tj),
        ] {
            if prior.domain() != &self.t_domain {
                out.push(format!("{name}: not a distribution over the position domain"));
            }
        }

        let check_scope = |f: &Factor, expect: &[(&str, &DomainRef)]| -> Option<String> {
            if f.scope().len() != expect.len() {
                return Some(format!(
                    "scope has {} variables, expected {}",
                    f.scope().len(),
                    expect.len()
                ));
            }
            for (v, (id, dom)) in f.scope().iter().zip(expect) {
                if v.id() != *id {
                    return Some(format!("scope variable `{}`, expected `{id}`", v.id()));
                }
                if v.domain() != *dom {
                    return Some(format!("scope variable `{id}` has the wrong domain"));
                }
            }
            None
        };

        if let Some(p) = check_scope(
            &self.cpt_d,
            &[(table::POSITION, &self.t_domain), (table::MESSAGE, &self.d_domain)],
        ) {
            out.push(format!("cpts.message: {p}"));
        } else {
            for t in 0..nt {
                let row = &self.cpt_d.values()[t * nd..(t + 1) * nd];
                let total: f64 = row.iter().sum();
                if (total - 1.0).abs() > PROB_TOL {
                    out.push(format!(
                        "cpts.message.{}: row sums to {total}, expected 1",
                        self.t_domain.label(t).name()
                    ));
                }
                for (d, v) in row.iter().enumerate() {
                    if *v < -ZERO_MASS {
                        out.push(format!(
                            "cpts.message.{}.{}: negative probability {v}",
                            self.t_domain.label(t).name(),
                            self.d_domain.label(d).name()
                        ));
                    }
                }
            }
        }

        if let Some(p) = check_scope(
            &self.cpt_s,
            &[
                (table::POSITION_A, &self.t_domain),
                (table::POSITION_B, &self.t_domain),
                (table::SIMILARITY, &self.s_domain),
            ],
        ) {
            out.push(format!("cpts.similarity: {p}"));
        } else {
            for a in 0..nt {
                for b in 0..nt {
                    let row = &self.cpt_s.values()[(a * nt + b) * ns..(a * nt + b + 1) * ns];
                    let total: f64 = row.iter().sum();
                    if (total - 1.0).abs() > PROB_TOL {
                        out.push(format!(
                            "cpts.similarity.{}.{}: row sums to {total}, expected 1",
                            self.t_domain.label(a).name(),
                            self.t_domain.label(b).name()
                        ));
                    }
                    for (s, v) in row.iter().enumerate() {
                        if *v < -ZERO_MASS {
                            out.push(format!(
                                "cpts.similarity.{}.{}.{}: negative probability {v}",
                                self.t_domain.label(a).name(),
                                self.t_domain.label(b).name(),
                                self.s_domain.label(s).name()
                            ));
                        }
                        let mirrored = self.cpt_s.values()[(b * nt + a) * ns + s];
                        if (*v - mirrored).abs() > PROB_TOL {
                            out.push(format!(
                                "cpts.similarity.{}.{}.{}: not symmetric ({v} vs {mirrored})",
                                self.t_domain.label(a).name(),
                                self.t_domain.label(b).name(),
                                self.s_domain.label(s).name()
                            ));
                        }
                    }
                }
            }
        }

        if let Some(p) = check_scope(
            &self.utility,
            &[(table::SIMILARITY, &self.s_domain), (table::VOTE, &self.y_domain)],
        ) {
            out.push(format!("utility: {p}"));
        }
        debug_assert!(ny > 0);

        if let Some(p) = check_scope(
            &self.reputation,
            &[(table::PUBLISHED, &self.d_domain), (table::OBSERVED, &self.d_domain)],
        ) {
            out.push(format!("reputation: {p}"));
        } else {
            for b in 0..nd {
                for c in 0..nd {
                    let v = self.reputation.values()[b * nd + c];
                    if b == c && v.abs() > ZERO_MASS {
                        out.push(format!(
                            "reputation.{}.{}: accurate publication must cost 0, got {v}",
                            self.d_domain.label(b).name(),
                            self.d_domain.label(c).name()
                        ));
                    }
                    if b != c && v <= 0.0 {
                        out.push(format!(
                            "reputation.{}.{}: deceptive publication must cost > 0, got {v}",
                            self.d_domain.label(b).name(),
                            self.d_domain.label(c).name()
                        ));
                    }
                }
            }
        }

        if let Some(l) = &self.assumed_ti {
            if self.t_domain.index_of(l).is_none() {
                out.push(format!("pundit.assumed_ti: label `{l}` is not in the position domain"));
            }
        }

        out
    }

    /// Error with all invariant violations, or `Ok` when clean.
    pub fn validate(&self) -> Result<()> {
        let problems = self.problems();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Specification(problems.join("; ")))
        }
    }

    // -- raw-index accessors used by the closed-form model operations --

    pub(crate) fn cpt_d_at(&self, t: usize, d: usize) -> f64 {
        self.cpt_d.values()[t * self.d_domain.len() + d]
    }

    pub(crate) fn cpt_s_at(&self, a: usize, b: usize, s: usize) -> f64 {
        let nt = self.t_domain.len();
        let ns = self.s_domain.len();
        self.cpt_s.values()[(a * nt + b) * ns + s]
    }

    pub(crate) fn utility_at(&self, s: usize, y: usize) -> f64 {
        self.utility.values()[s * self.y_domain.len() + y]
    }

    pub(crate) fn reputation_at(&self, b: usize, c: usize) -> f64 {
        self.reputation.values()[b * self.d_domain.len() + c]
    }

    // -- factor builders used when assembling influence diagrams --

    /// `P(message | position)` as a factor over caller-chosen variable ids.
    pub(crate) fn cpt_d_factor(&self, t_var: &str, d_var: &str) -> Factor {
        Factor::new(
            vec![Var::new(t_var, &self.t_domain), Var::new(d_var, &self.d_domain)],
            self.cpt_d.values().to_vec(),
        )
        .expect("validated table")
    }

    /// `P(similarity | position_a, position_b)` over caller-chosen ids.
    pub(crate) fn cpt_s_factor(&self, a_var: &str, b_var: &str, s_var: &str) -> Factor {
        Factor::new(
            vec![
                Var::new(a_var, &self.t_domain),
                Var::new(b_var, &self.t_domain),
                Var::new(s_var, &self.s_domain),
            ],
            self.cpt_s.values().to_vec(),
        )
        .expect("validated table")
    }

    /// The voter-side utility table over caller-chosen ids.
    pub(crate) fn utility_factor(&self, s_var: &str, y_var: &str) -> Factor {
        Factor::new(
            vec![Var::new(s_var, &self.s_domain), Var::new(y_var, &self.y_domain)],
            self.utility.values().to_vec(),
        )
        .expect("validated table")
    }

    /// A prior as a single-variable factor.
    pub(crate) fn prior_factor(prior: &Categorical, var_id: &str) -> Factor {
        Factor::new(vec![Var::new(var_id, prior.domain())], prior.probs().to_vec())
            .expect("validated prior")
    }
}
