//! Machine checks for the structural claims about the three models.
//!
//! Each verifier returns a [`VerificationReport`] rather than a bare
//! boolean: the verdict distinguishes *Verified*, *Violated* (with a
//! concrete witness) and *Inapplicable* (a premise of the claim does not
//! hold for the given inputs), and every relevant numeric quantity is
//! reported as a named margin so callers can display or re-check it.
//!
//! Claim identifiers are short stable tokens shared with the command line.

use std::fmt;

use crate::classify::{check_monotone_policy, classify_information, InfoKind};
use crate::domain::Categorical;
use crate::factor::Assignment;
use crate::models::{
    expected_utility, message_marginal_raw, posterior_tk_raw, prior_vote_dist,
    pundit_choice_indices, pundit_marginal, suspicious_posterior_tk, trusting_policy,
    vote_dist_suspicious, vote_dist_trusting,
};
use crate::scenario::{node, PunditContext, Scenario};
use crate::{Error, Result, PROB_TOL, ZERO_MASS};

/// Stable claim identifiers, also used as command-line tokens.
pub mod claim {
    /// Strictly directional messages move expected support the same way.
    pub const DIRECTIONAL_INFO: &str = "thm1";
    /// Mixtures of strictly negative messages cannot raise expected support.
    pub const NEGATIVE_MIXTURE: &str = "cor";
    /// A constant publication marginal makes publications uninformative.
    pub const UNINFORMATIVE: &str = "prop1";
    /// The pundit-aware posterior decomposes as a face-value/prior mixture.
    pub const POSTERIOR_MIXTURE: &str = "prop2";
    /// An aligned pundit's publication never hurts the voter it plans for.
    pub const ALIGNED_NO_HARM: &str = "prop3";
    /// A publication can depress face-value support yet boost aware support.
    pub const ANOMALOUS_UPDATE: &str = "thm2";
}

/// Outcome of one claim check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    /// Premises held and the claimed inequality/identity was observed.
    Verified,
    /// Premises held but the claim failed; the report carries a witness.
    Violated,
    /// A premise of the claim does not hold for these inputs.
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "Verified",
            Verdict::Violated => "Violated",
            Verdict::Inapplicable => "Inapplicable",
        })
    }
}

/// A named numeric quantity computed while checking a claim.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Margin {
    pub name: String,
    pub value: f64,
}

/// The full result of checking one claim on one set of inputs.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub verdict: Verdict,
    pub margins: Vec<Margin>,
    pub witness: Option<Assignment>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(claim: &str) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            verdict: Verdict::Inapplicable,
            margins: Vec::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    fn push_margin(&mut self, name: impl Into<String>, value: f64) {
        self.margins.push(Margin { name: name.into(), value });
    }

    fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }

    /// Look up a margin by name.
    pub fn margin(&self, name: &str) -> Option<f64> {
        self.margins.iter().find(|m| m.name == name).map(|m| m.value)
    }
}

/// Expected-support drop/raise check for one strictly directional message.
///
/// Premises: the vote policy is monotone in similarity and the message
/// classifies strictly negative (or, mirrored, strictly positive) for the
/// voter.  Verified when conditional expected support moves weakly in the
/// direction of the classification.  The reported `strictness` margin is
/// the sum over matched transfers of `delta * (vote(upper) - vote(lower))`;
/// it equals the absolute change in expected support and is zero exactly
/// when the policy does not separate any matched pair.
pub fn verify_directional_info(sc: &Scenario, t_i: &str, d: &str) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim::DIRECTIONAL_INFO);
    let policy = trusting_policy(sc)?;
    let monotone = check_monotone_policy(&policy)?;
    let cls = match classify_information(sc, t_i, d) {
        Ok(cls) => cls,
        Err(err) if err.is_zero_evidence() => {
            report.note(format!("premise unmet: {err}"));
            return Ok(report);
        }
        Err(err) => return Err(err),
    };
    if !monotone {
        report.note("premise unmet: the vote policy is not monotone in similarity");
        return Ok(report);
    }
    match cls.kind {
        InfoKind::Neutral | InfoKind::Mixed => {
            report.note(format!("premise unmet: message `{d}` classifies {}", cls.kind));
            return Ok(report);
        }
        InfoKind::StrictlyNegative | InfoKind::StrictlyPositive => {}
    }
    let e_prior = prior_vote_dist(sc, t_i)?.expectation()?;
    let e_given = vote_dist_trusting(sc, t_i, d)?.expectation()?;
    report.push_margin("expected_support_prior", e_prior);
    report.push_margin("expected_support_given", e_given);
    let vote_values: Vec<f64> =
        policy.choices().iter().map(|&c| sc.y_domain.value(c)).collect::<Result<_>>()?;
    let strictness: f64 = cls
        .triples
        .iter()
        .map(|t| {
            let lo = sc.s_domain.index_of(t.lower.name()).expect("triple label");
            let hi = sc.s_domain.index_of(t.upper.name()).expect("triple label");
            t.delta * (vote_values[hi] - vote_values[lo])
        })
        .sum();
    report.push_margin("strictness", strictness);
    let holds = match cls.kind {
        InfoKind::StrictlyNegative => e_given <= e_prior + PROB_TOL,
        InfoKind::StrictlyPositive => {
            report.note("mirrored direction: the message is strictly positive");
            e_given >= e_prior - PROB_TOL
        }
        _ => unreachable!("strict kinds only"),
    };
    if holds {
        report.verdict = Verdict::Verified;
    } else {
        report.verdict = Verdict::Violated;
        report.witness = Some(Assignment::new().bind(node::T_I, t_i).bind(node::D_K, d));
    }
    Ok(report)
}

/// Mixture version of the directional check: a normalized mixture `h` of
/// strictly negative messages cannot raise expected support.
pub fn verify_negative_mixture(
    sc: &Scenario,
    t_i: &str,
    h: &Categorical,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim::NEGATIVE_MIXTURE);
    sc.validate()?;
    if h.domain() != &sc.d_domain {
        return Err(Error::Input(format!(
            "mixture is over domain `{}`, expected the message domain `{}`",
            h.domain().id(),
            sc.d_domain.id()
        )));
    }
    let policy = trusting_policy(sc)?;
    if !check_monotone_policy(&policy)? {
        report.note("premise unmet: the vote policy is not monotone in similarity");
        return Ok(report);
    }
    let support: Vec<usize> = (0..h.probs().len()).filter(|&i| h.probs()[i] > ZERO_MASS).collect();
    if support.is_empty() {
        report.note("premise unmet: the mixture has empty support");
        return Ok(report);
    }
    let vote_values: Vec<f64> =
        policy.choices().iter().map(|&c| sc.y_domain.value(c)).collect::<Result<_>>()?;
    let mut strictness = 0.0;
    let mut e_mixture = 0.0;
    for &b in &support {
        let name = sc.d_domain.label(b).name().to_string();
        let cls = match classify_information(sc, t_i, &name) {
            Ok(cls) => cls,
            Err(err) if err.is_zero_evidence() => {
                report.note(format!("premise unmet: {err}"));
                return Ok(report);
            }
            Err(err) => return Err(err),
        };
        if cls.kind != InfoKind::StrictlyNegative {
            report.note(format!("premise unmet: support point `{name}` classifies {}", cls.kind));
            return Ok(report);
        }
        let strictness_b: f64 = cls
            .triples
            .iter()
            .map(|t| {
                let lo = sc.s_domain.index_of(t.lower.name()).expect("triple label");
                let hi = sc.s_domain.index_of(t.upper.name()).expect("triple label");
                t.delta * (vote_values[hi] - vote_values[lo])
            })
            .sum();
        strictness += h.probs()[b] * strictness_b;
        e_mixture += h.probs()[b] * vote_dist_trusting(sc, t_i, &name)?.expectation()?;
    }
    let e_prior = prior_vote_dist(sc, t_i)?.expectation()?;
    report.push_margin("expected_support_prior", e_prior);
    report.push_margin("expected_support_mixture", e_mixture);
    report.push_margin("strictness", strictness);
    if e_mixture <= e_prior + PROB_TOL {
        report.verdict = Verdict::Verified;
    } else {
        report.verdict = Verdict::Violated;
        report.witness = Some(Assignment::new().bind(node::T_I, t_i));
        report.note(format!(
            "mixture support: {}",
            support.iter().map(|&b| sc.d_domain.label(b).name()).collect::<Vec<_>>().join(", ")
        ));
    }
    Ok(report)
}

/// When the publication marginal is one constant, publications carry no
/// information: the pundit-aware posterior equals the prior for every
/// reachable publication.
pub fn verify_uninformative_publications(
    sc: &Scenario,
    ctx: &PunditContext,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim::UNINFORMATIVE);
    let marginal = pundit_marginal(sc, ctx)?;
    let values = marginal.values();
    let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - values.iter().cloned().fold(f64::INFINITY, f64::min);
    report.push_margin("marginal_spread", spread);
    if spread > PROB_TOL {
        report.note("premise unmet: the publication marginal is not constant");
        return Ok(report);
    }
    let nd = sc.d_domain.len();
    let messages = message_marginal_raw(sc);
    let mut max_distance = 0.0_f64;
    let mut worst: Option<usize> = None;
    for b in 0..nd {
        let name = sc.d_domain.label(b).name().to_string();
        let reach: f64 = (0..nd).map(|c| messages[c] * values[c * nd + b]).sum();
        if reach <= ZERO_MASS {
            report.note(format!("skipped unreachable publication `{name}`"));
            continue;
        }
        let sp = suspicious_posterior_tk(sc, ctx, &name)?;
        let distance = sp.posterior.sup_distance(&sc.prior_tk)?;
        report.push_margin(format!("posterior_distance_{name}"), distance);
        if worst.is_none() || distance > max_distance {
            max_distance = distance;
            worst = Some(b);
        }
    }
    report.push_margin("max_posterior_distance", max_distance);
    if max_distance <= PROB_TOL {
        report.verdict = Verdict::Verified;
    } else {
        report.verdict = Verdict::Violated;
        report.witness = Some(
            Assignment::new()
                .bind(node::B_K, sc.d_domain.label(worst.expect("violating publication")).name()),
        );
    }
    Ok(report)
}

/// Mixture decomposition of the pundit-aware posterior.
///
/// Premises: the marginal's diagonal is one constant `alpha` and its
/// off-diagonal entries are mutually equal.  For each publication that is
/// reachable both as a candidate message and as a publication, the residual
/// `|aware_posterior - (alpha * face_value_posterior + (1-alpha) * prior)|`
/// (sup norm) is reported; the residual magnitude is informative on its own
/// because the identity is exact only in special regimes (`alpha = 1`, or a
/// fully constant marginal, where it reduces to the no-information case).
pub fn verify_posterior_mixture(sc: &Scenario, ctx: &PunditContext) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim::POSTERIOR_MIXTURE);
    let marginal = pundit_marginal(sc, ctx)?;
    let values = marginal.values();
    let nd = sc.d_domain.len();
    let mut diag = Vec::with_capacity(nd);
    let mut off = Vec::new();
    for c in 0..nd {
        for b in 0..nd {
            if b == c {
                diag.push(values[c * nd + b]);
            } else {
                off.push(values[c * nd + b]);
            }
        }
    }
    let spread = |xs: &[f64]| -> f64 {
        if xs.is_empty() {
            0.0
        } else {
            xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - xs.iter().cloned().fold(f64::INFINITY, f64::min)
        }
    };
    let diag_spread = spread(&diag);
    let off_spread = spread(&off);
    report.push_margin("diagonal_spread", diag_spread);
    report.push_margin("offdiagonal_spread", off_spread);
    if diag_spread > PROB_TOL || off_spread > PROB_TOL {
        report.note("premise unmet: accuracy is not constant across observed messages");
        return Ok(report);
    }
    let alpha = diag[0];
    report.push_margin("alpha", alpha);
    let nt = sc.t_domain.len();
    let mut evaluated = 0usize;
    let mut max_residual = 0.0_f64;
    let mut worst: Option<usize> = None;
    for b in 0..nd {
        let name = sc.d_domain.label(b).name().to_string();
        let face_value = match posterior_tk_raw(sc, b) {
            Ok(post) => post,
            Err(err) if err.is_zero_evidence() => {
                report.note(format!("skipped `{name}`: unreachable as a candidate message"));
                continue;
            }
            Err(err) => return Err(err),
        };
        let aware = match suspicious_posterior_tk(sc, ctx, &name) {
            Ok(sp) => sp.posterior,
            Err(err) if err.is_zero_evidence() => {
                report.note(format!("skipped `{name}`: unreachable as a publication"));
                continue;
            }
            Err(err) => return Err(err),
        };
        let residual = (0..nt)
            .map(|t| {
                let mixed = alpha * face_value[t] + (1.0 - alpha) * sc.prior_tk.probs()[t];
                (aware.probs()[t] - mixed).abs()
            })
            .fold(0.0, f64::max);
        report.push_margin(format!("residual_{name}"), residual);
        if worst.is_none() || residual > max_residual {
            max_residual = residual;
            worst = Some(b);
        }
        evaluated += 1;
    }
    if evaluated == 0 {
        report.note("premise unmet: no publication is evaluable");
        return Ok(report);
    }
    report.push_margin("max_residual", max_residual);
    if max_residual <= PROB_TOL {
        report.verdict = Verdict::Verified;
    } else {
        report.verdict = Verdict::Violated;
        report.witness = Some(
            Assignment::new()
                .bind(node::B_K, sc.d_domain.label(worst.expect("worst publication")).name()),
        );
    }
    Ok(report)
}

/// With fully aligned preferences (voter, pundit and anticipated voter all
/// at position `t`), the pundit's chosen publication gives the voter at
/// least the expected utility of seeing the observed message directly.
pub fn verify_aligned_no_harm(sc: &Scenario, t: &str) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim::ALIGNED_NO_HARM);
    sc.validate()?;
    sc.t_domain.require_index(t)?;
    let mut aligned = sc.clone();
    aligned.assumed_ti = Some(t.to_string());
    let choices = pundit_choice_indices(&aligned)?;
    let messages = message_marginal_raw(&aligned);
    let t_idx = aligned.t_domain.require_index(t)?;
    let nt = aligned.t_domain.len();
    let mut min_margin = f64::INFINITY;
    let mut worst: Option<(usize, usize)> = None;
    for c in 0..aligned.d_domain.len() {
        let c_name = aligned.d_domain.label(c).name().to_string();
        if messages[c] <= ZERO_MASS {
            report.note(format!("skipped unreachable message `{c_name}`"));
            continue;
        }
        let b_star = choices[c * nt + t_idx];
        let b_name = aligned.d_domain.label(b_star).name().to_string();
        let eu_choice = expected_utility(&aligned, t, &b_name, &c_name, t)?;
        let eu_truthful = expected_utility(&aligned, t, &c_name, &c_name, t)?;
        let margin = eu_choice - eu_truthful;
        report.push_margin(format!("margin_{c_name}"), margin);
        if margin < min_margin {
            min_margin = margin;
            worst = Some((c, b_star));
        }
    }
    let Some((worst_c, worst_b)) = worst else {
        report.note("premise unmet: no message is reachable");
        return Ok(report);
    };
    report.push_margin("min_margin", min_margin);
    if min_margin >= -PROB_TOL {
        report.verdict = Verdict::Verified;
    } else {
        report.verdict = Verdict::Violated;
        report.witness = Some(
            Assignment::new()
                .bind(node::C_K, sc.d_domain.label(worst_c).name())
                .bind(node::B_K, sc.d_domain.label(worst_b).name()),
        );
    }
    Ok(report)
}

/// Anomalous-update check for one publication: expected support must drop
/// for the face-value voter yet rise for the pundit-aware voter, both
/// relative to their (identical) prior expected support.
///
/// The publication must be reachable under the pundit model; a publication
/// that is not even a possible candidate message makes the face-value
/// conditional undefined, which is reported as Inapplicable.
pub fn verify_anomalous(
    sc: &Scenario,
    ctx: &PunditContext,
    t_i: &str,
    b: &str,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim::ANOMALOUS_UPDATE);
    let e_sv_given = vote_dist_suspicious(sc, ctx, t_i, b)?.expectation()?;
    let e_prior = prior_vote_dist(sc, t_i)?.expectation()?;
    report.push_margin("expected_support_trusting_prior", e_prior);
    report.push_margin("expected_support_suspicious_prior", e_prior);
    let e_tv_given = match vote_dist_trusting(sc, t_i, b) {
        Ok(votes) => votes.expectation()?,
        Err(err) if err.is_zero_evidence() => {
            report.note(format!(
                "premise unmet: `{b}` is not a possible candidate message, so the \
                 face-value conditional support is undefined"
            ));
            return Ok(report);
        }
        Err(err) => return Err(err),
    };
    report.push_margin("expected_support_trusting_given", e_tv_given);
    report.push_margin("expected_support_suspicious_given", e_sv_given);
    let trusting_drop = e_prior - e_tv_given;
    let suspicious_gain = e_sv_given - e_prior;
    report.push_margin("trusting_drop", trusting_drop);
    report.push_margin("suspicious_gain", suspicious_gain);
    if trusting_drop > PROB_TOL && suspicious_gain > PROB_TOL {
        report.verdict = Verdict::Verified;
    } else {
        report.verdict = Verdict::Violated;
        report.witness = Some(Assignment::new().bind(node::T_I, t_i).bind(node::B_K, b));
        if trusting_drop <= PROB_TOL {
            report.note("face-value expected support does not drop");
        }
        if suspicious_gain <= PROB_TOL {
            report.note("pundit-aware expected support does not rise");
        }
    }
    Ok(report)
}
