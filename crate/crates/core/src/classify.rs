//! Classifying how a message shifts a voter's similarity belief.
//!
//! A message is *strictly negative* for a voter when the probability change
//! it induces on the voter's similarity distribution can be decomposed into
//! pure downward transfers: every label that gains mass is paired with a
//! distinct higher-valued label that loses the same mass.  *Strictly
//! positive* is the mirror image.  Changes that decompose neither way are
//! *mixed*; the absence of change is *neutral*.

use std::fmt;

use crate::domain::{Categorical, DomainRef, Label};
use crate::maid::PolicyTable;
use crate::models::{point_weights, posterior_tk_raw, s_dist_raw};
use crate::scenario::Scenario;
use crate::{Error, Result, PROB_TOL};

/// Direction of the belief shift a message induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum InfoKind {
    StrictlyNegative,
    StrictlyPositive,
    Neutral,
    Mixed,
}

impl fmt::Display for InfoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfoKind::StrictlyNegative => "strictly-negative",
            InfoKind::StrictlyPositive => "strictly-positive",
            InfoKind::Neutral => "neutral",
            InfoKind::Mixed => "mixed",
        })
    }
}

/// One matched probability transfer between two similarity labels.
///
/// `lower.value < upper.value` and `delta > 0` always hold; for a strictly
/// negative shift `delta` moved from `upper` down to `lower`, for a strictly
/// positive one it moved from `lower` up to `upper`.
#[derive(Debug, Clone)]
pub struct MassShift {
    pub lower: Label,
    pub upper: Label,
    pub delta: f64,
}

/// Full classification of one message for one voter.
#[derive(Debug, Clone)]
pub struct InfoClassification {
    pub kind: InfoKind,
    /// Matched transfers; non-empty only for the two strict kinds.
    pub triples: Vec<MassShift>,
    /// Similarity distribution before the message.
    pub base: Categorical,
    /// Similarity distribution after the message.
    pub conditional: Categorical,
    /// Per-label change, `conditional - base`, in domain order.
    pub deltas: Vec<f64>,
}

/// The fixed inputs of one matching search: who gained, who lost, by how
/// much, at which domain values, and which way the transfers must point.
struct Matching<'a> {
    gainers: &'a [usize],
    losers: &'a [usize],
    deltas: &'a [f64],
    values: &'a [f64],
    downward: bool,
}

impl Matching<'_> {
    /// Backtracking step: pair gainer `i` with every unused loser of equal
    /// magnitude and the right ordering, then recurse on the rest.
    fn go(&self, i: usize, used: &mut [bool], pairs: &mut Vec<(usize, usize)>) -> bool {
        if i == self.gainers.len() {
            return true;
        }
        let g = self.gainers[i];
        for (j, &l) in self.losers.iter().enumerate() {
            if used[j] || (self.deltas[g] + self.deltas[l]).abs() > PROB_TOL {
                continue;
            }
            let ordered = if self.downward {
                self.values[g] < self.values[l]
            } else {
                self.values[g] > self.values[l]
            };
            if !ordered {
                continue;
            }
            used[j] = true;
            pairs.push((g, l));
            if self.go(i + 1, used, pairs) {
                return true;
            }
            used[j] = false;
            pairs.pop();
        }
        false
    }
}

/// Exhaustive backtracking search for a perfect matching of gainers to
/// losers with equal magnitudes and the requested value ordering.
fn match_transfers(
    gainers: &[usize],
    losers: &[usize],
    deltas: &[f64],
    values: &[f64],
    downward: bool,
) -> Option<Vec<(usize, usize)>> {
    if gainers.len() != losers.len() {
        return None;
    }
    let matching = Matching { gainers, losers, deltas, values, downward };
    let mut used = vec![false; losers.len()];
    let mut pairs = Vec::with_capacity(gainers.len());
    matching.go(0, &mut used, &mut pairs).then_some(pairs)
}

/// Classify a raw per-label probability change over an ordered numeric
/// domain.  `deltas[i]` is the (after − before) mass at label `i`.
pub fn classify_deltas(domain: &DomainRef, deltas: &[f64]) -> Result<(InfoKind, Vec<MassShift>)> {
    if !domain.is_ordered_numeric() {
        return Err(Error::Input(format!(
            "classification needs an ordered numeric domain, `{}` is not",
            domain.id()
        )));
    }
    if deltas.len() != domain.len() {
        return Err(Error::Input(format!(
            "got {} deltas for the {} labels of `{}`",
            deltas.len(),
            domain.len(),
            domain.id()
        )));
    }
    let values: Vec<f64> =
        (0..domain.len()).map(|i| domain.value(i).expect("ordered numeric domain")).collect();
    let gainers: Vec<usize> = (0..deltas.len()).filter(|&i| deltas[i] > PROB_TOL).collect();
    let losers: Vec<usize> = (0..deltas.len()).filter(|&i| deltas[i] < -PROB_TOL).collect();
    if gainers.is_empty() && losers.is_empty() {
        return Ok((InfoKind::Neutral, Vec::new()));
    }
    if let Some(pairs) = match_transfers(&gainers, &losers, deltas, &values, true) {
        let triples = pairs
            .into_iter()
            .map(|(g, l)| MassShift {
                lower: domain.label(g).clone(),
                upper: domain.label(l).clone(),
                delta: deltas[g],
            })
            .collect();
        return Ok((InfoKind::StrictlyNegative, triples));
    }
    if let Some(pairs) = match_transfers(&gainers, &losers, deltas, &values, false) {
        let triples = pairs
            .into_iter()
            .map(|(g, l)| MassShift {
                lower: domain.label(l).clone(),
                upper: domain.label(g).clone(),
                delta: deltas[g],
            })
            .collect();
        return Ok((InfoKind::StrictlyPositive, triples));
    }
    Ok((InfoKind::Mixed, Vec::new()))
}

/// Classify message `d` for a voter at position `t_i`: how does observing
/// the message move the voter's belief about similarity to the candidate?
pub fn classify_information(sc: &Scenario, t_i: &str, d: &str) -> Result<InfoClassification> {
    sc.validate()?;
    let ti = sc.t_domain.require_index(t_i)?;
    let d_idx = sc.d_domain.require_index(d)?;
    let vantage = point_weights(sc.t_domain.len(), ti);
    let base_raw = s_dist_raw(sc, &vantage, sc.prior_tk.probs());
    let post = posterior_tk_raw(sc, d_idx)?;
    let cond_raw = s_dist_raw(sc, &vantage, &post);
    let deltas: Vec<f64> = cond_raw.iter().zip(&base_raw).map(|(c, b)| c - b).collect();
    let (kind, triples) = classify_deltas(&sc.s_domain, &deltas)?;
    Ok(InfoClassification {
        kind,
        triples,
        base: Categorical::new(sc.s_domain.clone(), base_raw)?,
        conditional: Categorical::new(sc.s_domain.clone(), cond_raw)?,
        deltas,
    })
}

/// True iff the policy's chosen value never decreases as the (single,
/// ordered numeric) information variable increases.
pub fn check_monotone_policy(policy: &PolicyTable) -> Result<bool> {
    if policy.info().len() != 1 || !policy.info()[0].domain().is_ordered_numeric() {
        return Err(Error::Input(
            "monotonicity is defined for policies over a single ordered numeric \
             information variable"
                .into(),
        ));
    }
    let decision_domain = policy.decision().domain().clone();
    if !decision_domain.is_ordered_numeric() {
        return Err(Error::Input(format!(
            "monotonicity needs an ordered numeric decision domain, `{}` is not",
            decision_domain.id()
        )));
    }
    let mut prev = f64::NEG_INFINITY;
    for &choice in policy.choices() {
        let value = decision_domain.value(choice)?;
        if value < prev {
            return Ok(false);
        }
        prev = value;
    }
    Ok(true)
}
