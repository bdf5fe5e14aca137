//! Closed-form operations for the three opinion models, plus builders that
//! assemble each model as an influence diagram.
//!
//! The closed forms are written against raw table indices so they stay
//! independent of the factor-algebra layer; integration tests cross-check
//! both paths against each other on the same scenarios.
//!
//! Conventions shared by every operation:
//!
//! * the scenario is validated up front, so the closed forms may assume
//!   well-formed tables;
//! * conditioning on a zero-probability message yields a zero-evidence
//!   error, except where an explicit prior fallback is documented (the
//!   pundit reasons about *hypothetical* publications, including ones the
//!   candidate would never send, so its anticipation falls back to the
//!   prior when a message has zero marginal probability);
//! * ties in any argmax resolve to the first (lowest-index) label.

use crate::domain::{Categorical, Domain};
use crate::factor::{Factor, Var};
use crate::maid::{ChanceNode, DecisionNode, Maid, PolicyTable, UtilityNode};
use crate::scenario::{node, ModelKind, PunditContext, Scenario};
use crate::{Error, Result, ZERO_MASS};

// ---------------------------------------------------------------------------
// internal raw-index helpers (callers have already validated the scenario)
// ---------------------------------------------------------------------------

/// Per-similarity vote choice: `argmax_y f_U(s, y)`, ties to the first label.
fn vote_choice_indices(sc: &Scenario) -> Vec<usize> {
    let (ns, ny) = (sc.s_domain.len(), sc.y_domain.len());
    (0..ns)
        .map(|s| {
            let mut best = 0;
            let mut best_u = f64::NEG_INFINITY;
            for y in 0..ny {
                let u = sc.utility_at(s, y);
                if u > best_u {
                    best_u = u;
                    best = y;
                }
            }
            best
        })
        .collect()
}

/// Marginal message distribution `P(D) = sum_t P(t) P(D|t)`.
pub(crate) fn message_marginal_raw(sc: &Scenario) -> Vec<f64> {
    let (nt, nd) = (sc.t_domain.len(), sc.d_domain.len());
    let mut out = vec![0.0; nd];
    for t in 0..nt {
        let w = sc.prior_tk.probs()[t];
        for (d, o) in out.iter_mut().enumerate() {
            *o += w * sc.cpt_d_at(t, d);
        }
    }
    out
}

/// Candidate-position posterior after one message, or a zero-evidence error.
pub(crate) fn posterior_tk_raw(sc: &Scenario, d: usize) -> Result<Vec<f64>> {
    let nt = sc.t_domain.len();
    let joint: Vec<f64> = (0..nt).map(|t| sc.prior_tk.probs()[t] * sc.cpt_d_at(t, d)).collect();
    let total: f64 = joint.iter().sum();
    if total <= ZERO_MASS {
        return Err(Error::ZeroEvidence(format!(
            "message `{}` has marginal probability {total} under the candidate prior",
            sc.d_domain.label(d).name()
        )));
    }
    Ok(joint.into_iter().map(|v| v / total).collect())
}

/// Candidate-position posterior, falling back to the prior when the message
/// is unreachable (used when reasoning about hypothetical publications).
fn posterior_tk_or_prior_raw(sc: &Scenario, d: usize) -> Vec<f64> {
    posterior_tk_raw(sc, d).unwrap_or_else(|_| sc.prior_tk.probs().to_vec())
}

/// Similarity distribution seen from a mixed vantage point:
/// `P(s) = sum_{a,b} w_a tk_b P(s | a, b)`.
pub(crate) fn s_dist_raw(sc: &Scenario, vantage: &[f64], tk: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; sc.s_domain.len()];
    for (a, &va) in vantage.iter().enumerate() {
        if va == 0.0 {
            continue;
        }
        for (b, &tb) in tk.iter().enumerate() {
            let w = va * tb;
            if w == 0.0 {
                continue;
            }
            for (s, o) in out.iter_mut().enumerate() {
                *o += w * sc.cpt_s_at(a, b, s);
            }
        }
    }
    out
}

/// Point-mass weight vector over the position domain.
pub(crate) fn point_weights(n: usize, idx: usize) -> Vec<f64> {
    let mut w = vec![0.0; n];
    w[idx] = 1.0;
    w
}

/// Push a similarity distribution through the face-value vote policy.
fn vote_from_s_raw(sc: &Scenario, sd: &[f64]) -> Vec<f64> {
    let choices = vote_choice_indices(sc);
    let mut out = vec![0.0; sc.y_domain.len()];
    for (s, &p) in sd.iter().enumerate() {
        out[choices[s]] += p;
    }
    out
}

/// Vote distribution of a face-value voter at `t_i` reacting to message `d`,
/// with the documented prior fallback for unreachable messages.
pub(crate) fn response_raw(sc: &Scenario, ti: usize, d: usize) -> Vec<f64> {
    let tk = posterior_tk_or_prior_raw(sc, d);
    let sd = s_dist_raw(sc, &point_weights(sc.t_domain.len(), ti), &tk);
    vote_from_s_raw(sc, &sd)
}

/// The voter-position weights the pundit plans against: the assumed position
/// if one is fixed, otherwise the voter prior.
fn anticipated_ti_weights(sc: &Scenario) -> Vec<f64> {
    match &sc.assumed_ti {
        Some(name) => {
            let idx = sc
                .t_domain
                .index_of(name)
                .expect("validated scenario has a known assumed position");
            point_weights(sc.t_domain.len(), idx)
        }
        None => sc.prior_ti.probs().to_vec(),
    }
}

/// The trusting response the pundit anticipates to publication `b`.
pub(crate) fn anticipated_response_raw(sc: &Scenario, b: usize) -> Vec<f64> {
    let tk = posterior_tk_or_prior_raw(sc, b);
    let sd = s_dist_raw(sc, &anticipated_ti_weights(sc), &tk);
    vote_from_s_raw(sc, &sd)
}

/// The pundit-position prior induced by a context.
fn tj_weights(sc: &Scenario, ctx: &PunditContext) -> Result<Vec<f64>> {
    match ctx {
        PunditContext::Prior => Ok(sc.prior_tj.probs().to_vec()),
        PunditContext::Known(name) => {
            let idx = sc.t_domain.require_index(name)?;
            Ok(point_weights(sc.t_domain.len(), idx))
        }
    }
}

/// Per-(observed message, pundit position) publication choice, laid out as
/// `choices[c * n_positions + t_j]`.
///
/// For each cell the pundit scores every candidate publication `b` by the
/// anticipated voter response to `b`, weighted by the utility of the voter's
/// vote under the *true* similarity (as inferred from the observed message
/// `c` and the pundit's own vantage point), minus the reputational cost of
/// publishing `b` when `c` was observed.
pub(crate) fn pundit_choice_indices(sc: &Scenario) -> Result<Vec<usize>> {
    sc.validate()?;
    let (nt, nd, ns, ny) =
        (sc.t_domain.len(), sc.d_domain.len(), sc.s_domain.len(), sc.y_domain.len());
    let responses: Vec<Vec<f64>> = (0..nd).map(|b| anticipated_response_raw(sc, b)).collect();
    let mut out = vec![0; nd * nt];
    for c in 0..nd {
        let tk = posterior_tk_or_prior_raw(sc, c);
        for tj in 0..nt {
            let sd = s_dist_raw(sc, &point_weights(nt, tj), &tk);
            // g[y]: expected voter-side utility if the vote comes out y.
            let g: Vec<f64> =
                (0..ny).map(|y| (0..ns).map(|s| sd[s] * sc.utility_at(s, y)).sum()).collect();
            let mut best = 0;
            let mut best_eu = f64::NEG_INFINITY;
            for (b, resp) in responses.iter().enumerate() {
                let eu: f64 =
                    resp.iter().zip(&g).map(|(r, gy)| r * gy).sum::<f64>() - sc.reputation_at(b, c);
                if eu > best_eu {
                    best_eu = eu;
                    best = b;
                }
            }
            out[c * nt + tj] = best;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// face-value (trusting) voter
// ---------------------------------------------------------------------------

/// Vote policy of a voter who takes similarity at face value: one vote per
/// similarity value, maximizing the voter utility, ties to the first label.
pub fn trusting_policy(sc: &Scenario) -> Result<PolicyTable> {
    sc.validate()?;
    PolicyTable::new(
        Var::new(node::Y_IK, &sc.y_domain),
        vec![Var::new(node::S_IK, &sc.s_domain)],
        vote_choice_indices(sc),
    )
}

/// Posterior over the candidate's position after observing one message.
pub fn posterior_tk_given_d(sc: &Scenario, d: &str) -> Result<Categorical> {
    sc.validate()?;
    let d_idx = sc.d_domain.require_index(d)?;
    Categorical::new(sc.t_domain.clone(), posterior_tk_raw(sc, d_idx)?)
}

/// Bayes update of an arbitrary position belief by one more message.
pub fn incremental_update(sc: &Scenario, belief: &Categorical, d: &str) -> Result<Categorical> {
    sc.validate()?;
    if belief.domain() != &sc.t_domain {
        return Err(Error::Input(format!(
            "belief is over domain `{}`, expected the position domain `{}`",
            belief.domain().id(),
            sc.t_domain.id()
        )));
    }
    let d_idx = sc.d_domain.require_index(d)?;
    let nt = sc.t_domain.len();
    let joint: Vec<f64> = (0..nt).map(|t| belief.probs()[t] * sc.cpt_d_at(t, d_idx)).collect();
    let total: f64 = joint.iter().sum();
    if total <= ZERO_MASS {
        return Err(Error::ZeroEvidence(format!(
            "message `{d}` has probability {total} under the current belief"
        )));
    }
    Categorical::new(sc.t_domain.clone(), joint.into_iter().map(|v| v / total).collect())
}

/// Marginal message distribution under the candidate prior.
pub fn message_marginal(sc: &Scenario) -> Result<Categorical> {
    sc.validate()?;
    Categorical::new(sc.d_domain.clone(), message_marginal_raw(sc))
}

/// Vote distribution of a face-value voter at `t_i` after message `d`.
pub fn vote_dist_trusting(sc: &Scenario, t_i: &str, d: &str) -> Result<Categorical> {
    sc.validate()?;
    let ti = sc.t_domain.require_index(t_i)?;
    let d_idx = sc.d_domain.require_index(d)?;
    let tk = posterior_tk_raw(sc, d_idx)?;
    let sd = s_dist_raw(sc, &point_weights(sc.t_domain.len(), ti), &tk);
    Categorical::new(sc.y_domain.clone(), vote_from_s_raw(sc, &sd))
}

/// Vote distribution of a face-value voter at `t_i` before any message.
pub fn prior_vote_dist(sc: &Scenario, t_i: &str) -> Result<Categorical> {
    sc.validate()?;
    let ti = sc.t_domain.require_index(t_i)?;
    let sd = s_dist_raw(sc, &point_weights(sc.t_domain.len(), ti), sc.prior_tk.probs());
    Categorical::new(sc.y_domain.clone(), vote_from_s_raw(sc, &sd))
}

/// The trusting response the pundit anticipates to publication `b`:
/// the vote distribution of a voter (at the assumed position, or mixed over
/// the voter prior) who takes `b` at face value.  Falls back to the
/// candidate prior when `b` is unreachable as a candidate message.
pub fn anticipated_response(sc: &Scenario, b: &str) -> Result<Categorical> {
    sc.validate()?;
    let b_idx = sc.d_domain.require_index(b)?;
    Categorical::new(sc.y_domain.clone(), anticipated_response_raw(sc, b_idx))
}

// ---------------------------------------------------------------------------
// biased pundit
// ---------------------------------------------------------------------------

/// The pundit's publication policy as a one-hot conditional table with scope
/// `[observed message, pundit position, published message]`.
pub fn pundit_policy(sc: &Scenario) -> Result<Factor> {
    let choices = pundit_choice_indices(sc)?;
    let (nt, nd) = (sc.t_domain.len(), sc.d_domain.len());
    let mut values = vec![0.0; nd * nt * nd];
    for c in 0..nd {
        for tj in 0..nt {
            values[(c * nt + tj) * nd + choices[c * nt + tj]] = 1.0;
        }
    }
    Factor::new(
        vec![
            Var::new(node::C_K, &sc.d_domain),
            Var::new(node::T_J, &sc.t_domain),
            Var::new(node::B_K, &sc.d_domain),
        ],
        values,
    )
}

/// Publication distribution per observed message, with the pundit position
/// marginalized out under the context: a conditional table with scope
/// `[observed message, published message]`.
pub fn pundit_marginal(sc: &Scenario, ctx: &PunditContext) -> Result<Factor> {
    let choices = pundit_choice_indices(sc)?;
    let weights = tj_weights(sc, ctx)?;
    let (nt, nd) = (sc.t_domain.len(), sc.d_domain.len());
    let mut values = vec![0.0; nd * nd];
    for c in 0..nd {
        for tj in 0..nt {
            values[c * nd + choices[c * nt + tj]] += weights[tj];
        }
    }
    Factor::new(vec![Var::new(node::C_K, &sc.d_domain), Var::new(node::B_K, &sc.d_domain)], values)
}

// ---------------------------------------------------------------------------
// suspicious voter
// ---------------------------------------------------------------------------

/// Position posterior of a voter who models the pundit, together with how
/// much unnormalized probability mass came from accurate publications
/// (observed message equal to the published one) versus deceptive ones.
/// The two masses sum to the marginal probability of the publication.
#[derive(Debug, Clone)]
pub struct SuspiciousPosterior {
    pub posterior: Categorical,
    pub accurate_mass: f64,
    pub deceptive_mass: f64,
}

/// Position posterior of a pundit-aware voter after seeing publication `b`.
pub fn suspicious_posterior_tk(
    sc: &Scenario,
    ctx: &PunditContext,
    b: &str,
) -> Result<SuspiciousPosterior> {
    let marginal = pundit_marginal(sc, ctx)?;
    let b_idx = sc.d_domain.require_index(b)?;
    let (nt, nd) = (sc.t_domain.len(), sc.d_domain.len());
    let mut post = vec![0.0; nt];
    let mut accurate = 0.0;
    let mut deceptive = 0.0;
    for c in 0..nd {
        let pub_given_c = marginal.values()[c * nd + b_idx];
        if pub_given_c == 0.0 {
            continue;
        }
        let mut mass_c = 0.0;
        for (t, p) in post.iter_mut().enumerate() {
            let contribution = sc.prior_tk.probs()[t] * sc.cpt_d_at(t, c) * pub_given_c;
            *p += contribution;
            mass_c += contribution;
        }
        if c == b_idx {
            accurate += mass_c;
        } else {
            deceptive += mass_c;
        }
    }
    let total = accurate + deceptive;
    if total <= ZERO_MASS {
        return Err(Error::ZeroEvidence(format!(
            "publication `{b}` has probability {total} under the pundit model"
        )));
    }
    let posterior =
        Categorical::new(sc.t_domain.clone(), post.into_iter().map(|v| v / total).collect())?;
    Ok(SuspiciousPosterior { posterior, accurate_mass: accurate, deceptive_mass: deceptive })
}

/// Vote distribution of a pundit-aware voter at `t_i` after publication `b`.
pub fn vote_dist_suspicious(
    sc: &Scenario,
    ctx: &PunditContext,
    t_i: &str,
    b: &str,
) -> Result<Categorical> {
    let sp = suspicious_posterior_tk(sc, ctx, b)?;
    let ti = sc.t_domain.require_index(t_i)?;
    let sd = s_dist_raw(sc, &point_weights(sc.t_domain.len(), ti), sp.posterior.probs());
    Categorical::new(sc.y_domain.clone(), vote_from_s_raw(sc, &sd))
}

// ---------------------------------------------------------------------------
// expected utility
// ---------------------------------------------------------------------------

/// Expected voter-side utility, from the vantage point of position
/// `agent_t`, when `b` is published while the observed message was `c` and
/// the reacting face-value voter sits at `t_i`:
///
/// `sum_{s, t_k, y} P(t_k | c) P(s | agent_t, t_k) P(Y=y | t_i, b) f_U(s, y)`
///
/// Reputational cost is *not* included.  The voter response to an
/// unreachable `b` uses the documented prior fallback, matching the
/// anticipation inside the pundit's objective.
pub fn expected_utility(sc: &Scenario, agent_t: &str, b: &str, c: &str, t_i: &str) -> Result<f64> {
    sc.validate()?;
    let agent = sc.t_domain.require_index(agent_t)?;
    let b_idx = sc.d_domain.require_index(b)?;
    let c_idx = sc.d_domain.require_index(c)?;
    let ti = sc.t_domain.require_index(t_i)?;
    let tk = posterior_tk_raw(sc, c_idx)?;
    let sd = s_dist_raw(sc, &point_weights(sc.t_domain.len(), agent), &tk);
    let vd = response_raw(sc, ti, b_idx);
    let mut eu = 0.0;
    for (s, &ps) in sd.iter().enumerate() {
        if ps == 0.0 {
            continue;
        }
        for (y, &py) in vd.iter().enumerate() {
            eu += ps * py * sc.utility_at(s, y);
        }
    }
    Ok(eu)
}

// ---------------------------------------------------------------------------
// influence-diagram builders
// ---------------------------------------------------------------------------

/// Assemble one of the three models as an influence diagram.
///
/// Each diagram has exactly one unsolved decision; quantities that other
/// agents anticipate (the voter response inside the pundit model, the
/// pundit policy inside the suspicious model) are compiled to fixed
/// conditional tables first, because those agents reason about a *different*
/// model than the one being assembled.
pub fn build_maid(sc: &Scenario, kind: ModelKind, ctx: &PunditContext) -> Result<Maid> {
    sc.validate()?;
    let tj_prior = Categorical::new(sc.t_domain.clone(), tj_weights(sc, ctx)?)?;
    match kind {
        ModelKind::TrustingVoter => Ok(Maid {
            chance: vec![
                ChanceNode {
                    var: Var::new(node::T_I, &sc.t_domain),
                    parents: vec![],
                    cpt: Scenario::prior_factor(&sc.prior_ti, node::T_I),
                },
                ChanceNode {
                    var: Var::new(node::T_K, &sc.t_domain),
                    parents: vec![],
                    cpt: Scenario::prior_factor(&sc.prior_tk, node::T_K),
                },
                ChanceNode {
                    var: Var::new(node::D_K, &sc.d_domain),
                    parents: vec![node::T_K.into()],
                    cpt: sc.cpt_d_factor(node::T_K, node::D_K),
                },
                ChanceNode {
                    var: Var::new(node::S_IK, &sc.s_domain),
                    parents: vec![node::T_I.into(), node::T_K.into()],
                    cpt: sc.cpt_s_factor(node::T_I, node::T_K, node::S_IK),
                },
            ],
            decisions: vec![DecisionNode {
                var: Var::new(node::Y_IK, &sc.y_domain),
                info_parents: vec![node::S_IK.into()],
                owner: node::AGENT_VOTER.into(),
            }],
            utilities: vec![UtilityNode {
                id: node::U_I.into(),
                owner: node::AGENT_VOTER.into(),
                parents: vec![node::S_IK.into(), node::Y_IK.into()],
                table: sc.utility_factor(node::S_IK, node::Y_IK),
            }],
            solve_order: vec![node::Y_IK.into()],
        }),
        ModelKind::BiasedPundit => {
            let (nd, ny, ns) = (sc.d_domain.len(), sc.y_domain.len(), sc.s_domain.len());
            // Anticipated voter response, fixed as P(vote | published).
            let mut resp_values = vec![0.0; nd * ny];
            for b in 0..nd {
                let r = anticipated_response_raw(sc, b);
                resp_values[b * ny..(b + 1) * ny].copy_from_slice(&r);
            }
            // Reputational cost as a deterministic numeric chance node.
            let mut costs: Vec<f64> = sc.reputation.values().to_vec();
            costs.sort_by(|a, b| a.partial_cmp(b).expect("validated costs are finite"));
            costs.dedup();
            let r_domain = Domain::numeric("reputation_cost", &costs)?;
            let nr = r_domain.len();
            let mut cost_values = vec![0.0; nd * nd * nr];
            for b in 0..nd {
                for c in 0..nd {
                    let r_idx = costs
                        .iter()
                        .position(|&v| v == sc.reputation_at(b, c))
                        .expect("every cost is in the cost domain");
                    cost_values[(b * nd + c) * nr + r_idx] = 1.0;
                }
            }
            // Pundit utility: voter-side utility minus reputational cost.
            let mut u_values = vec![0.0; nr * ns * ny];
            for (r, &cost) in costs.iter().enumerate() {
                for s in 0..ns {
                    for y in 0..ny {
                        u_values[(r * ns + s) * ny + y] = sc.utility_at(s, y) - cost;
                    }
                }
            }
            Ok(Maid {
                chance: vec![
                    ChanceNode {
                        var: Var::new(node::T_J, &sc.t_domain),
                        parents: vec![],
                        cpt: Scenario::prior_factor(&tj_prior, node::T_J),
                    },
                    ChanceNode {
                        var: Var::new(node::T_K, &sc.t_domain),
                        parents: vec![],
                        cpt: Scenario::prior_factor(&sc.prior_tk, node::T_K),
                    },
                    ChanceNode {
                        var: Var::new(node::C_K, &sc.d_domain),
                        parents: vec![node::T_K.into()],
                        cpt: sc.cpt_d_factor(node::T_K, node::C_K),
                    },
                    ChanceNode {
                        var: Var::new(node::S_JK, &sc.s_domain),
                        parents: vec![node::T_J.into(), node::T_K.into()],
                        cpt: sc.cpt_s_factor(node::T_J, node::T_K, node::S_JK),
                    },
                    ChanceNode {
                        var: Var::new(node::Y_IK, &sc.y_domain),
                        parents: vec![node::B_K.into()],
                        cpt: Factor::new(
                            vec![
                                Var::new(node::B_K, &sc.d_domain),
                                Var::new(node::Y_IK, &sc.y_domain),
                            ],
                            resp_values,
                        )?,
                    },
                    ChanceNode {
                        var: Var::new(node::R_JK, &r_domain),
                        parents: vec![node::B_K.into(), node::C_K.into()],
                        cpt: Factor::new(
                            vec![
                                Var::new(node::B_K, &sc.d_domain),
                                Var::new(node::C_K, &sc.d_domain),
                                Var::new(node::R_JK, &r_domain),
                            ],
                            cost_values,
                        )?,
                    },
                ],
                decisions: vec![DecisionNode {
                    var: Var::new(node::B_K, &sc.d_domain),
                    info_parents: vec![node::C_K.into(), node::T_J.into()],
                    owner: node::AGENT_PUNDIT.into(),
                }],
                utilities: vec![UtilityNode {
                    id: node::U_J.into(),
                    owner: node::AGENT_PUNDIT.into(),
                    parents: vec![node::R_JK.into(), node::S_JK.into(), node::Y_IK.into()],
                    table: Factor::new(
                        vec![
                            Var::new(node::R_JK, &r_domain),
                            Var::new(node::S_JK, &sc.s_domain),
                            Var::new(node::Y_IK, &sc.y_domain),
                        ],
                        u_values,
                    )?,
                }],
                solve_order: vec![node::B_K.into()],
            })
        }
        ModelKind::SuspiciousVoter => Ok(Maid {
            chance: vec![
                ChanceNode {
                    var: Var::new(node::T_J, &sc.t_domain),
                    parents: vec![],
                    cpt: Scenario::prior_factor(&tj_prior, node::T_J),
                },
                ChanceNode {
                    var: Var::new(node::T_K, &sc.t_domain),
                    parents: vec![],
                    cpt: Scenario::prior_factor(&sc.prior_tk, node::T_K),
                },
                ChanceNode {
                    var: Var::new(node::C_K, &sc.d_domain),
                    parents: vec![node::T_K.into()],
                    cpt: sc.cpt_d_factor(node::T_K, node::C_K),
                },
                ChanceNode {
                    var: Var::new(node::B_K, &sc.d_domain),
                    parents: vec![node::C_K.into(), node::T_J.into()],
                    cpt: pundit_policy(sc)?,
                },
                ChanceNode {
                    var: Var::new(node::T_I, &sc.t_domain),
                    parents: vec![],
                    cpt: Scenario::prior_factor(&sc.prior_ti, node::T_I),
                },
                ChanceNode {
                    var: Var::new(node::S_IK, &sc.s_domain),
                    parents: vec![node::T_I.into(), node::T_K.into()],
                    cpt: sc.cpt_s_factor(node::T_I, node::T_K, node::S_IK),
                },
            ],
            decisions: vec![DecisionNode {
                var: Var::new(node::Y_IK, &sc.y_domain),
                info_parents: vec![node::S_IK.into()],
                owner: node::AGENT_VOTER.into(),
            }],
            utilities: vec![UtilityNode {
                id: node::U_I.into(),
                owner: node::AGENT_VOTER.into(),
                parents: vec![node::S_IK.into(), node::Y_IK.into()],
                table: sc.utility_factor(node::S_IK, node::Y_IK),
            }],
            solve_order: vec![node::Y_IK.into()],
        }),
    }
}
