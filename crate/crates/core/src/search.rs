//! Seeded search for anomalous-update witnesses.
//!
//! Candidates are drawn from a family built for the effect: the voter and
//! the pundit sit on opposite corners (every message that is good news for
//! one is bad news for the other), the pundit's position is known to the
//! suspicious voter, and each position concentrates its message likelihood
//! on its own characteristic message — the two rows never share a primary —
//! with the rest leaking into rare messages, so some publications have
//! small prior probability.  Candidate generation is a pure function of
//! `(seed, index)`, so results are reproducible and order-independent.
//!
//! The aligned control (`aligned: true`) puts the pundit on the voter's own
//! corner and is expected to come up empty.  With the default two-message
//! family that emptiness is a structural fact, not luck: an aligned pundit
//! never swaps the two messages (that would need the posterior to sit on
//! both sides of one half at once), so each publication pools either just
//! itself (suspicious = trusting), every message (posterior = prior), or
//! nothing (unreachable) — none of which moves the two readings of the same
//! publication in opposite directions.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{Categorical, Domain};
use crate::factor::{Factor, Var};
use crate::scenario::{table, PunditContext, Scenario};
use crate::verify::{verify_anomalous, Verdict, VerificationReport};
use crate::{Error, Result};

/// Grids and limits for the witness search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Stream seed; candidate `index` uses stream `index + 1` of this seed.
    pub seed: u64,
    /// Maximum number of candidate scenarios to evaluate.
    pub budget: usize,
    /// Messages per scenario are drawn from `2..=max_messages`.
    pub max_messages: usize,
    /// Candidate-position prior weights for the first position.
    pub prior_grid: Vec<f64>,
    /// Weight of each position's preferred message.
    pub concentration_grid: Vec<f64>,
    /// Weight slices for the remaining, rarer messages (only drawn on
    /// scenarios with three or more messages; with two, the leak is just
    /// the concentration's complement).
    pub rare_grid: Vec<f64>,
    /// Off-diagonal reputational cost of a deceptive publication.
    pub reputation_grid: Vec<f64>,
    /// Magnitude of the two similarity values (`-u` and `+u`).
    pub utility_grid: Vec<f64>,
    /// Put the pundit on the voter's own corner instead of the opposite
    /// one (control runs; the search should then come up empty).
    pub aligned: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 7,
            budget: 4096,
            max_messages: 2,
            prior_grid: vec![0.3, 0.5, 0.7],
            concentration_grid: vec![0.6, 0.7, 0.8, 0.9, 0.95, 0.98],
            rare_grid: vec![0.02, 0.05, 0.1, 0.2],
            reputation_grid: vec![0.02, 0.05, 0.1, 0.25],
            utility_grid: vec![1.0, 2.0],
            aligned: false,
        }
    }
}

impl SearchConfig {
    /// Check the grids; a zero budget is allowed and yields an empty result.
    pub fn validate(&self) -> Result<()> {
        if self.max_messages < 2 {
            return Err(Error::Input("max_messages must be at least 2".into()));
        }
        for (name, grid) in [
            ("prior_grid", &self.prior_grid),
            ("concentration_grid", &self.concentration_grid),
            ("rare_grid", &self.rare_grid),
            ("reputation_grid", &self.reputation_grid),
            ("utility_grid", &self.utility_grid),
        ] {
            if grid.is_empty() {
                return Err(Error::Input(format!("{name} must not be empty")));
            }
            if let Some(bad) = grid.iter().find(|v| !v.is_finite()) {
                return Err(Error::Input(format!("{name} contains {bad}")));
            }
        }
        if self.prior_grid.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::Input("prior_grid entries must lie in [0, 1]".into()));
        }
        if self.concentration_grid.iter().any(|&w| !(0.0..=1.0).contains(&w)) {
            return Err(Error::Input("concentration_grid entries must lie in [0, 1]".into()));
        }
        if self.rare_grid.iter().any(|&w| !(0.0..=1.0).contains(&w)) {
            return Err(Error::Input("rare_grid entries must lie in [0, 1]".into()));
        }
        if self.reputation_grid.iter().any(|&r| r <= 0.0) {
            return Err(Error::Input("reputation_grid entries must be positive".into()));
        }
        if self.utility_grid.iter().any(|&u| u <= 0.0) {
            return Err(Error::Input("utility_grid entries must be positive".into()));
        }
        Ok(())
    }
}

/// A found witness: the scenario plus the inputs that make
/// `verify_anomalous` pass, and the passing report itself.
#[derive(Debug, Clone)]
pub struct AnomalousWitness {
    pub scenario: Scenario,
    pub ctx: PunditContext,
    pub t_i: String,
    pub b: String,
    pub report: VerificationReport,
    pub index: usize,
}

/// Search result: the first witness by candidate index, if any, and how
/// many candidates were evaluated.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub witness: Option<AnomalousWitness>,
    pub tried: usize,
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, grid: &'a [T]) -> &'a T {
    &grid[rng.random_range(0..grid.len())]
}

/// Deterministically generate candidate `index`: the scenario, the pundit
/// context, and the voter position to check.
pub fn candidate_scenario(
    cfg: &SearchConfig,
    index: usize,
) -> Result<(Scenario, PunditContext, String)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64 + 1);

    let t = Domain::categorical("positions", ["plus", "minus"])?;
    let n_messages = rng.random_range(2..=cfg.max_messages);
    let names: Vec<String> = (0..n_messages).map(|i| format!("m{i}")).collect();
    let d = Domain::categorical("messages", names.iter().map(String::as_str))?;

    let u = *pick(&mut rng, &cfg.utility_grid);
    let s = Domain::numeric("similarity", &[-u, u])?;
    let y = Domain::numeric("support", &[0.0, 1.0])?;

    let p = *pick(&mut rng, &cfg.prior_grid);
    let prior_tk = Categorical::new(t.clone(), vec![p, 1.0 - p])?;

    // One likelihood row per position: each position concentrates on its
    // own characteristic message (the two rows never share a primary), and
    // the rest is sliced into rare messages.
    let first_preferred = rng.random_range(0..n_messages);
    let shifted = rng.random_range(0..n_messages - 1);
    let second_preferred = if shifted >= first_preferred { shifted + 1 } else { shifted };
    let mut cpt_d_values = Vec::with_capacity(2 * n_messages);
    for preferred in [first_preferred, second_preferred] {
        let weight = *pick(&mut rng, &cfg.concentration_grid);
        let mut remaining = 1.0 - weight;
        let mut row = vec![0.0; n_messages];
        row[preferred] = weight;
        let others: Vec<usize> = (0..n_messages).filter(|&m| m != preferred).collect();
        for (pos, &m) in others.iter().enumerate() {
            if pos + 1 == others.len() {
                row[m] = remaining;
            } else {
                let slice = pick(&mut rng, &cfg.rare_grid).min(remaining);
                row[m] = slice;
                remaining -= slice;
            }
        }
        cpt_d_values.extend(row);
    }

    // Opposite corners: similarity is +u exactly when the two positions
    // coincide, so every message good for one corner is bad for the other.
    let mut cpt_s_values = vec![0.0; 2 * 2 * 2];
    for a in 0..2 {
        for b in 0..2 {
            let high = usize::from(a == b);
            cpt_s_values[(a * 2 + b) * 2 + high] = 1.0;
        }
    }

    let pundit_position = if cfg.aligned { "plus" } else { "minus" };
    let reputation_cost = *pick(&mut rng, &cfg.reputation_grid);
    let mut reputation_values = vec![reputation_cost; n_messages * n_messages];
    for m in 0..n_messages {
        reputation_values[m * n_messages + m] = 0.0;
    }

    let scenario = Scenario {
        prior_ti: Categorical::point_mass(t.clone(), "plus")?,
        prior_tk,
        prior_tj: Categorical::point_mass(t.clone(), pundit_position)?,
        cpt_d: Factor::new(
            vec![Var::new(table::POSITION, &t), Var::new(table::MESSAGE, &d)],
            cpt_d_values,
        )?,
        cpt_s: Factor::new(
            vec![
                Var::new(table::POSITION_A, &t),
                Var::new(table::POSITION_B, &t),
                Var::new(table::SIMILARITY, &s),
            ],
            cpt_s_values,
        )?,
        utility: Factor::new(
            vec![Var::new(table::SIMILARITY, &s), Var::new(table::VOTE, &y)],
            vec![0.0, -u, 0.0, u],
        )?,
        reputation: Factor::new(
            vec![Var::new(table::PUBLISHED, &d), Var::new(table::OBSERVED, &d)],
            reputation_values,
        )?,
        t_domain: t,
        d_domain: d,
        s_domain: s,
        y_domain: y,
        assumed_ti: Some("plus".into()),
    };
    scenario.validate()?;
    Ok((scenario, PunditContext::Known(pundit_position.into()), "plus".into()))
}

/// Evaluate candidates in index order and return the first one on which
/// some publication passes `verify_anomalous` (publications are tried in
/// message-domain order).  Deterministic given the config.
pub fn find_anomalous_scenario(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let mut tried = 0;
    for index in 0..cfg.budget {
        let (scenario, ctx, t_i) = candidate_scenario(cfg, index)?;
        tried += 1;
        let publications: Vec<String> =
            scenario.d_domain.names().iter().map(|n| n.to_string()).collect();
        for b in publications {
            let report = match verify_anomalous(&scenario, &ctx, &t_i, &b) {
                Ok(report) => report,
                Err(err) if err.is_zero_evidence() => continue,
                Err(err) => return Err(err),
            };
            if report.verdict == Verdict::Verified {
                return Ok(SearchOutcome {
                    witness: Some(AnomalousWitness { scenario, ctx, t_i, b, report, index }),
                    tried,
                });
            }
        }
    }
    Ok(SearchOutcome { witness: None, tried })
}
