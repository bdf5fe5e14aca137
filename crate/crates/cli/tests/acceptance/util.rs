//! Generators, oracles and command-line helpers for the acceptance runner.
//!
//! Everything numeric here is deliberately independent of the factored
//! inference path: the joint survey reads raw values straight out of the
//! brute-force joint enumeration, and the pairing oracle tries every
//! gainer/loser bijection instead of backtracking.

use std::collections::BTreeMap;

use itertools::Itertools;
use punditry::bayes::BayesNet;
use punditry::classify::InfoKind;
use punditry::domain::{Categorical, Domain};
use punditry::factor::{Factor, Var};
use punditry::scenario::{table, Scenario};
use punditry::PROB_TOL;
use punditry_cli::app::{self, RunResult};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// joint survey: brute-force conditionals for every query and evidence value
// ---------------------------------------------------------------------------

/// All single-variable conditionals of a network, read off the brute-force
/// joint in one pass: unconditional marginals plus, for every evidence
/// value, the unnormalized distribution of every other variable.
pub struct JointSurvey {
    pub ids: Vec<String>,
    pub labels: Vec<Vec<String>>,
    /// `marginal[q][l]`: total mass with variable `q` at label `l`.
    pub marginal: Vec<Vec<f64>>,
    /// `pair[e][le][q][lq]`: total mass with `e` at `le` and `q` at `lq`
    /// (`q != e`; the diagonal blocks stay zero).
    pub pair: Vec<Vec<Vec<Vec<f64>>>>,
}

pub fn survey_joint(bn: &BayesNet) -> JointSurvey {
    let joint = bn.brute_force_joint().expect("joint fits under the entry cap");
    let scope = joint.scope();
    let ids: Vec<String> = scope.iter().map(|v| v.id().to_string()).collect();
    let lens: Vec<usize> = scope.iter().map(|v| v.domain().len()).collect();
    let labels: Vec<Vec<String>> =
        scope.iter().map(|v| v.domain().names().iter().map(|s| s.to_string()).collect()).collect();
    let n = ids.len();
    let mut marginal: Vec<Vec<f64>> = lens.iter().map(|&l| vec![0.0; l]).collect();
    let mut pair: Vec<Vec<Vec<Vec<f64>>>> = (0..n)
        .map(|e| (0..lens[e]).map(|_| (0..n).map(|q| vec![0.0; lens[q]]).collect()).collect())
        .collect();

    // The joint is laid out row-major with the last scope variable fastest;
    // walk it with a multi-index odometer in the same order.
    let mut idx = vec![0usize; n];
    for &v in joint.values() {
        if v != 0.0 {
            for q in 0..n {
                marginal[q][idx[q]] += v;
            }
            for e in 0..n {
                let row = &mut pair[e][idx[e]];
                for q in 0..n {
                    if q != e {
                        row[q][idx[q]] += v;
                    }
                }
            }
        }
        for pos in (0..n).rev() {
            idx[pos] += 1;
            if idx[pos] < lens[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
    JointSurvey { ids, labels, marginal, pair }
}

// ---------------------------------------------------------------------------
// exhaustive pairing oracle for belief-shift classification
// ---------------------------------------------------------------------------

/// Reference classifier: a shift is strictly directional iff *some*
/// bijection pairs every gainer with a loser of equal magnitude on the
/// required side.  Tries every permutation, so it is correct by
/// construction (and only usable for small domains).
pub fn oracle_kind(values: &[f64], deltas: &[f64]) -> InfoKind {
    let gainers: Vec<usize> = (0..deltas.len()).filter(|&i| deltas[i] > PROB_TOL).collect();
    let losers: Vec<usize> = (0..deltas.len()).filter(|&i| deltas[i] < -PROB_TOL).collect();
    if gainers.is_empty() && losers.is_empty() {
        return InfoKind::Neutral;
    }
    if gainers.len() == losers.len() {
        let matches = |direction_down: bool| {
            losers.iter().permutations(losers.len()).any(|perm| {
                gainers.iter().zip(&perm).all(|(&g, &&l)| {
                    (deltas[g] + deltas[l]).abs() <= PROB_TOL
                        && if direction_down {
                            values[g] < values[l]
                        } else {
                            values[g] > values[l]
                        }
                })
            })
        };
        if matches(true) {
            return InfoKind::StrictlyNegative;
        }
        if matches(false) {
            return InfoKind::StrictlyPositive;
        }
    }
    InfoKind::Mixed
}

// ---------------------------------------------------------------------------
// random generators
// ---------------------------------------------------------------------------

pub fn random_distribution(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

/// A strictly increasing ladder of `len` similarity values.
pub fn random_ladder(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(len);
    let mut next = rng.random_range(-5.0..-3.0);
    for _ in 0..len {
        values.push(next);
        next += rng.random_range(0.5..1.5);
    }
    values
}

/// A random well-formed scenario: 2–3 positions, 2–4 messages, 2–3
/// similarity values, strictly positive message likelihoods (every message
/// stays reachable), symmetric similarity table, payoffs in [−2, 2],
/// positive off-diagonal reputational costs.
pub fn random_scenario(rng: &mut ChaCha8Rng) -> Scenario {
    let nt = rng.random_range(2..=3);
    let nd = rng.random_range(2..=4);
    let ns = rng.random_range(2..=3);

    let t_labels: Vec<String> = (0..nt).map(|i| format!("t{i}")).collect();
    let d_labels: Vec<String> = (0..nd).map(|i| format!("d{i}")).collect();
    let t = Domain::categorical("positions", t_labels.iter().map(String::as_str)).unwrap();
    let d = Domain::categorical("messages", d_labels.iter().map(String::as_str)).unwrap();

    let mut s_values: Vec<f64> = Vec::new();
    while s_values.len() < ns {
        let cand = f64::from(rng.random_range(-3..=3));
        if !s_values.contains(&cand) {
            s_values.push(cand);
        }
    }
    s_values.sort_by(f64::total_cmp);
    let s = Domain::numeric("similarity", &s_values).unwrap();
    let y = Domain::numeric("support", &[0.0, 1.0]).unwrap();

    let mut cpt_d_values = Vec::with_capacity(nt * nd);
    for _ in 0..nt {
        cpt_d_values.extend(random_distribution(rng, nd));
    }

    let mut cpt_s_values = vec![0.0; nt * nt * ns];
    for a in 0..nt {
        for b in a..nt {
            let row = random_distribution(rng, ns);
            for (i, &v) in row.iter().enumerate() {
                cpt_s_values[(a * nt + b) * ns + i] = v;
                cpt_s_values[(b * nt + a) * ns + i] = v;
            }
        }
    }

    let utility_values: Vec<f64> = (0..ns * 2).map(|_| rng.random_range(-2.0..2.0)).collect();

    let mut reputation_values = vec![0.0; nd * nd];
    for b in 0..nd {
        for c in 0..nd {
            if b != c {
                reputation_values[b * nd + c] = rng.random_range(0.05..0.5);
            }
        }
    }

    let assumed_ti = if rng.random_range(0..2) == 0 {
        None
    } else {
        Some(t_labels[rng.random_range(0..nt)].clone())
    };

    Scenario {
        prior_ti: Categorical::new(t.clone(), random_distribution(rng, nt)).unwrap(),
        prior_tk: Categorical::new(t.clone(), random_distribution(rng, nt)).unwrap(),
        prior_tj: Categorical::new(t.clone(), random_distribution(rng, nt)).unwrap(),
        cpt_d: Factor::new(
            vec![Var::new(table::POSITION, &t), Var::new(table::MESSAGE, &d)],
            cpt_d_values,
        )
        .unwrap(),
        cpt_s: Factor::new(
            vec![
                Var::new(table::POSITION_A, &t),
                Var::new(table::POSITION_B, &t),
                Var::new(table::SIMILARITY, &s),
            ],
            cpt_s_values,
        )
        .unwrap(),
        utility: Factor::new(
            vec![Var::new(table::SIMILARITY, &s), Var::new(table::VOTE, &y)],
            utility_values,
        )
        .unwrap(),
        reputation: Factor::new(
            vec![Var::new(table::PUBLISHED, &d), Var::new(table::OBSERVED, &d)],
            reputation_values,
        )
        .unwrap(),
        t_domain: t,
        d_domain: d,
        s_domain: s,
        y_domain: y,
        assumed_ti,
    }
}

// ---------------------------------------------------------------------------
// constructed families with known directional / mixture behaviour
// ---------------------------------------------------------------------------

/// A two-position scenario in which moving belief toward the second
/// position shifts the similarity distribution for a `t0` voter by pure
/// equal-magnitude transfers: the cross row equals the own row with
/// `shifts` applied (`(from, to, delta)` index triples on the similarity
/// domain).  Message `d0` is made likelier under the second position, so
/// observing it classifies strictly negative (downward shifts) or strictly
/// positive (upward shifts) for the voter.
pub fn directional_scenario(
    s_values: &[f64],
    own_row: &[f64],
    shifts: &[(usize, usize, f64)],
    d_rows: [&[f64]; 2],
) -> Scenario {
    let t = Domain::categorical("positions", ["t0", "t1"]).unwrap();
    let nd = d_rows[0].len();
    let d_labels: Vec<String> = (0..nd).map(|i| format!("d{i}")).collect();
    let d = Domain::categorical("messages", d_labels.iter().map(String::as_str)).unwrap();
    let s = Domain::numeric("similarity", s_values).unwrap();
    let y = Domain::numeric("support", &[0.0, 1.0]).unwrap();
    let ns = s_values.len();

    let mut cross_row = own_row.to_vec();
    for &(from, to, delta) in shifts {
        cross_row[from] -= delta;
        cross_row[to] += delta;
    }

    let mut cpt_s_values = vec![0.0; 2 * 2 * ns];
    for (i, &v) in own_row.iter().enumerate() {
        cpt_s_values[i] = v; // (t0, t0)
        cpt_s_values[(2 * 2 - 1) * ns + i] = v; // (t1, t1)
    }
    for (i, &v) in cross_row.iter().enumerate() {
        cpt_s_values[ns + i] = v; // (t0, t1)
        cpt_s_values[2 * ns + i] = v; // (t1, t0)
    }

    let mut utility_values = Vec::with_capacity(ns * 2);
    for &sv in s_values {
        utility_values.push(0.0);
        utility_values.push(sv);
    }

    let mut reputation_values = vec![0.1; nd * nd];
    for m in 0..nd {
        reputation_values[m * nd + m] = 0.0;
    }

    Scenario {
        prior_ti: Categorical::point_mass(t.clone(), "t0").unwrap(),
        prior_tk: Categorical::new(t.clone(), vec![0.5, 0.5]).unwrap(),
        prior_tj: Categorical::new(t.clone(), vec![0.5, 0.5]).unwrap(),
        cpt_d: Factor::new(
            vec![Var::new(table::POSITION, &t), Var::new(table::MESSAGE, &d)],
            d_rows.concat(),
        )
        .unwrap(),
        cpt_s: Factor::new(
            vec![
                Var::new(table::POSITION_A, &t),
                Var::new(table::POSITION_B, &t),
                Var::new(table::SIMILARITY, &s),
            ],
            cpt_s_values,
        )
        .unwrap(),
        utility: Factor::new(
            vec![Var::new(table::SIMILARITY, &s), Var::new(table::VOTE, &y)],
            utility_values,
        )
        .unwrap(),
        reputation: Factor::new(
            vec![Var::new(table::PUBLISHED, &d), Var::new(table::OBSERVED, &d)],
            reputation_values,
        )
        .unwrap(),
        t_domain: t,
        d_domain: d,
        s_domain: s,
        y_domain: y,
        assumed_ti: None,
    }
}

/// Raw material for `directional_scenario`: a random similarity ladder, an
/// own-row distribution over it, and disjoint transfer pairs.
pub struct DirectionalDraw {
    pub s_values: Vec<f64>,
    pub own_row: Vec<f64>,
    pub shifts: Vec<(usize, usize, f64)>,
}

/// `downward: true` moves mass from higher similarity values to lower ones
/// (strictly negative information); `false` mirrors it upward.
pub fn draw_directional(rng: &mut ChaCha8Rng, downward: bool) -> DirectionalDraw {
    let ns = rng.random_range(3..=6);
    let mut s_values = Vec::with_capacity(ns);
    let mut next = rng.random_range(-4.0..-2.0);
    for _ in 0..ns {
        s_values.push(next);
        next += rng.random_range(0.5..2.0);
    }
    let own_row = random_distribution(rng, ns);

    let mut free: Vec<usize> = (0..ns).collect();
    let n_pairs = rng.random_range(1..=ns / 2);
    let mut shifts = Vec::with_capacity(n_pairs);
    for _ in 0..n_pairs {
        let a = free.remove(rng.random_range(0..free.len()));
        let b = free.remove(rng.random_range(0..free.len()));
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (from, to) = if downward { (hi, lo) } else { (lo, hi) };
        let delta = rng.random_range(0.2..0.9) * own_row[from];
        shifts.push((from, to, delta));
    }
    DirectionalDraw { s_values, own_row, shifts }
}

/// Two opposed positions, two messages: a `w`-weighted mixture of a
/// truthful pundit and an inverting one.  With symmetric likelihoods (`p`
/// on each position's own message) and a small reputational cost `r`, the
/// publication marginal has `w` on the diagonal and `1−w` off it, so
/// `w = 0.5` makes every publication carry zero information.
pub fn w_family(w: f64, p: f64, r: f64) -> Scenario {
    let t = Domain::categorical("positions", ["vplus", "vminus"]).unwrap();
    let d = Domain::categorical("messages", ["m0", "m1"]).unwrap();
    let s = Domain::numeric("similarity", &[-1.0, 1.0]).unwrap();
    let y = Domain::numeric("support", &[0.0, 1.0]).unwrap();
    let mut cpt_s_values = vec![0.0; 8];
    for a in 0..2 {
        for b in 0..2 {
            let high = usize::from(a == b);
            cpt_s_values[(a * 2 + b) * 2 + high] = 1.0;
        }
    }
    Scenario {
        prior_ti: Categorical::point_mass(t.clone(), "vplus").unwrap(),
        prior_tk: Categorical::new(t.clone(), vec![0.5, 0.5]).unwrap(),
        prior_tj: Categorical::new(t.clone(), vec![w, 1.0 - w]).unwrap(),
        cpt_d: Factor::new(
            vec![Var::new(table::POSITION, &t), Var::new(table::MESSAGE, &d)],
            vec![p, 1.0 - p, 1.0 - p, p],
        )
        .unwrap(),
        cpt_s: Factor::new(
            vec![
                Var::new(table::POSITION_A, &t),
                Var::new(table::POSITION_B, &t),
                Var::new(table::SIMILARITY, &s),
            ],
            cpt_s_values,
        )
        .unwrap(),
        utility: Factor::new(
            vec![Var::new(table::SIMILARITY, &s), Var::new(table::VOTE, &y)],
            vec![0.0, -1.0, 0.0, 1.0],
        )
        .unwrap(),
        reputation: Factor::new(
            vec![Var::new(table::PUBLISHED, &d), Var::new(table::OBSERVED, &d)],
            vec![0.0, r, r, 0.0],
        )
        .unwrap(),
        t_domain: t,
        d_domain: d,
        s_domain: s,
        y_domain: y,
        assumed_ti: Some("vplus".into()),
    }
}

// ---------------------------------------------------------------------------
// command-line helpers
// ---------------------------------------------------------------------------

/// Run the command line in-process with `punditry` as `argv[0]`.
pub fn run_cli(args: &[&str]) -> RunResult {
    let mut argv = vec!["punditry"];
    argv.extend_from_slice(args);
    app::run(argv)
}

/// Run the installed binary in a separate process; returns (stdout, code).
pub fn run_binary(args: &[&str]) -> (String, i32) {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_punditry"))
        .args(args)
        .output()
        .expect("the binary runs");
    (String::from_utf8(output.stdout).expect("stdout is UTF-8"), output.status.code().unwrap_or(-1))
}

/// Parse a run's stdout as a JSON report document.
pub fn json_doc(result: &RunResult) -> serde_json::Value {
    serde_json::from_str(&result.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", result.stdout))
}

fn section<'a>(doc: &'a serde_json::Value, title: &str) -> &'a serde_json::Value {
    doc["sections"]
        .as_array()
        .expect("document has sections")
        .iter()
        .find(|s| s["title"] == title)
        .unwrap_or_else(|| panic!("no section titled `{title}` in {doc}"))
}

/// Rows of a two-column section as a name → value map.
pub fn two_col(doc: &serde_json::Value, title: &str) -> BTreeMap<String, serde_json::Value> {
    section(doc, title)["rows"]
        .as_array()
        .expect("section has rows")
        .iter()
        .map(|row| {
            let row = row.as_array().expect("row is an array");
            assert_eq!(row.len(), 2, "two-column section");
            (row[0].as_str().expect("row name").to_string(), row[1].clone())
        })
        .collect()
}

/// Numeric field of a two-column map.
pub fn num(map: &BTreeMap<String, serde_json::Value>, key: &str) -> f64 {
    map.get(key)
        .unwrap_or_else(|| panic!("no row named `{key}` in {map:?}"))
        .as_f64()
        .unwrap_or_else(|| panic!("row `{key}` is not numeric: {map:?}"))
}

/// The (label, probability) rows of a distribution section.
pub fn dist_rows(doc: &serde_json::Value, title: &str) -> Vec<(String, f64)> {
    section(doc, title)["rows"]
        .as_array()
        .expect("section has rows")
        .iter()
        .map(|row| {
            let row = row.as_array().expect("row is an array");
            (row[0].as_str().expect("label").to_string(), row[1].as_f64().expect("probability"))
        })
        .collect()
}
