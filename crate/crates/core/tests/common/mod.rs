//! Shared fixtures and oracles for the integration suites.

#![allow(dead_code)]

use punditry::bayes::BayesNet;
use punditry::domain::{Categorical, Domain};
use punditry::factor::{Assignment, Factor, Var};
use punditry::maid::ChanceNode;
use punditry::scenario::{table, Scenario};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The bundled four-position election example (`table2`): two good-faith
/// and two bad-faith positions, four talking points, similarity −6..6
/// built from a base value per position pair spread uniformly over
/// {v−1, v, v+1}, payoff `similarity × vote`, flat reputational cost 0.5
/// for any inaccurate publication.
pub fn table2() -> Scenario {
    let t = Domain::categorical(
        "positions",
        ["goodLiberal", "goodConserv", "evilLiberal", "evilConserv"],
    )
    .unwrap();
    let d =
        Domain::categorical("messages", ["safety-net", "motherhood", "guns", "chthulu"]).unwrap();
    let s_values: Vec<f64> = (-6..=6).map(f64::from).collect();
    let s = Domain::numeric("similarity", &s_values).unwrap();
    let y = Domain::numeric("support", &[0.0, 1.0]).unwrap();

    #[rustfmt::skip]
    let cpt_d_values = vec![
        0.4, 0.6, 0.0, 0.0,
        0.0, 0.7, 0.3, 0.0,
        0.9, 0.0, 0.0, 0.1,
        0.0, 0.0, 0.8, 0.2,
    ];
    #[rustfmt::skip]
    let base: [[i32; 4]; 4] = [
        [ 5,  1, -2, -5],
        [ 1,  5, -5, -2],
        [-2, -5,  5, -5],
        [-5, -2, -5,  5],
    ];
    let ns = s_values.len();
    let mut cpt_s_values = vec![0.0; 4 * 4 * ns];
    for a in 0..4 {
        for b in 0..4 {
            for noise in -1..=1 {
                let idx = (base[a][b] + noise + 6) as usize;
                cpt_s_values[(a * 4 + b) * ns + idx] = 1.0 / 3.0;
            }
        }
    }
    let mut utility_values = Vec::with_capacity(ns * 2);
    for &sv in &s_values {
        utility_values.push(0.0);
        utility_values.push(sv);
    }
    let mut reputation_values = vec![0.5; 16];
    for m in 0..4 {
        reputation_values[m * 4 + m] = 0.0;
    }

    Scenario {
        prior_ti: Categorical::new(t.clone(), vec![0.4, 0.4, 0.1, 0.1]).unwrap(),
        prior_tk: Categorical::new(t.clone(), vec![0.29, 0.69, 0.01, 0.01]).unwrap(),
        prior_tj: Categorical::new(t.clone(), vec![0.4, 0.4, 0.1, 0.1]).unwrap(),
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
        assumed_ti: None,
    }
}

/// Two opposed positions, two messages: a `w`-weighted mixture of a
/// truthful pundit and an inverting one.  With symmetric likelihoods
/// (`p` on each position's own message) and a small reputational cost
/// `r`, the publication marginal has `w` on the diagonal and `1−w` off
/// it, so `w = 0.5` makes every publication carry zero information.
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

/// Brute-force conditional: full joint → slice at the evidence → sum out
/// everything but `query` → normalize.  Independent of `BayesNet::infer`.
pub fn oracle_conditional(
    bn: &BayesNet,
    query: &str,
    evidence: &Assignment,
) -> punditry::Result<Categorical> {
    let mut f = bn.brute_force_joint()?.condition(evidence)?;
    while let Some(other) = f.scope().iter().map(|v| v.id().to_string()).find(|id| id != query) {
        f = f.marginalize(&other)?;
    }
    f.normalize()
}

fn random_distribution(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

/// A random chance-only network: 2–6 variables, domain sizes 2–5, up to
/// two parents per node (always earlier nodes), strictly positive CPT
/// rows so single-variable evidence stays reachable.
pub fn random_bn(rng: &mut ChaCha8Rng) -> BayesNet {
    let n_vars = rng.random_range(2..=6);
    let mut vars: Vec<Var> = Vec::with_capacity(n_vars);
    let mut nodes = Vec::with_capacity(n_vars);
    for i in 0..n_vars {
        let size = rng.random_range(2..=5);
        let labels: Vec<String> = (0..size).map(|l| format!("l{l}")).collect();
        let domain =
            Domain::categorical(format!("dom{i}"), labels.iter().map(String::as_str)).unwrap();
        let var = Var::new(format!("V{i}"), &domain);

        let max_parents = i.min(2);
        let n_parents = rng.random_range(0..=max_parents);
        let mut parent_idx: Vec<usize> = Vec::new();
        while parent_idx.len() < n_parents {
            let cand = rng.random_range(0..i);
            if !parent_idx.contains(&cand) {
                parent_idx.push(cand);
            }
        }
        parent_idx.sort_unstable();

        let mut scope: Vec<Var> = parent_idx.iter().map(|&p| vars[p].clone()).collect();
        let rows: usize = scope.iter().map(|v| v.domain().len()).product();
        scope.push(var.clone());
        let mut values = Vec::with_capacity(rows * size);
        for _ in 0..rows {
            values.extend(random_distribution(rng, size));
        }
        nodes.push(ChanceNode {
            var: var.clone(),
            parents: parent_idx.iter().map(|&p| format!("V{p}")).collect(),
            cpt: Factor::new(scope, values).unwrap(),
        });
        vars.push(var);
    }
    BayesNet::new(nodes).unwrap()
}

/// A random well-formed scenario: 2–3 positions, 2–4 messages, 2–3
/// similarity values, strictly positive message likelihoods (every
/// message stays reachable), symmetric similarity table, payoffs in
/// [−2, 2], positive off-diagonal reputational costs.
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

/// A two-position scenario in which moving belief toward the second
/// position shifts the similarity distribution for a `t0` voter by pure
/// equal-magnitude transfers: the cross row equals the own row with
/// `shifts` applied (`(from, to, delta)` index triples on the similarity
/// domain).  Message `d0` is made likelier under the second position, so
/// observing it classifies strictly negative (downward shifts) or
/// strictly positive (upward shifts) for the voter.
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

/// Draw a random strictly-increasing similarity ladder and an own-row
/// distribution over it, plus disjoint transfer pairs: the raw material
/// for `directional_scenario`.
pub struct DirectionalDraw {
    pub s_values: Vec<f64>,
    pub own_row: Vec<f64>,
    pub shifts: Vec<(usize, usize, f64)>,
}

/// `downward: true` moves mass from higher similarity values to lower
/// ones (strictly negative information); `false` mirrors it upward.
pub fn draw_directional(rng: &mut ChaCha8Rng, downward: bool) -> DirectionalDraw {
    let ns = rng.random_range(3..=6);
    let mut s_values = Vec::with_capacity(ns);
    let mut next = rng.random_range(-4.0..-2.0);
    for _ in 0..ns {
        s_values.push(next);
        next += rng.random_range(0.5..2.0);
    }
    let own_row = random_distribution(rng, ns);

    // Disjoint index pairs, each moving delta from its upper index to its
    // lower one (or the mirror image).
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
