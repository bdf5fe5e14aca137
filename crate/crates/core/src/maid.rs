//! Influence diagrams: chance, decision and utility nodes over discrete
//! variables, solved agent-by-agent into plain Bayesian networks.
//!
//! A diagram is solved by replacing each decision node, in `solve_order`,
//! with the deterministic policy that maximises its owner's total expected
//! utility given the decision's information parents. Once every decision
//! is replaced the diagram is an ordinary [`BayesNet`](crate::bayes::BayesNet).

use std::collections::BTreeSet;
use std::fmt;

use crate::bayes::BayesNet;
use crate::domain::{Categorical, DomainRef};
use crate::factor::{Assignment, Factor, Odometer, Var};
use crate::{Error, Result, PROB_TOL, ZERO_MASS};

/// A random variable with a conditional probability table.
#[derive(Debug, Clone)]
pub struct ChanceNode {
    pub var: Var,
    pub parents: Vec<String>,
    /// Scope must equal `parents ∪ {var}`; every row (one per joint parent
    /// assignment) must sum to 1 within [`PROB_TOL`].
    pub cpt: Factor,
}

/// A variable chosen by an agent after observing its information parents.
#[derive(Debug, Clone)]
pub struct DecisionNode {
    pub var: Var,
    pub info_parents: Vec<String>,
    pub owner: String,
}

/// A real-valued payoff for one agent, as a table over its parents.
#[derive(Debug, Clone)]
pub struct UtilityNode {
    pub id: String,
    pub owner: String,
    pub parents: Vec<String>,
    /// Scope must equal `parents`; entries are arbitrary finite reals.
    pub table: Factor,
}

/// A multi-agent influence diagram.
#[derive(Debug, Clone, Default)]
pub struct Maid {
    pub chance: Vec<ChanceNode>,
    pub decisions: Vec<DecisionNode>,
    pub utilities: Vec<UtilityNode>,
    /// The order in which decisions are solved; must be a permutation of
    /// the decision variable ids.
    pub solve_order: Vec<String>,
}

/// One structural defect discovered by [`Maid::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub node_id: String,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.node_id, self.message)
    }
}

/// A solved decision: one point-mass choice per joint assignment of the
/// information parents, in row-major order (last info variable fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyTable {
    decision: Var,
    info: Vec<Var>,
    choices: Vec<usize>,
}

impl PolicyTable {
    /// Build a policy directly from per-row choices (row-major over the
    /// info domains, last variable fastest).
    pub fn new(decision: Var, info: Vec<Var>, choices: Vec<usize>) -> Result<Self> {
        let rows: usize = info.iter().map(|v| v.domain().len()).product();
        if choices.len() != rows {
            return Err(Error::Structural(format!(
                "policy for `{}` needs {rows} rows, got {}",
                decision.id(),
                choices.len()
            )));
        }
        if let Some(bad) = choices.iter().find(|&&c| c >= decision.domain().len()) {
            return Err(Error::Input(format!(
                "policy choice index {bad} is outside the domain of `{}`",
                decision.id()
            )));
        }
        Ok(PolicyTable { decision, info, choices })
    }

    pub fn decision(&self) -> &Var {
        &self.decision
    }

    pub fn info(&self) -> &[Var] {
        &self.info
    }

    /// Chosen label index per row, rows in row-major info order.
    pub fn choices(&self) -> &[usize] {
        &self.choices
    }

    pub fn rows(&self) -> usize {
        self.choices.len()
    }

    /// Iterate `(info multi-index, chosen decision label index)`.
    pub fn iter_rows(&self) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        let sizes: Vec<usize> = self.info.iter().map(|v| v.domain().len()).collect();
        Odometer::new(sizes).zip(self.choices.iter().copied())
    }

    /// The policy's row for a full assignment of the info parents.
    pub fn row(&self, assignment: &Assignment) -> Result<Categorical> {
        let mut row = 0usize;
        for v in &self.info {
            let label = assignment.get(v.id()).ok_or_else(|| {
                Error::Input(format!("assignment does not bind info parent `{}`", v.id()))
            })?;
            row = row * v.domain().len() + v.domain().require_index(label)?;
        }
        let name = self.decision.domain().label(self.choices[row]).name().to_string();
        Categorical::point_mass(self.decision.domain().clone(), &name)
    }

    /// Deterministic CPT over `info ∪ {decision}` (decision varies fastest).
    pub fn to_cpt(&self) -> Factor {
        let mut scope = self.info.clone();
        scope.push(self.decision.clone());
        let nd = self.decision.domain().len();
        let mut values = vec![0.0; self.choices.len() * nd];
        for (row, &choice) in self.choices.iter().enumerate() {
            values[row * nd + choice] = 1.0;
        }
        Factor::new(scope, values).expect("policy CPT dimensions are consistent")
    }
}

/// Internal: kind of node an id refers to.
#[derive(PartialEq, Clone, Copy)]
enum NodeKind {
    Chance,
    Decision,
}

impl Maid {
    /// The variable (chance or decision) with the given id.
    pub fn var(&self, id: &str) -> Option<&Var> {
        self.chance
            .iter()
            .map(|c| &c.var)
            .chain(self.decisions.iter().map(|d| &d.var))
            .find(|v| v.id() == id)
    }

    fn kind_of(&self, id: &str) -> Option<NodeKind> {
        if self.chance.iter().any(|c| c.var.id() == id) {
            Some(NodeKind::Chance)
        } else if self.decisions.iter().any(|d| d.var.id() == id) {
            Some(NodeKind::Decision)
        } else {
            None
        }
    }

    /// Check every structural invariant; returns one finding per violation.
    pub fn validate(&self) -> Vec<Finding> {
        let mut findings = Vec::new();
        let mut push = |node_id: &str, message: String| {
            findings.push(Finding { node_id: node_id.to_string(), message });
        };

        // Unique variable ids across chance and decision nodes.
        let var_ids: Vec<&str> = self
            .chance
            .iter()
            .map(|c| c.var.id())
            .chain(self.decisions.iter().map(|d| d.var.id()))
            .collect();
        for (i, id) in var_ids.iter().enumerate() {
            if var_ids[..i].contains(id) {
                push(id, "duplicate variable id".into());
            }
        }
        // Utility ids unique and distinct from variable ids.
        for (i, u) in self.utilities.iter().enumerate() {
            if self.utilities[..i].iter().any(|v| v.id == u.id) {
                push(&u.id, "duplicate utility id".into());
            }
            if var_ids.contains(&u.id.as_str()) {
                push(&u.id, "utility id collides with a variable id".into());
            }
        }

        let parent_lists: Vec<(&str, &[String])> = self
            .chance
            .iter()
            .map(|c| (c.var.id(), c.parents.as_slice()))
            .chain(self.decisions.iter().map(|d| (d.var.id(), d.info_parents.as_slice())))
            .collect();
        for (id, parents) in &parent_lists {
            for (i, p) in parents.iter().enumerate() {
                if self.var(p).is_none() {
                    push(id, format!("parent `{p}` does not exist"));
                }
                if p == id {
                    push(id, "node lists itself as a parent".into());
                }
                if parents[..i].contains(p) {
                    push(id, format!("parent `{p}` listed twice"));
                }
            }
        }

        for c in &self.chance {
            for message in check_cpt(c.var.id(), &c.cpt, &c.parents, &c.var, |id| {
                self.var(id).map(|v| v.domain().clone())
            }) {
                push(c.var.id(), message);
            }
        }

        for u in &self.utilities {
            for (i, p) in u.parents.iter().enumerate() {
                if self.var(p).is_none() {
                    push(&u.id, format!("parent `{p}` does not exist"));
                }
                if u.parents[..i].contains(p) {
                    push(&u.id, format!("parent `{p}` listed twice"));
                }
            }
            // Scope must equal the parent set, with matching domains.
            if u.table.scope().len() != u.parents.len()
                || u.parents.iter().any(|p| u.table.position(p).is_none())
            {
                push(
                    &u.id,
                    format!(
                        "table scope [{}] does not match parents [{}]",
                        u.table.scope().iter().map(|v| v.id()).collect::<Vec<_>>().join(", "),
                        u.parents.join(", ")
                    ),
                );
            } else {
                for sv in u.table.scope() {
                    if let Some(node_var) = self.var(sv.id()) {
                        if node_var.domain() != sv.domain() {
                            push(
                                &u.id,
                                format!("scope variable `{}` has a mismatched domain", sv.id()),
                            );
                        }
                    }
                }
            }
        }

        // Acyclicity over chance + decision nodes (stable Kahn scan).
        let mut placed: BTreeSet<&str> = BTreeSet::new();
        let mut remaining: Vec<(&str, &[String])> = parent_lists.clone();
        loop {
            let before = placed.len();
            remaining.retain(|(id, parents)| {
                let ready =
                    parents.iter().all(|p| placed.contains(p.as_str()) || self.var(p).is_none());
                if ready {
                    placed.insert(id);
                }
                !ready
            });
            if remaining.is_empty() {
                break;
            }
            if placed.len() == before {
                let cycle: Vec<&str> = remaining.iter().map(|(id, _)| *id).collect();
                push(cycle[0], format!("cycle among nodes: {}", cycle.join(", ")));
                break;
            }
        }

        // solve_order is a permutation of decision ids.
        for (i, id) in self.solve_order.iter().enumerate() {
            if self.solve_order[..i].contains(id) {
                push(id, "appears twice in solve_order".into());
            }
            if !self.decisions.iter().any(|d| d.var.id() == id.as_str()) {
                push(id, "solve_order entry is not a decision".into());
            }
        }
        for d in &self.decisions {
            if !self.solve_order.iter().any(|id| id == d.var.id()) {
                push(d.var.id(), "decision missing from solve_order".into());
            }
            if !self.utilities.iter().any(|u| u.owner == d.owner) {
                push(d.var.id(), format!("owner `{}` has no utility node", d.owner));
            }
        }

        findings
    }

    /// Solve one decision node into a deterministic policy.
    ///
    /// For each joint assignment of the information parents, the chosen
    /// value maximises the owner's summed expected utility, computed by
    /// exact inference over the ancestral part of the diagram with the
    /// decision clamped; ties go to the first label in the decision's
    /// domain order.
    ///
    /// Information assignments are applied left-to-right as evidence; a
    /// binding that would drive the row's probability mass to or below
    /// the zero-mass threshold is applied as an intervention instead (its
    /// CPT factor is dropped and the value clamped), so unreachable rows
    /// still get the policy their clamped worlds imply.
    pub fn solve_decision(&self, decision_id: &str) -> Result<PolicyTable> {
        let dnode = self
            .decisions
            .iter()
            .find(|d| d.var.id() == decision_id)
            .ok_or_else(|| Error::Input(format!("unknown decision `{decision_id}`")))?;
        let utilities: Vec<&UtilityNode> =
            self.utilities.iter().filter(|u| u.owner == dnode.owner).collect();
        if utilities.is_empty() {
            return Err(Error::Specification(format!(
                "owner `{}` of decision `{decision_id}` has no utility node",
                dnode.owner
            )));
        }

        let mut info: Vec<Var> = Vec::with_capacity(dnode.info_parents.len());
        for pid in &dnode.info_parents {
            let v = self.var(pid).ok_or_else(|| {
                Error::Structural(format!("info parent `{pid}` of `{decision_id}` does not exist"))
            })?;
            info.push(v.clone());
        }

        // Ancestral closure of everything the expected utility depends on.
        let mut closure: BTreeSet<String> = BTreeSet::new();
        let mut stack: Vec<String> = vec![decision_id.to_string()];
        stack.extend(dnode.info_parents.iter().cloned());
        for u in &utilities {
            stack.extend(u.parents.iter().cloned());
        }
        while let Some(id) = stack.pop() {
            if !closure.insert(id.clone()) {
                continue;
            }
            if id == decision_id {
                continue;
            }
            match self.kind_of(&id) {
                Some(NodeKind::Chance) => {
                    let c = self.chance.iter().find(|c| c.var.id() == id).unwrap();
                    stack.extend(c.parents.iter().cloned());
                }
                Some(NodeKind::Decision) => {
                    return Err(Error::Specification(format!(
                        "expected utility of `{decision_id}` depends on unsolved decision \
                         `{id}`; put `{id}` earlier in solve_order"
                    )));
                }
                None => {
                    return Err(Error::Structural(format!(
                        "node `{id}` referenced while solving `{decision_id}` does not exist"
                    )));
                }
            }
        }
        let closure_chance: Vec<&ChanceNode> =
            self.chance.iter().filter(|c| closure.contains(c.var.id())).collect();

        let d_domain = dnode.var.domain().clone();
        let first_label = d_domain.label(0).name().to_string();
        let info_sizes: Vec<usize> = info.iter().map(|v| v.domain().len()).collect();
        let mut choices = Vec::new();

        for row in Odometer::new(info_sizes.clone()) {
            // Greedy left-to-right conditioning with intervention fallback.
            let mut bound = Assignment::new();
            let mut severed: BTreeSet<String> = BTreeSet::new();
            let row_mass = |bound: &Assignment, severed: &BTreeSet<String>| -> Result<f64> {
                let mut test = bound.clone();
                test.set(decision_id, first_label.as_str());
                let reduced: Vec<Factor> = closure_chance
                    .iter()
                    .filter(|c| !severed.contains(c.var.id()))
                    .map(|c| c.cpt.reduce(&test))
                    .collect::<Result<_>>()?;
                let refs: Vec<&Factor> = reduced.iter().collect();
                Ok(Factor::product(&refs)?.total())
            };
            for (k, v) in info.iter().enumerate() {
                bound.set(v.id(), v.domain().label(row[k]).name());
                if row_mass(&bound, &severed)? <= ZERO_MASS {
                    severed.insert(v.id().to_string());
                }
            }
            // Defensive: if a kept binding became impossible because a later
            // intervention rewired its ancestors (only possible when the
            // info order is not ancestrally consistent), sever left-to-right
            // until mass is positive.
            for v in &info {
                if row_mass(&bound, &severed)? > ZERO_MASS {
                    break;
                }
                severed.insert(v.id().to_string());
            }

            let active: Vec<&ChanceNode> =
                closure_chance.iter().filter(|c| !severed.contains(c.var.id())).copied().collect();
            let mut mass_row = 0.0;
            let mut best = f64::NEG_INFINITY;
            let mut best_idx = 0usize;
            for di in 0..d_domain.len() {
                let mut b = bound.clone();
                b.set(decision_id, d_domain.label(di).name());
                let reduced: Vec<Factor> =
                    active.iter().map(|c| c.cpt.reduce(&b)).collect::<Result<_>>()?;
                let refs: Vec<&Factor> = reduced.iter().collect();
                let pfac = Factor::product(&refs)?;
                if di == 0 {
                    mass_row = pfac.total();
                }
                let mut eu = 0.0;
                for u in &utilities {
                    let ured = u.table.reduce(&b)?;
                    let keep: BTreeSet<&str> = ured.scope().iter().map(|v| v.id()).collect();
                    let drop: Vec<String> = pfac
                        .scope()
                        .iter()
                        .filter(|v| !keep.contains(v.id()))
                        .map(|v| v.id().to_string())
                        .collect();
                    let mut proj = pfac.clone();
                    for id in &drop {
                        proj = proj.marginalize(id)?;
                    }
                    for (idx, uval) in ured.entries() {
                        if uval == 0.0 {
                            continue;
                        }
                        let mut a = Assignment::new();
                        for (pos, sv) in ured.scope().iter().enumerate() {
                            a.set(sv.id(), sv.domain().label(idx[pos]).name());
                        }
                        eu += uval * proj.value_at(&a)?;
                    }
                }
                let eu = eu / mass_row;
                if eu > best {
                    best = eu;
                    best_idx = di;
                }
            }
            choices.push(best_idx);
        }

        Ok(PolicyTable { decision: dnode.var.clone(), info, choices })
    }

    /// Solve every decision in `solve_order` and return the resulting
    /// Bayesian network (decisions become deterministic CPTs).
    pub fn compile(&self) -> Result<BayesNet> {
        let findings = self.validate();
        if !findings.is_empty() {
            return Err(Error::Specification(format!(
                "influence diagram is invalid: {}",
                findings.iter().map(Finding::to_string).collect::<Vec<_>>().join("; ")
            )));
        }
        let mut work = self.clone();
        for id in &self.solve_order {
            let policy = work.solve_decision(id)?;
            let pos = work
                .decisions
                .iter()
                .position(|d| d.var.id() == id.as_str())
                .expect("validated solve_order entries are decisions");
            let dnode = work.decisions.remove(pos);
            work.chance.push(ChanceNode {
                var: dnode.var,
                parents: dnode.info_parents,
                cpt: policy.to_cpt(),
            });
        }
        BayesNet::new(work.chance)
    }
}

/// Shared CPT sanity checks (also used by [`BayesNet`]): scope equals
/// `parents ∪ {self}` with matching domains, entries non-negative, every
/// row sums to 1 within [`PROB_TOL`]. `lookup` resolves a variable id to
/// its declared domain, if the id exists.
pub(crate) fn check_cpt(
    node_id: &str,
    cpt: &Factor,
    parents: &[String],
    var: &Var,
    lookup: impl Fn(&str) -> Option<DomainRef>,
) -> Vec<String> {
    let mut problems = Vec::new();
    let mut expected: Vec<&str> = parents.iter().map(String::as_str).collect();
    expected.push(node_id);
    let scope_ids: Vec<&str> = cpt.scope().iter().map(|v| v.id()).collect();
    let mut expected_sorted = expected.clone();
    expected_sorted.sort_unstable();
    let mut scope_sorted = scope_ids.clone();
    scope_sorted.sort_unstable();
    if expected_sorted != scope_sorted {
        problems.push(format!(
            "cpt scope [{}] does not match parents + self [{}]",
            scope_ids.join(", "),
            expected.join(", ")
        ));
        return problems;
    }
    for sv in cpt.scope() {
        let declared =
            if sv.id() == node_id { Some(var.domain().clone()) } else { lookup(sv.id()) };
        match declared {
            Some(d) if &d == sv.domain() => {}
            Some(_) => {
                problems.push(format!("scope variable `{}` has a mismatched domain", sv.id()));
                return problems;
            }
            None => {
                problems.push(format!("scope variable `{}` does not exist", sv.id()));
                return problems;
            }
        }
    }
    if let Some(bad) = cpt.values().iter().find(|v| **v < -ZERO_MASS) {
        problems.push(format!("cpt contains negative entry {bad}"));
    }
    match cpt.marginalize(node_id) {
        Ok(rows) => {
            if rows.scope().is_empty() {
                let total = rows.values()[0];
                if (total - 1.0).abs() > PROB_TOL {
                    problems.push(format!("cpt row sums to {total}, expected 1"));
                }
            } else {
                for (idx, total) in rows.entries() {
                    if (total - 1.0).abs() > PROB_TOL {
                        let desc: Vec<String> = rows
                            .scope()
                            .iter()
                            .zip(&idx)
                            .map(|(v, &i)| format!("{}={}", v.id(), v.domain().label(i).name()))
                            .collect();
                        problems.push(format!(
                            "cpt row ({}) sums to {total}, expected 1",
                            desc.join(", ")
                        ));
                    }
                }
            }
        }
        Err(e) => problems.push(format!("cpt row check failed: {e}")),
    }
    problems
}
