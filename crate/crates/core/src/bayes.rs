//! Plain Bayesian networks: exact conditional queries by variable
//! elimination, plus a brute-force joint-enumeration oracle that shares no
//! algebra with the factored inference path.

use std::collections::BTreeMap;

use crate::domain::Categorical;
use crate::factor::{Assignment, Factor, Odometer, Var};
use crate::maid::{check_cpt, ChanceNode};
use crate::{Error, Result, DEFAULT_JOINT_CAP};

/// A validated, topologically ordered network of chance nodes.
#[derive(Debug, Clone)]
pub struct BayesNet {
    nodes: Vec<ChanceNode>,
}

impl BayesNet {
    /// Validate and topologically sort the nodes (stable: among ready
    /// nodes, input order is preserved).
    pub fn new(nodes: Vec<ChanceNode>) -> Result<Self> {
        for (i, n) in nodes.iter().enumerate() {
            if nodes[..i].iter().any(|m| m.var.id() == n.var.id()) {
                return Err(Error::Structural(format!("duplicate variable id `{}`", n.var.id())));
            }
        }
        let lookup =
            |id: &str| nodes.iter().find(|n| n.var.id() == id).map(|n| n.var.domain().clone());
        for n in &nodes {
            for p in &n.parents {
                if lookup(p).is_none() {
                    return Err(Error::Structural(format!(
                        "node `{}` has unknown parent `{p}`",
                        n.var.id()
                    )));
                }
            }
            let problems = check_cpt(n.var.id(), &n.cpt, &n.parents, &n.var, lookup);
            if let Some(first) = problems.first() {
                return Err(Error::Specification(format!("node `{}`: {first}", n.var.id())));
            }
        }
        // Stable topological sort.
        let mut sorted: Vec<ChanceNode> = Vec::with_capacity(nodes.len());
        let mut remaining = nodes;
        while !remaining.is_empty() {
            let placed: Vec<&str> = sorted.iter().map(|n| n.var.id()).collect();
            let pos = remaining
                .iter()
                .position(|n| n.parents.iter().all(|p| placed.contains(&p.as_str())));
            match pos {
                Some(i) => sorted.push(remaining.remove(i)),
                None => {
                    let ids: Vec<&str> = remaining.iter().map(|n| n.var.id()).collect();
                    return Err(Error::Structural(format!(
                        "network contains a cycle among: {}",
                        ids.join(", ")
                    )));
                }
            }
        }
        Ok(BayesNet { nodes: sorted })
    }

    /// Nodes in topological order.
    pub fn nodes(&self) -> &[ChanceNode] {
        &self.nodes
    }

    pub fn node(&self, id: &str) -> Option<&ChanceNode> {
        self.nodes.iter().find(|n| n.var.id() == id)
    }

    pub fn var(&self, id: &str) -> Option<&Var> {
        self.node(id).map(|n| &n.var)
    }

    /// Number of entries a full joint table would have.
    pub fn joint_size(&self) -> Result<usize> {
        let mut size: usize = 1;
        for n in &self.nodes {
            size = size
                .checked_mul(n.var.domain().len())
                .ok_or_else(|| Error::Resource("joint table size overflows usize".into()))?;
        }
        Ok(size)
    }

    /// Exact posterior of one variable given evidence, by variable
    /// elimination in reverse topological order.
    pub fn infer(&self, query: &str, evidence: &Assignment) -> Result<Categorical> {
        let qvar = self
            .var(query)
            .ok_or_else(|| Error::Input(format!("query variable `{query}` is not in the network")))?
            .clone();
        if evidence.contains(query) {
            return Err(Error::Input(format!("query variable `{query}` is bound as evidence")));
        }
        for (v, label) in evidence.iter() {
            let var = self.var(v).ok_or_else(|| {
                Error::Input(format!("evidence variable `{v}` is not in the network"))
            })?;
            var.domain().require_index(label)?;
        }

        let mut factors: Vec<Factor> =
            self.nodes.iter().map(|n| n.cpt.reduce(evidence)).collect::<Result<_>>()?;
        for node in self.nodes.iter().rev() {
            let id = node.var.id();
            if id == query || evidence.contains(id) {
                continue;
            }
            let (with, without): (Vec<Factor>, Vec<Factor>) =
                factors.into_iter().partition(|f| f.position(id).is_some());
            factors = without;
            if with.is_empty() {
                continue;
            }
            let refs: Vec<&Factor> = with.iter().collect();
            factors.push(Factor::product(&refs)?.marginalize(id)?);
        }
        let refs: Vec<&Factor> = factors.iter().collect();
        let joint = Factor::product(&refs)?;
        debug_assert_eq!(joint.scope().len(), 1);
        debug_assert_eq!(joint.scope()[0].id(), qvar.id());
        joint.normalize().map_err(|e| match e {
            Error::ZeroEvidence(_) => Error::ZeroEvidence(format!(
                "evidence ({evidence}) has probability mass below the zero threshold"
            )),
            other => other,
        })
    }

    /// Full joint distribution by direct enumeration, multiplying raw CPT
    /// entries for every assignment. Deliberately shares no code with
    /// [`Factor::product`]/[`Factor::marginalize`] so it can serve as an
    /// independent oracle for the factored path.
    pub fn brute_force_joint(&self) -> Result<Factor> {
        self.brute_force_joint_capped(DEFAULT_JOINT_CAP)
    }

    /// As [`BayesNet::brute_force_joint`] with an explicit entry cap.
    pub fn brute_force_joint_capped(&self, cap: usize) -> Result<Factor> {
        let size = self.joint_size()?;
        if size > cap {
            return Err(Error::Resource(format!(
                "joint table would have {size} entries, cap is {cap}"
            )));
        }
        let order: BTreeMap<&str, usize> =
            self.nodes.iter().enumerate().map(|(i, n)| (n.var.id(), i)).collect();
        // For each node, how to read its CPT entry straight from a joint
        // multi-index: (position in the joint index, stride in the CPT).
        let luts: Vec<Vec<(usize, usize)>> = self
            .nodes
            .iter()
            .map(|n| {
                let strides = n.cpt.strides();
                n.cpt.scope().iter().zip(strides).map(|(v, s)| (order[v.id()], s)).collect()
            })
            .collect();
        let sizes: Vec<usize> = self.nodes.iter().map(|n| n.var.domain().len()).collect();
        let mut values = Vec::with_capacity(size);
        for idx in Odometer::new(sizes) {
            let mut p = 1.0;
            for (n, lut) in self.nodes.iter().zip(&luts) {
                let flat: usize = lut.iter().map(|&(pos, stride)| idx[pos] * stride).sum();
                p *= n.cpt.values()[flat];
            }
            values.push(p);
        }
        Factor::new(self.nodes.iter().map(|n| n.var.clone()).collect(), values)
    }
}
