//! Dense factors over ordered variable scopes, with exact table algebra.
//!
//! A [`Factor`] stores a value for every joint assignment of its scope in
//! row-major order: the *last* scope variable varies fastest. All algebra
//! (product, marginalisation, conditioning, normalisation) is exact up to
//! `f64` rounding.

use std::collections::BTreeMap;
use std::fmt;

use crate::domain::{Categorical, DomainRef};
use crate::{Error, Result, ZERO_MASS};

/// A variable: an identifier bound to a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Var {
    id: String,
    domain: DomainRef,
}

impl Var {
    pub fn new(id: impl Into<String>, domain: &DomainRef) -> Self {
        Var { id: id.into(), domain: domain.clone() }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> &DomainRef {
        &self.domain
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A partial binding of variables (by id) to labels (by name).
///
/// Bindings are kept sorted by variable id, so iteration order, `Display`
/// and serialisation are deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct Assignment {
    bindings: BTreeMap<String, String>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style bind; rebinding a variable overwrites its label.
    pub fn bind(mut self, var: impl Into<String>, label: impl Into<String>) -> Self {
        self.bindings.insert(var.into(), label.into());
        self
    }

    pub fn set(&mut self, var: impl Into<String>, label: impl Into<String>) {
        self.bindings.insert(var.into(), label.into());
    }

    pub fn get(&self, var: &str) -> Option<&str> {
        self.bindings.get(var).map(String::as_str)
    }

    pub fn contains(&self, var: &str) -> bool {
        self.bindings.contains_key(var)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// `(variable, label)` pairs in variable-id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in self.iter() {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Iterator over all joint index vectors of a list of sizes, last position
/// fastest (row-major order).
pub(crate) struct Odometer {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    pub(crate) fn new(sizes: Vec<usize>) -> Self {
        let next = if sizes.contains(&0) { None } else { Some(vec![0; sizes.len()]) };
        Odometer { sizes, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        // Advance like an odometer: bump the last position, carrying left.
        let mut idx = current.clone();
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < self.sizes[pos] {
                self.next = Some(idx);
                break;
            }
            idx[pos] = 0;
        }
        Some(current)
    }
}

/// A dense table of `f64` values over a scope of variables.
///
/// Invariants: scope ids are unique, every entry is finite, and the value
/// vector length equals the product of the scope domain sizes. Entries may
/// be negative (utility tables reuse the same machinery); operations with
/// probability semantics ([`Factor::normalize`]) check non-negativity
/// themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    scope: Vec<Var>,
    values: Vec<f64>,
}

impl Factor {
    pub fn new(scope: Vec<Var>, values: Vec<f64>) -> Result<Self> {
        let mut size: usize = 1;
        for (i, v) in scope.iter().enumerate() {
            for w in &scope[i + 1..] {
                if v.id == w.id {
                    return Err(Error::Structural(format!(
                        "factor scope mentions variable `{}` twice",
                        v.id
                    )));
                }
            }
            size = size
                .checked_mul(v.domain.len())
                .ok_or_else(|| Error::Resource("factor size overflows usize".into()))?;
        }
        if values.len() != size {
            return Err(Error::Structural(format!(
                "factor over [{}] needs {size} values, got {}",
                scope.iter().map(|v| v.id.as_str()).collect::<Vec<_>>().join(", "),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Structural(format!("factor contains non-finite entry {bad}")));
        }
        Ok(Factor { scope, values })
    }

    /// Zero-scope factor holding a single value.
    pub fn scalar(value: f64) -> Result<Self> {
        Factor::new(Vec::new(), vec![value])
    }

    pub fn scope(&self) -> &[Var] {
        &self.scope
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// Position of a variable id in the scope.
    pub fn position(&self, var: &str) -> Option<usize> {
        self.scope.iter().position(|v| v.id == var)
    }

    fn sizes(&self) -> Vec<usize> {
        self.scope.iter().map(|v| v.domain.len()).collect()
    }

    /// Row-major strides: `strides[i]` is the step in the flat value vector
    /// when scope variable `i` advances by one label.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let sizes = self.sizes();
        let mut strides = vec![1; sizes.len()];
        for i in (0..sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        strides
    }

    /// Flat position of a full multi-index.
    pub(crate) fn flat_index(&self, idx: &[usize]) -> usize {
        let strides = self.strides();
        idx.iter().zip(&strides).map(|(i, s)| i * s).sum()
    }

    /// Value at a full assignment of the scope.
    pub fn value_at(&self, assignment: &Assignment) -> Result<f64> {
        let mut idx = Vec::with_capacity(self.scope.len());
        for var in &self.scope {
            let label = assignment.get(&var.id).ok_or_else(|| {
                Error::Input(format!("assignment does not bind scope variable `{}`", var.id))
            })?;
            idx.push(var.domain.require_index(label)?);
        }
        Ok(self.values[self.flat_index(&idx)])
    }

    /// Iterate `(multi_index, value)` over all entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        Odometer::new(self.sizes()).map(|idx| {
            let v = self.values[self.flat_index(&idx)];
            (idx, v)
        })
    }

    /// Pointwise product of factors over the union scope.
    ///
    /// The union scope keeps first-appearance order. Variables shared by
    /// id must carry equal domains.
    pub fn product(factors: &[&Factor]) -> Result<Factor> {
        if factors.is_empty() {
            return Factor::scalar(1.0);
        }
        let mut scope: Vec<Var> = Vec::new();
        for f in factors {
            for v in &f.scope {
                match scope.iter().find(|u| u.id == v.id) {
                    None => scope.push(v.clone()),
                    Some(u) => {
                        if u.domain != v.domain {
                            return Err(Error::Structural(format!(
                                "variable `{}` appears with two different domains \
                                 (`{}` and `{}`)",
                                v.id,
                                u.domain.id(),
                                v.domain.id()
                            )));
                        }
                    }
                }
            }
        }
        // For every input factor, where does each of its scope vars sit in
        // the union scope?
        let positions: Vec<Vec<usize>> = factors
            .iter()
            .map(|f| {
                f.scope
                    .iter()
                    .map(|v| scope.iter().position(|u| u.id == v.id).expect("scope is a union"))
                    .collect()
            })
            .collect();
        let strides: Vec<Vec<usize>> = factors.iter().map(|f| f.strides()).collect();
        let sizes: Vec<usize> = scope.iter().map(|v| v.domain.len()).collect();
        let mut size: usize = 1;
        for s in &sizes {
            size = size
                .checked_mul(*s)
                .ok_or_else(|| Error::Resource("product factor size overflows usize".into()))?;
        }
        let mut values = Vec::with_capacity(size);
        for idx in Odometer::new(sizes) {
            let mut v = 1.0;
            for (f, (pos, st)) in factors.iter().zip(positions.iter().zip(&strides)) {
                let flat: usize = pos.iter().zip(st).map(|(&p, &s)| idx[p] * s).sum();
                v *= f.values[flat];
            }
            values.push(v);
        }
        Factor::new(scope, values)
    }

    /// Sum one variable out of the scope.
    pub fn marginalize(&self, var: &str) -> Result<Factor> {
        let pos = self.position(var).ok_or_else(|| {
            Error::Structural(format!("cannot marginalize `{var}`: not in factor scope"))
        })?;
        let mut out_scope = self.scope.clone();
        out_scope.remove(pos);
        let out_sizes: Vec<usize> = out_scope.iter().map(|v| v.domain.len()).collect();
        let out_size: usize = out_sizes.iter().product();
        let mut values = vec![0.0; out_size];
        let mut out_strides = vec![1; out_sizes.len()];
        for i in (0..out_sizes.len().saturating_sub(1)).rev() {
            out_strides[i] = out_strides[i + 1] * out_sizes[i + 1];
        }
        for (idx, v) in self.entries() {
            let mut flat = 0;
            let mut k = 0;
            for (i, &x) in idx.iter().enumerate() {
                if i == pos {
                    continue;
                }
                flat += x * out_strides[k];
                k += 1;
            }
            values[flat] += v;
        }
        Factor::new(out_scope, values)
    }

    /// Restrict the factor to an assignment of some of its scope variables.
    ///
    /// Every bound variable must be in the scope (use [`Factor::reduce`] to
    /// ignore extraneous bindings). The result scope drops the bound
    /// variables; values are the matching slice, *not* renormalised.
    pub fn condition(&self, assignment: &Assignment) -> Result<Factor> {
        for (var, _) in assignment.iter() {
            if self.position(var).is_none() {
                return Err(Error::Structural(format!(
                    "cannot condition on `{var}`: not in factor scope"
                )));
            }
        }
        self.reduce(assignment)
    }

    /// Like [`Factor::condition`], but ignores bindings for variables that
    /// are not in the scope. Bound labels must exist in their domains.
    pub fn reduce(&self, assignment: &Assignment) -> Result<Factor> {
        let mut fixed: Vec<Option<usize>> = Vec::with_capacity(self.scope.len());
        for var in &self.scope {
            match assignment.get(&var.id) {
                Some(label) => fixed.push(Some(var.domain.require_index(label)?)),
                None => fixed.push(None),
            }
        }
        if fixed.iter().all(Option::is_none) {
            return Ok(self.clone());
        }
        let out_scope: Vec<Var> = self
            .scope
            .iter()
            .zip(&fixed)
            .filter(|(_, f)| f.is_none())
            .map(|(v, _)| v.clone())
            .collect();
        let out_sizes: Vec<usize> = out_scope.iter().map(|v| v.domain.len()).collect();
        let mut values = Vec::with_capacity(out_sizes.iter().product());
        for out_idx in Odometer::new(out_sizes) {
            let mut idx = Vec::with_capacity(self.scope.len());
            let mut k = 0;
            for f in &fixed {
                match f {
                    Some(i) => idx.push(*i),
                    None => {
                        idx.push(out_idx[k]);
                        k += 1;
                    }
                }
            }
            values.push(self.values[self.flat_index(&idx)]);
        }
        Factor::new(out_scope, values)
    }

    /// Normalise a single-variable factor into a distribution.
    ///
    /// Errors: more than one scope variable ([`Error::Input`]), negative
    /// mass beyond rounding noise ([`Error::Specification`]), or total mass
    /// at or below the zero-mass threshold ([`Error::ZeroEvidence`]).
    pub fn normalize(&self) -> Result<Categorical> {
        if self.scope.len() != 1 {
            return Err(Error::Input(format!(
                "normalize expects a single-variable factor, scope has {} variables",
                self.scope.len()
            )));
        }
        let var = &self.scope[0];
        let mut total = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            if *v < -ZERO_MASS {
                return Err(Error::Specification(format!(
                    "negative mass {v} at `{}={}`",
                    var.id,
                    var.domain.label(i).name()
                )));
            }
            total += v.max(0.0);
        }
        if total <= ZERO_MASS {
            return Err(Error::ZeroEvidence(format!("total mass over `{}` is {total}", var.id)));
        }
        let probs = self.values.iter().map(|v| v.max(0.0) / total).collect();
        Categorical::new(var.domain.clone(), probs)
    }

    /// Rename a scope variable, keeping its domain and the value table.
    pub fn rename_var(&self, old: &str, new: &str) -> Result<Factor> {
        let pos = self.position(old).ok_or_else(|| {
            Error::Structural(format!("cannot rename `{old}`: not in factor scope"))
        })?;
        if old != new && self.position(new).is_some() {
            return Err(Error::Structural(format!(
                "cannot rename `{old}` to `{new}`: already in scope"
            )));
        }
        let mut scope = self.scope.clone();
        scope[pos] = Var::new(new, &scope[pos].domain.clone());
        Factor::new(scope, self.values.clone())
    }

    /// Total of all entries.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}
