//! Labelled finite domains and categorical distributions over them.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result, PROB_TOL, ZERO_MASS};

/// Canonical display form for a numeric label value.
///
/// Rust's `f64` `Display` prints the shortest decimal string that parses
/// back to the same value, so this naming is stable and round-trips.
pub fn numeric_label(value: f64) -> String {
    format!("{value}")
}

/// One element of a finite domain, with an optional numeric interpretation.
#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    name: String,
    value: Option<f64>,
}

impl Label {
    /// A purely categorical label.
    pub fn categorical(name: impl Into<String>) -> Self {
        Label { name: name.into(), value: None }
    }

    /// A label carrying a numeric value, named by the canonical form of
    /// that value.
    pub fn numeric(value: f64) -> Self {
        Label { name: numeric_label(value), value: Some(value) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self) -> Option<f64> {
        self.value
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A named, ordered set of labels.
///
/// Invariants (enforced at construction):
/// * at least one label, and label names are unique;
/// * if the domain is `ordered_numeric`, every label carries a finite
///   value and values are strictly increasing in label order.
///
/// Domains are shared by reference ([`DomainRef`]); equality of two
/// domains means equal id, labels and ordering flag.
#[derive(Debug, PartialEq)]
pub struct Domain {
    id: String,
    labels: Vec<Label>,
    ordered_numeric: bool,
}

/// Shared handle to a [`Domain`].
pub type DomainRef = Arc<Domain>;

impl Domain {
    /// Build a domain from explicit labels.
    pub fn new(
        id: impl Into<String>,
        labels: Vec<Label>,
        ordered_numeric: bool,
    ) -> Result<DomainRef> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::Structural("domain id must be non-empty".into()));
        }
        if labels.is_empty() {
            return Err(Error::Structural(format!("domain `{id}` has no labels")));
        }
        for (i, a) in labels.iter().enumerate() {
            if a.name.is_empty() {
                return Err(Error::Structural(format!("domain `{id}` has an empty label name")));
            }
            if let Some(v) = a.value {
                if !v.is_finite() {
                    return Err(Error::Structural(format!(
                        "domain `{id}` label `{}` has a non-finite value",
                        a.name
                    )));
                }
            }
            for b in &labels[i + 1..] {
                if a.name == b.name {
                    return Err(Error::Structural(format!(
                        "domain `{id}` has duplicate label `{}`",
                        a.name
                    )));
                }
            }
        }
        if ordered_numeric {
            let mut prev: Option<f64> = None;
            for l in &labels {
                let v = l.value.ok_or_else(|| {
                    Error::Structural(format!(
                        "ordered numeric domain `{id}` label `{}` has no numeric value",
                        l.name
                    ))
                })?;
                if let Some(p) = prev {
                    if v <= p {
                        return Err(Error::Structural(format!(
                            "ordered numeric domain `{id}` values must be strictly increasing, \
                             got {p} then {v}"
                        )));
                    }
                }
                prev = Some(v);
            }
        }
        Ok(Arc::new(Domain { id, labels, ordered_numeric }))
    }

    /// A purely categorical domain from label names.
    pub fn categorical<S: Into<String>>(
        id: impl Into<String>,
        names: impl IntoIterator<Item = S>,
    ) -> Result<DomainRef> {
        let labels = names.into_iter().map(|n| Label::categorical(n.into())).collect();
        Domain::new(id, labels, false)
    }

    /// An ordered numeric domain from raw values (labels named canonically).
    pub fn numeric(id: impl Into<String>, values: &[f64]) -> Result<DomainRef> {
        let labels = values.iter().map(|&v| Label::numeric(v)).collect();
        Domain::new(id, labels, true)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one label
    }

    pub fn is_ordered_numeric(&self) -> bool {
        self.ordered_numeric
    }

    /// Position of a label name, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    /// Position of a label name, as a checked lookup.
    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Input(format!("label `{name}` is not in domain `{}`", self.id)))
    }

    pub fn label(&self, index: usize) -> &Label {
        &self.labels[index]
    }

    /// Numeric value of the label at `index`; error if the label carries none.
    pub fn value(&self, index: usize) -> Result<f64> {
        self.labels[index].value.ok_or_else(|| {
            Error::Input(format!(
                "label `{}` of domain `{}` has no numeric value",
                self.labels[index].name, self.id
            ))
        })
    }

    /// All label names, in domain order.
    pub fn names(&self) -> Vec<&str> {
        self.labels.iter().map(|l| l.name.as_str()).collect()
    }
}

/// A probability distribution over one domain.
///
/// Invariants: entries are finite, within `[-1e-12, 1 + 1e-9]` before
/// clamping (tiny negative rounding noise is clamped to zero), and sum to
/// one within [`PROB_TOL`].
#[derive(Debug, Clone)]
pub struct Categorical {
    domain: DomainRef,
    probs: Vec<f64>,
}

impl Categorical {
    pub fn new(domain: DomainRef, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != domain.len() {
            return Err(Error::Structural(format!(
                "distribution over `{}` has {} entries for {} labels",
                domain.id(),
                probs.len(),
                domain.len()
            )));
        }
        let mut clean = probs;
        let mut total = 0.0;
        for (i, p) in clean.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::Specification(format!(
                    "probability of `{}` in `{}` is not finite",
                    domain.label(i).name(),
                    domain.id()
                )));
            }
            if *p < -ZERO_MASS {
                return Err(Error::Specification(format!(
                    "probability of `{}` in `{}` is negative ({})",
                    domain.label(i).name(),
                    domain.id(),
                    *p
                )));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
            total += *p;
        }
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::Specification(format!(
                "distribution over `{}` sums to {total}, expected 1 within {PROB_TOL}",
                domain.id()
            )));
        }
        Ok(Categorical { domain, probs: clean })
    }

    /// All mass on one label.
    pub fn point_mass(domain: DomainRef, name: &str) -> Result<Self> {
        let idx = domain.require_index(name)?;
        let mut probs = vec![0.0; domain.len()];
        probs[idx] = 1.0;
        Ok(Categorical { domain, probs })
    }

    /// Uniform distribution.
    pub fn uniform(domain: DomainRef) -> Self {
        let n = domain.len();
        Categorical { domain, probs: vec![1.0 / n as f64; n] }
    }

    pub fn domain(&self) -> &DomainRef {
        &self.domain
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of a label by name.
    pub fn prob(&self, name: &str) -> Result<f64> {
        Ok(self.probs[self.domain.require_index(name)?])
    }

    /// Expected numeric value; requires an ordered numeric domain.
    pub fn expectation(&self) -> Result<f64> {
        if !self.domain.is_ordered_numeric() {
            return Err(Error::Input(format!(
                "expectation requires an ordered numeric domain, `{}` is not",
                self.domain.id()
            )));
        }
        let mut e = 0.0;
        for (i, p) in self.probs.iter().enumerate() {
            e += p * self.domain.value(i)?;
        }
        Ok(e)
    }

    /// Largest absolute per-label difference to another distribution over
    /// the same domain.
    pub fn sup_distance(&self, other: &Categorical) -> Result<f64> {
        if self.domain != other.domain {
            return Err(Error::Input(format!(
                "cannot compare distributions over `{}` and `{}`",
                self.domain.id(),
                other.domain.id()
            )));
        }
        Ok(self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}
