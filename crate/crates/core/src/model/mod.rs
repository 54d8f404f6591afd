//! Heterogeneous storage-system description, validation and the spec file format.

mod enumerate;
mod file;

pub use enumerate::{count_sequences, enumerate_sequences, SequenceIter};
pub use file::ParseError;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Bitmask-based algorithms cap the system size.
pub const MAX_NODES: usize = 64;

/// One storage node `U_id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSpec {
    /// 1-based node id.
    pub id: usize,
    /// Stored packets.
    pub alpha: Rational,
    /// Alternative helper sets; every set has `d` members where `d` is the repair degree.
    pub surviving_sets: Vec<Vec<usize>>,
}

impl NodeSpec {
    pub fn new(id: usize, alpha: Rational, surviving_sets: Vec<Vec<usize>>) -> Self {
        Self {
            id,
            alpha,
            surviving_sets,
        }
    }

    /// Repair degree, taken from the first surviving set.
    pub fn repair_degree(&self) -> usize {
        self.surviving_sets.first().map_or(0, Vec::len)
    }
}

/// A full `(n, k)` heterogeneous system with download unit `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DssSpec {
    pub n: usize,
    pub k: usize,
    pub beta: Rational,
    pub nodes: Vec<NodeSpec>,
}

impl DssSpec {
    pub fn node(&self, id: usize) -> Option<&NodeSpec> {
        self.nodes.iter().find(|node| node.id == id)
    }

    /// Nodes ordered by id. Only meaningful on a validated spec.
    pub fn nodes_by_id(&self) -> Vec<&NodeSpec> {
        let mut nodes: Vec<&NodeSpec> = self.nodes.iter().collect();
        nodes.sort_by_key(|node| node.id);
        nodes
    }

    /// Repair degrees `d_1..d_n` in id order.
    pub fn repair_degrees(&self) -> Vec<usize> {
        self.nodes_by_id()
            .iter()
            .map(|node| node.repair_degree())
            .collect()
    }

    /// Storage `alpha_1..alpha_n` in id order.
    pub fn alphas(&self) -> Vec<Rational> {
        self.nodes_by_id()
            .iter()
            .map(|node| node.alpha.clone())
            .collect()
    }

    /// Same system with storage replaced by `alphas` (id order).
    pub fn with_alphas(&self, alphas: &[Rational]) -> DssSpec {
        let mut spec = self.clone();
        for node in &mut spec.nodes {
            node.alpha = alphas[node.id - 1].clone();
        }
        spec
    }

    pub fn with_beta(&self, beta: Rational) -> DssSpec {
        DssSpec {
            beta,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_spec(self)
    }
}

/// Identifier of a validation rule; rendered in kebab-case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    NodeCount,
    NodeCountLimit,
    ReconstructionDegree,
    NegativeBeta,
    NodeListLength,
    IdRange,
    DuplicateId,
    MissingId,
    NegativeAlpha,
    EmptySurvivingSets,
    SelfInSurvivingSet,
    UnknownHelper,
    DuplicateHelper,
    InconsistentRepairDegree,
    RepairDegreeRange,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::NodeCount => "node-count",
            Rule::NodeCountLimit => "node-count-limit",
            Rule::ReconstructionDegree => "reconstruction-degree",
            Rule::NegativeBeta => "negative-beta",
            Rule::NodeListLength => "node-list-length",
            Rule::IdRange => "id-range",
            Rule::DuplicateId => "duplicate-id",
            Rule::MissingId => "missing-id",
            Rule::NegativeAlpha => "negative-alpha",
            Rule::EmptySurvivingSets => "empty-surviving-sets",
            Rule::SelfInSurvivingSet => "self-in-surviving-set",
            Rule::UnknownHelper => "unknown-helper",
            Rule::DuplicateHelper => "duplicate-helper",
            Rule::InconsistentRepairDegree => "inconsistent-repair-degree",
            Rule::RepairDegreeRange => "repair-degree-range",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

/// Checks every structural rule of the model. Violations are collected, not short-circuited.
pub fn validate_spec(spec: &DssSpec) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |rule, detail: String| out.push(Violation { rule, detail });

    if spec.n < 2 {
        push(
            Rule::NodeCount,
            format!("n = {} but at least 2 nodes are required", spec.n),
        );
    }
    if spec.n > MAX_NODES {
        push(
            Rule::NodeCountLimit,
            format!(
                "n = {} exceeds the supported maximum of {MAX_NODES}",
                spec.n
            ),
        );
    }
    if spec.k < 1 || spec.k >= spec.n {
        push(
            Rule::ReconstructionDegree,
            format!(
                "reconstruction degree must be < n and >= 1 (k = {}, n = {})",
                spec.k, spec.n
            ),
        );
    }
    if spec.beta.is_negative() {
        push(
            Rule::NegativeBeta,
            format!("beta = {} is negative", spec.beta),
        );
    }
    if spec.nodes.len() != spec.n {
        push(
            Rule::NodeListLength,
            format!("{} nodes listed but n = {}", spec.nodes.len(), spec.n),
        );
    }

    let mut seen = BTreeSet::new();
    for node in &spec.nodes {
        if node.id < 1 || node.id > spec.n {
            push(
                Rule::IdRange,
                format!("node id {} outside 1..={}", node.id, spec.n),
            );
        }
        if !seen.insert(node.id) {
            push(
                Rule::DuplicateId,
                format!("node id {} listed more than once", node.id),
            );
        }
    }
    for id in 1..=spec.n.min(MAX_NODES) {
        if !seen.contains(&id) {
            push(Rule::MissingId, format!("node id {id} is not described"));
        }
    }

    for node in &spec.nodes {
        let id = node.id;
        if node.alpha.is_negative() {
            push(
                Rule::NegativeAlpha,
                format!("U{id}: alpha = {} is negative", node.alpha),
            );
        }
        if node.surviving_sets.is_empty() {
            push(
                Rule::EmptySurvivingSets,
                format!("U{id} has no surviving set"),
            );
            continue;
        }
        let degree = node.repair_degree();
        for (index, set) in node.surviving_sets.iter().enumerate() {
            let label = format!("U{id} surviving set {}", index + 1);
            if set.contains(&id) {
                push(
                    Rule::SelfInSurvivingSet,
                    format!("{label} contains U{id} itself"),
                );
            }
            for &helper in set {
                if helper < 1 || helper > spec.n {
                    push(
                        Rule::UnknownHelper,
                        format!("{label} names unknown node {helper}"),
                    );
                }
            }
            let distinct: BTreeSet<_> = set.iter().collect();
            if distinct.len() != set.len() {
                push(Rule::DuplicateHelper, format!("{label} repeats a helper"));
            }
            if set.len() != degree {
                push(
                    Rule::InconsistentRepairDegree,
                    format!(
                        "inconsistent repair degree: {label} has {} helpers, set 1 has {degree}",
                        set.len()
                    ),
                );
            }
        }
        if degree < 1 || degree + 1 > spec.n {
            push(
                Rule::RepairDegreeRange,
                format!(
                    "U{id}: repair degree {degree} outside 1..={}",
                    spec.n.saturating_sub(1)
                ),
            );
        }
    }

    ValidationReport::from_violations(out)
}

/// One position of a surviving sequence: node `U_node` repaired from its set `set_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SequenceEntry {
    /// 1-based node id.
    pub node: usize,
    /// 0-based index into the node's `surviving_sets` (rendered 1-based as `S^(l)`).
    pub set_index: usize,
}

impl fmt::Display for SequenceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}:S({})", self.node, self.set_index + 1)
    }
}

/// Ordered choice of `k` distinct nodes with one surviving set each.
///
/// `Ord` is the canonical enumeration order: lexicographic over the entries,
/// each entry compared by node id then set index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurvivingSequence {
    pub entries: Vec<SequenceEntry>,
}

impl SurvivingSequence {
    pub fn new(entries: Vec<SequenceEntry>) -> Self {
        Self { entries }
    }

    /// Builds a sequence from `(node id, 0-based set index)` pairs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(node, set_index)| SequenceEntry { node, set_index })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.node)
    }

    /// Checks length `k`, distinct known nodes and valid set indices.
    pub fn check(&self, spec: &DssSpec) -> Result<(), String> {
        if self.entries.len() != spec.k {
            return Err(format!(
                "sequence has {} entries but k = {}",
                self.entries.len(),
                spec.k
            ));
        }
        let mut seen = BTreeSet::new();
        for entry in &self.entries {
            let node = spec
                .node(entry.node)
                .ok_or_else(|| format!("unknown node U{}", entry.node))?;
            if entry.set_index >= node.surviving_sets.len() {
                return Err(format!(
                    "U{} has {} surviving sets, index {} is out of range",
                    entry.node,
                    node.surviving_sets.len(),
                    entry.set_index + 1
                ));
            }
            if !seen.insert(entry.node) {
                return Err(format!("U{} appears twice", entry.node));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SurvivingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(">")
    }
}
