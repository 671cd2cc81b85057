//! Core-periphery hierarchies from sequential isospectral reduction.
//!
//! A [`SelectionRule`] picks the nodes to keep; everything else is reduced
//! away and becomes the next peripheral level. The process stops when the
//! rule keeps nothing or everything. The built-in rule is
//! [`MinDegreeRule`]: keep every node whose degree is not minimal.

use indexmap::IndexMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::isored::reduce;
use crate::netmat::{NodeSet, RfMatrix};

/// Chooses the nodes to keep at each reduction step. Must be deterministic
/// and return a subset of the matrix's labels.
pub trait SelectionRule {
    fn name(&self) -> &str;
    fn select(&self, m: &RfMatrix) -> NodeSet;
}

/// Keeps every node whose [`row_degree`] exceeds the minimum.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinDegreeRule;

impl SelectionRule for MinDegreeRule {
    fn name(&self) -> &str {
        "min-degree"
    }

    fn select(&self, m: &RfMatrix) -> NodeSet {
        min_degree_rule(m)
    }
}

/// A user rule backed by a closure.
pub struct FnRule<F> {
    name: String,
    f: F,
}

impl<F: Fn(&RfMatrix) -> NodeSet> FnRule<F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnRule {
            name: name.into(),
            f,
        }
    }
}

impl<F: Fn(&RfMatrix) -> NodeSet> SelectionRule for FnRule<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn select(&self, m: &RfMatrix) -> NodeSet {
        (self.f)(m)
    }
}

/// Looks up a built-in rule by name.
pub fn rule_by_name(name: &str) -> Option<Box<dyn SelectionRule>> {
    match name {
        "min-degree" | "mu" => Some(Box::new(MinDegreeRule)),
        _ => None,
    }
}

/// Number of nonzero entries in the node's row, counting a nonzero self-loop.
pub fn row_degree(m: &RfMatrix, node: &str) -> Result<usize> {
    Ok(m.nonzeros_in_row(m.require(node)?))
}

/// Labels whose degree strictly exceeds the minimum; empty if all are equal.
pub fn min_degree_rule(m: &RfMatrix) -> NodeSet {
    let degrees: Vec<usize> = (0..m.dim()).map(|i| m.nonzeros_in_row(i)).collect();
    let Some(&min) = degrees.iter().min() else {
        return NodeSet::new();
    };
    m.labels()
        .iter()
        .zip(&degrees)
        .filter(|(_, &d)| d > min)
        .map(|(l, _)| l.clone())
        .collect()
}

/// Degrees of every node in `R_step`, and the nodes removed from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub step: usize,
    pub degrees: IndexMap<String, usize>,
    pub removed: NodeSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyResult {
    pub core: NodeSet,
    /// `levels[0]` is `h_1` (removed last), `levels[L-1]` is `h_L` (removed first).
    pub levels: Vec<NodeSet>,
    /// One table per reduced matrix `R_0 ..= R_L`.
    pub trace: Vec<DegreeTable>,
    pub step_count: usize,
}

impl HierarchyResult {
    /// Level `h_rank` (1-based); `None` when out of range.
    pub fn level(&self, rank: usize) -> Option<&NodeSet> {
        rank.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    /// All nodes, core first, then `h_1`, `h_2`, ...
    pub fn groups(&self) -> impl Iterator<Item = &NodeSet> {
        std::iter::once(&self.core).chain(&self.levels)
    }

    /// Core and levels separated by `||`, with empty groups skipped, e.g.
    /// `W_1 W_2 || W_14 || W_13`. `strip_prefix` drops a label prefix such as
    /// `"W_"` to get the compact numeric form.
    pub fn to_bar_notation(&self, strip_prefix: &str) -> String {
        self.groups()
            .filter(|g| !g.is_empty())
            .map(|g| {
                g.iter()
                    .map(|l| l.strip_prefix(strip_prefix).unwrap_or(l))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" || ")
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .rev()
            .map(|(i, l)| json!({"rank": i + 1, "members": l.to_vec()}))
            .collect();
        let trace: Vec<Value> = self
            .trace
            .iter()
            .map(|t| json!({"step": t.step, "degrees": t.degrees, "removed": t.removed.to_vec()}))
            .collect();
        json!({"core": self.core.to_vec(), "levels": levels, "trace": trace})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::invalid(format!("hierarchy JSON: bad or missing {what}"));
        let labels = |v: &Value, what: &str| -> Result<NodeSet> {
            v.as_array()
                .ok_or_else(|| bad(what))?
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad(what)))
                .collect()
        };
        let core = labels(&v["core"], "core")?;
        let raw_levels = v["levels"].as_array().ok_or_else(|| bad("levels"))?;
        let mut levels = vec![NodeSet::new(); raw_levels.len()];
        for l in raw_levels {
            let rank = l["rank"].as_u64().ok_or_else(|| bad("rank"))? as usize;
            let slot = rank
                .checked_sub(1)
                .and_then(|i| levels.get_mut(i))
                .ok_or_else(|| bad("rank"))?;
            *slot = labels(&l["members"], "members")?;
        }
        let mut trace = Vec::new();
        for t in v["trace"].as_array().map(Vec::as_slice).unwrap_or_default() {
            let degrees = t["degrees"]
                .as_object()
                .ok_or_else(|| bad("degrees"))?
                .iter()
                .map(|(k, d)| Ok((k.clone(), d.as_u64().ok_or_else(|| bad("degree"))? as usize)))
                .collect::<Result<_>>()?;
            trace.push(DegreeTable {
                step: t["step"].as_u64().ok_or_else(|| bad("step"))? as usize,
                degrees,
                removed: labels(&t["removed"], "removed")?,
            });
        }
        Ok(HierarchyResult {
            core,
            step_count: levels.len(),
            levels,
            trace,
        })
    }
}

fn degree_table(m: &RfMatrix, step: usize) -> DegreeTable {
    DegreeTable {
        step,
        degrees: m
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), m.nonzeros_in_row(i)))
            .collect(),
        removed: NodeSet::new(),
    }
}

/// Reduces `m` repeatedly onto `rule`'s selection until the rule keeps
/// nothing or everything.
pub fn sequential_reduce(m: &RfMatrix, rule: &dyn SelectionRule) -> Result<HierarchyResult> {
    if m.dim() == 0 {
        return Err(Error::invalid(
            "cannot build a hierarchy of an empty matrix",
        ));
    }
    let mut current = m.clone();
    let mut removed_per_step: Vec<NodeSet> = Vec::new();
    let mut trace = Vec::new();
    loop {
        let mut table = degree_table(&current, removed_per_step.len());
        let keep = rule.select(&current);
        if !keep.is_subset(&current.label_set()) {
            return Err(Error::invalid(format!(
                "rule '{}' selected labels outside the matrix",
                rule.name()
            )));
        }
        if keep.is_empty() || keep.len() == current.dim() {
            trace.push(table);
            break;
        }
        let step = reduce(&current, &keep)?;
        table.removed = step.removed.clone();
        trace.push(table);
        removed_per_step.push(step.removed);
        current = step.reduced;
    }
    let step_count = removed_per_step.len();
    removed_per_step.reverse();
    let result = HierarchyResult {
        core: current.label_set(),
        levels: removed_per_step,
        trace,
        step_count,
    };
    debug_assert!(is_partition(&result, &m.label_set()));
    Ok(result)
}

/// Intersects every group with `subset`, dropping levels that become empty.
pub fn restrict_hierarchy(h: &HierarchyResult, subset: &NodeSet) -> Result<HierarchyResult> {
    if subset.is_empty() {
        return Err(Error::invalid(
            "cannot restrict a hierarchy to an empty set",
        ));
    }
    let trace = h
        .trace
        .iter()
        .map(|t| DegreeTable {
            step: t.step,
            degrees: t
                .degrees
                .iter()
                .filter(|(l, _)| subset.contains(l))
                .map(|(l, d)| (l.clone(), *d))
                .collect(),
            removed: t.removed.intersection(subset),
        })
        .collect();
    Ok(HierarchyResult {
        core: h.core.intersection(subset),
        levels: h
            .levels
            .iter()
            .map(|l| l.intersection(subset))
            .filter(|l| !l.is_empty())
            .collect(),
        trace,
        step_count: h.step_count,
    })
}

/// Core and levels are pairwise disjoint and cover `labels` exactly.
pub fn is_partition(h: &HierarchyResult, labels: &NodeSet) -> bool {
    let mut seen = NodeSet::new();
    for g in h.groups() {
        for l in g {
            if !seen.insert(l.clone()) {
                return false;
            }
        }
    }
    seen == *labels
}
