use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use super::RfMatrix;
use crate::error::{Error, Result};

/// A set of node labels.
///
/// Iteration follows insertion order; equality ignores order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(IndexSet<String>);

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>) -> bool {
        self.0.insert(label.into())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// Members of `self` that are also in `other`, in `self`'s order.
    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        self.iter().filter(|l| other.contains(l)).collect()
    }

    /// Members of `self` not in `other`, in `self`'s order.
    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        self.iter().filter(|l| !other.contains(l)).collect()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|l| other.contains(l))
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        !self.iter().any(|l| other.contains(l))
    }

    /// Matrix indices of the members, ascending (the matrix's label order).
    pub fn resolve(&self, m: &RfMatrix) -> Result<Vec<usize>> {
        let mut idx = self
            .iter()
            .map(|l| {
                m.index_of(l)
                    .ok_or_else(|| Error::invalid(format!("unknown node label '{l}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        Ok(idx)
    }

    /// The same members re-ordered to follow `order`; members absent from
    /// `order` keep their relative order at the end.
    pub fn ordered_by<'a>(&self, order: impl IntoIterator<Item = &'a str>) -> NodeSet {
        let mut out: NodeSet = order.into_iter().filter(|l| self.contains(l)).collect();
        for l in self.iter() {
            out.insert(l);
        }
        out
    }

    pub fn to_vec(&self) -> Vec<String> {
        self.0.iter().cloned().collect()
    }
}

impl<S: Into<String>> FromIterator<S> for NodeSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        NodeSet(iter.into_iter().map(Into::into).collect())
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a String;
    type IntoIter = indexmap::set::Iter<'a, String>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
