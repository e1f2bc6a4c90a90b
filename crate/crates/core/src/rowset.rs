//! Fixed-width row sets used as column supports.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of row indices over a fixed universe `0..universe`.
///
/// Supports are compared as exact bit vectors; ordering is lexicographic on
/// the sorted member list so that sorted collections of supports are stable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RowSet {
    bits: FixedBitSet,
}

impl RowSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Self {
        let mut set = Self::empty(universe);
        for r in members {
            set.insert(r);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, row: usize) {
        self.bits.insert(row);
    }

    pub fn contains(&self, row: usize) -> bool {
        self.bits.contains(row)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_subset(&self, other: &RowSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_proper_subset(&self, other: &RowSet) -> bool {
        self.is_subset(other) && self.bits != other.bits
    }

    pub fn is_disjoint(&self, other: &RowSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &RowSet) {
        self.bits.union_with(&other.bits);
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &RowSet) -> RowSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        RowSet { bits }
    }

    /// Number of members of `self` not in `other`, without allocating.
    pub fn difference_count(&self, other: &RowSet) -> usize {
        self.bits.difference_count(&other.bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// Renders the set with the given row labels, e.g. `{r1,r3}`.
    pub fn display_with(&self, labels: &[String]) -> String {
        let names: Vec<&str> = self.iter().map(|r| labels[r].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl Ord for RowSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for RowSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
