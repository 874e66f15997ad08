//! Families of sets over a shared universe, and the paired family/filter
//! systems the non-interference checks run on.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// An ordered, duplicate-free list of [`ElementSet`]s over one universe.
///
/// Insertion order is preserved for presentation, but equality is set
/// semantics: two families are equal when they hold the same members,
/// regardless of order.
#[derive(Clone)]
pub struct SetFamily {
    universe: usize,
    members: Vec<ElementSet>,
    index: HashSet<ElementSet>,
}

impl SetFamily {
    pub fn new(universe: usize) -> Self {
        assert!(universe >= 1, "universe size must be at least 1");
        SetFamily {
            universe,
            members: Vec::new(),
            index: HashSet::new(),
        }
    }

    pub fn with_capacity(universe: usize, capacity: usize) -> Self {
        assert!(universe >= 1, "universe size must be at least 1");
        SetFamily {
            universe,
            members: Vec::with_capacity(capacity),
            index: HashSet::with_capacity(capacity),
        }
    }

    /// Builds a family from an iterator, rejecting duplicates.
    pub fn from_sets<I: IntoIterator<Item = ElementSet>>(universe: usize, sets: I) -> Result<Self> {
        let mut family = Self::new(universe);
        for set in sets {
            family.push(set)?;
        }
        Ok(family)
    }

    /// Appends a member. A duplicate is an error, never silently dropped.
    pub fn push(&mut self, set: ElementSet) -> Result<()> {
        if set.universe_size() != self.universe {
            return Err(Error::UniverseMismatch {
                left: self.universe,
                right: set.universe_size(),
            });
        }
        if self.index.contains(&set) {
            return Err(Error::DuplicateMember {
                member: format!("{set}"),
            });
        }
        self.index.insert(set.clone());
        self.members.push(set);
        Ok(())
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, position: usize) -> Option<&ElementSet> {
        self.members.get(position)
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    /// Membership test against the whole family.
    pub fn contains(&self, set: &ElementSet) -> bool {
        self.index.contains(set)
    }

    /// `counts[i - 1]` = how many members contain element `i`.
    pub fn element_frequencies(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0usize; self.universe];
        for member in &self.members {
            for element in member.elements() {
                counts[element - 1] += 1;
            }
        }
        counts
    }

    /// Sum of member sizes.
    pub fn total_member_size(&self) -> usize {
        self.members.iter().map(ElementSet::len).sum()
    }

    pub fn min_member_size(&self) -> Option<usize> {
        self.members.iter().map(ElementSet::len).min()
    }

    /// Reorders members into canonical order: ascending size, then
    /// lexicographic on the ascending element list.
    pub fn sort_canonical(&mut self) {
        self.members.sort_unstable();
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.index == other.index
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily([{}], {} members)", self.universe, self.len())
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = core::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// An index-aligned bijection between a family and its filter: pair `i`
/// holds the family set and the filter set it is mapped to.
///
/// Distinctness is enforced on both sides so the pairing is a genuine
/// bijection; the subset and non-interference conditions are *not* enforced
/// here, they are what the checkers test.
#[derive(Clone, PartialEq, Eq)]
pub struct PairedSystem {
    universe: usize,
    pairs: Vec<(ElementSet, ElementSet)>,
}

impl PairedSystem {
    pub fn new(universe: usize) -> Self {
        assert!(universe >= 1, "universe size must be at least 1");
        PairedSystem {
            universe,
            pairs: Vec::new(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (ElementSet, ElementSet)>>(
        universe: usize,
        pairs: I,
    ) -> Result<Self> {
        let mut system = Self::new(universe);
        for (small, large) in pairs {
            system.push_pair(small, large)?;
        }
        Ok(system)
    }

    pub fn push_pair(&mut self, small: ElementSet, large: ElementSet) -> Result<()> {
        for set in [&small, &large] {
            if set.universe_size() != self.universe {
                return Err(Error::UniverseMismatch {
                    left: self.universe,
                    right: set.universe_size(),
                });
            }
        }
        if let Some(i) = self.pairs.iter().position(|(s, _)| *s == small) {
            return Err(Error::DuplicateFamilySet { index: i });
        }
        if let Some(i) = self.pairs.iter().position(|(_, f)| *f == large) {
            return Err(Error::DuplicateFilterSet { index: i });
        }
        self.pairs.push((small, large));
        Ok(())
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(ElementSet, ElementSet)] {
        &self.pairs
    }

    pub fn pair(&self, index: usize) -> Option<(&ElementSet, &ElementSet)> {
        self.pairs.get(index).map(|(s, f)| (s, f))
    }

    /// The family side as a [`SetFamily`], in pair order.
    pub fn smalls(&self) -> SetFamily {
        SetFamily::from_sets(self.universe, self.pairs.iter().map(|(s, _)| s.clone()))
            .expect("family sets are distinct by construction")
    }

    /// The filter side as a [`SetFamily`], in pair order.
    pub fn larges(&self) -> SetFamily {
        SetFamily::from_sets(self.universe, self.pairs.iter().map(|(_, f)| f.clone()))
            .expect("filter sets are distinct by construction")
    }
}

impl fmt::Debug for PairedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairedSystem([{}], {} pairs)", self.universe, self.len())
    }
}
