//! Builds the counterexample systems: for a minimum member size `x >= 2`
//! the universe is `n = 4x + 4` and the system has `n + 3` pairs.
//!
//! The filter is fixed in shape: `[n]` itself, the `n` sets missing one
//! element each, and the two sets `[n] \ {1,2}` and `[n] \ {3,4}`. The family
//! sets follow the published clause list, except for index `n/2 + 1`, which
//! the list omits; see [`completion_from_frequencies`] for how that gap is
//! resolved and machine-checked.

use crate::error::{Error, Result};
use crate::family::{PairedSystem, SetFamily};
use crate::set::ElementSet;

/// Construction parameters: the minimum member size `x` and the derived
/// universe size `n = 4x + 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    x: usize,
    n: usize,
}

impl ConstructionParams {
    /// Requires `x >= 2`. (A smaller counterexample with `x = 1` exists but
    /// does not arise from these clauses, so it is rejected rather than
    /// special-cased.)
    pub fn new(x: usize) -> Result<Self> {
        if x < 2 {
            return Err(Error::UnsupportedParameter {
                parameter: "x",
                minimum: 2,
                actual: x,
            });
        }
        let n = x
            .checked_mul(4)
            .and_then(|v| v.checked_add(4))
            .ok_or(Error::ArithmeticOverflow { n: usize::MAX })?;
        Ok(ConstructionParams { x, n })
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    /// Number of pairs, `n + 3`.
    pub fn system_size(&self) -> usize {
        self.n + 3
    }
}

/// The filter: `F_0 = [n]`, `F_i = [n] \ {i}` for `i` in `[n]`,
/// `F_{n+1} = [n] \ {1,2}`, `F_{n+2} = [n] \ {3,4}`, in index order.
pub fn build_filter(params: ConstructionParams) -> SetFamily {
    let n = params.n;
    let mut family = SetFamily::with_capacity(n, n + 3);
    for index in 0..=n + 2 {
        family
            .push(filter_set_formula(n, index))
            .expect("filter sets are pairwise distinct");
    }
    family
}

/// The full paired system `(S_0, F_0), ..., (S_{n+2}, F_{n+2})`.
///
/// Construction is eager and unvalidated; run the checkers in
/// [`crate::verify`] to confirm the conditions hold (they do for every
/// `x >= 2`, which the test suite pins down for `x` up to 12).
pub fn build_family(params: ConstructionParams) -> PairedSystem {
    let n = params.n;
    let mut system = PairedSystem::new(n);
    for index in 0..=n + 2 {
        system
            .push_pair(member_formula(n, index), filter_set_formula(n, index))
            .expect("family and filter sets are pairwise distinct");
    }
    system
}

/// Random access to family set `S_index` without building the whole system.
pub fn member_set(params: ConstructionParams, index: usize) -> Result<ElementSet> {
    if index > params.n + 2 {
        return Err(Error::IndexOutOfRange {
            index,
            max: params.n + 2,
        });
    }
    Ok(member_formula(params.n, index))
}

/// Random access to filter set `F_index`.
pub fn filter_set(params: ConstructionParams, index: usize) -> Result<ElementSet> {
    if index > params.n + 2 {
        return Err(Error::IndexOutOfRange {
            index,
            max: params.n + 2,
        });
    }
    Ok(filter_set_formula(params.n, index))
}

/// Derives the family set at index `n/2 + 1` from the other `n + 2` sets
/// instead of from its closed form: every element must end up in exactly
/// `n/2 + 1` members, so the omitted set is precisely the elements whose
/// frequency over the rest falls one short.
///
/// This is the independent route justifying the closed form used by
/// [`build_family`]; the two must agree, and tests hold them together.
pub fn completion_from_frequencies(params: ConstructionParams) -> ElementSet {
    let n = params.n;
    let skipped = n / 2 + 1;
    let mut counts = alloc::vec![0usize; n];
    for index in 0..=n + 2 {
        if index == skipped {
            continue;
        }
        for element in member_formula(n, index).elements() {
            counts[element - 1] += 1;
        }
    }
    let mut completion = ElementSet::empty(n);
    for (position, count) in counts.iter().enumerate() {
        if *count == n / 2 {
            completion.insert(position + 1);
        }
    }
    completion
}

fn filter_set_formula(n: usize, index: usize) -> ElementSet {
    let mut set = ElementSet::full(n);
    if (1..=n).contains(&index) {
        set.remove(index);
    } else if index == n + 1 {
        set.remove(1);
        set.remove(2);
    } else if index == n + 2 {
        set.remove(3);
        set.remove(4);
    }
    set
}

/// The clause list for `S_index`. `n` is divisible by 4 and at least 12, so
/// every division below is exact and every index falls in exactly one arm.
/// Index ranges that are empty at small `n` (the banded range below `3n/4`
/// is empty at `n = 12`) simply never match.
fn member_formula(n: usize, index: usize) -> ElementSet {
    let h = n / 2;
    let q = n / 4;
    let mut set = ElementSet::empty(n);
    match index {
        0 => {
            set.insert_range(1, n);
        }
        1 => {
            set.insert(2);
            set.insert_range(h + 1, n);
        }
        2 => {
            set.insert(1);
            set.insert_range(3, h);
            set.insert(n);
        }
        3 => {
            set.insert(1);
            set.insert_range(4, h + 2);
        }
        4 => {
            set.insert(1);
            set.insert(3);
            set.insert_range(h + 3, n);
        }
        k1 if (5..=q + 2).contains(&k1) => {
            set.insert(1);
            set.insert(4);
            set.insert_range(k1 + 1, h + k1 - 2);
        }
        k2 if (q + 3..=h).contains(&k2) => {
            set.insert(1);
            set.insert(4);
            set.insert_range(k2 + 1, h + k2 - 3);
        }
        i if i == h + 1 => {
            // The omitted index; the unique completion keeping every element
            // frequency at n/2 + 1. It continues the pattern of its right
            // neighbour shifted one step down.
            set.insert(2);
            set.insert(4);
            set.insert_range(h + 2, n - 2);
        }
        i if i == h + 2 => {
            set.insert(2);
            set.insert(4);
            set.insert_range(h + 3, n - 1);
        }
        i if i == h + 3 => {
            set.insert(2);
            set.insert(3);
            set.insert_range(h + 4, n);
        }
        k3 if (h + 4..=3 * q).contains(&k3) => {
            set.insert(2);
            set.insert(3);
            set.insert_range(5, k3 - h + 1);
            set.insert_range(k3 + 1, n);
        }
        i if i == 3 * q + 1 => {
            set.insert(2);
            set.insert(3);
            set.insert_range(5, q + 3);
            set.insert_range(3 * q + 2, n - 1);
        }
        k4 if (3 * q + 2..=n - 1).contains(&k4) => {
            set.insert(2);
            set.insert(3);
            set.insert_range(5, k4 - h + 2);
            set.insert_range(k4 + 1, n);
        }
        i if i == n => {
            set.insert(3);
            set.insert_range(5, h + 2);
            set.insert(3 * q + 1);
        }
        i if i == n + 1 => {
            set.insert_range(3 * q + 2, n);
        }
        i if i == n + 2 => {
            set.insert(1);
            set.insert_range(5, q + 2);
        }
        out_of_range => panic!("member index {out_of_range} out of range"),
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(universe: usize, elements: &[usize]) -> ElementSet {
        ElementSet::from_elements(universe, elements.iter().copied())
    }

    #[test]
    fn rejects_x_below_two() {
        assert_eq!(
            ConstructionParams::new(1).unwrap_err(),
            Error::UnsupportedParameter {
                parameter: "x",
                minimum: 2,
                actual: 1
            }
        );
        assert!(ConstructionParams::new(0).is_err());
    }

    #[test]
    fn universe_is_4x_plus_4() {
        let params = ConstructionParams::new(2).unwrap();
        assert_eq!(params.universe_size(), 12);
        assert_eq!(params.system_size(), 15);
        assert_eq!(ConstructionParams::new(100).unwrap().universe_size(), 404);
    }

    #[test]
    fn filter_shape_at_x2() {
        let params = ConstructionParams::new(2).unwrap();
        let filter = build_filter(params);
        assert_eq!(filter.len(), 15);
        assert_eq!(filter.get(0), Some(&ElementSet::full(12)));
        assert_eq!(
            filter.get(14),
            Some(&set(12, &[1, 2, 5, 6, 7, 8, 9, 10, 11, 12]))
        );
        let sizes: alloc::vec::Vec<usize> = filter.iter().map(ElementSet::len).collect();
        assert_eq!(sizes[0], 12);
        assert!(sizes[1..=12].iter().all(|s| *s == 11));
        assert_eq!(&sizes[13..], &[10, 10]);
    }

    #[test]
    fn filter_sizes_for_larger_x() {
        for x in 2..=6 {
            let params = ConstructionParams::new(x).unwrap();
            let n = params.universe_size();
            let filter = build_filter(params);
            assert_eq!(filter.len(), n + 3);
            assert_eq!(filter.get(0).unwrap().len(), n);
            assert_eq!(
                filter.iter().filter(|f| f.len() == n - 1).count(),
                n,
                "x={x}"
            );
            assert_eq!(filter.iter().filter(|f| f.len() == n - 2).count(), 2);
        }
    }

    #[test]
    fn family_members_at_x2() {
        let params = ConstructionParams::new(2).unwrap();
        let system = build_family(params);
        assert_eq!(system.len(), 15);
        let smalls = system.smalls();
        assert_eq!(smalls.get(0), Some(&ElementSet::full(12)));
        assert_eq!(smalls.get(1), Some(&set(12, &[2, 7, 8, 9, 10, 11, 12])));
        assert_eq!(smalls.get(7), Some(&set(12, &[2, 4, 8, 9, 10])));
        assert_eq!(smalls.get(13), Some(&set(12, &[11, 12])));
        assert_eq!(smalls.get(14), Some(&set(12, &[1, 5])));
    }

    #[test]
    fn member_sizes_at_x2() {
        let params = ConstructionParams::new(2).unwrap();
        let smalls = build_family(params).smalls();
        let sizes: alloc::vec::Vec<usize> = smalls.iter().map(ElementSet::len).collect();
        assert_eq!(sizes, [12, 7, 6, 6, 6, 6, 5, 5, 5, 5, 5, 6, 6, 2, 2]);
        assert_eq!(sizes.iter().sum::<usize>(), 84); // n(n/2 + 1)
    }

    #[test]
    fn member_set_gives_random_access() {
        let params = ConstructionParams::new(2).unwrap();
        assert_eq!(member_set(params, 0).unwrap(), ElementSet::full(12));
        assert_eq!(
            member_set(params, 15).unwrap_err(),
            Error::IndexOutOfRange { index: 15, max: 14 }
        );

        let params = ConstructionParams::new(3).unwrap();
        // S_{n+1} = {3n/4 + 2, ..., n} at n = 16
        assert_eq!(member_set(params, 17).unwrap(), set(16, &[14, 15, 16]));
    }

    #[test]
    fn member_set_agrees_with_build_family() {
        for x in [2, 3, 5] {
            let params = ConstructionParams::new(x).unwrap();
            let system = build_family(params);
            for index in 0..system.len() {
                assert_eq!(
                    &member_set(params, index).unwrap(),
                    system.pair(index).unwrap().0
                );
                assert_eq!(
                    &filter_set(params, index).unwrap(),
                    system.pair(index).unwrap().1
                );
            }
        }
    }

    #[test]
    fn minimum_size_is_x_at_the_tail() {
        for x in 2..=12 {
            let params = ConstructionParams::new(x).unwrap();
            let n = params.universe_size();
            let smalls = build_family(params).smalls();
            assert_eq!(smalls.min_member_size(), Some(x), "x={x}");
            assert_eq!(smalls.get(n + 1).unwrap().len(), x);
            assert_eq!(smalls.get(n + 2).unwrap().len(), x);
            // only the two tail sets reach the minimum
            assert_eq!(
                smalls.iter().filter(|s| s.len() == x).count(),
                2,
                "x={x}"
            );
        }
    }

    #[test]
    fn size_sums_are_forced() {
        for x in 2..=12 {
            let params = ConstructionParams::new(x).unwrap();
            let n = params.universe_size();
            let smalls = build_family(params).smalls();
            assert_eq!(smalls.total_member_size(), n * (n / 2 + 1), "x={x}");
            let middle: usize = (1..=n).map(|i| smalls.get(i).unwrap().len()).sum();
            assert_eq!(middle, n * (n - 1) / 2 + 2, "x={x}");
        }
    }

    #[test]
    fn anchor_elements_are_present() {
        for x in 2..=12 {
            let params = ConstructionParams::new(x).unwrap();
            let smalls = build_family(params).smalls();
            assert!(smalls.get(1).unwrap().contains(2));
            assert!(smalls.get(2).unwrap().contains(1));
            assert!(smalls.get(3).unwrap().contains(4));
            assert!(smalls.get(4).unwrap().contains(3));
        }
    }

    #[test]
    fn tail_sets_are_nonempty_and_head_is_the_universe() {
        for x in 2..=12 {
            let params = ConstructionParams::new(x).unwrap();
            let n = params.universe_size();
            let smalls = build_family(params).smalls();
            assert_eq!(smalls.get(0).unwrap(), &ElementSet::full(n));
            assert!(!smalls.get(n + 1).unwrap().is_empty());
            assert!(!smalls.get(n + 2).unwrap().is_empty());
        }
    }

    #[test]
    fn frequency_completion_matches_the_closed_form() {
        for x in 2..=12 {
            let params = ConstructionParams::new(x).unwrap();
            let n = params.universe_size();
            let derived = completion_from_frequencies(params);
            let closed_form = member_set(params, n / 2 + 1).unwrap();
            assert_eq!(derived, closed_form, "x={x}");
        }
    }

    #[test]
    fn every_element_in_exactly_half_plus_one_members() {
        for x in 2..=12 {
            let params = ConstructionParams::new(x).unwrap();
            let n = params.universe_size();
            let freq = build_family(params).smalls().element_frequencies();
            assert!(freq.iter().all(|c| *c == n / 2 + 1), "x={x}: {freq:?}");
        }
    }

    #[test]
    fn large_x_construction_stays_consistent() {
        // n = 4096 exercises the multi-word path end to end
        let params = ConstructionParams::new(1023).unwrap();
        let n = params.universe_size();
        assert_eq!(n, 4096);
        let smalls = build_family(params).smalls();
        assert_eq!(smalls.len(), n + 3);
        assert_eq!(smalls.min_member_size(), Some(1023));
        let freq = smalls.element_frequencies();
        assert!(freq.iter().all(|c| *c == n / 2 + 1));
    }
}
