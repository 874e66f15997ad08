//! Union closures and everything computed from them: the conjectured
//! closure-size formula, the parameter sweep, the parametric closure
//! descriptions of the four generator groups, and the numeric bounds that
//! every union-closed family must satisfy.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::construct::{member_set, ConstructionParams};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::ElementSet;

/// A computed union closure in canonical order, with its size histogram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    /// The closure, sorted by (set size, then element list).
    pub closure: SetFamily,
    /// Count of closure members per set size.
    pub histogram: BTreeMap<usize, usize>,
    /// Number of generators the closure was built from.
    pub generator_count: usize,
}

impl ClosureResult {
    pub fn size(&self) -> usize {
        self.closure.len()
    }
}

/// Computes the union closure: every union of a nonempty subfamily.
///
/// Incremental fixpoint: sets are folded in one generator at a time, and
/// each step unions the new generator with everything already closed. The
/// intermediate collection stays union-closed throughout, so no candidate is
/// ever missed. Deduplication is by the full bit pattern (hash plus equality
/// on hit), never by hash alone.
pub fn union_closure(family: &SetFamily) -> ClosureResult {
    union_closure_bounded(family, usize::MAX).expect("unbounded closure cannot hit the guard")
}

/// [`union_closure`] with a resource guard: computing a closure with more
/// than `max_sets` members aborts with an error rather than ever returning
/// a truncated (wrong) answer.
pub fn union_closure_bounded(family: &SetFamily, max_sets: usize) -> Result<ClosureResult> {
    let universe = family.universe_size();
    let mut members: Vec<ElementSet> = Vec::new();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut scratch = ElementSet::empty(universe);

    for generator in family.iter() {
        let frontier = members.len();
        scratch.copy_from(generator);
        push_if_new(&mut members, &mut seen, &scratch, max_sets)?;
        for i in 0..frontier {
            scratch.copy_from(generator);
            scratch.union_in_place(&members[i]);
            push_if_new(&mut members, &mut seen, &scratch, max_sets)?;
        }
    }

    members.sort_unstable();
    let mut histogram = BTreeMap::new();
    for member in &members {
        *histogram.entry(member.len()).or_insert(0usize) += 1;
    }
    let mut closure = SetFamily::with_capacity(universe, members.len());
    for member in members {
        closure.push(member).expect("closure members are distinct");
    }
    Ok(ClosureResult {
        closure,
        histogram,
        generator_count: family.len(),
    })
}

fn push_if_new(
    members: &mut Vec<ElementSet>,
    seen: &mut HashSet<ElementSet>,
    candidate: &ElementSet,
    max_sets: usize,
) -> Result<()> {
    if seen.contains(candidate) {
        return Ok(());
    }
    if members.len() >= max_sets {
        return Err(Error::ClosureLimitExceeded { limit: max_sets });
    }
    seen.insert(candidate.clone());
    members.push(candidate.clone());
    Ok(())
}

/// Full pairwise scan for union-closedness. Returns the first member pair
/// (by position) whose union is missing, or `None` when closed.
pub fn union_closed_violation(family: &SetFamily) -> Option<(usize, usize)> {
    let members = family.members();
    let mut scratch = ElementSet::empty(family.universe_size());
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            scratch.copy_from(&members[i]);
            scratch.union_in_place(&members[j]);
            if !family.contains(&scratch) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The conjectured closure size `23n²/32 + 35n/8 − 21`, evaluated exactly
/// as `(23n² + 140n − 672) / 32` with a divisibility assertion. Holds as an
/// equality against computed closures for every tested `x >= 3`.
pub fn conjecture_formula(n: usize) -> Result<u64> {
    let big = n as i128;
    let numerator = 23 * big * big + 140 * big - 672;
    if numerator < 0 || numerator % 32 != 0 {
        return Err(Error::FormulaDomain { n });
    }
    u64::try_from(numerator / 32).map_err(|_| Error::ArithmeticOverflow { n })
}

/// An exact ratio of two counts; kept as integers, rendered as a decimal
/// only at output time.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub numerator: u64,
    pub denominator: u64,
}

impl Ratio {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        assert!(denominator != 0, "ratio denominator must be nonzero");
        Ratio {
            numerator,
            denominator,
        }
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let left = u128::from(self.numerator) * u128::from(other.denominator);
        let right = u128::from(other.numerator) * u128::from(self.denominator);
        left.cmp(&right)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One record of the conjecture sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub x: usize,
    pub n: usize,
    pub family_size: usize,
    pub closure_size: usize,
    pub formula_value: u64,
    pub matches: bool,
    pub ratio: Ratio,
}

/// Builds the family, computes its closure, and compares against the
/// formula for every `x` in `x_from..=x_to`. Mismatches are recorded in the
/// rows, never raised as errors: beyond the verified range they are
/// findings.
pub fn sweep(x_from: usize, x_to: usize) -> Result<Vec<SweepRow>> {
    sweep_bounded(x_from, x_to, usize::MAX)
}

/// [`sweep`] with the closure resource guard applied per row.
pub fn sweep_bounded(x_from: usize, x_to: usize, max_sets: usize) -> Result<Vec<SweepRow>> {
    if x_from > x_to {
        return Err(Error::InvalidSweepRange {
            from: x_from,
            to: x_to,
        });
    }
    let mut rows = Vec::with_capacity(x_to - x_from + 1);
    for x in x_from..=x_to {
        let params = ConstructionParams::new(x)?;
        let n = params.universe_size();
        let family = crate::construct::build_family(params).smalls();
        let result = union_closure_bounded(&family, max_sets)?;
        let formula_value = conjecture_formula(n)?;
        rows.push(SweepRow {
            x,
            n,
            family_size: family.len(),
            closure_size: result.size(),
            formula_value,
            matches: result.size() as u64 == formula_value,
            ratio: Ratio::new(family.len() as u64, result.size() as u64),
        });
    }
    Ok(rows)
}

/// The four runs of consecutively-indexed family sets whose closures have
/// closed-form descriptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParametricGroup {
    K1,
    K2,
    K3,
    K4,
}

impl ParametricGroup {
    pub const ALL: [ParametricGroup; 4] = [
        ParametricGroup::K1,
        ParametricGroup::K2,
        ParametricGroup::K3,
        ParametricGroup::K4,
    ];
}

impl fmt::Display for ParametricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ParametricGroup::K1 => "k1",
            ParametricGroup::K2 => "k2",
            ParametricGroup::K3 => "k3",
            ParametricGroup::K4 => "k4",
        };
        write!(f, "{name}")
    }
}

/// Inclusive index range of a group's generators; empty when the lower
/// bound exceeds the upper (the k3 range is empty below `n = 16`).
pub fn group_index_range(params: ConstructionParams, group: ParametricGroup) -> (usize, usize) {
    let n = params.universe_size();
    let h = n / 2;
    let q = n / 4;
    match group {
        ParametricGroup::K1 => (5, q + 2),
        ParametricGroup::K2 => (q + 3, h),
        ParametricGroup::K3 => (h + 4, 3 * q),
        ParametricGroup::K4 => (3 * q + 2, n - 1),
    }
}

/// The group's generator sets, in index order.
pub fn group_generators(
    params: ConstructionParams,
    group: ParametricGroup,
) -> Result<SetFamily> {
    let (lo, hi) = group_index_range(params, group);
    if lo > hi {
        return Err(Error::EmptyGroup {
            group,
            n: params.universe_size(),
        });
    }
    let mut family = SetFamily::with_capacity(params.universe_size(), hi - lo + 1);
    for index in lo..=hi {
        family
            .push(member_set(params, index)?)
            .expect("group generators are distinct");
    }
    Ok(family)
}

/// The closed-form description of the group's union closure, generated by
/// enumerating its parameter ranges, in canonical order. Cross-checked
/// against [`union_closure`] of the generators by [`theorem_checks`].
pub fn parametric_group_closure(
    params: ConstructionParams,
    group: ParametricGroup,
) -> Result<SetFamily> {
    let (lo, hi) = group_index_range(params, group);
    if lo > hi {
        return Err(Error::EmptyGroup {
            group,
            n: params.universe_size(),
        });
    }
    let n = params.universe_size();
    let h = n / 2;
    let q = n / 4;
    let family = match group {
        ParametricGroup::K1 => {
            anchored_run_family(n, (6, q + 3), (h + 3, 3 * q), |a, b| b - a >= h - 3)
        }
        ParametricGroup::K2 => {
            anchored_run_family(n, (q + 4, h + 1), (3 * q, n - 3), |a, b| b - a >= h - 4)
        }
        ParametricGroup::K3 => {
            split_band_family(n, (5, q + 1), (h + 5, 3 * q + 1), |a, b| b - a <= h)
        }
        ParametricGroup::K4 => {
            split_band_family(n, (q + 4, h + 1), (3 * q + 3, n), |a, b| b - a < h)
        }
    };
    Ok(family)
}

/// Superset description for the closure of the k1 and k2 generators taken
/// together: `{1, 4} ∪ {a..b}` over the widened parameter box.
pub fn anchored_union_envelope(params: ConstructionParams) -> SetFamily {
    let n = params.universe_size();
    let h = n / 2;
    anchored_run_family(n, (6, h + 1), (h + 3, n - 3), |a, b| b - a >= h - 4)
}

/// Superset description for the closure of the k3 and k4 generators taken
/// together: `{2, 3} ∪ {5..a} ∪ {b..n}` over the widened parameter box.
pub fn banded_union_envelope(params: ConstructionParams) -> SetFamily {
    let n = params.universe_size();
    let h = n / 2;
    split_band_family(n, (5, h + 1), (h + 5, n), |a, b| b - a <= h)
}

/// The closing superset description for the closure of all four groups:
/// three runs `{1..p} ∪ {a..b} ∪ {c..n}` with `5 <= p < a <= n/2 + 1`,
/// `n/2 + 3 <= b < c <= n`, `b - a >= n/2 - 4` and `c - p <= n/2`.
///
/// Note this containment does *not* actually hold — [`theorem_checks`]
/// demonstrates a concrete escaping set — but the description is generated
/// exactly as stated so the failure is reproducible.
pub fn combined_union_envelope(params: ConstructionParams) -> SetFamily {
    let n = params.universe_size();
    let h = n / 2;
    let mut family = SetFamily::new(n);
    for prefix_end in 5..=h + 1 {
        for mid_start in prefix_end + 1..=h + 1 {
            for mid_end in h + 3..=n {
                if mid_end - mid_start < h - 4 {
                    continue;
                }
                for suffix_start in mid_end + 1..=n {
                    if suffix_start - prefix_end > h {
                        continue;
                    }
                    let mut set = ElementSet::empty(n);
                    set.insert_range(1, prefix_end);
                    set.insert_range(mid_start, mid_end);
                    set.insert_range(suffix_start, n);
                    if !family.contains(&set) {
                        family.push(set).expect("checked for duplicates");
                    }
                }
            }
        }
    }
    family.sort_canonical();
    family
}

fn anchored_run_family(
    n: usize,
    a_range: (usize, usize),
    b_range: (usize, usize),
    keep: impl Fn(usize, usize) -> bool,
) -> SetFamily {
    let mut family = SetFamily::new(n);
    for a in a_range.0..=a_range.1 {
        for b in b_range.0..=b_range.1 {
            if !keep(a, b) {
                continue;
            }
            let mut set = ElementSet::empty(n);
            set.insert(1);
            set.insert(4);
            set.insert_range(a, b);
            family.push(set).expect("runs are distinct per (a, b)");
        }
    }
    family.sort_canonical();
    family
}

fn split_band_family(
    n: usize,
    a_range: (usize, usize),
    b_range: (usize, usize),
    keep: impl Fn(usize, usize) -> bool,
) -> SetFamily {
    let mut family = SetFamily::new(n);
    for a in a_range.0..=a_range.1 {
        for b in b_range.0..=b_range.1 {
            if !keep(a, b) {
                continue;
            }
            let mut set = ElementSet::empty(n);
            set.insert(2);
            set.insert(3);
            set.insert_range(5, a);
            set.insert_range(b, n);
            family.push(set).expect("bands are distinct per (a, b)");
        }
    }
    family.sort_canonical();
    family
}

/// Per-group comparison of the computed closure against its description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub group: ParametricGroup,
    pub closure_size: usize,
    pub description_size: usize,
    pub matches: bool,
}

/// Result of one containment check, with the first escaping set when it
/// fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentCheck {
    pub holds: bool,
    pub inner_size: usize,
    pub outer_size: usize,
    pub witness: Option<ElementSet>,
}

/// The quadratic lower-bound stand-in: the k1 description must have at
/// least `n² / 128` members at every tested size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundCheck {
    pub group_size: usize,
    pub threshold: usize,
    pub holds: bool,
}

/// Cross-checks over the quadratic-size argument, reported as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub groups: Vec<GroupCheck>,
    pub anchored_envelope: ContainmentCheck,
    pub banded_envelope: ContainmentCheck,
    pub combined_envelope: ContainmentCheck,
    pub quadratic_lower_bound: LowerBoundCheck,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.groups.iter().all(|g| g.matches)
            && self.anchored_envelope.holds
            && self.banded_envelope.holds
            && self.combined_envelope.holds
            && self.quadratic_lower_bound.holds
    }
}

/// Divisor for the quadratic lower-bound stand-in. `|cl(k1)| = (q-2)(q-1)/2`
/// for `q = n/4`, so `n²/128` is the largest power-of-two fraction that
/// holds from `x = 3` upward.
const LOWER_BOUND_DIVISOR: usize = 128;

/// Runs all the closure cross-checks at `x >= 3` (every group is nonempty
/// from there): description-vs-closure equality per group, the three
/// envelope containments, and the quadratic lower bound.
pub fn theorem_checks(params: ConstructionParams) -> Result<TheoremReport> {
    if params.x() < 3 {
        return Err(Error::UnsupportedParameter {
            parameter: "x",
            minimum: 3,
            actual: params.x(),
        });
    }

    let mut groups = Vec::with_capacity(4);
    let mut generators_by_group = Vec::with_capacity(4);
    for group in ParametricGroup::ALL {
        let generators = group_generators(params, group)?;
        let computed = union_closure(&generators).closure;
        let description = parametric_group_closure(params, group)?;
        groups.push(GroupCheck {
            group,
            closure_size: computed.len(),
            description_size: description.len(),
            matches: computed == description,
        });
        generators_by_group.push(generators);
    }

    let low_generators = merge_families(&generators_by_group[..2]);
    let high_generators = merge_families(&generators_by_group[2..]);
    let all_generators = merge_families(&generators_by_group);

    let anchored_envelope = containment_check(
        &union_closure(&low_generators).closure,
        &anchored_union_envelope(params),
    );
    let banded_envelope = containment_check(
        &union_closure(&high_generators).closure,
        &banded_union_envelope(params),
    );
    let combined_envelope = containment_check(
        &union_closure(&all_generators).closure,
        &combined_union_envelope(params),
    );

    let k1_description_size = groups[0].description_size;
    let n = params.universe_size();
    let threshold = n * n / LOWER_BOUND_DIVISOR;
    let quadratic_lower_bound = LowerBoundCheck {
        group_size: k1_description_size,
        threshold,
        holds: k1_description_size >= threshold,
    };

    Ok(TheoremReport {
        groups,
        anchored_envelope,
        banded_envelope,
        combined_envelope,
        quadratic_lower_bound,
    })
}

fn merge_families(families: &[SetFamily]) -> SetFamily {
    let universe = families[0].universe_size();
    let mut merged = SetFamily::new(universe);
    for family in families {
        for member in family.iter() {
            merged
                .push(member.clone())
                .expect("group index ranges are disjoint");
        }
    }
    merged
}

/// Checks `inner ⊆ outer` member by member in canonical order, reporting
/// the first escapee.
pub fn containment_check(inner: &SetFamily, outer: &SetFamily) -> ContainmentCheck {
    let witness = inner.iter().find(|member| !outer.contains(member)).cloned();
    ContainmentCheck {
        holds: witness.is_none(),
        inner_size: inner.len(),
        outer_size: outer.len(),
        witness,
    }
}

/// The average-set-size bound: a union-closed family of `m` sets has
/// average member size at least `log₂(m) / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageSizeCheck {
    pub average: Ratio,
    pub bound: f64,
    pub ok: bool,
}

const FLOAT_TOLERANCE: f64 = 1e-9;

/// Evaluates the average-size bound on a union-closed family. The average
/// is kept exact; only the final comparison is floating point, with a 1e-9
/// tolerance. Union-closedness is the caller's obligation, verified here by
/// full scan when the family has at most 10^4 members.
pub fn average_set_size_check(family: &SetFamily) -> AverageSizeCheck {
    assert!(!family.is_empty(), "family must be nonempty");
    if family.len() <= 10_000 {
        assert!(
            union_closed_violation(family).is_none(),
            "family is not union-closed"
        );
    }
    let average = Ratio::new(family.total_member_size() as u64, family.len() as u64);
    let bound = 0.5 * libm::log2(family.len() as f64);
    AverageSizeCheck {
        average,
        bound,
        ok: average.as_f64() >= bound - FLOAT_TOLERANCE,
    }
}

/// The frequency bound: a union-closed family of `m >= 2` sets has an
/// element in at least `(m - 1) / log₂(m)` of them.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyBoundCheck {
    pub max_frequency: usize,
    pub bound: f64,
    pub ok: bool,
}

/// Evaluates the frequency bound on a union-closed family of at least two
/// sets. Union-closedness is the caller's obligation, verified by full scan
/// when the family has at most 10^4 members.
pub fn knill_check(family: &SetFamily) -> FrequencyBoundCheck {
    assert!(family.len() >= 2, "family must have at least two members");
    if family.len() <= 10_000 {
        assert!(
            union_closed_violation(family).is_none(),
            "family is not union-closed"
        );
    }
    let max_frequency = family
        .element_frequencies()
        .into_iter()
        .max()
        .unwrap_or(0);
    let bound = (family.len() as f64 - 1.0) / libm::log2(family.len() as f64);
    FrequencyBoundCheck {
        max_frequency,
        bound,
        ok: max_frequency as f64 >= bound - FLOAT_TOLERANCE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_family;

    fn set(universe: usize, elements: &[usize]) -> ElementSet {
        ElementSet::from_elements(universe, elements.iter().copied())
    }

    fn constructed_family(x: usize) -> SetFamily {
        build_family(ConstructionParams::new(x).unwrap()).smalls()
    }

    #[test]
    fn closure_of_two_singletons() {
        let family = SetFamily::from_sets(2, [set(2, &[1]), set(2, &[2])]).unwrap();
        let result = union_closure(&family);
        assert_eq!(result.size(), 3);
        assert_eq!(result.generator_count, 2);
        assert_eq!(
            result.closure.members(),
            &[set(2, &[1]), set(2, &[2]), set(2, &[1, 2])]
        );
        assert_eq!(
            result.histogram,
            BTreeMap::from([(1usize, 2usize), (2, 1)])
        );
    }

    #[test]
    fn closure_size_goldens() {
        assert_eq!(union_closure(&constructed_family(2)).size(), 133);
        assert_eq!(union_closure(&constructed_family(3)).size(), 233);
        assert_eq!(union_closure(&constructed_family(4)).size(), 354);
    }

    #[test]
    fn closure_histogram_golden_at_x2() {
        let result = union_closure(&constructed_family(2));
        let expected = BTreeMap::from([
            (2usize, 2usize),
            (4, 1),
            (5, 5),
            (6, 11),
            (7, 17),
            (8, 24),
            (9, 31),
            (10, 29),
            (11, 12),
            (12, 1),
        ]);
        assert_eq!(result.histogram, expected);
        assert_eq!(result.histogram.values().sum::<usize>(), result.size());
    }

    #[test]
    fn closure_is_idempotent() {
        for x in 2..=5 {
            let first = union_closure(&constructed_family(x));
            let second = union_closure(&first.closure);
            assert_eq!(first.closure.members(), second.closure.members(), "x={x}");
        }
    }

    #[test]
    fn closure_is_canonically_ordered() {
        let result = union_closure(&constructed_family(2));
        let members = result.closure.members();
        for pair in members.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        // smallest sets first: the two generators of size 2
        assert_eq!(members[0], set(12, &[1, 5]));
        assert_eq!(members[1], set(12, &[11, 12]));
        assert_eq!(members[132], ElementSet::full(12));
    }

    #[test]
    fn closure_guard_trips_and_clears() {
        let family = constructed_family(2);
        assert_eq!(
            union_closure_bounded(&family, 50).unwrap_err(),
            Error::ClosureLimitExceeded { limit: 50 }
        );
        assert_eq!(union_closure_bounded(&family, 133).unwrap().size(), 133);
    }

    #[test]
    fn union_closed_scan_finds_gaps() {
        let open = SetFamily::from_sets(2, [set(2, &[1]), set(2, &[2])]).unwrap();
        assert_eq!(union_closed_violation(&open), Some((0, 1)));
        let closed = union_closure(&open).closure;
        assert_eq!(union_closed_violation(&closed), None);
    }

    #[test]
    fn formula_values() {
        assert_eq!(conjecture_formula(12).unwrap(), 135);
        assert_eq!(conjecture_formula(16).unwrap(), 233);
        assert_eq!(conjecture_formula(24).unwrap(), 498);
        assert_eq!(conjecture_formula(404).unwrap(), 119_058);
    }

    #[test]
    fn formula_rejects_odd_universes() {
        assert_eq!(
            conjecture_formula(13).unwrap_err(),
            Error::FormulaDomain { n: 13 }
        );
        assert_eq!(
            conjecture_formula(14).unwrap_err(),
            Error::FormulaDomain { n: 14 }
        );
        assert!(conjecture_formula(0).is_err());
    }

    #[test]
    fn ratio_compares_exactly() {
        let a = Ratio::new(15, 133);
        let b = Ratio::new(19, 233);
        assert!(b < a);
        assert_eq!(alloc::format!("{a}"), "15/133");
        assert!((a.as_f64() - 0.1128).abs() < 1e-3);
    }

    #[test]
    fn sweep_single_row_at_x2() {
        let rows = sweep(2, 2).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(
            (row.x, row.n, row.family_size, row.closure_size),
            (2, 12, 15, 133)
        );
        assert_eq!(row.formula_value, 135);
        assert!(!row.matches);
        assert_eq!(row.ratio, Ratio::new(15, 133));
    }

    #[test]
    fn sweep_rejects_inverted_ranges() {
        assert_eq!(
            sweep(6, 5).unwrap_err(),
            Error::InvalidSweepRange { from: 6, to: 5 }
        );
        assert!(matches!(
            sweep(1, 3).unwrap_err(),
            Error::UnsupportedParameter { .. }
        ));
    }

    #[test]
    fn group_ranges_at_the_smallest_universe() {
        let params = ConstructionParams::new(2).unwrap();
        assert_eq!(group_index_range(params, ParametricGroup::K1), (5, 5));
        assert_eq!(group_index_range(params, ParametricGroup::K2), (6, 6));
        assert_eq!(group_index_range(params, ParametricGroup::K3), (10, 9));
        assert_eq!(group_index_range(params, ParametricGroup::K4), (11, 11));
        assert_eq!(
            group_generators(params, ParametricGroup::K3).unwrap_err(),
            Error::EmptyGroup {
                group: ParametricGroup::K3,
                n: 12
            }
        );
        assert_eq!(
            parametric_group_closure(params, ParametricGroup::K3).unwrap_err(),
            Error::EmptyGroup {
                group: ParametricGroup::K3,
                n: 12
            }
        );
    }

    #[test]
    fn k1_description_equals_computed_closure_at_x3() {
        let params = ConstructionParams::new(3).unwrap();
        let generators = group_generators(params, ParametricGroup::K1).unwrap();
        assert_eq!(generators.len(), 2); // S_5 and S_6 at n = 16
        let computed = union_closure(&generators).closure;
        let description = parametric_group_closure(params, ParametricGroup::K1).unwrap();
        assert_eq!(computed, description);
        assert_eq!(description.len(), 3);
    }

    #[test]
    fn k3_description_equals_computed_closure_at_x5() {
        let params = ConstructionParams::new(5).unwrap();
        let generators = group_generators(params, ParametricGroup::K3).unwrap();
        let computed = union_closure(&generators).closure;
        let description = parametric_group_closure(params, ParametricGroup::K3).unwrap();
        assert_eq!(computed, description);
    }

    #[test]
    fn theorem_checks_requires_x3() {
        let params = ConstructionParams::new(2).unwrap();
        assert!(matches!(
            theorem_checks(params).unwrap_err(),
            Error::UnsupportedParameter { minimum: 3, .. }
        ));
    }

    #[test]
    fn theorem_checks_at_x3() {
        let report = theorem_checks(ConstructionParams::new(3).unwrap()).unwrap();
        assert!(report.groups.iter().all(|g| g.matches), "{report:?}");
        assert!(report.anchored_envelope.holds);
        assert!(report.banded_envelope.holds);
        assert!(report.quadratic_lower_bound.holds);
        assert_eq!(report.quadratic_lower_bound.threshold, 2); // 16² / 128

        // The final containment fails: the combined closure escapes the
        // stated three-run description. The witness must be real on both
        // sides.
        let check = &report.combined_envelope;
        assert!(!check.holds);
        let witness = check.witness.as_ref().unwrap();
        let params = ConstructionParams::new(3).unwrap();
        let all = merge_families(&[
            group_generators(params, ParametricGroup::K1).unwrap(),
            group_generators(params, ParametricGroup::K2).unwrap(),
            group_generators(params, ParametricGroup::K3).unwrap(),
            group_generators(params, ParametricGroup::K4).unwrap(),
        ]);
        assert!(union_closure(&all).closure.contains(witness));
        assert!(!combined_union_envelope(params).contains(witness));
    }

    #[test]
    fn k1_size_meets_the_spec_example_bound_at_x5() {
        let params = ConstructionParams::new(5).unwrap();
        let description = parametric_group_closure(params, ParametricGroup::K1).unwrap();
        // 10 parameter pairs at n = 24; comfortably at least 24²/64 = 9
        assert_eq!(description.len(), 10);
        assert!(description.len() >= 24 * 24 / 64);
    }

    #[test]
    fn average_size_bound_on_a_tiny_filter() {
        let family = SetFamily::from_sets(2, [set(2, &[1]), set(2, &[1, 2])]).unwrap();
        let check = average_set_size_check(&family);
        assert_eq!(check.average, Ratio::new(3, 2));
        assert!((check.bound - 0.5).abs() < 1e-12);
        assert!(check.ok);
    }

    #[test]
    fn frequency_bound_on_a_tiny_filter() {
        let family = SetFamily::from_sets(2, [set(2, &[1]), set(2, &[1, 2])]).unwrap();
        let check = knill_check(&family);
        assert_eq!(check.max_frequency, 2);
        assert!((check.bound - 1.0).abs() < 1e-12);
        assert!(check.ok);
    }

    #[test]
    #[should_panic(expected = "not union-closed")]
    fn average_size_check_rejects_open_families() {
        let family = SetFamily::from_sets(2, [set(2, &[1]), set(2, &[2])]).unwrap();
        average_set_size_check(&family);
    }

    #[test]
    fn closure_abundance_holds_as_the_conjecture_demands() {
        // the constructed family dodges abundance, but its closure cannot
        let result = union_closure(&constructed_family(2));
        let report = crate::verify::check_abundance(&result.closure);
        assert!(report.holds);
        assert_eq!(report.best_count, 101);
        assert_eq!(report.threshold_count, 67);
        assert_eq!(report.best_element, 5);
    }
}
