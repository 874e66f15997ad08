//! Condition checkers: the subset condition, pairwise interval
//! disjointness (non-interference), the filter property, abundance, and the
//! structural lints that a counterexample system must satisfy.
//!
//! Checkers collect every violation with a concrete witness instead of
//! failing fast, and report in index order so output is deterministic.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::error::{Error, Result};
use crate::family::{PairedSystem, SetFamily};
use crate::set::ElementSet;

/// Fast disjointness test for the intervals `[sp, fp]` and `[sq, fq]`.
///
/// The intervals are disjoint exactly when some element of one lower bound
/// is missing from the other upper bound, i.e. `sp ⊄ fq` or `sq ⊄ fp`; two
/// and-not sweeps decide it. Both pairs must satisfy the subset condition,
/// otherwise an interval would be empty and the two-sided test meaningless.
pub fn intervals_disjoint(
    sp: &ElementSet,
    fp: &ElementSet,
    sq: &ElementSet,
    fq: &ElementSet,
) -> Result<bool> {
    if !sp.is_subset_of(fp)? || !sq.is_subset_of(fq)? {
        return Err(Error::MalformedInterval);
    }
    Ok(!sp.is_subset_of(fq)? || !sq.is_subset_of(fp)?)
}

/// The interval `[A, B]`: every set `C` with `A ⊆ C ⊆ B`. Inverted bounds
/// yield the explicit `Empty` marker, never a silently-wrong span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interval {
    Empty,
    Span { lower: ElementSet, upper: ElementSet },
}

impl Interval {
    /// Both bounds must share a universe; `Empty` when `lower ⊄ upper`.
    pub fn new(lower: ElementSet, upper: ElementSet) -> Result<Self> {
        if lower.is_subset_of(&upper)? {
            Ok(Interval::Span { lower, upper })
        } else {
            Ok(Interval::Empty)
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    /// Number of member sets, `2^|upper \ lower|` for a span.
    pub fn member_count(&self) -> u128 {
        match self {
            Interval::Empty => 0,
            Interval::Span { .. } => 1u128 << self.free_elements().len(),
        }
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        match self {
            Interval::Empty => false,
            Interval::Span { lower, upper } => {
                lower.subset_unchecked(set) && set.subset_unchecked(upper)
            }
        }
    }

    fn free_elements(&self) -> Vec<usize> {
        match self {
            Interval::Empty => Vec::new(),
            Interval::Span { lower, upper } => upper
                .elements()
                .filter(|e| !lower.contains(*e))
                .collect(),
        }
    }

    /// Every member: the lower bound joined with each subset of the free
    /// elements. Panics on spans too large to enumerate at all; callers
    /// bound the size first (see the oracle's budget).
    pub fn members(&self) -> impl Iterator<Item = ElementSet> + '_ {
        let free = self.free_elements();
        assert!(free.len() < 64, "interval too large to enumerate");
        let count = match self {
            Interval::Empty => 0,
            Interval::Span { .. } => 1u64 << free.len(),
        };
        (0..count).map(move |mask| {
            let Interval::Span { lower, .. } = self else {
                unreachable!("empty intervals produce no members")
            };
            let mut member = lower.clone();
            for (bit, element) in free.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    member.insert(*element);
                }
            }
            member
        })
    }
}

/// Brute-force route for the same question: enumerate both intervals in
/// full and intersect them. `2^|fp \ sp| + 2^|fq \ sq|` sets are generated,
/// which must fit in `budget`.
pub fn intervals_disjoint_oracle(
    sp: &ElementSet,
    fp: &ElementSet,
    sq: &ElementSet,
    fq: &ElementSet,
    budget: u64,
) -> Result<bool> {
    let first = Interval::new(sp.clone(), fp.clone())?;
    let second = Interval::new(sq.clone(), fq.clone())?;
    let required = first.member_count() + second.member_count();
    if required > u128::from(budget) {
        return Err(Error::OracleBudgetExceeded { required, budget });
    }
    let left: HashSet<ElementSet> = first.members().collect();
    let disjoint = !second.members().any(|set| left.contains(&set));
    Ok(disjoint)
}

/// Indices whose family set is not contained in its filter set.
pub fn check_subset_condition(system: &PairedSystem) -> Vec<usize> {
    system
        .pairs()
        .iter()
        .enumerate()
        .filter(|(_, (small, large))| !small.subset_unchecked(large))
        .map(|(index, _)| index)
        .collect()
}

/// A pair of indices whose intervals intersect, together with a set lying
/// in both intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonInterferenceViolation {
    pub first: usize,
    pub second: usize,
    pub witness: ElementSet,
}

/// Checks every unordered pair of indices for interval disjointness.
///
/// When the fast test fails for `(p, q)`, both lower bounds are contained in
/// both upper bounds, so `S_p ∪ S_q` lies in both intervals and is reported
/// as the witness. Pairs violating the subset condition have an empty
/// interval, which is disjoint from everything, so they are skipped here
/// (and reported by [`check_subset_condition`] instead).
pub fn check_non_interference(system: &PairedSystem) -> Vec<NonInterferenceViolation> {
    let pairs = system.pairs();
    let well_formed: Vec<bool> = pairs
        .iter()
        .map(|(small, large)| small.subset_unchecked(large))
        .collect();
    let mut violations = Vec::new();
    for p in 0..pairs.len() {
        if !well_formed[p] {
            continue;
        }
        let (sp, fp) = &pairs[p];
        for q in p + 1..pairs.len() {
            if !well_formed[q] {
                continue;
            }
            let (sq, fq) = &pairs[q];
            if sp.subset_unchecked(fq) && sq.subset_unchecked(fp) {
                violations.push(NonInterferenceViolation {
                    first: p,
                    second: q,
                    witness: sp.union(sq).expect("one system, one universe"),
                });
            }
        }
    }
    violations
}

/// A member and an element whose addition escapes the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterViolation {
    pub member: ElementSet,
    pub element: usize,
}

/// Checks the filter property: adding any single element to any member must
/// land back in the family. Returns the first violation in member order,
/// or `None` when the family is a filter.
pub fn check_filter(family: &SetFamily) -> Option<FilterViolation> {
    for member in family.iter() {
        for element in 1..=family.universe_size() {
            if member.contains(element) {
                continue;
            }
            let mut grown = member.clone();
            grown.insert(element);
            if !family.contains(&grown) {
                return Some(FilterViolation {
                    member: member.clone(),
                    element,
                });
            }
        }
    }
    None
}

/// Result of the abundance check: does some element reach half the family?
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbundanceReport {
    pub holds: bool,
    /// Lowest-numbered element achieving the maximum frequency.
    pub best_element: usize,
    pub best_count: usize,
    /// `ceil(|family| / 2)`, computed in integer arithmetic.
    pub threshold_count: usize,
}

/// "Some element belongs to at least half of the member sets." The
/// threshold is the exact integer ceiling `⌈|family| / 2⌉`, never a float.
pub fn check_abundance(family: &SetFamily) -> AbundanceReport {
    let threshold_count = family.len().div_ceil(2);
    let frequencies = family.element_frequencies();
    let (best_index, best_count) = frequencies
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, c)| (i, *c))
        .unwrap_or((0, 0));
    AbundanceReport {
        holds: best_count >= threshold_count,
        best_element: best_index + 1,
        best_count,
        threshold_count,
    }
}

/// Structural lints on a paired system, one per necessary property of a
/// counterexample with this filter shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LintKind {
    /// L1: the family set paired with `[n]` is `[n]` itself.
    UniverseImage,
    /// L2: the family sets at indices `n+1` and `n+2` are nonempty.
    TailSetsNonempty,
    /// L3: `n >= 4x + 4` for `x` the minimum family set size.
    MinSizeBound,
    /// L4: at `n = 4x + 4`, every element frequency is exactly `n/2 + 1`.
    UniformFrequency,
    /// L5: the family sets at indices `1..=n` have total size at least
    /// `n(n-1)/2 + 2`.
    SizeSumLowerBound,
}

impl LintKind {
    pub fn id(&self) -> &'static str {
        match self {
            LintKind::UniverseImage => "L1",
            LintKind::TailSetsNonempty => "L2",
            LintKind::MinSizeBound => "L3",
            LintKind::UniformFrequency => "L4",
            LintKind::SizeSumLowerBound => "L5",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            LintKind::UniverseImage => "set mapped to the universe is the universe",
            LintKind::TailSetsNonempty => "tail family sets are nonempty",
            LintKind::MinSizeBound => "universe covers four times the minimum size plus four",
            LintKind::UniformFrequency => "element frequencies are uniform at n/2 + 1",
            LintKind::SizeSumLowerBound => "family sizes at indices 1..=n reach n(n-1)/2 + 2",
        }
    }
}

impl core::fmt::Display for LintKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LintResult {
    pub kind: LintKind,
    pub pass: bool,
    /// Present on failure (the witness), and occasionally on a pass to note
    /// why a lint did not apply.
    pub witness: Option<String>,
}

impl LintResult {
    fn pass(kind: LintKind) -> Self {
        LintResult {
            kind,
            pass: true,
            witness: None,
        }
    }

    fn fail(kind: LintKind, witness: String) -> Self {
        LintResult {
            kind,
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Runs the five structural lints. Lints that need the system to have the
/// canonical `n + 3` pairs fail with a size witness when it does not.
pub fn structural_lints(system: &PairedSystem) -> Vec<LintResult> {
    let n = system.universe_size();
    let smalls = system.smalls();
    let mut results = Vec::with_capacity(5);

    // L1: whichever family set is paired with [n] must be [n].
    let full = ElementSet::full(n);
    let l1 = match system.pairs().iter().position(|(_, large)| *large == full) {
        Some(index) => {
            let small = system.pair(index).unwrap().0;
            if *small == full {
                LintResult::pass(LintKind::UniverseImage)
            } else {
                LintResult::fail(
                    LintKind::UniverseImage,
                    format!("pair {index} maps {small} to the universe"),
                )
            }
        }
        None => LintResult::fail(
            LintKind::UniverseImage,
            String::from("no pair has the universe on the filter side"),
        ),
    };
    results.push(l1);

    // L2 and L5 address indices relative to the canonical layout.
    let expected = n + 3;
    if system.len() != expected {
        let witness = format!("system has {} pairs, expected {expected}", system.len());
        results.push(LintResult::fail(LintKind::TailSetsNonempty, witness.clone()));
        results.push(lint_min_size(n, &smalls));
        results.push(lint_uniform_frequency(n, &smalls));
        results.push(LintResult::fail(LintKind::SizeSumLowerBound, witness));
        return results;
    }

    let l2_empty: Vec<usize> = [n + 1, n + 2]
        .into_iter()
        .filter(|i| smalls.get(*i).unwrap().is_empty())
        .collect();
    results.push(if l2_empty.is_empty() {
        LintResult::pass(LintKind::TailSetsNonempty)
    } else {
        LintResult::fail(
            LintKind::TailSetsNonempty,
            format!("family sets at indices {l2_empty:?} are empty"),
        )
    });

    results.push(lint_min_size(n, &smalls));
    results.push(lint_uniform_frequency(n, &smalls));

    let middle_sum: usize = (1..=n).map(|i| smalls.get(i).unwrap().len()).sum();
    let required = n * (n - 1) / 2 + 2;
    results.push(if middle_sum >= required {
        LintResult::pass(LintKind::SizeSumLowerBound)
    } else {
        LintResult::fail(
            LintKind::SizeSumLowerBound,
            format!("sum over indices 1..=n is {middle_sum}, needs {required}"),
        )
    });

    results
}

fn lint_min_size(n: usize, smalls: &SetFamily) -> LintResult {
    match smalls.min_member_size() {
        Some(x) if n >= 4 * x + 4 => LintResult::pass(LintKind::MinSizeBound),
        Some(x) => LintResult::fail(
            LintKind::MinSizeBound,
            format!("n = {n} but minimum size {x} needs n >= {}", 4 * x + 4),
        ),
        None => LintResult::fail(LintKind::MinSizeBound, String::from("empty system")),
    }
}

fn lint_uniform_frequency(n: usize, smalls: &SetFamily) -> LintResult {
    let applies = smalls
        .min_member_size()
        .is_some_and(|x| n == 4 * x + 4);
    if !applies {
        return LintResult {
            kind: LintKind::UniformFrequency,
            pass: true,
            witness: Some(String::from("not applicable: n != 4x + 4")),
        };
    }
    let expected = n / 2 + 1;
    let off: Vec<(usize, usize)> = smalls
        .element_frequencies()
        .into_iter()
        .enumerate()
        .filter(|(_, count)| *count != expected)
        .map(|(i, count)| (i + 1, count))
        .collect();
    if off.is_empty() {
        LintResult::pass(LintKind::UniformFrequency)
    } else {
        let (element, count) = off[0];
        LintResult::fail(
            LintKind::UniformFrequency,
            format!(
                "element {element} appears in {count} sets, expected {expected} ({} elements off)",
                off.len()
            ),
        )
    }
}

/// Which checker a witness belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Subset,
    NonInterference,
    Filter,
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Subset => "subset",
            CheckKind::NonInterference => "non-interference",
            CheckKind::Filter => "filter",
        }
    }
}

/// One concrete violation, addressed by pair index (or index pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationWitness {
    pub check: CheckKind,
    pub first_index: Option<usize>,
    pub second_index: Option<usize>,
    pub description: String,
}

/// Aggregated verdict over all checks, with witnesses for everything that
/// failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub subset_ok: bool,
    pub non_interference_ok: bool,
    pub filter_ok: bool,
    pub abundance: AbundanceReport,
    pub lint_results: Vec<LintResult>,
    pub violation_witnesses: Vec<ViolationWitness>,
}

impl VerificationReport {
    /// All three conditions on the pairing hold.
    pub fn reimer_ok(&self) -> bool {
        self.subset_ok && self.non_interference_ok && self.filter_ok
    }

    /// The system is a counterexample: the pairing conditions hold and no
    /// element is abundant.
    pub fn is_counterexample(&self) -> bool {
        self.reimer_ok() && !self.abundance.holds
    }
}

/// Runs every checker on the system and aggregates the results.
pub fn verify_system(system: &PairedSystem) -> VerificationReport {
    let mut witnesses = Vec::new();

    let subset_violations = check_subset_condition(system);
    for index in &subset_violations {
        let (small, large) = system.pair(*index).unwrap();
        witnesses.push(ViolationWitness {
            check: CheckKind::Subset,
            first_index: Some(*index),
            second_index: None,
            description: format!("{small} is not contained in {large}"),
        });
    }

    let interference = check_non_interference(system);
    for violation in &interference {
        witnesses.push(ViolationWitness {
            check: CheckKind::NonInterference,
            first_index: Some(violation.first),
            second_index: Some(violation.second),
            description: format!(
                "{} lies in the intervals of both pairs {} and {}",
                violation.witness, violation.first, violation.second
            ),
        });
    }

    let filter_violation = check_filter(&system.larges());
    if let Some(violation) = &filter_violation {
        witnesses.push(ViolationWitness {
            check: CheckKind::Filter,
            first_index: None,
            second_index: None,
            description: format!(
                "{} plus element {} leaves the filter",
                violation.member, violation.element
            ),
        });
    }

    VerificationReport {
        subset_ok: subset_violations.is_empty(),
        non_interference_ok: interference.is_empty(),
        filter_ok: filter_violation.is_none(),
        abundance: check_abundance(&system.smalls()),
        lint_results: structural_lints(system),
        violation_witnesses: witnesses,
    }
}
