//! Exhaustive brute-force enumeration of preference-family spaces.
//!
//! For each variant the full space of per-car choices is walked as a
//! mixed-radix counter over per-car choice lists, the simulator is run on
//! every family, and outcomes are tallied.  These tallies are the ground
//! truth the counting formulas are verified against.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::counting::{binom, factorial, ordered_subsets, BigCount, SizeProfile, VariantSpec};
use crate::error::{Error, Result};
use crate::permstat::{ascents, Permutation, Permutations};
use crate::simulator::{
    check_street, park, pick_leftmost, pick_listed, ParkResult, Preferences, SpotSet,
};

/// Default cap on the number of families a single brute-force run may
/// enumerate.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Cap on `n` for the ascent census (streams all `n!` permutations).
pub const ASCENT_GUARD: usize = 10;

/// Ground-truth tallies from one exhaustive run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OutcomeTally {
    /// Families that parked.
    pub total: BigCount,
    /// Parked families keyed by their outcome permutation.
    pub per_outcome: BTreeMap<Permutation, BigCount>,
    /// Families under which some car could not park.
    pub failures: BigCount,
}

impl OutcomeTally {
    /// Tally for one outcome, zero when the outcome never occurred.
    pub fn count_for(&self, p: &Permutation) -> BigCount {
        self.per_outcome.get(p).cloned().unwrap_or_default()
    }

    pub fn distinct_outcomes(&self) -> usize {
        self.per_outcome.len()
    }

    /// Number of families enumerated: parked plus failed.
    pub fn enumerated(&self) -> BigCount {
        &self.total + &self.failures
    }
}

fn pow_n(base: BigCount, n: usize) -> BigCount {
    base.pow(n as u32)
}

/// Exact cardinality of the family space for a variant on `n` spots.
pub fn family_space_size(n: usize, spec: &VariantSpec) -> Result<BigCount> {
    spec.validate(n)?;
    let size = match spec {
        VariantSpec::Classical => pow_n(BigCount::from(n as u64), n),
        VariantSpec::Subset => pow_n((BigCount::from(1u32) << n) - 1u32, n),
        VariantSpec::KSubset(k) => pow_n(binom(n, *k as i64), n),
        VariantSpec::SizeProfile(p) => per_car_product(p, |l| binom(n, l as i64)),
        VariantSpec::Interval => pow_n(BigCount::from((n * (n + 1) / 2) as u64), n),
        VariantSpec::KInterval(k) => pow_n(BigCount::from((n - k + 1) as u64), n),
        VariantSpec::IntervalProfile(p) => {
            per_car_product(p, |l| BigCount::from((n - l + 1) as u64))
        }
        VariantSpec::Ordered => pow_n(ordered_subsets(n) - 1u32, n),
        VariantSpec::OrderedProfile(p) => per_car_product(p, |l| binom(n, l as i64) * factorial(l)),
    };
    Ok(size)
}

/// Product over cars of the summed per-size choice counts.
fn per_car_product(profile: &SizeProfile, choices_of_size: impl Fn(usize) -> BigCount) -> BigCount {
    (1..=profile.n()).fold(BigCount::from(1u32), |acc, i| {
        let per_car: BigCount = profile
            .sizes_for(i)
            .iter()
            .map(|&l| choices_of_size(l))
            .sum();
        acc * per_car
    })
}

/// Per-car choice lists; a family is one index into each car's list.
enum ChoiceLists {
    Sets(Vec<Vec<SpotSet>>),
    Lists(Vec<Vec<Vec<usize>>>),
}

impl ChoiceLists {
    fn radices(&self) -> Vec<usize> {
        match self {
            ChoiceLists::Sets(per_car) => per_car.iter().map(Vec::len).collect(),
            ChoiceLists::Lists(per_car) => per_car.iter().map(Vec::len).collect(),
        }
    }
}

fn choice_lists(n: usize, spec: &VariantSpec) -> ChoiceLists {
    let same_for_all = |list: Vec<SpotSet>| vec![list; n];
    let all_masks = || (1..1u64 << n).map(|b| SpotSet::from_bits(n, b).unwrap());
    // (start, length) pairs in lexicographic order.
    let intervals_with = |keep: &dyn Fn(usize) -> bool| -> Vec<SpotSet> {
        (1..=n)
            .flat_map(|start| {
                (1..=n - start + 1)
                    .filter(|&len| keep(len))
                    .map(move |len| (start, len))
            })
            .map(|(start, len)| SpotSet::interval(n, start, len).unwrap())
            .collect()
    };
    // Ordered lists of each permitted length, shorter first.
    let lists_with = |keep: &dyn Fn(usize) -> bool| -> Vec<Vec<usize>> {
        (1..=n)
            .filter(|&len| keep(len))
            .flat_map(|len| (1..=n).permutations(len))
            .collect()
    };

    match spec {
        VariantSpec::Classical => ChoiceLists::Sets(same_for_all(
            (1..=n).map(|c| SpotSet::classical(n, c).unwrap()).collect(),
        )),
        VariantSpec::Subset => ChoiceLists::Sets(same_for_all(all_masks().collect())),
        VariantSpec::KSubset(k) => ChoiceLists::Sets(same_for_all(
            all_masks().filter(|s| s.len() == *k).collect(),
        )),
        VariantSpec::SizeProfile(p) => ChoiceLists::Sets(
            (1..=n)
                .map(|i| {
                    all_masks()
                        .filter(|s| p.sizes_for(i).contains(&s.len()))
                        .collect()
                })
                .collect(),
        ),
        VariantSpec::Interval => ChoiceLists::Sets(same_for_all(intervals_with(&|_| true))),
        VariantSpec::KInterval(k) => {
            ChoiceLists::Sets(same_for_all(intervals_with(&|len| len == *k)))
        }
        VariantSpec::IntervalProfile(p) => ChoiceLists::Sets(
            (1..=n)
                .map(|i| intervals_with(&|len| p.sizes_for(i).contains(&len)))
                .collect(),
        ),
        VariantSpec::Ordered => ChoiceLists::Lists(vec![lists_with(&|_| true); n]),
        VariantSpec::OrderedProfile(p) => ChoiceLists::Lists(
            (1..=n)
                .map(|i| lists_with(&|len| p.sizes_for(i).contains(&len)))
                .collect(),
        ),
    }
}

/// A family picked out of per-car choice lists by a current index vector.
struct SetChoiceView<'a> {
    n: usize,
    choices: &'a [Vec<SpotSet>],
    idx: &'a [usize],
}

impl Preferences for SetChoiceView<'_> {
    fn n(&self) -> usize {
        self.n
    }

    fn pick(&self, car: usize, occupied: u64) -> Option<usize> {
        pick_leftmost(self.choices[car - 1][self.idx[car - 1]].bits(), occupied)
    }
}

struct ListChoiceView<'a> {
    n: usize,
    choices: &'a [Vec<Vec<usize>>],
    idx: &'a [usize],
}

impl Preferences for ListChoiceView<'_> {
    fn n(&self) -> usize {
        self.n
    }

    fn pick(&self, car: usize, occupied: u64) -> Option<usize> {
        pick_listed(&self.choices[car - 1][self.idx[car - 1]], occupied)
    }
}

/// Enumerates every family in the variant's space, runs the simulator on
/// each, and tallies outcomes and failures.
///
/// The space size is checked against `budget` before any enumeration.
pub fn brute_tally(n: usize, spec: &VariantSpec, budget: u64) -> Result<OutcomeTally> {
    check_street(n)?;
    let size = family_space_size(n, spec)?;
    if size > BigCount::from(budget) {
        return Err(Error::BudgetExceeded {
            required: size,
            budget,
        });
    }
    let lists = choice_lists(n, spec);
    let radices = lists.radices();

    let mut per_outcome: BTreeMap<Permutation, u64> = BTreeMap::new();
    let mut parked = 0u64;
    let mut failures = 0u64;
    let mut idx = vec![0usize; n];
    loop {
        let result = match &lists {
            ChoiceLists::Sets(choices) => park(&SetChoiceView {
                n,
                choices,
                idx: &idx,
            }),
            ChoiceLists::Lists(choices) => park(&ListChoiceView {
                n,
                choices,
                idx: &idx,
            }),
        };
        match result {
            ParkResult::Parked(p) => {
                *per_outcome.entry(p).or_insert(0) += 1;
                parked += 1;
            }
            ParkResult::Failed { .. } => failures += 1,
        }

        // Mixed-radix successor; pos hits 0 once every digit rolled over.
        let mut pos = n;
        while pos > 0 {
            idx[pos - 1] += 1;
            if idx[pos - 1] < radices[pos - 1] {
                break;
            }
            idx[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }

    let tally = OutcomeTally {
        total: BigCount::from(parked),
        per_outcome: per_outcome
            .into_iter()
            .map(|(p, c)| (p, BigCount::from(c)))
            .collect(),
        failures: BigCount::from(failures),
    };
    debug_assert_eq!(tally.enumerated(), size);
    Ok(tally)
}

/// Exhaustive count of permutations of `n` that end in an ascent and have
/// exactly `k` ascents in total.
pub fn brute_ascent_ending(n: usize, k: usize) -> Result<BigCount> {
    let mut count = 0u64;
    for p in Permutations::with_limit(n, ASCENT_GUARD)? {
        let vals = p.values();
        if n >= 2 && vals[n - 2] < vals[n - 1] && ascents(&p) == k {
            count += 1;
        }
    }
    Ok(BigCount::from(count))
}
