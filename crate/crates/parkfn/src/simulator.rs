//! Deterministic parking processes.
//!
//! Cars 1..n park in order on a street of `n` spots.  Each car carries a
//! preference structure: a set of acceptable spots (taking the leftmost free
//! one) or an ordered list (taking the most-preferred free one).  The result
//! is either the outcome permutation or the first car that cannot park.
//!
//! Streets are capped at 64 spots so a spot set is a single machine word.

use std::fmt;

use crate::error::{Error, Result};
use crate::permstat::Permutation;

/// Nonempty subset of `{1..n}` stored as a bit mask (bit `j-1` = spot `j`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpotSet {
    bits: u64,
}

impl SpotSet {
    /// Builds a set from spot labels, validated against street length `n`.
    pub fn new(n: usize, spots: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_street(n)?;
        let mut bits = 0u64;
        for spot in spots {
            if spot < 1 || spot > n {
                return Err(Error::SpotOutOfRange { spot, n });
            }
            bits |= 1 << (spot - 1);
        }
        Self::from_bits(n, bits)
    }

    /// Builds a set directly from a mask.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_street(n)?;
        if bits == 0 {
            return Err(Error::EmptySpotSet);
        }
        if n < 64 && bits >> n != 0 {
            let spot = 64 - bits.leading_zeros() as usize;
            return Err(Error::SpotOutOfRange { spot, n });
        }
        Ok(Self { bits })
    }

    /// The interval `[start, start + len - 1]`.
    pub fn interval(n: usize, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start == 0 || start + len - 1 > n {
            return Err(Error::InvalidArgument(format!(
                "interval [{start}, {}] does not fit in 1..={n}",
                start + len.max(1) - 1
            )));
        }
        let bits = if len == 64 {
            u64::MAX
        } else {
            ((1u64 << len) - 1) << (start - 1)
        };
        Self::from_bits(n, bits)
    }

    /// The classical tail interval `[pref, n]`.
    pub fn classical(n: usize, pref: usize) -> Result<Self> {
        if pref < 1 || pref > n {
            return Err(Error::SpotOutOfRange { spot: pref, n });
        }
        Self::interval(n, pref, n - pref + 1)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of spots in the set.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn contains(&self, spot: usize) -> bool {
        (1..=64).contains(&spot) && self.bits >> (spot - 1) & 1 == 1
    }

    /// Spot labels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=64usize).filter(|&s| self.contains(s))
    }

    pub fn min(&self) -> usize {
        self.bits.trailing_zeros() as usize + 1
    }

    /// True iff the members form a contiguous run.
    pub fn is_interval(&self) -> bool {
        let shifted = self.bits >> self.bits.trailing_zeros();
        // Wrapping: the full 64-bit set is a run and lands on `MAX & 0`.
        shifted & shifted.wrapping_add(1) == 0
    }
}

impl fmt::Debug for SpotSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, s) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn check_street(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "street must have at least 1 spot".into(),
        ));
    }
    if n > 64 {
        return Err(Error::StreetTooLong { n });
    }
    Ok(())
}

/// One acceptable-spot set per car; the input to [`park_subsets`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFamily {
    n: usize,
    sets: Vec<SpotSet>,
}

impl SetFamily {
    pub fn new(n: usize, sets: Vec<SpotSet>) -> Result<Self> {
        check_street(n)?;
        if sets.len() != n {
            return Err(Error::FamilyLengthMismatch {
                expected: n,
                got: sets.len(),
            });
        }
        for set in &sets {
            // Re-validate the range: the sets may have been built for a longer street.
            SpotSet::from_bits(n, set.bits())?;
        }
        Ok(Self { n, sets })
    }

    /// The classical family `C_i = [c_i, n]`.
    pub fn classical(prefs: &[usize]) -> Result<Self> {
        let n = prefs.len();
        check_street(n)?;
        let sets = prefs
            .iter()
            .map(|&c| SpotSet::classical(n, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[SpotSet] {
        &self.sets
    }

    /// True iff every set is a contiguous run.
    pub fn is_interval_family(&self) -> bool {
        self.sets.iter().all(SpotSet::is_interval)
    }
}

/// One preference list per car, most-preferred first; the input to
/// [`park_ordered`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedFamily {
    n: usize,
    prefs: Vec<Vec<usize>>,
}

impl OrderedFamily {
    pub fn new(n: usize, prefs: Vec<Vec<usize>>) -> Result<Self> {
        check_street(n)?;
        if prefs.len() != n {
            return Err(Error::FamilyLengthMismatch {
                expected: n,
                got: prefs.len(),
            });
        }
        for (idx, list) in prefs.iter().enumerate() {
            let car = idx + 1;
            if list.is_empty() {
                return Err(Error::EmptySpotSet);
            }
            let mut seen = 0u64;
            for &spot in list {
                if spot < 1 || spot > n {
                    return Err(Error::SpotOutOfRange { spot, n });
                }
                if seen >> (spot - 1) & 1 == 1 {
                    return Err(Error::DuplicatePreference { car, spot });
                }
                seen |= 1 << (spot - 1);
            }
        }
        Ok(Self { n, prefs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prefs(&self) -> &[Vec<usize>] {
        &self.prefs
    }

    /// The underlying unordered sets, forgetting preference order.
    pub fn to_set_family(&self) -> SetFamily {
        let sets = self
            .prefs
            .iter()
            .map(|list| SpotSet::new(self.n, list.iter().copied()).unwrap())
            .collect();
        SetFamily::new(self.n, sets).unwrap()
    }
}

/// A family of per-car preference structures that a parking process can run
/// over.  `pick` returns the spot car `car` takes given the occupied mask,
/// or `None` if every acceptable spot is taken.
pub trait Preferences {
    fn n(&self) -> usize;
    fn pick(&self, car: usize, occupied: u64) -> Option<usize>;
}

/// Leftmost free spot of an acceptable-spot mask.
pub(crate) fn pick_leftmost(acceptable: u64, occupied: u64) -> Option<usize> {
    let free = acceptable & !occupied;
    if free == 0 {
        None
    } else {
        Some(free.trailing_zeros() as usize + 1)
    }
}

/// First free spot of a preference list, most-preferred first.
pub(crate) fn pick_listed(list: &[usize], occupied: u64) -> Option<usize> {
    list.iter()
        .copied()
        .find(|&spot| occupied >> (spot - 1) & 1 == 0)
}

impl Preferences for SetFamily {
    fn n(&self) -> usize {
        self.n
    }

    fn pick(&self, car: usize, occupied: u64) -> Option<usize> {
        pick_leftmost(self.sets[car - 1].bits(), occupied)
    }
}

impl Preferences for OrderedFamily {
    fn n(&self) -> usize {
        self.n
    }

    fn pick(&self, car: usize, occupied: u64) -> Option<usize> {
        pick_listed(&self.prefs[car - 1], occupied)
    }
}

/// Result of a full parking run: the outcome permutation (spot -> car), or
/// the first car whose acceptable spots were all taken.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParkResult {
    Parked(Permutation),
    Failed { car: usize },
}

impl ParkResult {
    pub fn outcome(&self) -> Option<&Permutation> {
        match self {
            ParkResult::Parked(p) => Some(p),
            ParkResult::Failed { .. } => None,
        }
    }

    pub fn failed_car(&self) -> Option<usize> {
        match self {
            ParkResult::Parked(_) => None,
            ParkResult::Failed { car } => Some(*car),
        }
    }
}

/// Street state after the first `m` of `n` cars have parked.
///
/// `slots[j-1]` holds the car in spot `j`, or `None` while unoccupied.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialOutcome {
    n: usize,
    m: usize,
    slots: Vec<Option<usize>>,
}

impl PartialOutcome {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cars parked so far.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn slots(&self) -> &[Option<usize>] {
        &self.slots
    }

    /// The full outcome, once `m = n`.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.m != self.n {
            return None;
        }
        let values = self.slots.iter().map(|s| s.unwrap()).collect();
        Some(Permutation::from_values_unchecked(values))
    }
}

impl fmt::Display for PartialOutcome {
    /// Cars by spot with `*` marking unoccupied; compact for `n <= 9`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .slots
            .iter()
            .map(|s| match s {
                Some(car) => car.to_string(),
                None => "*".to_string(),
            })
            .collect();
        if self.n <= 9 {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Result of a partial replay: the street state, or the first failing car
/// among the replayed prefix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReplayResult {
    Parked(PartialOutcome),
    Failed { car: usize },
}

fn run<P: Preferences>(family: &P, upto: usize) -> ReplayResult {
    let n = family.n();
    let mut occupied = 0u64;
    let mut slots = vec![None; n];
    for car in 1..=upto {
        match family.pick(car, occupied) {
            Some(spot) => {
                occupied |= 1 << (spot - 1);
                slots[spot - 1] = Some(car);
            }
            None => return ReplayResult::Failed { car },
        }
    }
    ReplayResult::Parked(PartialOutcome { n, m: upto, slots })
}

fn run_full<P: Preferences>(family: &P) -> ParkResult {
    match run(family, family.n()) {
        ReplayResult::Parked(partial) => ParkResult::Parked(partial.to_permutation().unwrap()),
        ReplayResult::Failed { car } => ParkResult::Failed { car },
    }
}

/// Runs the full parking process over any preference family.
pub fn park<P: Preferences>(family: &P) -> ParkResult {
    run_full(family)
}

/// Parks cars 1..n in order, each taking the leftmost free spot of its set.
pub fn park_subsets(family: &SetFamily) -> ParkResult {
    run_full(family)
}

/// Classical parking: car `i` drives to `prefs[i-1]` and takes the next free
/// spot at or after it.  Identical to [`park_subsets`] on `C_i = [c_i, n]`.
pub fn park_classical(prefs: &[usize]) -> Result<ParkResult> {
    Ok(run_full(&SetFamily::classical(prefs)?))
}

/// Parks cars 1..n in order, each taking the earliest entry of its
/// preference list that is still free.
pub fn park_ordered(family: &OrderedFamily) -> ParkResult {
    run_full(family)
}

/// Replays the first `m` cars of any preference family.
///
/// `replay_partial(f, n)` embeds the full outcome of the corresponding park
/// operation; a failure of any car `<= m` is reported as such.
pub fn replay_partial<P: Preferences>(family: &P, m: usize) -> Result<ReplayResult> {
    if m > family.n() {
        return Err(Error::PrefixOutOfRange { m, n: family.n() });
    }
    Ok(run(family, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permstat::all_permutations;

    fn subsets(n: usize, sets: &[&[usize]]) -> SetFamily {
        let sets = sets
            .iter()
            .map(|s| SpotSet::new(n, s.iter().copied()).unwrap())
            .collect();
        SetFamily::new(n, sets).unwrap()
    }

    #[test]
    fn spot_set_validation() {
        assert!(SpotSet::new(3, [1, 3]).is_ok());
        assert!(matches!(SpotSet::new(3, []), Err(Error::EmptySpotSet)));
        assert!(matches!(
            SpotSet::new(3, [4]),
            Err(Error::SpotOutOfRange { spot: 4, n: 3 })
        ));
        assert!(SpotSet::new(65, [1]).is_err());
        assert!(SpotSet::new(64, [64]).is_ok());
        assert_eq!(
            SpotSet::interval(5, 2, 3).unwrap(),
            SpotSet::new(5, [2, 3, 4]).unwrap()
        );
        assert_eq!(
            SpotSet::classical(4, 2).unwrap(),
            SpotSet::new(4, [2, 3, 4]).unwrap()
        );
    }

    #[test]
    fn interval_detection() {
        assert!(SpotSet::new(5, [2, 3, 4]).unwrap().is_interval());
        assert!(SpotSet::new(5, [3]).unwrap().is_interval());
        assert!(!SpotSet::new(5, [1, 3]).unwrap().is_interval());
        assert!(SpotSet::interval(64, 1, 64).unwrap().is_interval());
    }

    #[test]
    fn subset_worked_examples() {
        let ok = subsets(3, &[&[2], &[2, 3], &[1, 2, 3]]);
        assert_eq!(
            park_subsets(&ok),
            ParkResult::Parked("312".parse().unwrap())
        );

        let bad = subsets(3, &[&[2, 3], &[1, 2, 3], &[2]]);
        assert_eq!(park_subsets(&bad), ParkResult::Failed { car: 3 });
    }

    #[test]
    fn order_of_sets_matters() {
        // Same multiset of sets as the parking pair above: one parks, the
        // reordering fails.
        let ok = subsets(3, &[&[2], &[2, 3], &[1, 2, 3]]);
        let reordered = subsets(3, &[&[2, 3], &[1, 2, 3], &[2]]);
        assert!(park_subsets(&ok).outcome().is_some());
        assert!(park_subsets(&reordered).failed_car().is_some());
    }

    #[test]
    fn disjoint_singletons_park_in_place() {
        let n = 6;
        let sets = (1..=n).map(|i| SpotSet::new(n, [i]).unwrap()).collect();
        let family = SetFamily::new(n, sets).unwrap();
        assert_eq!(
            park_subsets(&family),
            ParkResult::Parked(Permutation::identity(n).unwrap())
        );
    }

    #[test]
    fn classical_worked_examples() {
        assert_eq!(
            park_classical(&[2, 2, 2]).unwrap(),
            ParkResult::Failed { car: 3 }
        );
        assert_eq!(
            park_classical(&[2, 1, 1]).unwrap(),
            ParkResult::Parked("213".parse().unwrap())
        );
        assert_eq!(
            park_classical(&[1, 1, 1, 1]).unwrap(),
            ParkResult::Parked("1234".parse().unwrap())
        );
        assert!(park_classical(&[4, 1, 1]).is_err());
    }

    #[test]
    fn ordered_worked_examples() {
        let f = OrderedFamily::new(2, vec![vec![2, 1], vec![2, 1]]).unwrap();
        assert_eq!(park_ordered(&f), ParkResult::Parked("21".parse().unwrap()));

        let clash = OrderedFamily::new(2, vec![vec![1], vec![1]]).unwrap();
        assert_eq!(park_ordered(&clash), ParkResult::Failed { car: 2 });

        assert!(OrderedFamily::new(2, vec![vec![1, 1], vec![2]]).is_err());
        assert!(OrderedFamily::new(2, vec![vec![3], vec![2]]).is_err());
    }

    #[test]
    fn replay_examples() {
        let f = subsets(3, &[&[2], &[2, 3], &[1, 2, 3]]);

        let r0 = replay_partial(&f, 0).unwrap();
        let ReplayResult::Parked(p0) = r0 else {
            panic!()
        };
        assert_eq!(p0.slots(), &[None, None, None]);

        let r1 = replay_partial(&f, 1).unwrap();
        let ReplayResult::Parked(p1) = r1 else {
            panic!()
        };
        assert_eq!(p1.slots(), &[None, Some(1), None]);
        assert_eq!(p1.to_string(), "*1*");

        let r3 = replay_partial(&f, 3).unwrap();
        let ReplayResult::Parked(p3) = r3 else {
            panic!()
        };
        assert_eq!(p3.to_permutation().unwrap(), "312".parse().unwrap());

        assert!(replay_partial(&f, 4).is_err());

        let bad = subsets(3, &[&[2, 3], &[1, 2, 3], &[2]]);
        assert_eq!(
            replay_partial(&bad, 3).unwrap(),
            ReplayResult::Failed { car: 3 }
        );
        // Failure only shows up once the failing car is replayed.
        assert!(matches!(
            replay_partial(&bad, 2).unwrap(),
            ReplayResult::Parked(_)
        ));
    }

    #[test]
    fn outcome_spots_are_acceptable() {
        // Every 3-car family over a few set shapes: if it parks, car i sits in C_i.
        let shapes: Vec<SpotSet> = (1u64..8)
            .map(|b| SpotSet::from_bits(3, b).unwrap())
            .collect();
        for &s1 in &shapes {
            for &s2 in &shapes {
                for &s3 in &shapes {
                    let family = SetFamily::new(3, vec![s1, s2, s3]).unwrap();
                    if let ParkResult::Parked(outcome) = park_subsets(&family) {
                        for (slot, &car) in outcome.values().iter().enumerate() {
                            assert!(family.sets()[car - 1].contains(slot + 1));
                        }
                    }
                }
            }
        }
    }

    /// Sorted preference vector test: a classical family parks iff the sorted
    /// preferences satisfy `b_i <= i`.
    #[test]
    fn classical_iff_sorted_prefs_fit() {
        for n in 1..=5usize {
            let mut prefs = vec![1usize; n];
            loop {
                let parked = park_classical(&prefs).unwrap().outcome().is_some();
                let mut sorted = prefs.clone();
                sorted.sort_unstable();
                let fits = sorted.iter().enumerate().all(|(i, &b)| b <= i + 1);
                assert_eq!(parked, fits, "prefs={prefs:?}");

                // Next preference vector in mixed radix.
                let mut pos = n;
                loop {
                    if pos == 0 {
                        break;
                    }
                    if prefs[pos - 1] < n {
                        prefs[pos - 1] += 1;
                        break;
                    }
                    prefs[pos - 1] = 1;
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
            }
        }
    }

    #[test]
    fn interval_tails_agree_with_classical() {
        for n in 1..=4usize {
            let mut prefs = vec![1usize; n];
            loop {
                let family = SetFamily::classical(&prefs).unwrap();
                assert!(family.is_interval_family());
                assert_eq!(park_subsets(&family), park_classical(&prefs).unwrap());

                let mut pos = n;
                loop {
                    if pos == 0 {
                        break;
                    }
                    if prefs[pos - 1] < n {
                        prefs[pos - 1] += 1;
                        break;
                    }
                    prefs[pos - 1] = 1;
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
            }
        }
    }

    #[test]
    fn ascending_lists_agree_with_subsets() {
        // Ordered families whose lists are sorted ascending behave exactly like
        // their underlying sets.  Exhaust all per-car subsets for n = 3.
        let n = 3;
        let masks: Vec<u64> = (1..8).collect();
        for &m1 in &masks {
            for &m2 in &masks {
                for &m3 in &masks {
                    let lists: Vec<Vec<usize>> = [m1, m2, m3]
                        .iter()
                        .map(|&m| (1..=n).filter(|&s| m >> (s - 1) & 1 == 1).collect())
                        .collect();
                    let ordered = OrderedFamily::new(n, lists).unwrap();
                    let sets = ordered.to_set_family();
                    let a = park_ordered(&ordered);
                    let b = park_subsets(&sets);
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn every_permutation_is_reachable() {
        for pi in all_permutations(4).unwrap() {
            let sets = pi
                .values()
                .iter()
                .enumerate()
                .map(|(slot, &_car)| (slot, pi.values()[slot]))
                .fold(vec![None; 4], |mut acc, (slot, car)| {
                    acc[car - 1] = Some(SpotSet::new(4, [slot + 1]).unwrap());
                    acc
                })
                .into_iter()
                .map(Option::unwrap)
                .collect();
            let family = SetFamily::new(4, sets).unwrap();
            assert_eq!(park_subsets(&family), ParkResult::Parked(pi.clone()));
        }
    }
}
