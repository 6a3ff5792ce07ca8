//! Closed-form counts for every parking-function variant, over
//! arbitrary-precision integers.
//!
//! The general size-profile formulas do the heavy lifting: the total count of
//! subset families with per-car allowed sizes is a product of per-car choice
//! sums, and the per-outcome count pairs each car's allowed sizes with that
//! car's [`car_inv`] statistic.  The classical, subset, k-subset, interval,
//! and k-interval counts are specializations, with the interval side driven
//! by the piecewise placement count [`b_stat`].

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permstat::{
    a_stat, ascents, car_inv, eulerian, in_snk, inv, Permutation, Permutations, DEFAULT_PERM_GUARD,
};

/// Arbitrary-precision nonnegative count.  Every total in this module
/// overflows 64 bits quickly (already at `SP(5)` the product of `2^n - 2^i`
/// terms has 23 decimal digits).
pub type BigCount = num_bigint::BigUint;

/// Default cap on `n` for the power-product formulas (keeps a single call
/// well under a minute).
pub const DEFAULT_POWER_GUARD: usize = 16000;

/// Per-car allowed set sizes: car `i` may use any acceptable-spot set whose
/// size lies in `allowed[i-1]`.
///
/// The same structure serves both the subset-size role and the
/// interval-length role.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSizeProfile")]
pub struct SizeProfile {
    n: usize,
    allowed: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawSizeProfile {
    n: usize,
    allowed: Vec<Vec<usize>>,
}

impl TryFrom<RawSizeProfile> for SizeProfile {
    type Error = Error;

    fn try_from(raw: RawSizeProfile) -> Result<Self> {
        SizeProfile::new(raw.n, raw.allowed)
    }
}

impl SizeProfile {
    /// Validates and normalizes: each per-car size set must be nonempty with
    /// members in `1..=n`; sets are stored sorted and deduplicated.
    pub fn new(n: usize, allowed: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProfile("n must be at least 1".into()));
        }
        if allowed.len() != n {
            return Err(Error::InvalidProfile(format!(
                "expected {n} size sets, got {}",
                allowed.len()
            )));
        }
        let mut normalized = Vec::with_capacity(n);
        for (idx, sizes) in allowed.into_iter().enumerate() {
            if sizes.is_empty() {
                return Err(Error::InvalidProfile(format!(
                    "car {} has no allowed sizes",
                    idx + 1
                )));
            }
            let mut sizes = sizes;
            sizes.sort_unstable();
            sizes.dedup();
            if sizes[0] < 1 || sizes[sizes.len() - 1] > n {
                return Err(Error::InvalidProfile(format!(
                    "car {} allows a size outside 1..={n}",
                    idx + 1
                )));
            }
            normalized.push(sizes);
        }
        Ok(Self {
            n,
            allowed: normalized,
        })
    }

    /// Every size allowed for every car (the unrestricted subset case).
    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, vec![(1..=n).collect(); n])
    }

    /// The single size `k` for every car.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::KOutOfRange { k, n });
        }
        Self::new(n, vec![vec![k]; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn allowed(&self) -> &[Vec<usize>] {
        &self.allowed
    }

    /// Allowed sizes for car `i` (1-based).
    pub fn sizes_for(&self, i: usize) -> &[usize] {
        &self.allowed[i - 1]
    }
}

impl fmt::Display for SizeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, sizes) in self.allowed.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, s) in sizes.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// A contiguous run of spots `[start, start + length - 1]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Interval {
    pub start: usize,
    pub length: usize,
}

impl Interval {
    pub fn new(n: usize, start: usize, length: usize) -> Result<Self> {
        if start < 1 || length < 1 || start + length - 1 > n {
            return Err(Error::InvalidArgument(format!(
                "interval start={start} length={length} does not fit in 1..={n}"
            )));
        }
        Ok(Self { start, length })
    }

    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }
}

/// Selects which parking-function variant an oracle or verification run
/// addresses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VariantSpec {
    Classical,
    Subset,
    KSubset(usize),
    SizeProfile(SizeProfile),
    Interval,
    KInterval(usize),
    IntervalProfile(SizeProfile),
    Ordered,
    OrderedProfile(SizeProfile),
}

impl VariantSpec {
    /// Checks the embedded `k` or profile against a street of `n` spots.
    pub fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        match self {
            VariantSpec::KSubset(k) | VariantSpec::KInterval(k) if *k < 1 || *k > n => {
                Err(Error::KOutOfRange { k: *k, n })
            }
            VariantSpec::SizeProfile(p)
            | VariantSpec::IntervalProfile(p)
            | VariantSpec::OrderedProfile(p)
                if p.n() != n =>
            {
                Err(Error::InvalidProfile(format!(
                    "profile is for n = {}, street has n = {n}",
                    p.n()
                )))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariantSpec::Classical => write!(f, "classical"),
            VariantSpec::Subset => write!(f, "subset"),
            VariantSpec::KSubset(k) => write!(f, "k-subset(k={k})"),
            VariantSpec::SizeProfile(_) => write!(f, "size-profile"),
            VariantSpec::Interval => write!(f, "interval"),
            VariantSpec::KInterval(k) => write!(f, "k-interval(k={k})"),
            VariantSpec::IntervalProfile(_) => write!(f, "interval-profile"),
            VariantSpec::Ordered => write!(f, "ordered"),
            VariantSpec::OrderedProfile(_) => write!(f, "ordered-profile"),
        }
    }
}

/// Binomial coefficient with the conventions `C(0,0) = 1`, `C(0,x) = 0` for
/// `x > 0`, and `C(n,k) = 0` for `k < 0` or `k > n`.
pub fn binom(n: usize, k: i64) -> BigCount {
    if k < 0 {
        return BigCount::zero();
    }
    let k = k as usize;
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut result = BigCount::one();
    for i in 0..k {
        result = result * BigCount::from((n - i) as u64) / BigCount::from((i + 1) as u64);
    }
    result
}

/// `n!` as a [`BigCount`].
pub fn factorial(n: usize) -> BigCount {
    (1..=n as u64).fold(BigCount::one(), |acc, i| acc * BigCount::from(i))
}

fn two_pow(e: usize) -> BigCount {
    BigCount::one() << e
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_outcome_len(p: &Permutation, n: usize) -> Result<()> {
    if p.n() != n {
        return Err(Error::OutcomeLengthMismatch {
            expected: n,
            got: p.n(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Classical parking functions
// ---------------------------------------------------------------------------

/// Total number of classical parking functions: `(n+1)^(n-1)`.
pub fn pf_count(n: usize) -> Result<BigCount> {
    require_positive(n)?;
    Ok(BigCount::from(n as u64 + 1).pow(n as u32 - 1))
}

/// Classical parking functions with a given outcome: the product of the
/// `a_i` statistics.
pub fn pf_count_outcome(p: &Permutation) -> BigCount {
    (1..=p.n()).fold(BigCount::one(), |acc, i| {
        acc * BigCount::from(a_stat(p, i).unwrap() as u64)
    })
}

// ---------------------------------------------------------------------------
// Subset parking functions
// ---------------------------------------------------------------------------

/// Total number of subset parking functions: the product of `2^n - 2^i` for
/// `i = 0..n-1`.  Guarded by [`DEFAULT_POWER_GUARD`].
pub fn sp_count(n: usize) -> Result<BigCount> {
    sp_count_with_guard(n, DEFAULT_POWER_GUARD)
}

pub fn sp_count_with_guard(n: usize, guard: usize) -> Result<BigCount> {
    require_positive(n)?;
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "subset count",
            limit: guard,
            requested: n,
        });
    }
    let full = two_pow(n);
    Ok((0..n).fold(BigCount::one(), |acc, i| acc * (&full - two_pow(i))))
}

/// Subset parking functions with a given outcome: `2^(n(n-1) - inv(p))`.
pub fn sp_count_outcome(p: &Permutation) -> Result<BigCount> {
    sp_count_outcome_with_guard(p, DEFAULT_POWER_GUARD)
}

pub fn sp_count_outcome_with_guard(p: &Permutation, guard: usize) -> Result<BigCount> {
    let n = p.n();
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "subset count",
            limit: guard,
            requested: n,
        });
    }
    Ok(two_pow(n * (n - 1) - inv(p)))
}

// ---------------------------------------------------------------------------
// Size-profile subset parking functions
// ---------------------------------------------------------------------------

/// Total number of subset parking functions whose set sizes obey the
/// profile: the product over cars `i` of `sum over allowed sizes l of
/// C(n,l) - C(i-1,l)`.
pub fn lsp_count(profile: &SizeProfile) -> BigCount {
    let n = profile.n();
    (1..=n).fold(BigCount::one(), |acc, i| {
        let choices: BigCount = profile
            .sizes_for(i)
            .iter()
            .map(|&l| binom(n, l as i64) - binom(i - 1, l as i64))
            .sum();
        acc * choices
    })
}

/// Size-profile subset parking functions with a given outcome: the product
/// over cars `i` of `sum over allowed sizes l of C(n - car_inv(p,i) - 1, l-1)`.
///
/// The product pairs each car's allowed sizes with that car's [`car_inv`]
/// statistic, not with the statistic at the car's position.
pub fn lsp_count_outcome(profile: &SizeProfile, p: &Permutation) -> Result<BigCount> {
    let n = profile.n();
    check_outcome_len(p, n)?;
    let mut total = BigCount::one();
    for car in 1..=n {
        let ci = car_inv(p, car).unwrap();
        let choices: BigCount = profile
            .sizes_for(car)
            .iter()
            .map(|&l| binom(n - ci - 1, l as i64 - 1))
            .sum();
        total *= choices;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// k-subset parking functions
// ---------------------------------------------------------------------------

/// Total number of k-subset parking functions: the product of
/// `C(n,k) - C(i,k)` for `i = 0..n-1`.
pub fn ksp_count(n: usize, k: usize) -> Result<BigCount> {
    require_positive(n)?;
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let nk = binom(n, k as i64);
    Ok((0..n).fold(BigCount::one(), |acc, i| acc * (&nk - binom(i, k as i64))))
}

/// k-subset parking functions with a given outcome: the product over cars of
/// `C(n - car_inv - 1, k - 1)`.
pub fn ksp_count_outcome(p: &Permutation, k: usize) -> Result<BigCount> {
    let n = p.n();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let mut total = BigCount::one();
    for car in 1..=n {
        let ci = car_inv(p, car).unwrap();
        total *= binom(n - ci - 1, k as i64 - 1);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Interval machinery
// ---------------------------------------------------------------------------

/// The piecewise placement count `b_i(p, k)`: the number of length-`k`
/// intervals a car landing at spot `i` may have chosen.
///
/// Branches, evaluated in order: `min(a_i, k)` when `i <= n - k`; `0` when
/// `a_i < k + i - n`; otherwise `min(n - i - k + a_i + 1, n - i + 1)`.
pub fn b_stat(p: &Permutation, i: usize, k: usize) -> Result<usize> {
    let n = p.n();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let a = a_stat(p, i)?;
    if i <= n - k {
        return Ok(a.min(k));
    }
    // Here i > n - k, so excess = k + i - n >= 1.
    let excess = k + i - n;
    if a < excess {
        return Ok(0);
    }
    Ok((a + 1 - excess).min(n - i + 1))
}

/// Interval parking functions with per-car allowed lengths and a given
/// outcome: the product over positions `i` of `sum over lengths k allowed
/// for the occupant p[i] of b_i(p, k)`.
///
/// The profile is indexed by the occupant car `p[i]`, not the position.
pub fn kint_profile_outcome(profile: &SizeProfile, p: &Permutation) -> Result<BigCount> {
    let n = profile.n();
    check_outcome_len(p, n)?;
    let mut total = BigCount::one();
    for i in 1..=n {
        let occupant = p.values()[i - 1];
        let choices: u64 = profile
            .sizes_for(occupant)
            .iter()
            .map(|&k| b_stat(p, i, k).unwrap() as u64)
            .sum();
        total *= BigCount::from(choices);
    }
    Ok(total)
}

/// k-interval parking functions with a given outcome.
///
/// Zero unless the last `k` entries of `p` strictly increase; otherwise the
/// product of `min(a_i, k)` over `i <= n - k` times the product of
/// `min(n - i - k + a_i + 1, n - i + 1)` over the last `k` positions.
pub fn kipf_count_outcome(p: &Permutation, k: usize) -> Result<BigCount> {
    let n = p.n();
    if !in_snk(p, k)? {
        return Ok(BigCount::zero());
    }
    let mut total = BigCount::one();
    for i in 1..=n - k {
        total *= BigCount::from(a_stat(p, i).unwrap().min(k) as u64);
    }
    for i in n - k + 1..=n {
        let a = a_stat(p, i).unwrap();
        // In S_n^k the tail statistics satisfy a_i >= k + i - n, so this
        // factor is at least 1.
        let factor = (a + 1 - (k + i - n)).min(n - i + 1);
        total *= BigCount::from(factor as u64);
    }
    Ok(total)
}

/// Total number of k-interval parking functions, summed over all outcomes.
///
/// No closed form exists for general `k`; the sum over `S_n` is the
/// contract, guarded by [`DEFAULT_PERM_GUARD`].
pub fn kipf_count(n: usize, k: usize) -> Result<BigCount> {
    kipf_count_with_guard(n, k, DEFAULT_PERM_GUARD)
}

pub fn kipf_count_with_guard(n: usize, k: usize, guard: usize) -> Result<BigCount> {
    require_positive(n)?;
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let perms = Permutations::with_limit(n, guard)?;
    let mut total = BigCount::zero();
    for p in perms {
        total += kipf_count_outcome(&p, k)?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Interval parking functions
// ---------------------------------------------------------------------------

/// Total number of interval parking functions: `n! (n+1)^(n-1)`.
pub fn ipf_count(n: usize) -> Result<BigCount> {
    Ok(factorial(n) * pf_count(n)?)
}

/// Interval parking functions with a given outcome: `n!` times the product
/// of the `a_i` statistics.
pub fn ipf_count_outcome(p: &Permutation) -> BigCount {
    factorial(p.n()) * pf_count_outcome(p)
}

/// Total number of (n-1)-interval parking functions: `2^(n-1)`.
pub fn ipf_corollary_nm1(n: usize) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "the (n-1)-interval corollary needs n >= 2".into(),
        ));
    }
    Ok(two_pow(n - 1))
}

/// (n-1)-interval parking functions with a given outcome: `2^(n-j-1)` where
/// `j` is the first entry, except `1` when `j = n`.
///
/// The outcome must lie in `S_n^(n-1)`.
pub fn ipf_corollary_nm1_outcome(p: &Permutation) -> Result<BigCount> {
    let n = p.n();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "the (n-1)-interval corollary needs n >= 2".into(),
        ));
    }
    if !in_snk(p, n - 1)? {
        return Err(Error::OutcomeNotInSnk { k: n - 1 });
    }
    let j = p.values()[0];
    if j == n {
        Ok(BigCount::one())
    } else {
        Ok(two_pow(n - j - 1))
    }
}

/// Total number of 2-interval parking functions:
/// `sum over k of (n-k) <n-1, k-1> 2^(k-1)`.
pub fn ipf_corollary_2(n: usize) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "the 2-interval corollary needs n >= 2".into(),
        ));
    }
    let mut total = BigCount::zero();
    for k in 1..n {
        total += BigCount::from((n - k) as u64) * eulerian(n - 1, k as i64 - 1) * two_pow(k - 1);
    }
    Ok(total)
}

/// 2-interval parking functions with a given outcome: `2^(asc(p) - 1)`.
///
/// The outcome must lie in `S_n^2` (so it has at least one ascent).
pub fn ipf_corollary_2_outcome(p: &Permutation) -> Result<BigCount> {
    let n = p.n();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "the 2-interval corollary needs n >= 2".into(),
        ));
    }
    if !in_snk(p, 2)? {
        return Err(Error::OutcomeNotInSnk { k: 2 });
    }
    Ok(two_pow(ascents(p) - 1))
}

/// Number of permutations of `n` ending in an ascent with exactly `k`
/// ascents: `(n-k) <n-1, k-1>`.
pub fn p_count(n: usize, k: usize) -> Result<BigCount> {
    require_positive(n)?;
    if k > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "k = {k} out of range 0..={}",
            n - 1
        )));
    }
    Ok(BigCount::from((n - k) as u64) * eulerian(n - 1, k as i64 - 1))
}

// ---------------------------------------------------------------------------
// Ordered parking functions
// ---------------------------------------------------------------------------

/// Number of ordered subsets of an `n`-set, the empty one included:
/// `sum of C(n,l) l!` over `l = 0..=n`.
pub fn ordered_subsets(n: usize) -> BigCount {
    (0..=n).map(|l| binom(n, l as i64) * factorial(l)).sum()
}

/// Total number of ordered parking functions: the product of
/// `O(n) - O(i)` for `i = 0..n-1`, with `O` = [`ordered_subsets`].
pub fn opf_count(n: usize) -> Result<BigCount> {
    require_positive(n)?;
    let full = ordered_subsets(n);
    Ok((0..n).fold(BigCount::one(), |acc, i| acc * (&full - ordered_subsets(i))))
}

/// Total number of ordered parking functions with per-car allowed set
/// sizes: the product over cars `i` of
/// `sum over allowed sizes l of (C(n,l) - C(i-1,l)) l!`.
pub fn opf_count_profile(profile: &SizeProfile) -> BigCount {
    let n = profile.n();
    (1..=n).fold(BigCount::one(), |acc, i| {
        let choices: BigCount = profile
            .sizes_for(i)
            .iter()
            .map(|&l| (binom(n, l as i64) - binom(i - 1, l as i64)) * factorial(l))
            .sum();
        acc * choices
    })
}

/// Ordered parking functions with a given outcome: every outcome is equally
/// likely, so this is the total divided by `n!`.
///
/// The division is asserted exact; a remainder would indicate a formula bug.
pub fn opf_count_outcome(p: &Permutation) -> BigCount {
    let n = p.n();
    divide_uniformly(opf_count(n).unwrap(), n)
}

/// Ordered parking functions with per-car allowed set sizes and a given
/// outcome.  The per-car list count depends only on the car index and its
/// allowed sizes, never on which spots are occupied, so outcomes stay
/// equally likely under any profile: the profile total divided by `n!`.
pub fn opf_profile_outcome(profile: &SizeProfile, p: &Permutation) -> Result<BigCount> {
    check_outcome_len(p, profile.n())?;
    Ok(divide_uniformly(opf_count_profile(profile), profile.n()))
}

fn divide_uniformly(total: BigCount, n: usize) -> BigCount {
    let fact = factorial(n);
    let remainder = &total % &fact;
    assert!(
        remainder.is_zero(),
        "ordered total {total} not divisible by {n}!"
    );
    total / fact
}

// ---------------------------------------------------------------------------
// Per-step extension counts
// ---------------------------------------------------------------------------

/// Number of valid size-`l` sets for the next car once `parked` spots are
/// occupied: `C(n,l) - C(parked,l)` (any `l`-set not contained in the
/// occupied spots).
pub fn extension_count_subset(n: usize, parked: usize, l: usize) -> Result<BigCount> {
    require_positive(n)?;
    if parked >= n {
        return Err(Error::InvalidArgument(format!(
            "parked = {parked} out of range 0..={}",
            n - 1
        )));
    }
    if l < 1 || l > n {
        return Err(Error::InvalidArgument(format!(
            "size {l} out of range 1..={n}"
        )));
    }
    Ok(binom(n, l as i64) - binom(parked, l as i64))
}

/// Range of left endpoints `r` for a length-`k` interval that parks `car` at
/// its outcome spot `q`: `max(q - a_q + 1, q - k + 1) <= r <= min(q, n - k + 1)`.
///
/// Empty when `lo > hi`; the count `max(0, hi - lo + 1)` equals
/// [`b_stat`] at position `q`.
pub fn interval_start_range(p: &Permutation, car: usize, k: usize) -> Result<(i64, i64)> {
    let n = p.n();
    if car < 1 || car > n {
        return Err(Error::CarOutOfRange { car, n });
    }
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let q = p.values().iter().position(|&v| v == car).unwrap() + 1;
    let a = a_stat(p, q)? as i64;
    let (q, k, n) = (q as i64, k as i64, n as i64);
    let lo = (q - a + 1).max(q - k + 1);
    let hi = q.min(n - k + 1);
    Ok((lo, hi))
}

/// Classical analogue of [`interval_start_range`]: tail intervals `[r, n]`
/// that park `car` at its outcome spot `q` have `q - a_q + 1 <= r <= q`.
pub fn classical_start_range(p: &Permutation, car: usize) -> Result<(i64, i64)> {
    let n = p.n();
    if car < 1 || car > n {
        return Err(Error::CarOutOfRange { car, n });
    }
    let q = p.values().iter().position(|&v| v == car).unwrap() + 1;
    let a = a_stat(p, q)? as i64;
    Ok((q as i64 - a + 1, q as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permstat::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn binom_conventions() {
        assert_eq!(binom(0, 0), big(1));
        assert_eq!(binom(0, 2), big(0));
        assert_eq!(binom(5, 2), big(10));
        assert_eq!(binom(5, -1), big(0));
        assert_eq!(binom(5, 7), big(0));
        assert_eq!(binom(50, 25), "126410606437752".parse().unwrap());
    }

    #[test]
    fn pf_counts() {
        assert_eq!(pf_count(1).unwrap(), big(1));
        assert_eq!(pf_count(3).unwrap(), big(16));
        assert_eq!(pf_count(4).unwrap(), big(125));
        assert_eq!(pf_count_outcome(&p("213")), big(3));
        assert!(pf_count(0).is_err());
    }

    #[test]
    fn sp_counts() {
        assert_eq!(sp_count(1).unwrap(), big(1));
        assert_eq!(sp_count(3).unwrap(), big(168));
        assert_eq!(sp_count_outcome(&p("312")).unwrap(), big(16));
        assert!(sp_count_with_guard(100, 50).is_err());
    }

    #[test]
    fn lsp_specializations() {
        for n in 1..=5usize {
            let full = SizeProfile::full(n).unwrap();
            assert_eq!(lsp_count(&full), sp_count(n).unwrap());

            let singles = SizeProfile::uniform(n, 1).unwrap();
            assert_eq!(lsp_count(&singles), factorial(n));
        }
        let twos = SizeProfile::uniform(3, 2).unwrap();
        assert_eq!(lsp_count_outcome(&twos, &p("312")).unwrap(), big(2));
    }

    #[test]
    fn ksp_counts() {
        assert_eq!(ksp_count(3, 2).unwrap(), big(18));
        assert_eq!(ksp_count_outcome(&p("312"), 2).unwrap(), big(2));
        for n in 1..=6usize {
            assert_eq!(ksp_count(n, 1).unwrap(), factorial(n));
        }
        assert!(ksp_count(3, 0).is_err());
        assert!(ksp_count(3, 4).is_err());
    }

    #[test]
    fn b_stat_branches() {
        // First branch cap: i <= n - k with a_i >= k gives exactly k.
        let id = Permutation::identity(5).unwrap();
        assert_eq!(b_stat(&id, 3, 2).unwrap(), 2);
        // Last position with k = 1 is always 1.
        assert_eq!(b_stat(&p("321"), 3, 1).unwrap(), 1);
        // Third branch example.
        assert_eq!(b_stat(&p("312"), 3, 2).unwrap(), 1);
        // Middle branch zero.
        assert_eq!(b_stat(&p("321"), 3, 2).unwrap(), 0);
        assert!(b_stat(&p("312"), 1, 4).is_err());
        assert!(b_stat(&p("312"), 4, 1).is_err());
    }

    #[test]
    fn kint_profile_examples() {
        let twos = SizeProfile::uniform(3, 2).unwrap();
        assert_eq!(kint_profile_outcome(&twos, &p("123")).unwrap(), big(2));

        for n in 1..=5usize {
            let full = SizeProfile::full(n).unwrap();
            for pi in all_permutations(n).unwrap() {
                assert_eq!(
                    kint_profile_outcome(&full, &pi).unwrap(),
                    ipf_count_outcome(&pi),
                    "full-profile interval count for {pi}"
                );
                for k in 1..=n {
                    let single = SizeProfile::uniform(n, k).unwrap();
                    assert_eq!(
                        kint_profile_outcome(&single, &pi).unwrap(),
                        kipf_count_outcome(&pi, k).unwrap(),
                        "single-length profile for {pi}, k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn kipf_edge_cases() {
        assert_eq!(kipf_count_outcome(&p("123"), 2).unwrap(), big(2));
        assert_eq!(kipf_count_outcome(&p("321"), 2).unwrap(), big(0));
        for n in 1..=6usize {
            assert_eq!(kipf_count(n, 1).unwrap(), factorial(n), "k=1 total");
            assert_eq!(kipf_count(n, n).unwrap(), big(1), "k=n total");
            for pi in all_permutations(n).unwrap() {
                assert_eq!(kipf_count_outcome(&pi, 1).unwrap(), big(1));
            }
        }
        assert!(kipf_count_with_guard(13, 2, 12).is_err());
    }

    #[test]
    fn ipf_counts() {
        assert_eq!(ipf_count(1).unwrap(), big(1));
        assert_eq!(ipf_count(2).unwrap(), big(6));
        assert_eq!(ipf_count(3).unwrap(), big(96));
        assert_eq!(ipf_count(5).unwrap(), big(155_520));
        assert_eq!(ipf_count_outcome(&p("213")), big(18));
    }

    #[test]
    fn corollary_nm1() {
        assert_eq!(ipf_corollary_nm1(4).unwrap(), big(8));
        assert_eq!(ipf_corollary_nm1_outcome(&p("312")).unwrap(), big(1));
        assert_eq!(ipf_corollary_nm1_outcome(&p("123")).unwrap(), big(2));
        assert!(ipf_corollary_nm1_outcome(&p("321")).is_err());
        assert!(ipf_corollary_nm1(1).is_err());

        // Agreement with the k-interval formula wherever defined.
        for n in 2..=6usize {
            assert_eq!(
                ipf_corollary_nm1(n).unwrap(),
                kipf_count(n, n - 1).unwrap(),
                "total at n={n}"
            );
            for pi in all_permutations(n).unwrap() {
                if in_snk(&pi, n - 1).unwrap() {
                    assert_eq!(
                        ipf_corollary_nm1_outcome(&pi).unwrap(),
                        kipf_count_outcome(&pi, n - 1).unwrap(),
                        "outcome {pi}"
                    );
                }
            }
        }
    }

    #[test]
    fn corollary_2() {
        assert_eq!(ipf_corollary_2(3).unwrap(), big(4));
        assert_eq!(ipf_corollary_2_outcome(&p("213")).unwrap(), big(1));
        for n in 2..=6usize {
            let id = Permutation::identity(n).unwrap();
            assert_eq!(ipf_corollary_2_outcome(&id).unwrap(), two_pow(n - 2));
            assert_eq!(
                ipf_corollary_2(n).unwrap(),
                kipf_count(n, 2).unwrap(),
                "total at n={n}"
            );
            for pi in all_permutations(n).unwrap() {
                if in_snk(&pi, 2).unwrap() {
                    assert_eq!(
                        ipf_corollary_2_outcome(&pi).unwrap(),
                        kipf_count_outcome(&pi, 2).unwrap()
                    );
                }
            }
        }
        assert!(ipf_corollary_2_outcome(&p("321")).is_err());
    }

    #[test]
    fn p_count_examples() {
        assert_eq!(p_count(3, 1).unwrap(), big(2));
        assert_eq!(p_count(3, 2).unwrap(), big(1));
        for n in 2..=8usize {
            assert_eq!(p_count(n, 0).unwrap(), big(0));
        }
        assert_eq!(p_count(1, 0).unwrap(), big(0));
        assert!(p_count(3, 3).is_err());
        assert!(p_count(0, 0).is_err());
    }

    #[test]
    fn ordered_counts() {
        assert_eq!(ordered_subsets(0), big(1));
        assert_eq!(ordered_subsets(2), big(5));
        assert_eq!(ordered_subsets(3), big(16));
        assert_eq!(opf_count(1).unwrap(), big(1));
        assert_eq!(opf_count(3).unwrap(), big(2310));
        for pi in all_permutations(3).unwrap() {
            assert_eq!(opf_count_outcome(&pi), big(385));
        }
        // The unrestricted profile reproduces the ordered total.
        for n in 1..=5usize {
            let full = SizeProfile::full(n).unwrap();
            assert_eq!(opf_count_profile(&full), opf_count(n).unwrap());
            for pi in all_permutations(n).unwrap() {
                assert_eq!(
                    opf_profile_outcome(&full, &pi).unwrap(),
                    opf_count_outcome(&pi)
                );
            }
        }
        let prof = SizeProfile::new(2, vec![vec![1], vec![1, 2]]).unwrap();
        // Car 1: C(2,1)·1! = 2 lists; car 2: (2-1)·1! + (1-0)·2! = 3.
        assert_eq!(opf_count_profile(&prof), big(6));
        assert_eq!(
            opf_profile_outcome(&prof, &Permutation::identity(2).unwrap()).unwrap(),
            big(3)
        );
        assert!(opf_profile_outcome(&prof, &Permutation::identity(3).unwrap()).is_err());
    }

    #[test]
    fn extension_counts() {
        assert_eq!(extension_count_subset(3, 1, 1).unwrap(), big(2));
        for n in 1..=6usize {
            for l in 1..=n {
                assert_eq!(extension_count_subset(n, 0, l).unwrap(), binom(n, l as i64));
            }
            assert_eq!(extension_count_subset(n, n - 1, n).unwrap(), big(1));
        }
        assert!(extension_count_subset(3, 3, 1).is_err());
        assert!(extension_count_subset(3, 1, 0).is_err());
    }

    #[test]
    fn start_ranges() {
        assert_eq!(interval_start_range(&p("312"), 1, 2).unwrap(), (2, 2));
        let id = Permutation::identity(4).unwrap();
        for car in 1..=4 {
            assert_eq!(
                interval_start_range(&id, car, 1).unwrap(),
                (car as i64, car as i64)
            );
        }
        // k = n forces r = 1 or an empty range.
        for n in 1..=5usize {
            for pi in all_permutations(n).unwrap() {
                for car in 1..=n {
                    let (lo, hi) = interval_start_range(&pi, car, n).unwrap();
                    assert!(lo > hi || (lo == 1 && hi == 1), "pi={pi} car={car}");
                }
            }
        }
    }

    #[test]
    fn start_range_count_is_b_stat() {
        for n in 1..=6usize {
            for pi in all_permutations(n).unwrap() {
                for car in 1..=n {
                    let q = pi.values().iter().position(|&v| v == car).unwrap() + 1;
                    for k in 1..=n {
                        let (lo, hi) = interval_start_range(&pi, car, k).unwrap();
                        let count = (hi - lo + 1).max(0) as usize;
                        assert_eq!(count, b_stat(&pi, q, k).unwrap(), "pi={pi} car={car} k={k}");
                    }
                    let (lo, hi) = classical_start_range(&pi, car).unwrap();
                    let q_a = a_stat(&pi, q).unwrap();
                    assert_eq!((hi - lo + 1) as usize, q_a);
                    assert!(lo >= 1);
                }
            }
        }
    }

    #[test]
    fn profile_validation() {
        assert!(SizeProfile::new(3, vec![vec![1], vec![2]]).is_err());
        assert!(SizeProfile::new(3, vec![vec![1], vec![], vec![2]]).is_err());
        assert!(SizeProfile::new(3, vec![vec![1], vec![4], vec![2]]).is_err());
        assert!(SizeProfile::new(0, vec![]).is_err());
        let prof = SizeProfile::new(3, vec![vec![2, 1, 2], vec![3], vec![1]]).unwrap();
        assert_eq!(prof.sizes_for(1), &[1, 2]);
        assert_eq!(prof.to_string(), "{1,2},{3},{1}");
    }

    #[test]
    fn profile_json_round_trip() {
        let prof = SizeProfile::new(3, vec![vec![1, 3], vec![2], vec![1, 2, 3]]).unwrap();
        let text = serde_json::to_string(&prof).unwrap();
        assert_eq!(text, r#"{"n":3,"allowed":[[1,3],[2],[1,2,3]]}"#);
        let back: SizeProfile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, prof);
        assert!(serde_json::from_str::<SizeProfile>(r#"{"n":2,"allowed":[[1],[]]}"#).is_err());
    }

    #[test]
    fn variant_spec_validation() {
        assert!(VariantSpec::KSubset(2).validate(3).is_ok());
        assert!(VariantSpec::KSubset(4).validate(3).is_err());
        assert!(VariantSpec::KInterval(0).validate(3).is_err());
        let prof = SizeProfile::full(3).unwrap();
        assert!(VariantSpec::SizeProfile(prof.clone()).validate(3).is_ok());
        assert!(VariantSpec::SizeProfile(prof).validate(4).is_err());
        assert!(VariantSpec::Classical.validate(0).is_err());
    }
}
