//! Permutations in one-line notation and the statistics consumed by the
//! counting formulas.
//!
//! A [`Permutation`] stores the outcome view of a parking process: entry `j`
//! (1-based) is the label of the car parked in spot `j`.  All statistics here
//! are pure functions of that word: the inversion number, the per-position and
//! per-car local inversion counts, the ascent number, the prefix-maximum run
//! length `a_i`, membership in `S_n^k`, and Eulerian numbers.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::counting::BigCount;
use crate::error::{Error, Result};

/// Default cap on `n` for operations that stream all `n!` permutations.
pub const DEFAULT_PERM_GUARD: usize = 12;

/// A permutation of `{1..n}` in one-line notation, `n >= 1`.
///
/// Entry `values[j-1]` is the car parked in spot `j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based values, checking that they form a
    /// bijection on `{1..n}`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v < 1 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("duplicate value {v}")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { values })
    }

    /// Identity permutation `12...n`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// The 1-based values; slice index `j-1` holds the car in spot `j`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Entry at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Result<usize> {
        self.check_pos(pos)?;
        Ok(self.values[pos - 1])
    }

    fn check_pos(&self, pos: usize) -> Result<()> {
        if pos < 1 || pos > self.n() {
            return Err(Error::PositionOutOfRange { pos, n: self.n() });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    /// Compact digit string for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact digits (`"31524"`, values 1..9) or a comma-separated
    /// list (`"3,1,5,2,4"`, any size).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let values = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad token \"{tok}\"")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad token \"{c}\"")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(values)
    }
}

/// Inverse permutation: `result[p[j]] = j`.
///
/// In the outcome reading, the inverse maps a car to its spot.
pub fn inverse(p: &Permutation) -> Permutation {
    let n = p.n();
    let mut inv = vec![0usize; n];
    for (j, &v) in p.values.iter().enumerate() {
        inv[v - 1] = j + 1;
    }
    Permutation::from_values_unchecked(inv)
}

/// Number of pairs `(i, j)` with `i < j` and `p[j] < p[i]`.
pub fn inv(p: &Permutation) -> usize {
    let vals = &p.values;
    let mut count = 0;
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            if vals[j] < vals[i] {
                count += 1;
            }
        }
    }
    count
}

/// Local inversion number at position `i`: `#{j > i : p[j] < p[i]}`.
///
/// Summing over all positions gives [`inv`].
pub fn local_inv(p: &Permutation, i: usize) -> Result<usize> {
    p.check_pos(i)?;
    let vals = &p.values;
    Ok(vals[i..].iter().filter(|&&v| v < vals[i - 1]).count())
}

/// Car-indexed inversion count: the number of spots before `car`'s spot that
/// hold a later car, `#{k < p^-1(car) : p[k] > car}`.
///
/// Equals `local_inv(inverse(p), car)`; summing over all cars gives [`inv`].
/// This is the statistic the per-outcome subset formulas consume.
pub fn car_inv(p: &Permutation, car: usize) -> Result<usize> {
    if car < 1 || car > p.n() {
        return Err(Error::CarOutOfRange { car, n: p.n() });
    }
    let spot = p.values.iter().position(|&v| v == car).unwrap();
    Ok(p.values[..spot].iter().filter(|&&v| v > car).count())
}

/// Number of positions `i` with `2 <= i <= n` and `p[i-1] < p[i]`.
pub fn ascents(p: &Permutation) -> usize {
    p.values.windows(2).filter(|w| w[0] < w[1]).count()
}

/// The statistic `a_i(p)`: the largest `j <= i` such that `p[i]` is the
/// maximum of the window `p[i-j+1..=i]`.
///
/// Equivalently, one more than the number of consecutive entries immediately
/// before position `i` that are all smaller than `p[i]`.  `a_1 = 1` always,
/// and `a_i >= 2` iff `p[i] > p[i-1]`.
pub fn a_stat(p: &Permutation, i: usize) -> Result<usize> {
    p.check_pos(i)?;
    let vals = &p.values;
    let pivot = vals[i - 1];
    let run = vals[..i - 1]
        .iter()
        .rev()
        .take_while(|&&v| v < pivot)
        .count();
    Ok(run + 1)
}

/// True iff the last `k` entries of `p` are strictly increasing
/// (membership in `S_n^k`).  Always true for `k = 1`.
pub fn in_snk(p: &Permutation, k: usize) -> Result<bool> {
    let n = p.n();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(p.values[n - k..].windows(2).all(|w| w[0] < w[1]))
}

/// Eulerian number `<n, k>`: permutations of `n` with exactly `k` ascents.
///
/// Computed by the recurrence
/// `<n, k> = (k+1) <n-1, k> + (n-k) <n-1, k-1>`
/// with `<0, 0> = 1`, `<0, k> = 0` for `k > 0`, and `<n, -1> = 0`.
pub fn eulerian(n: usize, k: i64) -> BigCount {
    if k < 0 {
        return BigCount::zero();
    }
    let k = k as usize;
    if n == 0 {
        return if k == 0 {
            BigCount::one()
        } else {
            BigCount::zero()
        };
    }
    if k >= n {
        return BigCount::zero();
    }
    // Row-by-row fill; row m holds <m, 0..m-1>.
    let mut row = vec![BigCount::one()];
    for m in 2..=n {
        let mut next = Vec::with_capacity(m);
        for j in 0..m {
            let from_same = if j < row.len() {
                BigCount::from(j as u64 + 1) * &row[j]
            } else {
                BigCount::zero()
            };
            let from_prev = if j >= 1 && j - 1 < row.len() {
                BigCount::from((m - j) as u64) * &row[j - 1]
            } else {
                BigCount::zero()
            };
            next.push(from_same + from_prev);
        }
        row = next;
    }
    row[k].clone()
}

/// Streams all `n!` permutations of `{1..n}` in lexicographic order.
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Permutations {
    /// Refuses `n` over `limit`; `n >= 1` required.
    pub fn with_limit(n: usize, limit: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if n > limit {
            return Err(Error::GuardExceeded {
                what: "permutation enumeration",
                limit,
                requested: n,
            });
        }
        Ok(Self {
            current: Some((1..=n).collect()),
        })
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let vals = self.current.as_mut()?;
        let item = Permutation::from_values_unchecked(vals.clone());
        if !next_lex(vals) {
            self.current = None;
        }
        Some(item)
    }
}

/// Advances `vals` to its lexicographic successor; false once exhausted.
fn next_lex(vals: &mut [usize]) -> bool {
    let n = vals.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| vals[i] < vals[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| vals[j] > vals[i]).unwrap();
    vals.swap(i, j);
    vals[i + 1..].reverse();
    true
}

/// All permutations of `{1..n}` under the default guard of
/// [`DEFAULT_PERM_GUARD`].
pub fn all_permutations(n: usize) -> Result<Permutations> {
    Permutations::with_limit(n, DEFAULT_PERM_GUARD)
}
