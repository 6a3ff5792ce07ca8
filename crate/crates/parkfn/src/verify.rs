//! Formula-versus-oracle check suites with machine-readable reports.
//!
//! Every closed-form count has an exhaustive counterpart in [`crate::oracle`];
//! the suites here run both sides and record one [`Check`] per comparison.
//! Per-outcome comparisons cover all of `S_n`, so an outcome the formula
//! claims is impossible must also be absent from the brute-force tally —
//! agreement by omission is not accepted.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::counting::{
    b_stat, ipf_corollary_2, ipf_corollary_nm1, ipf_count, ipf_count_outcome, kint_profile_outcome,
    kipf_count, kipf_count_outcome, ksp_count, ksp_count_outcome, lsp_count, lsp_count_outcome,
    opf_count, opf_count_outcome, opf_count_profile, opf_profile_outcome, p_count, pf_count,
    pf_count_outcome, sp_count, sp_count_outcome, BigCount, SizeProfile, VariantSpec,
};
use crate::error::{Error, Result};
use crate::oracle::{brute_ascent_ending, brute_tally};
use crate::permstat::{a_stat, all_permutations, ascents, eulerian, Permutation};

/// One formula-versus-ground-truth comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub params: Value,
    #[serde(serialize_with = "as_decimal")]
    pub expected: BigCount,
    #[serde(serialize_with = "as_decimal")]
    pub actual: BigCount,
    pub pass: bool,
}

fn as_decimal<S: serde::Serializer>(v: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A canonically ordered collection of checks.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl VerifyReport {
    /// Sorts by check name, then rendered parameters, and derives the
    /// conjunction flag.
    fn from_checks(mut checks: Vec<Check>) -> Self {
        checks.sort_by_cached_key(|c| (c.name.clone(), c.params.to_string()));
        let all_passed = checks.iter().all(|c| c.pass);
        Self { checks, all_passed }
    }

    /// Concatenates several reports into one canonical report.
    pub fn merge(reports: impl IntoIterator<Item = VerifyReport>) -> VerifyReport {
        Self::from_checks(reports.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

#[derive(Default)]
struct Reporter {
    checks: Vec<Check>,
}

impl Reporter {
    fn record(
        &mut self,
        name: impl Into<String>,
        params: Value,
        expected: BigCount,
        actual: BigCount,
    ) {
        let pass = expected == actual;
        self.checks.push(Check {
            name: name.into(),
            params,
            expected,
            actual,
            pass,
        });
    }

    fn finish(self) -> VerifyReport {
        VerifyReport::from_checks(self.checks)
    }
}

/// Formula total for a variant at `n`.
fn expected_total(spec: &VariantSpec, n: usize) -> Result<BigCount> {
    match spec {
        VariantSpec::Classical => pf_count(n),
        VariantSpec::Subset => sp_count(n),
        VariantSpec::KSubset(k) => ksp_count(n, *k),
        VariantSpec::SizeProfile(p) => Ok(lsp_count(p)),
        VariantSpec::Interval => ipf_count(n),
        VariantSpec::KInterval(k) => kipf_count(n, *k),
        VariantSpec::IntervalProfile(p) => {
            let mut total = BigCount::from(0u32);
            for pi in all_permutations(n)? {
                total += kint_profile_outcome(p, &pi)?;
            }
            Ok(total)
        }
        VariantSpec::Ordered => opf_count(n),
        VariantSpec::OrderedProfile(p) => Ok(opf_count_profile(p)),
    }
}

/// Formula per-outcome count for a variant.
fn expected_outcome(spec: &VariantSpec, pi: &Permutation) -> Result<BigCount> {
    match spec {
        VariantSpec::Classical => Ok(pf_count_outcome(pi)),
        VariantSpec::Subset => sp_count_outcome(pi),
        VariantSpec::KSubset(k) => ksp_count_outcome(pi, *k),
        VariantSpec::SizeProfile(p) => lsp_count_outcome(p, pi),
        VariantSpec::Interval => Ok(ipf_count_outcome(pi)),
        VariantSpec::KInterval(k) => kipf_count_outcome(pi, *k),
        VariantSpec::IntervalProfile(p) => kint_profile_outcome(p, pi),
        VariantSpec::Ordered => Ok(opf_count_outcome(pi)),
        VariantSpec::OrderedProfile(p) => opf_profile_outcome(p, pi),
    }
}

/// Runs the oracle for one variant at one `n` and records the total plus a
/// per-outcome check for every permutation in `S_n`.
fn check_variant_at(
    r: &mut Reporter,
    spec: &VariantSpec,
    n: usize,
    extra: &Map<String, Value>,
    budget: u64,
) -> Result<()> {
    let tally = brute_tally(n, spec, budget)?;
    let mut params = extra.clone();
    params.insert("n".into(), json!(n));
    r.record(
        format!("{spec}/total"),
        Value::Object(params.clone()),
        expected_total(spec, n)?,
        tally.total.clone(),
    );
    for pi in all_permutations(n)? {
        let mut outcome_params = params.clone();
        outcome_params.insert("outcome".into(), json!(pi.to_string()));
        r.record(
            format!("{spec}/outcome"),
            Value::Object(outcome_params),
            expected_outcome(spec, &pi)?,
            tally.count_for(&pi),
        );
    }
    Ok(())
}

/// Compares formula totals and per-outcome values against the oracle for
/// every `n` up to `n_max` at which the variant is defined.
pub fn verify_variant(spec: &VariantSpec, n_max: usize, budget: u64) -> Result<VerifyReport> {
    let mut r = Reporter::default();
    for n in 1..=n_max {
        if spec.validate(n).is_err() {
            continue;
        }
        check_variant_at(&mut r, spec, n, &Map::new(), budget)?;
    }
    Ok(r.finish())
}

/// Cap on `n_max` for the identity suite.
pub const IDENTITY_GUARD: usize = 8;

/// Checks the summation identities and cross-formula consistencies:
/// the inversion power sum against the subset product, the per-outcome
/// k-subset sum against its product formula, the placement-count sum
/// `sum_k b_i = a_i (n-i+1)`, the ascent-ending count against brute force,
/// Eulerian numbers against the ascent census, ordered-outcome uniformity,
/// and the tail-interval corollaries against the general sum.
///
/// The heavier identities stop early (at `n = 7`, `6`, `6`, and `3`) so the
/// whole suite stays desk-scale even at `n_max = 8`.
pub fn verify_identities(n_max: usize, budget: u64) -> Result<VerifyReport> {
    if n_max > IDENTITY_GUARD {
        return Err(Error::GuardExceeded {
            what: "identity suite",
            limit: IDENTITY_GUARD,
            requested: n_max,
        });
    }
    let mut r = Reporter::default();

    for n in 1..=n_max.min(7) {
        let mut sum = BigCount::from(0u32);
        for pi in all_permutations(n)? {
            sum += sp_count_outcome(&pi)?;
        }
        r.record("inversion-power-sum", json!({"n": n}), sp_count(n)?, sum);
    }

    for n in 1..=n_max.min(6) {
        for k in 1..=n {
            let mut sum = BigCount::from(0u32);
            for pi in all_permutations(n)? {
                sum += ksp_count_outcome(&pi, k)?;
            }
            r.record(
                "k-subset-outcome-sum",
                json!({"n": n, "k": k}),
                ksp_count(n, k)?,
                sum,
            );
        }
    }

    for n in 1..=n_max.min(6) {
        for pi in all_permutations(n)? {
            for i in 1..=n {
                let sum: u64 = (1..=n).map(|k| b_stat(&pi, i, k).unwrap() as u64).sum();
                let expected = (a_stat(&pi, i).unwrap() * (n - i + 1)) as u64;
                r.record(
                    "interval-placement-sum",
                    json!({"n": n, "outcome": pi.to_string(), "i": i}),
                    BigCount::from(expected),
                    BigCount::from(sum),
                );
            }
        }
    }

    for n in 1..=n_max {
        for k in 0..n {
            r.record(
                "ascent-ending-count",
                json!({"n": n, "k": k}),
                p_count(n, k)?,
                brute_ascent_ending(n, k)?,
            );
        }
    }

    for n in 1..=n_max {
        let mut census = vec![0u64; n];
        for pi in all_permutations(n)? {
            census[ascents(&pi)] += 1;
        }
        for (k, &c) in census.iter().enumerate() {
            r.record(
                "eulerian-census",
                json!({"n": n, "k": k}),
                eulerian(n, k as i64),
                BigCount::from(c),
            );
        }
    }

    for n in 1..=n_max.min(3) {
        let tally = brute_tally(n, &VariantSpec::Ordered, budget)?;
        let expected = opf_count_outcome(&Permutation::identity(n)?);
        for pi in all_permutations(n)? {
            r.record(
                "ordered-uniformity",
                json!({"n": n, "outcome": pi.to_string()}),
                expected.clone(),
                tally.count_for(&pi),
            );
        }
    }

    for n in 2..=n_max.max(1) {
        r.record(
            "k-interval-total-vs-power",
            json!({"n": n, "k": n - 1}),
            ipf_corollary_nm1(n)?,
            kipf_count(n, n - 1)?,
        );
        r.record(
            "k-interval-total-vs-eulerian-sum",
            json!({"n": n, "k": 2}),
            ipf_corollary_2(n)?,
            kipf_count(n, 2)?,
        );
    }

    Ok(r.finish())
}

/// Cap on `n` for the random-profile suite.
pub const PROFILE_GUARD: usize = 4;

/// Minimal deterministic generator for reproducible profile drawing
/// (the SplitMix64 sequence).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Draws a random size profile: for each car, each size `1..=n` is included
/// independently with probability one half (the low bit of one generator
/// step per size), and a car whose size set comes up empty is redrawn.
pub fn draw_profile(rng: &mut SplitMix64, n: usize) -> SizeProfile {
    let mut allowed = Vec::with_capacity(n);
    for _ in 0..n {
        loop {
            let sizes: Vec<usize> = (1..=n).filter(|_| rng.next_u64() & 1 == 1).collect();
            if !sizes.is_empty() {
                allowed.push(sizes);
                break;
            }
        }
    }
    SizeProfile::new(n, allowed).expect("drawn profile is valid by construction")
}

/// Draws `trials` random size profiles and checks each against the oracle in
/// all three roles: as subset sizes, as interval lengths, and as ordered-list
/// lengths.  Reproducible for a fixed seed.
pub fn verify_profiles(n: usize, trials: u64, seed: u64, budget: u64) -> Result<VerifyReport> {
    if n > PROFILE_GUARD {
        return Err(Error::GuardExceeded {
            what: "profile suite",
            limit: PROFILE_GUARD,
            requested: n,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut r = Reporter::default();
    for trial in 0..trials {
        let profile = draw_profile(&mut rng, n);
        let mut extra = Map::new();
        extra.insert("trial".into(), json!(trial));
        extra.insert("profile".into(), json!(profile.to_string()));
        for spec in [
            VariantSpec::SizeProfile(profile.clone()),
            VariantSpec::IntervalProfile(profile.clone()),
            VariantSpec::OrderedProfile(profile.clone()),
        ] {
            check_variant_at(&mut r, &spec, n, &extra, budget)?;
        }
    }
    Ok(r.finish())
}
