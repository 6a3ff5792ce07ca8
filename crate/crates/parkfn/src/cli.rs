//! Command-line frontend: statistics, simulation, counting, tables, and
//! verification.
//!
//! Exit codes are a stable contract: 0 for success, 1 for a domain-level
//! negative (a car failed to park, a verification check failed), 2 for
//! usage or parse errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::counting::{
    ipf_corollary_2, ipf_corollary_2_outcome, ipf_corollary_nm1, ipf_corollary_nm1_outcome,
    ipf_count, ipf_count_outcome, kint_profile_outcome, kipf_count, kipf_count_outcome, ksp_count,
    ksp_count_outcome, lsp_count, lsp_count_outcome, opf_count, opf_count_outcome,
    opf_count_profile, opf_profile_outcome, p_count, pf_count, pf_count_outcome, sp_count,
    sp_count_outcome, BigCount, SizeProfile, VariantSpec,
};
use crate::error::{Error, Result};
use crate::oracle::{brute_tally, DEFAULT_BUDGET};
use crate::permstat::{
    a_stat, all_permutations, ascents, car_inv, in_snk, inv, local_inv, Permutation,
};
use crate::simulator::{
    park_classical, park_ordered, park_subsets, OrderedFamily, ParkResult, SetFamily, SpotSet,
};
use crate::verify::{verify_identities, verify_profiles, verify_variant, VerifyReport};

const SYNTAX_HELP: &str = "\
Input syntax:
  permutation   compact digits for n <= 9 (\"31524\") or comma-separated (\"3,1,5,2,4\")
  classical     preference vector, same two forms (\"2,2,2\" or \"222\")
  subset/interval  brace sets per car: \"{2},{2,3},{1,2,3}\" (intervals must be contiguous)
  ordered       parenthesized preference lists per car: \"(2,1),(2,1)\"
  profile file  JSON {\"n\": 3, \"allowed\": [[1,2],[2],[1,2,3]]} (per-car allowed sizes)

Environment:
  PARKFN_BUDGET   overrides the default brute-force family budget (100000000)

Exit codes: 0 success; 1 parking or verification failure; 2 usage/parse error.";

#[derive(Parser)]
#[command(name = "parkfn", version, about = "Parking-function variants: statistics, simulation, exact counts, and brute-force verification", after_help = SYNTAX_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Permutation statistics for one outcome
    Stats {
        /// Outcome permutation
        perm: String,
    },
    /// Run one parking process and print the outcome
    Park {
        #[arg(long, value_enum)]
        variant: ParkVariant,
        /// Preference family in the variant's syntax
        family: String,
    },
    /// Exact counts: totals, or per-outcome with --outcome
    Count {
        #[arg(long, value_enum)]
        variant: CountVariant,
        /// Street length
        #[arg(short)]
        n: usize,
        /// Set size / interval length (ksp, kipf, asc-end)
        #[arg(short, long)]
        k: Option<usize>,
        /// Restrict to one outcome permutation
        #[arg(long)]
        outcome: Option<String>,
        /// JSON size-profile file (lsp, kint-profile, opf-profile)
        #[arg(long, value_name = "FILE")]
        profile: Option<PathBuf>,
    },
    /// Count tables over a range of n
    Table {
        #[arg(long, value_enum)]
        variant: CountVariant,
        /// First n (inclusive)
        #[arg(long)]
        from: usize,
        /// Last n (inclusive)
        #[arg(long)]
        to: usize,
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long, value_name = "FILE")]
        profile: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Formula-versus-oracle check suites
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest n for the variants/identities suites
        #[arg(long)]
        max_n: Option<usize>,
        /// Street length for the profiles suite
        #[arg(short)]
        n: Option<usize>,
        /// Number of random profiles for the profiles suite
        #[arg(long, default_value_t = 50)]
        trials: u64,
        /// Generator seed (required for the profiles suite)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Plain)]
        format: ReportFormat,
    },
    /// Dump a raw brute-force tally
    Oracle {
        #[arg(long, value_enum)]
        variant: OracleVariant,
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long, value_name = "FILE")]
        profile: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Plain)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum ParkVariant {
    Classical,
    Subset,
    Interval,
    Ordered,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum CountVariant {
    /// Classical parking functions
    Pf,
    /// Subset parking functions
    Sp,
    /// k-subset parking functions
    Ksp,
    /// Size-profile subset parking functions
    Lsp,
    /// Interval parking functions
    Ipf,
    /// k-interval parking functions
    Kipf,
    /// Interval parking functions with per-car allowed lengths
    KintProfile,
    /// (n-1)-interval parking functions, closed form
    IpfNm1,
    /// 2-interval parking functions, closed form
    #[value(name = "ipf-2")]
    Ipf2,
    /// Permutations ending in an ascent with exactly k ascents
    AscEnd,
    /// Ordered parking functions
    Opf,
    /// Ordered parking functions with per-car allowed sizes
    OpfProfile,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OracleVariant {
    Classical,
    Subset,
    KSubset,
    SizeProfile,
    Interval,
    KInterval,
    IntervalProfile,
    Ordered,
    OrderedProfile,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Suite {
    Variants,
    Identities,
    Profiles,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum ReportFormat {
    Plain,
    Json,
}

/// Whether the command ended in success or a domain-level negative.
enum Outcome {
    Success,
    DomainFailure,
}

/// Executes a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match dispatch(cli.command) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::DomainFailure) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Stats { perm } => cmd_stats(&perm),
        Command::Park { variant, family } => cmd_park(variant, &family),
        Command::Count {
            variant,
            n,
            k,
            outcome,
            profile,
        } => cmd_count(variant, n, k, outcome.as_deref(), profile.as_deref()),
        Command::Table {
            variant,
            from,
            to,
            k,
            profile,
            format,
        } => cmd_table(variant, from, to, k, profile.as_deref(), format),
        Command::Verify {
            suite,
            max_n,
            n,
            trials,
            seed,
            format,
        } => cmd_verify(suite, max_n, n, trials, seed, format),
        Command::Oracle {
            variant,
            n,
            k,
            profile,
            format,
        } => cmd_oracle(variant, n, k, profile.as_deref(), format),
    }
}

fn join<I: IntoIterator<Item = T>, T: ToString>(items: I) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_stats(perm: &str) -> Result<Outcome> {
    let p: Permutation = perm.parse()?;
    let n = p.n();
    println!("n: {n}");
    println!("inv: {}", inv(&p));
    println!(
        "local_inv: {}",
        join((1..=n).map(|i| local_inv(&p, i).unwrap()))
    );
    println!(
        "car_inv: {}",
        join((1..=n).map(|c| car_inv(&p, c).unwrap()))
    );
    println!("ascents: {}", ascents(&p));
    println!("a: {}", join((1..=n).map(|i| a_stat(&p, i).unwrap())));
    println!(
        "in_snk: {}",
        join((1..=n).filter(|&k| in_snk(&p, k).unwrap()))
    );
    Ok(Outcome::Success)
}

fn cmd_park(variant: ParkVariant, family: &str) -> Result<Outcome> {
    let result = match variant {
        ParkVariant::Classical => park_classical(&parse_prefs(family)?)?,
        ParkVariant::Subset => park_subsets(&parse_set_family(family, false)?),
        ParkVariant::Interval => park_subsets(&parse_set_family(family, true)?),
        ParkVariant::Ordered => park_ordered(&parse_ordered_family(family)?),
    };
    match result {
        ParkResult::Parked(p) => {
            println!("{p}");
            Ok(Outcome::Success)
        }
        ParkResult::Failed { car } => {
            println!("car {car} failed");
            Ok(Outcome::DomainFailure)
        }
    }
}

/// Preference vector: comma-separated, or compact digits for small streets.
fn parse_prefs(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty preference vector".into()));
    }
    if s.contains(',') {
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad token \"{tok}\"")))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad token \"{c}\"")))
            })
            .collect()
    }
}

/// Splits `"{a},{b},{c}"`-style input into the bracketed bodies.
fn bracket_groups(s: &str, open: char, close: char) -> Result<Vec<String>> {
    let s = s.trim();
    let mut groups = Vec::new();
    let mut rest = s;
    loop {
        rest = rest.trim_start();
        let Some(stripped) = rest.strip_prefix(open) else {
            return Err(Error::InvalidArgument(format!(
                "expected '{open}' at \"{rest}\""
            )));
        };
        let Some(end) = stripped.find(close) else {
            return Err(Error::InvalidArgument(format!(
                "missing '{close}' after \"{open}{stripped}\""
            )));
        };
        groups.push(stripped[..end].to_string());
        rest = stripped[end + 1..].trim_start();
        if rest.is_empty() {
            return Ok(groups);
        }
        let Some(after_comma) = rest.strip_prefix(',') else {
            return Err(Error::InvalidArgument(format!(
                "expected ',' between groups at \"{rest}\""
            )));
        };
        rest = after_comma;
    }
}

fn parse_group_numbers(group: &str) -> Result<Vec<usize>> {
    let group = group.trim();
    if group.is_empty() {
        return Ok(Vec::new());
    }
    group
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad token \"{tok}\"")))
        })
        .collect()
}

/// Acceptable-set family `"{2},{2,3},{1,2,3}"`; with `require_intervals`,
/// every set must be a contiguous run.
fn parse_set_family(s: &str, require_intervals: bool) -> Result<SetFamily> {
    let groups = bracket_groups(s, '{', '}')?;
    let n = groups.len();
    let sets = groups
        .iter()
        .map(|g| SpotSet::new(n, parse_group_numbers(g)?))
        .collect::<Result<Vec<_>>>()?;
    if require_intervals {
        if let Some(bad) = sets.iter().find(|set| !set.is_interval()) {
            return Err(Error::InvalidArgument(format!(
                "set {bad:?} is not a contiguous interval"
            )));
        }
    }
    SetFamily::new(n, sets)
}

/// Ordered-preference family `"(2,1),(2,1)"`.
fn parse_ordered_family(s: &str) -> Result<OrderedFamily> {
    let groups = bracket_groups(s, '(', ')')?;
    let n = groups.len();
    let lists = groups
        .iter()
        .map(|g| parse_group_numbers(g))
        .collect::<Result<Vec<_>>>()?;
    OrderedFamily::new(n, lists)
}

fn load_profile(path: &Path, n: usize) -> Result<SizeProfile> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::InvalidArgument(format!("cannot read profile {}: {e}", path.display()))
    })?;
    let profile: SizeProfile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("bad profile {}: {e}", path.display())))?;
    if profile.n() != n {
        return Err(Error::InvalidProfile(format!(
            "profile is for n = {}, command asked for n = {n}",
            profile.n()
        )));
    }
    Ok(profile)
}

fn requires_k(variant: CountVariant) -> bool {
    matches!(
        variant,
        CountVariant::Ksp | CountVariant::Kipf | CountVariant::AscEnd
    )
}

fn requires_profile(variant: CountVariant) -> bool {
    matches!(
        variant,
        CountVariant::Lsp | CountVariant::KintProfile | CountVariant::OpfProfile
    )
}

fn variant_name(variant: CountVariant) -> String {
    variant
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

struct CountArgs {
    k: Option<usize>,
    profile: Option<SizeProfile>,
}

impl CountArgs {
    fn resolve(
        variant: CountVariant,
        k: Option<usize>,
        profile: Option<&Path>,
        n: usize,
    ) -> Result<Self> {
        let name = variant_name(variant);
        if requires_k(variant) && k.is_none() {
            return Err(Error::InvalidArgument(format!(
                "--variant {name} requires -k"
            )));
        }
        if !requires_k(variant) && k.is_some() {
            return Err(Error::InvalidArgument(format!(
                "-k does not apply to --variant {name}"
            )));
        }
        if requires_profile(variant) && profile.is_none() {
            return Err(Error::InvalidArgument(format!(
                "--variant {name} requires --profile"
            )));
        }
        if !requires_profile(variant) && profile.is_some() {
            return Err(Error::InvalidArgument(format!(
                "--profile does not apply to --variant {name}"
            )));
        }
        Ok(Self {
            k,
            profile: profile.map(|p| load_profile(p, n)).transpose()?,
        })
    }
}

/// Total count for one variant at one `n`.
fn total_count(variant: CountVariant, n: usize, args: &CountArgs) -> Result<BigCount> {
    match variant {
        CountVariant::Pf => pf_count(n),
        CountVariant::Sp => sp_count(n),
        CountVariant::Ksp => ksp_count(n, args.k.unwrap()),
        CountVariant::Lsp => Ok(lsp_count(args.profile.as_ref().unwrap())),
        CountVariant::Ipf => ipf_count(n),
        CountVariant::Kipf => kipf_count(n, args.k.unwrap()),
        CountVariant::KintProfile => {
            let profile = args.profile.as_ref().unwrap();
            let mut total = BigCount::from(0u32);
            for pi in all_permutations(n)? {
                total += kint_profile_outcome(profile, &pi)?;
            }
            Ok(total)
        }
        CountVariant::IpfNm1 => ipf_corollary_nm1(n),
        CountVariant::Ipf2 => ipf_corollary_2(n),
        CountVariant::AscEnd => p_count(n, args.k.unwrap()),
        CountVariant::Opf => opf_count(n),
        CountVariant::OpfProfile => Ok(opf_count_profile(args.profile.as_ref().unwrap())),
    }
}

/// Per-outcome count for one variant.  The closed-form tail-interval
/// variants report 0 for outcomes outside their support.
fn outcome_count(variant: CountVariant, pi: &Permutation, args: &CountArgs) -> Result<BigCount> {
    let zero_off_support = |r: Result<BigCount>| match r {
        Err(Error::OutcomeNotInSnk { .. }) => Ok(BigCount::from(0u32)),
        other => other,
    };
    match variant {
        CountVariant::Pf => Ok(pf_count_outcome(pi)),
        CountVariant::Sp => sp_count_outcome(pi),
        CountVariant::Ksp => ksp_count_outcome(pi, args.k.unwrap()),
        CountVariant::Lsp => lsp_count_outcome(args.profile.as_ref().unwrap(), pi),
        CountVariant::Ipf => Ok(ipf_count_outcome(pi)),
        CountVariant::Kipf => kipf_count_outcome(pi, args.k.unwrap()),
        CountVariant::KintProfile => kint_profile_outcome(args.profile.as_ref().unwrap(), pi),
        CountVariant::IpfNm1 => zero_off_support(ipf_corollary_nm1_outcome(pi)),
        CountVariant::Ipf2 => zero_off_support(ipf_corollary_2_outcome(pi)),
        CountVariant::AscEnd => Err(Error::InvalidArgument(
            "--variant asc-end has no per-outcome form".into(),
        )),
        CountVariant::Opf => Ok(opf_count_outcome(pi)),
        CountVariant::OpfProfile => opf_profile_outcome(args.profile.as_ref().unwrap(), pi),
    }
}

fn cmd_count(
    variant: CountVariant,
    n: usize,
    k: Option<usize>,
    outcome: Option<&str>,
    profile: Option<&Path>,
) -> Result<Outcome> {
    let args = CountArgs::resolve(variant, k, profile, n)?;
    let value = match outcome {
        None => total_count(variant, n, &args)?,
        Some(text) => {
            let pi: Permutation = text.parse()?;
            if pi.n() != n {
                return Err(Error::OutcomeLengthMismatch {
                    expected: n,
                    got: pi.n(),
                });
            }
            outcome_count(variant, &pi, &args)?
        }
    };
    println!("{value}");
    Ok(Outcome::Success)
}

/// Value for the `k` column: explicit `-k`, or the length implied by the
/// closed-form tail variants.
fn k_cell(variant: CountVariant, n: usize, k: Option<usize>) -> Option<usize> {
    match variant {
        CountVariant::IpfNm1 => Some(n - 1),
        CountVariant::Ipf2 => Some(2),
        _ => k,
    }
}

#[derive(serde::Serialize)]
struct TableRow {
    variant: String,
    n: usize,
    k: Option<usize>,
    count: String,
}

fn cmd_table(
    variant: CountVariant,
    from: usize,
    to: usize,
    k: Option<usize>,
    profile: Option<&Path>,
    format: TableFormat,
) -> Result<Outcome> {
    if from < 1 || from > to {
        return Err(Error::InvalidArgument(format!(
            "invalid range {from}..{to}: need 1 <= from <= to"
        )));
    }
    let name = variant_name(variant);
    let mut rows = Vec::new();
    for n in from..=to {
        let args = CountArgs::resolve(variant, k, profile, n)?;
        let count = total_count(variant, n, &args)?;
        rows.push(TableRow {
            variant: name.clone(),
            n,
            k: k_cell(variant, n, k),
            count: count.to_string(),
        });
    }
    match format {
        TableFormat::Csv => {
            println!("variant,n,k,count");
            for row in rows {
                let k_text = row.k.map(|v| v.to_string()).unwrap_or_default();
                println!("{},{},{},{}", row.variant, row.n, k_text, row.count);
            }
        }
        TableFormat::Json => {
            println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
        }
    }
    Ok(Outcome::Success)
}

fn resolve_budget() -> Result<u64> {
    match std::env::var("PARKFN_BUDGET") {
        Ok(text) => text.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!(
                "PARKFN_BUDGET must be a nonnegative integer, got \"{text}\""
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BUDGET),
        Err(std::env::VarError::NotUnicode(_)) => Err(Error::InvalidArgument(
            "PARKFN_BUDGET is not valid unicode".into(),
        )),
    }
}

fn render_report(report: &VerifyReport, format: ReportFormat) -> Outcome {
    match format {
        ReportFormat::Plain => {
            println!("checks: {}", report.checks.len());
            println!("failures: {}", report.failures().count());
            for check in report.failures() {
                println!(
                    "FAIL {} {} expected {} actual {}",
                    check.name, check.params, check.expected, check.actual
                );
            }
            if report.all_passed {
                println!("all passed");
            }
        }
        ReportFormat::Json => println!("{}", report.to_json()),
    }
    if report.all_passed {
        Outcome::Success
    } else {
        Outcome::DomainFailure
    }
}

fn cmd_verify(
    suite: Suite,
    max_n: Option<usize>,
    n: Option<usize>,
    trials: u64,
    seed: Option<u64>,
    format: ReportFormat,
) -> Result<Outcome> {
    let budget = resolve_budget()?;
    let report = match suite {
        Suite::Variants => {
            let max_n = max_n.ok_or_else(|| {
                Error::InvalidArgument("--suite variants requires --max-n".into())
            })?;
            let mut specs = vec![
                VariantSpec::Classical,
                VariantSpec::Subset,
                VariantSpec::Interval,
                VariantSpec::Ordered,
            ];
            for k in 1..=max_n {
                specs.push(VariantSpec::KSubset(k));
                specs.push(VariantSpec::KInterval(k));
            }
            let reports = specs
                .iter()
                .map(|spec| verify_variant(spec, max_n, budget))
                .collect::<Result<Vec<_>>>()?;
            VerifyReport::merge(reports)
        }
        Suite::Identities => {
            let max_n = max_n.ok_or_else(|| {
                Error::InvalidArgument("--suite identities requires --max-n".into())
            })?;
            verify_identities(max_n, budget)?
        }
        Suite::Profiles => {
            let n =
                n.ok_or_else(|| Error::InvalidArgument("--suite profiles requires -n".into()))?;
            let seed = seed.ok_or_else(|| {
                Error::InvalidArgument("--suite profiles requires an explicit --seed".into())
            })?;
            verify_profiles(n, trials, seed, budget)?
        }
    };
    Ok(render_report(&report, format))
}

fn oracle_spec(
    variant: OracleVariant,
    n: usize,
    k: Option<usize>,
    profile: Option<&Path>,
) -> Result<VariantSpec> {
    let need_k =
        || k.ok_or_else(|| Error::InvalidArgument("this oracle variant requires -k".into()));
    let need_profile = || -> Result<SizeProfile> {
        let path = profile.ok_or_else(|| {
            Error::InvalidArgument("this oracle variant requires --profile".into())
        })?;
        load_profile(path, n)
    };
    Ok(match variant {
        OracleVariant::Classical => VariantSpec::Classical,
        OracleVariant::Subset => VariantSpec::Subset,
        OracleVariant::KSubset => VariantSpec::KSubset(need_k()?),
        OracleVariant::SizeProfile => VariantSpec::SizeProfile(need_profile()?),
        OracleVariant::Interval => VariantSpec::Interval,
        OracleVariant::KInterval => VariantSpec::KInterval(need_k()?),
        OracleVariant::IntervalProfile => VariantSpec::IntervalProfile(need_profile()?),
        OracleVariant::Ordered => VariantSpec::Ordered,
        OracleVariant::OrderedProfile => VariantSpec::OrderedProfile(need_profile()?),
    })
}

fn cmd_oracle(
    variant: OracleVariant,
    n: usize,
    k: Option<usize>,
    profile: Option<&Path>,
    format: ReportFormat,
) -> Result<Outcome> {
    let spec = oracle_spec(variant, n, k, profile)?;
    let budget = resolve_budget()?;
    let tally = brute_tally(n, &spec, budget)?;
    match format {
        ReportFormat::Plain => {
            for (pi, count) in &tally.per_outcome {
                println!("{pi} {count}");
            }
            println!("total {}", tally.total);
            println!("failures {}", tally.failures);
        }
        ReportFormat::Json => {
            let outcomes: std::collections::BTreeMap<String, String> = tally
                .per_outcome
                .iter()
                .map(|(pi, c)| (pi.to_string(), c.to_string()))
                .collect();
            let value = serde_json::json!({
                "variant": spec.to_string(),
                "n": n,
                "total": tally.total.to_string(),
                "failures": tally.failures.to_string(),
                "outcomes": outcomes,
            });
            println!("{value}");
        }
    }
    Ok(Outcome::Success)
}
