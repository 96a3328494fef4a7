//! Executable checks of the structural and incentive properties of
//! MWNW^tie: ownership of bundles, restriction to agent subsets, resource-
//! and population-monotonicity, and exhaustive search for coalition
//! misreports.
//!
//! Everything is compared at the level of utility vectors, since the
//! allocation realizing the optimal vector need not be unique.

mod suite;

pub use suite::{
    run_checks, run_suite, trial_seed, Check, FailureRecord, SuiteConfig, SuiteReport, TrialInput,
    WitnessRecord,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    is_minimally_complete, restrict, utility, Allocation, Instance, Rational, UtilityVector,
};
use crate::oracle::{brute_force_mwnw_tie, SizeGuard};
use crate::solver::solve_mwnw_tie;

/// Cap on the number of reported instances a manipulation search may solve.
pub const DEFAULT_MANIPULATION_BUDGET: u64 = 1_000_000;

/// Every agent values every good in her bundle, and the allocation is
/// minimally complete.
pub fn check_ownership_lemma(inst: &Instance, alloc: &Allocation) -> bool {
    if alloc.validate(inst).is_err() {
        return false;
    }
    let owns_only_valued = alloc
        .bundles()
        .iter()
        .enumerate()
        .all(|(i, bundle)| bundle.iter().all(|&g| inst.values(i, g)));
    owns_only_valued && is_minimally_complete(inst, alloc)
}

fn solved_utilities(inst: &Instance) -> Result<UtilityVector> {
    utility(inst, &solve_mwnw_tie(inst)?)
}

fn fresh_name(taken: &[String], stem: &str) -> String {
    let mut name = stem.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Solves the instance with and without one extra good. Holds when nobody
/// loses and, for a valued good, exactly one agent gains exactly one.
pub fn check_resource_monotonicity(inst: &Instance, new_column: &[bool]) -> Result<bool> {
    let name = fresh_name(inst.good_names(), &format!("g{}", inst.m() + 1));
    let bigger = inst.with_good(&name, new_column)?;
    let before = solved_utilities(inst)?;
    let after = solved_utilities(&bigger)?;
    Ok(resource_step_holds(
        &before,
        &after,
        new_column.iter().any(|&v| v),
    ))
}

/// The utility-level condition shared by resource-monotonicity and the
/// one-good delta property.
pub fn resource_step_holds(before: &UtilityVector, after: &UtilityVector, valued: bool) -> bool {
    if before.len() != after.len() {
        return false;
    }
    let pairs = || before.0.iter().zip(&after.0);
    if pairs().any(|(b, a)| a < b) {
        return false;
    }
    if valued {
        let raised: Vec<u64> = pairs()
            .filter(|(b, a)| a != b)
            .map(|(b, a)| a - b)
            .collect();
        raised == [1]
    } else {
        true
    }
}

/// Solves the instance with and without an extra agent appended last.
/// Holds when no original agent's utility went up.
pub fn check_population_monotonicity(
    inst: &Instance,
    new_agent_row: &[bool],
    new_weight: Rational,
) -> Result<bool> {
    let name = fresh_name(inst.agent_names(), &format!("a{}", inst.n() + 1));
    let bigger = inst.with_agent(&name, new_agent_row, new_weight)?;
    let before = solved_utilities(inst)?;
    let after = solved_utilities(&bigger)?;
    Ok(before.0.iter().zip(&after.0).all(|(b, a)| a <= b))
}

/// Restricts the solver's allocation to `subset` and checks that the
/// oracle, run on those agents and the goods they hold, finds the same
/// utility vector.
pub fn check_subset_restriction(
    inst: &Instance,
    subset: &[usize],
    guard: SizeGuard,
) -> Result<bool> {
    let alloc = solve_mwnw_tie(inst)?;
    let restricted = restrict(&alloc, subset)?;
    let agents: Vec<usize> = {
        let mut a = subset.to_vec();
        a.sort_unstable();
        a.dedup();
        a
    };
    if agents.is_empty() {
        return Ok(true);
    }
    let goods: Vec<usize> = {
        let mut g: Vec<usize> = restricted.bundles().iter().flatten().copied().collect();
        g.sort_unstable();
        g
    };
    let full = utility(inst, &alloc)?;
    let expected: Vec<u64> = agents.iter().map(|&a| full.0[a]).collect();
    let sub = inst.sub_instance(&agents, &goods)?;
    let (_, oracle) = brute_force_mwnw_tie(&sub, guard)?;
    Ok(oracle.0 == expected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ManipulationMode {
    /// Every coalition member strictly gains.
    #[serde(rename = "gsp")]
    Gsp,
    /// No member loses and at least one strictly gains.
    #[serde(rename = "strong-gsp")]
    StrongGsp,
}

/// A profitable joint misreport found by [`search_group_manipulation`].
/// Gains are measured against the true valuations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManipulationWitness {
    pub coalition: Vec<usize>,
    pub true_profile: Vec<Vec<bool>>,
    pub reported_profile: Vec<Vec<bool>>,
    pub true_utilities_honest: UtilityVector,
    pub true_utilities_after_lie: UtilityVector,
    pub mode: ManipulationMode,
}

impl ManipulationWitness {
    pub fn to_json_value(&self) -> serde_json::Value {
        let matrix = |p: &[Vec<bool>]| -> Vec<Vec<u8>> {
            p.iter()
                .map(|r| r.iter().map(|&v| v as u8).collect())
                .collect()
        };
        serde_json::json!({
            "mode": self.mode,
            "coalition": self.coalition,
            "true_profile": matrix(&self.true_profile),
            "reported_profile": matrix(&self.reported_profile),
            "true_utilities_honest": self.true_utilities_honest,
            "true_utilities_after_lie": self.true_utilities_after_lie,
        })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of reported instances an exhaustive search solves, or `None` on
/// overflow.
pub fn manipulation_search_size(n: usize, m: usize, max_coalition: usize) -> Option<u64> {
    let mut total: u64 = 0;
    for k in 1..=max_coalition.min(n) {
        let bits = (m as u32).checked_mul(k as u32)?;
        let reports = 1u64.checked_shl(bits)?;
        total = total.checked_add(binomial(n as u64, k as u64).checked_mul(reports)?)?;
    }
    Some(total)
}

/// Lexicographic `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Advances the joint report with the last member varying fastest;
/// false once every combination has been visited.
fn next_report(masks: &mut [u64], radix: u64) -> bool {
    for mask in masks.iter_mut().rev() {
        *mask += 1;
        if *mask < radix {
            return true;
        }
        *mask = 0;
    }
    false
}

fn row_from_mask(mask: u64, m: usize) -> Vec<bool> {
    (0..m).map(|g| mask >> g & 1 == 1).collect()
}

/// Exhaustively tries every coalition of size at most `max_coalition` and
/// every joint binary misreport of its members (truthful rows included),
/// and returns the first one whose outcome matches `mode` in true
/// utilities. Coalitions are visited by size, then lexicographically; a
/// member's report is a bitmask over goods with good `g` at bit `g`.
pub fn search_group_manipulation(
    inst: &Instance,
    max_coalition: usize,
    mode: ManipulationMode,
    budget: u64,
) -> Result<Option<ManipulationWitness>> {
    if max_coalition == 0 {
        return Err(Error::InvalidParameter(
            "coalition size must be positive".into(),
        ));
    }
    let (n, m) = (inst.n(), inst.m());
    let size = manipulation_search_size(n, m, max_coalition);
    match size {
        Some(s) if s <= budget => {}
        _ => {
            return Err(Error::SearchSpaceExceeded {
                size: size.map_or_else(|| "overflow".into(), |s| s.to_string()),
                limit: budget,
            })
        }
    }
    let honest = solved_utilities(inst)?;
    let reports_per_member = 1u64 << m;
    for k in 1..=max_coalition.min(n) {
        for coalition in combinations(n, k) {
            let mut masks = vec![0u64; k];
            loop {
                let rows: Vec<(usize, Vec<bool>)> = coalition
                    .iter()
                    .zip(&masks)
                    .map(|(&a, &mask)| (a, row_from_mask(mask, m)))
                    .collect();
                let reported = inst.with_rows(&rows)?;
                let lie = utility(inst, &solve_mwnw_tie(&reported)?)?;
                if is_profitable(&coalition, &honest, &lie, mode) {
                    return Ok(Some(ManipulationWitness {
                        coalition,
                        true_profile: inst.valuations().to_vec(),
                        reported_profile: reported.valuations().to_vec(),
                        true_utilities_honest: honest,
                        true_utilities_after_lie: lie,
                        mode,
                    }));
                }
                if !next_report(&mut masks, reports_per_member) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

fn is_profitable(
    coalition: &[usize],
    honest: &UtilityVector,
    lie: &UtilityVector,
    mode: ManipulationMode,
) -> bool {
    let gains = coalition.iter().map(|&i| lie.0[i].cmp(&honest.0[i]));
    match mode {
        ManipulationMode::Gsp => gains.into_iter().all(|o| o.is_gt()),
        ManipulationMode::StrongGsp => {
            let gains: Vec<_> = gains.collect();
            gains.iter().all(|o| o.is_ge()) && gains.iter().any(|o| o.is_gt())
        }
    }
}
