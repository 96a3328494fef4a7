use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use super::{
    check_ownership_lemma, check_population_monotonicity, check_resource_monotonicity,
    check_subset_restriction, search_group_manipulation, ManipulationMode,
    DEFAULT_MANIPULATION_BUDGET,
};
use crate::error::{Error, Result};
use crate::generate::{random_instance, rng_from_seed, GENERATOR_ID};
use crate::model::{parse_rational, utility, Instance, Rational};
use crate::oracle::{brute_force_mwnw_tie, SizeGuard};
use crate::solver::solve_mwnw_tie;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Ownership,
    Resource,
    Population,
    Subset,
    Gsp,
    StrongGsp,
    OracleEquiv,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::OracleEquiv,
        Check::Ownership,
        Check::Resource,
        Check::Population,
        Check::Subset,
        Check::Gsp,
        Check::StrongGsp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ownership => "ownership",
            Check::Resource => "resource",
            Check::Population => "population",
            Check::Subset => "subset",
            Check::Gsp => "gsp",
            Check::StrongGsp => "strong-gsp",
            Check::OracleEquiv => "oracle-equiv",
        }
    }

    /// Parses a selector; `all` expands to every check.
    pub fn parse_selector(text: &str) -> Result<Vec<Check>> {
        if text == "all" {
            return Ok(Check::ALL.to_vec());
        }
        text.parse().map(|c| vec![c])
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub agents: (usize, usize),
    pub goods: (usize, usize),
    pub densities: Vec<f64>,
    pub weight_pool: Vec<Rational>,
    pub checks: Vec<Check>,
    pub guard: SizeGuard,
    pub max_coalition: usize,
    pub manipulation_budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            trials: 100,
            agents: (1, 4),
            goods: (1, 6),
            densities: vec![0.3, 0.5, 0.8],
            weight_pool: ["1", "1/2", "3/2", "2", "3"]
                .iter()
                .map(|s| parse_rational(s).expect("literal weight"))
                .collect(),
            checks: Check::ALL.to_vec(),
            guard: SizeGuard::default(),
            max_coalition: 2,
            manipulation_budget: DEFAULT_MANIPULATION_BUDGET,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if self.agents.0 == 0 || self.agents.0 > self.agents.1 {
            return bad("agent range must satisfy 1 <= min <= max");
        }
        if self.goods.0 > self.goods.1 {
            return bad("good range must satisfy min <= max");
        }
        if self.densities.is_empty() || self.densities.iter().any(|d| !(0.0..=1.0).contains(d)) {
            return bad("densities must be nonempty and within [0, 1]");
        }
        if self.weight_pool.is_empty() {
            return bad("empty weight pool");
        }
        if self.max_coalition == 0 {
            return bad("coalition size must be positive");
        }
        Ok(())
    }

    /// Regenerates the instance a trial ran on.
    pub fn trial_instance(&self, trial_seed: u64) -> Result<TrialInput> {
        let mut rng = rng_from_seed(trial_seed);
        let n = rng.gen_range(self.agents.0..=self.agents.1);
        let m = rng.gen_range(self.goods.0..=self.goods.1);
        let density = self.densities[rng.gen_range(0..self.densities.len())];
        let instance = random_instance(&mut rng, n, m, density, &self.weight_pool)?;
        Ok(self.draw_extras(&mut rng, instance, density))
    }

    /// Extra inputs for checking a given instance, drawn from `seed`.
    pub fn instance_input(&self, seed: u64, instance: Instance) -> TrialInput {
        let mut rng = rng_from_seed(seed);
        let density = self.densities[rng.gen_range(0..self.densities.len())];
        self.draw_extras(&mut rng, instance, density)
    }

    fn draw_extras<R: Rng>(&self, rng: &mut R, instance: Instance, density: f64) -> TrialInput {
        let (n, m) = (instance.n(), instance.m());
        let new_column = (0..n).map(|_| rng.gen_bool(density)).collect();
        let new_row = (0..m).map(|_| rng.gen_bool(density)).collect();
        let new_weight = self.weight_pool[rng.gen_range(0..self.weight_pool.len())].clone();
        let subset = loop {
            let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if !s.is_empty() {
                break s;
            }
        };
        TrialInput {
            instance,
            new_column,
            new_row,
            new_weight,
            subset,
        }
    }
}

/// Everything one trial draws from its seed.
#[derive(Debug, Clone)]
pub struct TrialInput {
    pub instance: Instance,
    pub new_column: Vec<bool>,
    pub new_row: Vec<bool>,
    pub new_weight: Rational,
    pub subset: Vec<usize>,
}

/// Seed of trial `index`; independent of execution order.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    // splitmix64 finalizer over (seed, index)
    let mut z = seed
        ^ (index as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub seed: u64,
    pub kind: String,
    pub detail: String,
}

/// A strong-GSP witness; these are expected and not failures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessRecord {
    pub seed: u64,
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub trials: usize,
    pub seed: u64,
    pub generator: &'static str,
    pub failures: Vec<FailureRecord>,
    pub witnesses: Vec<WitnessRecord>,
    /// Checks skipped because a search limit was exceeded.
    pub skipped: usize,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

struct TrialOutcome {
    failures: Vec<FailureRecord>,
    witnesses: Vec<WitnessRecord>,
    skipped: usize,
}

impl TrialOutcome {
    fn fail(&mut self, seed: u64, check: Check, inst: &Instance, detail: impl Into<String>) {
        self.failures.push(FailureRecord {
            seed,
            kind: check.name().to_string(),
            detail: format!("{}; instance {}", detail.into(), inst.to_json()),
        });
    }
}

/// Runs the selected checks on `input`. Used by [`run_suite`] and for
/// single-instance checks.
pub fn run_checks(
    config: &SuiteConfig,
    seed: u64,
    input: &TrialInput,
) -> (Vec<FailureRecord>, Vec<WitnessRecord>, usize) {
    let mut out = TrialOutcome {
        failures: Vec::new(),
        witnesses: Vec::new(),
        skipped: 0,
    };
    let inst = &input.instance;
    for &check in &config.checks {
        let result: Result<()> = (|| {
            match check {
                Check::OracleEquiv => {
                    let solved = utility(inst, &solve_mwnw_tie(inst)?)?;
                    let (_, oracle) = brute_force_mwnw_tie(inst, config.guard)?;
                    if solved != oracle {
                        out.fail(
                            seed,
                            check,
                            inst,
                            format!("solver {solved} vs oracle {oracle}"),
                        );
                    }
                }
                Check::Ownership => {
                    let alloc = solve_mwnw_tie(inst)?;
                    if !check_ownership_lemma(inst, &alloc) {
                        out.fail(
                            seed,
                            check,
                            inst,
                            format!("allocation {}", alloc.to_json(inst)),
                        );
                    }
                }
                Check::Resource => {
                    if !check_resource_monotonicity(inst, &input.new_column)? {
                        out.fail(
                            seed,
                            check,
                            inst,
                            format!("new column {:?}", bits(&input.new_column)),
                        );
                    }
                }
                Check::Population => {
                    if !check_population_monotonicity(
                        inst,
                        &input.new_row,
                        input.new_weight.clone(),
                    )? {
                        out.fail(
                            seed,
                            check,
                            inst,
                            format!(
                                "new row {:?} weight {}",
                                bits(&input.new_row),
                                input.new_weight
                            ),
                        );
                    }
                }
                Check::Subset => {
                    if !check_subset_restriction(inst, &input.subset, config.guard)? {
                        out.fail(seed, check, inst, format!("subset {:?}", input.subset));
                    }
                }
                Check::Gsp | Check::StrongGsp => {
                    let mode = if check == Check::Gsp {
                        ManipulationMode::Gsp
                    } else {
                        ManipulationMode::StrongGsp
                    };
                    let found = search_group_manipulation(
                        inst,
                        config.max_coalition,
                        mode,
                        config.manipulation_budget,
                    )?;
                    match (found, mode) {
                        (Some(w), ManipulationMode::Gsp) => {
                            out.fail(seed, check, inst, format!("witness {}", w.to_json_value()))
                        }
                        (Some(w), ManipulationMode::StrongGsp) => {
                            out.witnesses.push(WitnessRecord {
                                seed,
                                witness: w.to_json_value(),
                            })
                        }
                        (None, _) => {}
                    }
                }
            }
            Ok(())
        })();
        match result {
            Ok(()) => {}
            Err(Error::SearchSpaceExceeded { .. }) => out.skipped += 1,
            Err(e) => out.fail(seed, check, inst, format!("error: {e}")),
        }
    }
    (out.failures, out.witnesses, out.skipped)
}

fn bits(v: &[bool]) -> Vec<u8> {
    v.iter().map(|&b| b as u8).collect()
}

/// Generates `config.trials` instances from `config.seed` and runs the
/// selected checks on each. Results are ordered by trial index.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let mut report = SuiteReport {
        trials: config.trials,
        seed: config.seed,
        generator: GENERATOR_ID,
        failures: Vec::new(),
        witnesses: Vec::new(),
        skipped: 0,
        elapsed: Duration::ZERO,
    };
    for index in 0..config.trials {
        let seed = trial_seed(config.seed, index);
        let input = config.trial_instance(seed)?;
        let (failures, witnesses, skipped) = run_checks(config, seed, &input);
        report.failures.extend(failures);
        report.witnesses.extend(witnesses);
        report.skipped += skipped;
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_pass() {
        let report = run_suite(&SuiteConfig {
            trials: 0,
            ..SuiteConfig::default()
        })
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.trials, 0);
        assert!(report.witnesses.is_empty());
    }

    #[test]
    fn same_seed_same_report() {
        let config = SuiteConfig {
            trials: 15,
            seed: 7,
            ..SuiteConfig::default()
        };
        let mut a = run_suite(&config).unwrap();
        let mut b = run_suite(&config).unwrap();
        a.elapsed = Duration::ZERO;
        b.elapsed = Duration::ZERO;
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn trial_instances_replay() {
        let config = SuiteConfig::default();
        let s = trial_seed(config.seed, 3);
        let a = config.trial_instance(s).unwrap();
        let b = config.trial_instance(s).unwrap();
        assert_eq!(a.instance, b.instance);
        assert_eq!(a.subset, b.subset);
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
    }

    #[test]
    fn selectors() {
        assert_eq!(Check::parse_selector("all").unwrap().len(), 7);
        assert_eq!(
            Check::parse_selector("strong-gsp").unwrap(),
            vec![Check::StrongGsp]
        );
        assert!(Check::parse_selector("bogus").is_err());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad = SuiteConfig {
            agents: (0, 3),
            ..SuiteConfig::default()
        };
        assert!(run_suite(&bad).is_err());
        let bad = SuiteConfig {
            densities: vec![1.5],
            ..SuiteConfig::default()
        };
        assert!(run_suite(&bad).is_err());
    }

    #[test]
    fn report_json_shape() {
        let report = run_suite(&SuiteConfig {
            trials: 2,
            ..SuiteConfig::default()
        })
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["trials"], 2);
        assert!(v["failures"].is_array());
        assert!(v["elapsed_ms"].is_u64());
        assert_eq!(v["generator"], GENERATOR_ID);
    }
}
