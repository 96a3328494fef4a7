//! Re-runs the worked examples: the coalition counterexample, the
//! round-robin tables and the baseline demonstrations. The report is
//! plain text and contains nothing run-dependent, so repeated runs
//! produce identical bytes.

use mwnw::axioms::{search_group_manipulation, ManipulationMode, DEFAULT_MANIPULATION_BUDGET};
use mwnw::baselines::{round_robin, serial_dictatorship, weighted_leximin};
use mwnw::fixtures;
use mwnw::oracle::is_pareto_optimal;
use mwnw::{utility, Allocation, Instance, Result, SizeGuard};

use crate::format_goods;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub label: char,
    pub title: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Item {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// The rule under test; the real solver in production, a mutant in tests.
pub type Rule<'a> = &'a dyn Fn(&Instance) -> Result<Allocation>;

fn outcome(inst: &Instance, alloc: &Allocation) -> Result<String> {
    let bundles: Vec<String> = alloc
        .bundles()
        .iter()
        .map(|b| format_goods(inst, b))
        .collect();
    Ok(format!("{} {}", utility(inst, alloc)?, bundles.join(",")))
}

fn or_error(r: Result<String>) -> String {
    r.unwrap_or_else(|e| format!("error: {e}"))
}

fn item_a(rule: Rule) -> Result<String> {
    let truth = fixtures::coalition_counterexample();
    let lie = fixtures::coalition_misreport();
    Ok(format!(
        "truthful {}; misreport {}",
        outcome(&truth, &rule(&truth)?)?,
        outcome(&lie, &rule(&lie)?)?
    ))
}

fn witness_summary(
    inst: &Instance,
    max_coalition: usize,
    mode: ManipulationMode,
) -> Result<String> {
    let found = search_group_manipulation(inst, max_coalition, mode, DEFAULT_MANIPULATION_BUDGET)?;
    Ok(match found {
        None => "none".to_string(),
        Some(w) => {
            let members: Vec<&str> = w
                .coalition
                .iter()
                .map(|&i| inst.agent_names()[i].as_str())
                .collect();
            format!(
                "coalition {{{}}} honest {} after lie {}",
                members.join(","),
                w.true_utilities_honest,
                w.true_utilities_after_lie
            )
        }
    })
}

fn item_d() -> Result<String> {
    let inst = fixtures::round_robin_inefficiency();
    let alloc = round_robin(&inst);
    let pareto = is_pareto_optimal(&inst, &alloc, SizeGuard::default())?;
    Ok(format!(
        "A1={} A2={} pareto-optimal={pareto}",
        format_goods(&inst, alloc.bundle(0)),
        format_goods(&inst, alloc.bundle(1))
    ))
}

fn item_e() -> Result<String> {
    let truth = fixtures::round_robin_truthful();
    let lie = fixtures::round_robin_misreport();
    let honest = utility(&truth, &round_robin(&truth))?.0[0];
    let after = utility(&truth, &round_robin(&lie))?.0[0];
    Ok(format!(
        "agent a1 true utility {honest} honest, {after} after misreport"
    ))
}

fn item_f() -> String {
    let inst = fixtures::universally_valued();
    let alloc = serial_dictatorship(&inst);
    let bundles: Vec<String> = alloc
        .bundles()
        .iter()
        .map(|b| format_goods(&inst, b))
        .collect();
    bundles.join(",")
}

fn item_g() -> Result<String> {
    let inst = fixtures::unequal_weights_single_good();
    let alloc = weighted_leximin(&inst, SizeGuard::default())?;
    let owner = alloc
        .owner_of(0)
        .map_or("nobody".to_string(), |i| inst.agent_names()[i].clone());
    Ok(format!("g1 to {owner}"))
}

/// Runs all seven items with `rule` standing in for the solver in item (a).
pub fn run_items(rule: Rule) -> Vec<Item> {
    let coalition = fixtures::coalition_counterexample();
    let item = |label, title, expected: &str, actual| Item {
        label,
        title,
        expected: expected.to_string(),
        actual,
    };
    vec![
        item(
            'a',
            "coalition instance, truthful and misreported",
            "truthful (2,1,1) {g1,g2},{g3},{g4}; misreport (1,1,2) {g1},{g2},{g3,g4}",
            or_error(item_a(rule)),
        ),
        item(
            'b',
            "strong group manipulation on the coalition instance",
            "coalition {a2,a3} honest (2,1,1) after lie (1,1,2)",
            or_error(witness_summary(&coalition, 2, ManipulationMode::StrongGsp)),
        ),
        item(
            'c',
            "group manipulation on the coalition instance, coalitions up to 3",
            "none",
            or_error(witness_summary(&coalition, 3, ManipulationMode::Gsp)),
        ),
        item(
            'd',
            "round-robin inefficiency",
            "A1={g1} A2={g2} pareto-optimal=false",
            or_error(item_d()),
        ),
        item(
            'e',
            "round-robin manipulation",
            "agent a1 true utility 2 honest, 3 after misreport",
            or_error(item_e()),
        ),
        item(
            'f',
            "serial dictatorship with universally valued goods",
            "{g1,g2,g3},{},{}",
            item_f(),
        ),
        item(
            'g',
            "weighted leximin, weights 2 and 1, one good",
            "g1 to a2",
            or_error(item_g()),
        ),
    ]
}

pub fn render(items: &[Item]) -> String {
    let mut out = String::new();
    for it in items {
        let status = if it.passed() { "PASS" } else { "FAIL" };
        out += &format!("({}) {status} {}: {}\n", it.label, it.title, it.actual);
        if !it.passed() {
            out += &format!("    expected: {}\n", it.expected);
        }
    }
    let passed = items.iter().filter(|i| i.passed()).count();
    out += &format!("{passed}/{} items match\n", items.len());
    out
}
