//! Instances, allocations and utility vectors, plus the JSON formats that
//! carry them.
//!
//! An instance is `n` agents with positive rational weights and a 0/1
//! valuation matrix over `m` goods. Goods are referred to by index inside
//! the library and by name on the wire.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number; always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Parses `"p"` or `"p/q"` (base-10, `q >= 1`).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with('-') {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Renders a rational the way [`parse_rational`] reads it.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    agents: Vec<String>,
    goods: Vec<String>,
    weights: Vec<Rational>,
    valuations: Vec<Vec<bool>>,
}

impl Instance {
    pub fn new(
        agents: Vec<String>,
        goods: Vec<String>,
        weights: Vec<Rational>,
        valuations: Vec<Vec<bool>>,
    ) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::NoAgents);
        }
        if weights.len() != agents.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} agents but {} weights",
                agents.len(),
                weights.len()
            )));
        }
        if valuations.len() != agents.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} agents but {} valuation rows",
                agents.len(),
                valuations.len()
            )));
        }
        for (i, row) in valuations.iter().enumerate() {
            if row.len() != goods.len() {
                return Err(Error::DimensionMismatch(format!(
                    "valuation row {i} has {} entries, expected {}",
                    row.len(),
                    goods.len()
                )));
            }
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight {
                    agent: i,
                    name: agents[i].clone(),
                    text: format_rational(w),
                });
            }
        }
        let mut seen = BTreeSet::new();
        for g in &goods {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGood(g.clone()));
            }
        }
        Ok(Instance {
            agents,
            goods,
            weights,
            valuations,
        })
    }

    /// Builds an instance with generated names `a1..an` and `g1..gm`.
    pub fn from_matrix(weights: Vec<Rational>, rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut valuations = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (g, &v) in row.iter().enumerate() {
                match v {
                    0 => out.push(false),
                    1 => out.push(true),
                    _ => {
                        return Err(Error::NonBinaryValuation {
                            agent: i,
                            good: g,
                            value: v.to_string(),
                        })
                    }
                }
            }
            valuations.push(out);
        }
        Instance::new(agent_names(n), good_names(m), weights, valuations)
    }

    /// Equal unit weights.
    pub fn unweighted(rows: &[Vec<u8>]) -> Result<Self> {
        Instance::from_matrix(vec![Rational::from_integer(1.into()); rows.len()], rows)
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn m(&self) -> usize {
        self.goods.len()
    }

    pub fn agent_names(&self) -> &[String] {
        &self.agents
    }

    pub fn good_names(&self) -> &[String] {
        &self.goods
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, agent: usize) -> &Rational {
        &self.weights[agent]
    }

    pub fn valuations(&self) -> &[Vec<bool>] {
        &self.valuations
    }

    pub fn row(&self, agent: usize) -> &[bool] {
        &self.valuations[agent]
    }

    #[inline]
    pub fn values(&self, agent: usize, good: usize) -> bool {
        self.valuations[agent][good]
    }

    /// A good is valued when at least one agent values it.
    pub fn is_valued(&self, good: usize) -> bool {
        self.valuations.iter().any(|row| row[good])
    }

    pub fn valued_goods(&self) -> Vec<usize> {
        (0..self.m()).filter(|&g| self.is_valued(g)).collect()
    }

    pub fn good_index(&self, name: &str) -> Option<usize> {
        self.goods.iter().position(|g| g == name)
    }

    /// Copy with one extra good appended; `column[i]` is agent `i`'s value.
    pub fn with_good(&self, name: &str, column: &[bool]) -> Result<Instance> {
        if column.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: column.len(),
            });
        }
        let mut goods = self.goods.clone();
        goods.push(name.to_string());
        let mut valuations = self.valuations.clone();
        for (row, &v) in valuations.iter_mut().zip(column) {
            row.push(v);
        }
        Instance::new(self.agents.clone(), goods, self.weights.clone(), valuations)
    }

    /// Copy with one extra agent appended as the last agent.
    pub fn with_agent(&self, name: &str, row: &[bool], weight: Rational) -> Result<Instance> {
        if row.len() != self.m() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                actual: row.len(),
            });
        }
        let mut agents = self.agents.clone();
        agents.push(name.to_string());
        let mut weights = self.weights.clone();
        weights.push(weight);
        let mut valuations = self.valuations.clone();
        valuations.push(row.to_vec());
        Instance::new(agents, self.goods.clone(), weights, valuations)
    }

    /// Copy with the given agents' rows replaced.
    pub fn with_rows(&self, rows: &[(usize, Vec<bool>)]) -> Result<Instance> {
        let mut valuations = self.valuations.clone();
        for (agent, row) in rows {
            if *agent >= self.n() {
                return Err(Error::AgentOutOfRange {
                    agent: *agent,
                    n: self.n(),
                });
            }
            if row.len() != self.m() {
                return Err(Error::LengthMismatch {
                    expected: self.m(),
                    actual: row.len(),
                });
            }
            valuations[*agent] = row.clone();
        }
        Instance::new(
            self.agents.clone(),
            self.goods.clone(),
            self.weights.clone(),
            valuations,
        )
    }

    /// Sub-instance on the listed agents and goods, in the given order.
    pub fn sub_instance(&self, agents: &[usize], goods: &[usize]) -> Result<Instance> {
        for &a in agents {
            if a >= self.n() {
                return Err(Error::AgentOutOfRange {
                    agent: a,
                    n: self.n(),
                });
            }
        }
        for &g in goods {
            if g >= self.m() {
                return Err(Error::GoodOutOfRange {
                    good: g,
                    m: self.m(),
                });
            }
        }
        Instance::new(
            agents.iter().map(|&a| self.agents[a].clone()).collect(),
            goods.iter().map(|&g| self.goods[g].clone()).collect(),
            agents.iter().map(|&a| self.weights[a].clone()).collect(),
            agents
                .iter()
                .map(|&a| goods.iter().map(|&g| self.valuations[a][g]).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let raw = RawInstance {
            agents: self
                .agents
                .iter()
                .zip(&self.weights)
                .map(|(name, w)| RawAgent {
                    name: name.clone(),
                    weight: RawWeight::Text(format_rational(w)),
                })
                .collect(),
            goods: self.goods.clone(),
            valuations: self
                .valuations
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&v| serde_json::Value::from(v as u8))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("instance serialization cannot fail")
    }
}

pub(crate) fn agent_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

pub(crate) fn good_names(m: usize) -> Vec<String> {
    (1..=m).map(|g| format!("g{g}")).collect()
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    agents: Vec<RawAgent>,
    goods: Vec<String>,
    valuations: Vec<Vec<serde_json::Value>>,
}

#[derive(Serialize, Deserialize)]
struct RawAgent {
    name: String,
    weight: RawWeight,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Text(String),
    Integer(i64),
}

/// Reads the instance JSON format:
/// `{"agents":[{"name":"a1","weight":"3/2"},...],"goods":[...],"valuations":[[1,0,...],...]}`.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text)?;
    let mut weights = Vec::with_capacity(raw.agents.len());
    for (i, agent) in raw.agents.iter().enumerate() {
        let text = match &agent.weight {
            RawWeight::Text(t) => t.clone(),
            RawWeight::Integer(k) => k.to_string(),
        };
        let w = parse_rational(&text).ok_or_else(|| Error::InvalidWeight {
            agent: i,
            name: agent.name.clone(),
            text: text.clone(),
        })?;
        if !w.is_positive() {
            return Err(Error::NonPositiveWeight {
                agent: i,
                name: agent.name.clone(),
                text,
            });
        }
        weights.push(w);
    }
    if raw.valuations.len() != raw.agents.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} agents but {} valuation rows",
            raw.agents.len(),
            raw.valuations.len()
        )));
    }
    let mut valuations = Vec::with_capacity(raw.valuations.len());
    for (i, row) in raw.valuations.iter().enumerate() {
        if row.len() != raw.goods.len() {
            return Err(Error::DimensionMismatch(format!(
                "valuation row {i} has {} entries, expected {}",
                row.len(),
                raw.goods.len()
            )));
        }
        let mut out = Vec::with_capacity(row.len());
        for (g, v) in row.iter().enumerate() {
            match v.as_u64() {
                Some(0) => out.push(false),
                Some(1) => out.push(true),
                _ => {
                    return Err(Error::NonBinaryValuation {
                        agent: i,
                        good: g,
                        value: v.to_string(),
                    })
                }
            }
        }
        valuations.push(out);
    }
    Instance::new(
        raw.agents.into_iter().map(|a| a.name).collect(),
        raw.goods,
        weights,
        valuations,
    )
}

/// Disjoint bundles, one per agent, plus an explicit pool of unallocated
/// goods. Goods in neither are simply not part of the allocation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    pub(crate) bundles: Vec<BTreeSet<usize>>,
    pub(crate) unallocated: BTreeSet<usize>,
}

impl Allocation {
    pub fn empty(n: usize) -> Self {
        Allocation {
            bundles: vec![BTreeSet::new(); n],
            unallocated: BTreeSet::new(),
        }
    }

    pub fn from_bundles(
        bundles: Vec<BTreeSet<usize>>,
        unallocated: BTreeSet<usize>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &g in bundles.iter().flatten().chain(&unallocated) {
            if !seen.insert(g) {
                return Err(Error::GoodAssignedTwice { good: g });
            }
        }
        Ok(Allocation {
            bundles,
            unallocated,
        })
    }

    /// Convenience constructor from plain index lists.
    pub fn from_lists(bundles: &[&[usize]], unallocated: &[usize]) -> Result<Self> {
        Allocation::from_bundles(
            bundles
                .iter()
                .map(|b| b.iter().copied().collect())
                .collect(),
            unallocated.iter().copied().collect(),
        )
    }

    /// `owner[g] = Some(i)` puts good `g` in agent `i`'s bundle, `None`
    /// puts it in the pool.
    pub fn from_owners(n: usize, owner: &[Option<usize>]) -> Self {
        let mut alloc = Allocation::empty(n);
        for (g, o) in owner.iter().enumerate() {
            match o {
                Some(i) => alloc.bundles[*i].insert(g),
                None => alloc.unallocated.insert(g),
            };
        }
        alloc
    }

    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundles(&self) -> &[BTreeSet<usize>] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> &BTreeSet<usize> {
        &self.bundles[agent]
    }

    pub fn unallocated(&self) -> &BTreeSet<usize> {
        &self.unallocated
    }

    pub fn owner_of(&self, good: usize) -> Option<usize> {
        self.bundles.iter().position(|b| b.contains(&good))
    }

    pub fn contains(&self, good: usize) -> bool {
        self.unallocated.contains(&good) || self.bundles.iter().any(|b| b.contains(&good))
    }

    /// Checks that the allocation has `inst.n()` bundles and only refers to
    /// goods of `inst`.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.bundles.len() != inst.n() {
            return Err(Error::LengthMismatch {
                expected: inst.n(),
                actual: self.bundles.len(),
            });
        }
        for &g in self.bundles.iter().flatten().chain(&self.unallocated) {
            if g >= inst.m() {
                return Err(Error::GoodOutOfRange {
                    good: g,
                    m: inst.m(),
                });
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self, inst: &Instance) -> serde_json::Value {
        let names = |set: &BTreeSet<usize>| -> Vec<String> {
            set.iter().map(|&g| inst.good_names()[g].clone()).collect()
        };
        serde_json::json!({
            "bundles": self.bundles.iter().map(names).collect::<Vec<_>>(),
            "unallocated": names(&self.unallocated),
        })
    }

    pub fn to_json(&self, inst: &Instance) -> String {
        self.to_json_value(inst).to_string()
    }

    /// Reads `{"bundles":[["g1","g2"],...],"unallocated":["g9"]}` against
    /// the goods of `inst`. Unknown keys are ignored.
    pub fn from_json(text: &str, inst: &Instance) -> Result<Self> {
        #[derive(Deserialize)]
        struct RawAllocation {
            bundles: Vec<Vec<String>>,
            #[serde(default)]
            unallocated: Vec<String>,
        }
        let raw: RawAllocation = serde_json::from_str(text)?;
        if raw.bundles.len() != inst.n() {
            return Err(Error::LengthMismatch {
                expected: inst.n(),
                actual: raw.bundles.len(),
            });
        }
        let index: HashMap<&str, usize> = inst
            .good_names()
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        let lookup = |names: &[String]| -> Result<BTreeSet<usize>> {
            let mut set = BTreeSet::new();
            for name in names {
                let g = *index
                    .get(name.as_str())
                    .ok_or_else(|| Error::UnknownGood(name.clone()))?;
                if !set.insert(g) {
                    return Err(Error::GoodAssignedTwice { good: g });
                }
            }
            Ok(set)
        };
        let bundles = raw
            .bundles
            .iter()
            .map(|b| lookup(b))
            .collect::<Result<Vec<_>>>()?;
        let unallocated = lookup(&raw.unallocated)?;
        Allocation::from_bundles(bundles, unallocated)
    }
}

/// Integer utility per agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UtilityVector(pub Vec<u64>);

impl UtilityVector {
    pub fn zeros(n: usize) -> Self {
        UtilityVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Number of agents with positive utility.
    pub fn positive_count(&self) -> usize {
        self.0.iter().filter(|&&u| u > 0).count()
    }
}

impl From<Vec<u64>> for UtilityVector {
    fn from(v: Vec<u64>) -> Self {
        UtilityVector(v)
    }
}

impl fmt::Display for UtilityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, u) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, ")")
    }
}

/// `utilities[i]` is the number of goods in agent `i`'s bundle that she values.
pub fn utility(inst: &Instance, alloc: &Allocation) -> Result<UtilityVector> {
    alloc.validate(inst)?;
    Ok(UtilityVector(
        alloc
            .bundles
            .iter()
            .enumerate()
            .map(|(i, bundle)| bundle.iter().filter(|&&g| inst.values(i, g)).count() as u64)
            .collect(),
    ))
}

/// Every valued good is in some bundle and every bundled good is valued by
/// someone.
pub fn is_minimally_complete(inst: &Instance, alloc: &Allocation) -> bool {
    if alloc.validate(inst).is_err() {
        return false;
    }
    (0..inst.m()).all(|g| {
        let bundled = alloc.owner_of(g).is_some();
        bundled == inst.is_valued(g)
    })
}

/// Keeps the bundles of `agents` (in their original order); every other
/// good the allocation mentions moves to the pool.
pub fn restrict(alloc: &Allocation, agents: &[usize]) -> Result<Allocation> {
    let n = alloc.n();
    let keep: BTreeSet<usize> = agents.iter().copied().collect();
    if let Some(&bad) = keep.iter().find(|&&a| a >= n) {
        return Err(Error::AgentOutOfRange { agent: bad, n });
    }
    let mut unallocated = alloc.unallocated.clone();
    let mut bundles = Vec::with_capacity(keep.len());
    for (i, bundle) in alloc.bundles.iter().enumerate() {
        if keep.contains(&i) {
            bundles.push(bundle.clone());
        } else {
            unallocated.extend(bundle.iter().copied());
        }
    }
    Ok(Allocation {
        bundles,
        unallocated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coalition_text() -> &'static str {
        r#"{"agents":[{"name":"1","weight":"1"},{"name":"2","weight":"1"},{"name":"3","weight":"1"}],
            "goods":["g1","g2","g3","g4"],
            "valuations":[[1,1,0,0],[0,1,1,0],[0,0,1,1]]}"#
    }

    #[test]
    fn parses_three_agent_four_good_instance() {
        let inst = parse_instance(coalition_text()).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.m(), 4);
        assert!(inst.values(1, 2));
        assert!(!inst.values(2, 1));
    }

    #[test]
    fn parses_fraction_weights() {
        let text = r#"{"agents":[{"name":"x","weight":"3/2"},{"name":"y","weight":"6/4"},{"name":"z","weight":2}],
            "goods":[],"valuations":[[],[],[]]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.m(), 0);
        assert_eq!(inst.weight(0), &parse_rational("3/2").unwrap());
        assert_eq!(inst.weight(1), inst.weight(0));
        assert_eq!(format_rational(inst.weight(2)), "2");
    }

    #[test]
    fn rejects_bad_inputs() {
        let neg = r#"{"agents":[{"name":"x","weight":"-1"}],"goods":["g"],"valuations":[[1]]}"#;
        assert!(matches!(
            parse_instance(neg),
            Err(Error::NonPositiveWeight { agent: 0, .. })
        ));
        let zero = r#"{"agents":[{"name":"x","weight":"0/3"}],"goods":["g"],"valuations":[[1]]}"#;
        assert!(matches!(
            parse_instance(zero),
            Err(Error::NonPositiveWeight { .. })
        ));
        let div0 = r#"{"agents":[{"name":"x","weight":"1/0"}],"goods":["g"],"valuations":[[1]]}"#;
        assert!(matches!(
            parse_instance(div0),
            Err(Error::InvalidWeight { .. })
        ));
        let junk = r#"{"agents":[{"name":"x","weight":"1.5"}],"goods":["g"],"valuations":[[1]]}"#;
        assert!(matches!(
            parse_instance(junk),
            Err(Error::InvalidWeight { .. })
        ));
        let two =
            r#"{"agents":[{"name":"x","weight":"1"}],"goods":["g","h"],"valuations":[[1,2]]}"#;
        match parse_instance(two) {
            Err(Error::NonBinaryValuation { agent, good, value }) => {
                assert_eq!((agent, good, value.as_str()), (0, 1, "2"))
            }
            other => panic!("unexpected {other:?}"),
        }
        let short =
            r#"{"agents":[{"name":"x","weight":"1"}],"goods":["g","h"],"valuations":[[1]]}"#;
        assert!(matches!(
            parse_instance(short),
            Err(Error::DimensionMismatch(_))
        ));
        let rows = r#"{"agents":[{"name":"x","weight":"1"}],"goods":["g"],"valuations":[[1],[0]]}"#;
        assert!(matches!(
            parse_instance(rows),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(parse_instance("{"), Err(Error::Json(_))));
        let none = r#"{"agents":[],"goods":[],"valuations":[]}"#;
        assert!(matches!(parse_instance(none), Err(Error::NoAgents)));
        let dup =
            r#"{"agents":[{"name":"x","weight":"1"}],"goods":["g","g"],"valuations":[[1,1]]}"#;
        assert!(matches!(parse_instance(dup), Err(Error::DuplicateGood(_))));
    }

    #[test]
    fn utility_counts_valued_goods() {
        let inst = parse_instance(coalition_text()).unwrap();
        let alloc = Allocation::from_lists(&[&[0, 1], &[2], &[3]], &[]).unwrap();
        assert_eq!(utility(&inst, &alloc).unwrap().0, vec![2, 1, 1]);
        assert_eq!(
            utility(&inst, &Allocation::empty(3)).unwrap(),
            UtilityVector::zeros(3)
        );
        let bad = Allocation::from_lists(&[&[7], &[], &[]], &[]).unwrap();
        assert!(matches!(
            utility(&inst, &bad),
            Err(Error::GoodOutOfRange { good: 7, .. })
        ));
    }

    #[test]
    fn minimal_completeness() {
        let inst = parse_instance(coalition_text()).unwrap();
        let alloc = Allocation::from_lists(&[&[0, 1], &[2], &[3]], &[]).unwrap();
        assert!(is_minimally_complete(&inst, &alloc));
        let missing = Allocation::from_lists(&[&[0, 1], &[2], &[]], &[3]).unwrap();
        assert!(!is_minimally_complete(&inst, &missing));

        let with_dead = Instance::unweighted(&[vec![1, 0], vec![1, 0]]).unwrap();
        let bundled = Allocation::from_lists(&[&[0, 1], &[]], &[]).unwrap();
        assert!(!is_minimally_complete(&with_dead, &bundled));
        let pooled = Allocation::from_lists(&[&[0], &[]], &[1]).unwrap();
        assert!(is_minimally_complete(&with_dead, &pooled));
    }

    #[test]
    fn restriction() {
        let alloc = Allocation::from_lists(&[&[0, 1], &[2], &[3]], &[]).unwrap();
        let sub = restrict(&alloc, &[1, 2]).unwrap();
        assert_eq!(sub, Allocation::from_lists(&[&[2], &[3]], &[0, 1]).unwrap());
        assert_eq!(restrict(&alloc, &[0, 1, 2]).unwrap(), alloc);
        let none = restrict(&alloc, &[]).unwrap();
        assert_eq!(none.n(), 0);
        assert_eq!(none.unallocated().len(), 4);
        assert!(matches!(
            restrict(&alloc, &[3]),
            Err(Error::AgentOutOfRange { agent: 3, n: 3 })
        ));
    }

    #[test]
    fn allocation_json_round_trip() {
        let inst = parse_instance(coalition_text()).unwrap();
        let alloc = Allocation::from_lists(&[&[0, 1], &[], &[3]], &[2]).unwrap();
        let text = alloc.to_json(&inst);
        assert_eq!(
            text,
            r#"{"bundles":[["g1","g2"],[],["g4"]],"unallocated":["g3"]}"#
        );
        assert_eq!(Allocation::from_json(&text, &inst).unwrap(), alloc);
        let twice = r#"{"bundles":[["g1"],["g1"],[]]}"#;
        assert!(matches!(
            Allocation::from_json(twice, &inst),
            Err(Error::GoodAssignedTwice { good: 0 })
        ));
        let unknown = r#"{"bundles":[["zz"],[],[]]}"#;
        assert!(matches!(
            Allocation::from_json(unknown, &inst),
            Err(Error::UnknownGood(_))
        ));
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = Instance::from_matrix(
            vec![parse_rational("3/2").unwrap(), parse_rational("1").unwrap()],
            &[vec![1, 0, 1], vec![0, 0, 1]],
        )
        .unwrap();
        let text = inst.to_json();
        assert_eq!(
            text,
            r#"{"agents":[{"name":"a1","weight":"3/2"},{"name":"a2","weight":"1"}],"goods":["g1","g2","g3"],"valuations":[[1,0,1],[0,0,1]]}"#
        );
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn instance_extensions() {
        let inst = Instance::unweighted(&[vec![1, 0], vec![0, 1]]).unwrap();
        let more = inst.with_good("g3", &[true, false]).unwrap();
        assert_eq!(more.m(), 3);
        assert!(more.values(0, 2));
        assert!(inst.with_good("g3", &[true]).is_err());
        let bigger = inst
            .with_agent("a3", &[true, true], Rational::from_integer(2.into()))
            .unwrap();
        assert_eq!(bigger.n(), 3);
        let sub = bigger.sub_instance(&[2, 0], &[1]).unwrap();
        assert_eq!(sub.agent_names(), &["a3".to_string(), "a1".to_string()]);
        assert_eq!(sub.valuations(), &[vec![true], vec![false]]);
    }
}
