use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::io::{RawInstance, RawValues};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationMode {
    Identical,
    PerAgent,
}

/// Additive utility and cost functions, indexed by item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuations {
    Identical {
        utility: Vec<u64>,
        cost: Vec<u64>,
    },
    /// One vector per agent.
    PerAgent {
        utility: Vec<Vec<u64>>,
        cost: Vec<Vec<u64>>,
    },
}

impl Valuations {
    pub fn mode(&self) -> ValuationMode {
        match self {
            Valuations::Identical { .. } => ValuationMode::Identical,
            Valuations::PerAgent { .. } => ValuationMode::PerAgent,
        }
    }

    #[inline]
    pub fn utility(&self, agent: usize, item: usize) -> u64 {
        match self {
            Valuations::Identical { utility, .. } => utility[item],
            Valuations::PerAgent { utility, .. } => utility[agent][item],
        }
    }

    #[inline]
    pub fn cost(&self, agent: usize, item: usize) -> u64 {
        match self {
            Valuations::Identical { cost, .. } => cost[item],
            Valuations::PerAgent { cost, .. } => cost[agent][item],
        }
    }

    /// The equivalent per-agent profile with `k` copies.
    pub fn expand(&self, k: usize) -> Valuations {
        match self {
            Valuations::Identical { utility, cost } => Valuations::PerAgent {
                utility: vec![utility.clone(); k],
                cost: vec![cost.clone(); k],
            },
            other => other.clone(),
        }
    }
}

/// A validated BCFEA instance. Items are addressed by their index in
/// [`Instance::items`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    items: Vec<String>,
    index: HashMap<String, usize>,
    k: usize,
    graph: Graph,
    valuations: Valuations,
    profit_floor: u64,
    budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroAgents,
    DuplicateItem(String),
    UnknownEndpoint(String),
    SelfLoop(String),
    DuplicateEdge(String, String),
    NegativeValue { what: String, item: String, value: i64 },
    NegativeThreshold { name: &'static str, value: i64 },
    ArityMismatch { what: &'static str, expected: usize, found: usize },
    ShapeMismatch,
    MissingValue { what: &'static str, item: String },
    UnknownValueItem { what: &'static str, item: String },
    Overflow { what: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroAgents => write!(f, "k must be at least 1"),
            Violation::DuplicateItem(id) => write!(f, "duplicate item `{id}`"),
            Violation::UnknownEndpoint(id) => write!(f, "edge endpoint `{id}` is not an item"),
            Violation::SelfLoop(id) => write!(f, "self-loop on `{id}`"),
            Violation::DuplicateEdge(a, b) => write!(f, "duplicate edge `{a}`-`{b}`"),
            Violation::NegativeValue { what, item, value } => {
                write!(f, "negative {what} {value} for `{item}`")
            }
            Violation::NegativeThreshold { name, value } => write!(f, "{name} is negative ({value})"),
            Violation::ArityMismatch { what, expected, found } => {
                write!(f, "{what}: expected {expected} per-agent mappings, found {found}")
            }
            Violation::ShapeMismatch => {
                write!(f, "utilities and costs must both be identical or both per_agent")
            }
            Violation::MissingValue { what, item } => write!(f, "{what} missing for `{item}`"),
            Violation::UnknownValueItem { what, item } => {
                write!(f, "{what} given for unknown item `{item}`")
            }
            Violation::Overflow { what } => write!(f, "total {what} overflows 64 bits"),
        }
    }
}

/// Every invariant an instance document violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid instance:")?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

impl ValidationError {
    pub fn has(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(pred)
    }
}

/// Checks a parsed document and returns the instance, or every violated
/// invariant at once.
pub fn validate_instance(raw: &RawInstance) -> Result<Instance, ValidationError> {
    let mut violations = Vec::new();

    if raw.k < 1 {
        violations.push(Violation::ZeroAgents);
    }
    for (name, value) in [("P", raw.profit_floor), ("B", raw.budget)] {
        if value < 0 {
            violations.push(Violation::NegativeThreshold { name, value });
        }
    }

    let mut index = HashMap::with_capacity(raw.items.len());
    for (i, id) in raw.items.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            violations.push(Violation::DuplicateItem(id.clone()));
        }
    }
    // Keep the first occurrence of duplicated ids.
    for (i, id) in raw.items.iter().enumerate().rev() {
        index.insert(id.clone(), i);
    }

    let n = raw.items.len();
    let mut graph = Graph::empty(n);
    let mut seen = HashSet::new();
    for (a, b) in &raw.edges {
        let (ia, ib) = (index.get(a), index.get(b));
        for (id, idx) in [(a, ia), (b, ib)] {
            if idx.is_none() {
                violations.push(Violation::UnknownEndpoint(id.clone()));
            }
        }
        if a == b {
            violations.push(Violation::SelfLoop(a.clone()));
            continue;
        }
        if let (Some(&u), Some(&v)) = (ia, ib) {
            if !seen.insert((u.min(v), u.max(v))) {
                violations.push(Violation::DuplicateEdge(a.clone(), b.clone()));
            }
            graph.add_edge(u, v);
        }
    }

    let k = raw.k.max(1) as usize;
    let valuations = match (&raw.utilities, &raw.costs) {
        (RawValues::Identical(u), RawValues::Identical(c)) => Some(Valuations::Identical {
            utility: dense(u, "utility", &raw.items, &index, &mut violations),
            cost: dense(c, "cost", &raw.items, &index, &mut violations),
        }),
        (RawValues::PerAgent(u), RawValues::PerAgent(c)) => {
            for (what, maps) in [("utilities", u), ("costs", c)] {
                if maps.len() != k {
                    violations.push(Violation::ArityMismatch {
                        what,
                        expected: k,
                        found: maps.len(),
                    });
                }
            }
            Some(Valuations::PerAgent {
                utility: u
                    .iter()
                    .map(|m| dense(m, "utility", &raw.items, &index, &mut violations))
                    .collect(),
                cost: c
                    .iter()
                    .map(|m| dense(m, "cost", &raw.items, &index, &mut violations))
                    .collect(),
            })
        }
        _ => {
            violations.push(Violation::ShapeMismatch);
            None
        }
    };

    if let Some(val) = &valuations {
        let rows: Vec<(&'static str, &Vec<u64>)> = match val {
            Valuations::Identical { utility, cost } => vec![("utility", utility), ("cost", cost)],
            Valuations::PerAgent { utility, cost } => utility
                .iter()
                .map(|u| ("utility", u))
                .chain(cost.iter().map(|c| ("cost", c)))
                .collect(),
        };
        for (what, row) in rows {
            if checked_total(row).is_none() {
                violations.push(Violation::Overflow { what });
            }
        }
    }

    if !violations.is_empty() {
        return Err(ValidationError { violations });
    }
    Ok(Instance {
        items: raw.items.clone(),
        index,
        k,
        graph,
        valuations: valuations.expect("checked above"),
        profit_floor: raw.profit_floor as u64,
        budget: raw.budget as u64,
    })
}

fn dense(
    map: &BTreeMap<String, i64>,
    what: &'static str,
    items: &[String],
    index: &HashMap<String, usize>,
    violations: &mut Vec<Violation>,
) -> Vec<u64> {
    let mut out = vec![0u64; items.len()];
    for (id, &value) in map {
        let Some(&i) = index.get(id) else {
            violations.push(Violation::UnknownValueItem { what, item: id.clone() });
            continue;
        };
        if value < 0 {
            violations.push(Violation::NegativeValue {
                what: what.to_string(),
                item: id.clone(),
                value,
            });
        } else {
            out[i] = value as u64;
        }
    }
    for id in items {
        if !map.contains_key(id) {
            violations.push(Violation::MissingValue { what, item: id.clone() });
        }
    }
    out
}

pub(crate) fn checked_total(values: &[u64]) -> Option<u64> {
    values.iter().try_fold(0u64, |acc, &v| acc.checked_add(v))
}

impl Instance {
    /// Builds an instance from already-indexed parts. Item ids become
    /// `v1..vn`.
    pub fn from_parts(
        k: usize,
        graph: Graph,
        valuations: Valuations,
        profit_floor: u64,
        budget: u64,
    ) -> Result<Instance, ValidationError> {
        let ids = (1..=graph.n()).map(|i| format!("v{i}")).collect();
        Instance::from_parts_with_ids(ids, k, graph, valuations, profit_floor, budget)
    }

    pub fn from_parts_with_ids(
        items: Vec<String>,
        k: usize,
        graph: Graph,
        valuations: Valuations,
        profit_floor: u64,
        budget: u64,
    ) -> Result<Instance, ValidationError> {
        assert_eq!(items.len(), graph.n(), "one id per graph vertex");
        let to_map = |row: &[u64]| -> BTreeMap<String, i64> {
            items
                .iter()
                .zip(row)
                .map(|(id, &v)| (id.clone(), i64::try_from(v).unwrap_or(-1)))
                .collect()
        };
        let (utilities, costs) = match &valuations {
            Valuations::Identical { utility, cost } => (
                RawValues::Identical(to_map(utility)),
                RawValues::Identical(to_map(cost)),
            ),
            Valuations::PerAgent { utility, cost } => (
                RawValues::PerAgent(utility.iter().map(|r| to_map(r)).collect()),
                RawValues::PerAgent(cost.iter().map(|r| to_map(r)).collect()),
            ),
        };
        let raw = RawInstance {
            edges: graph
                .edges()
                .iter()
                .map(|&(u, v)| (items[u].clone(), items[v].clone()))
                .collect(),
            items,
            k: k as i64,
            utilities,
            costs,
            profit_floor: i64::try_from(profit_floor).unwrap_or(-1),
            budget: i64::try_from(budget).unwrap_or(-1),
        };
        validate_instance(&raw)
    }

    pub fn from_json(text: &str) -> Result<Instance, Box<dyn std::error::Error + Send + Sync>> {
        let raw = RawInstance::from_json(text)?;
        Ok(validate_instance(&raw)?)
    }

    pub fn to_raw(&self) -> RawInstance {
        let to_map = |row: &[u64]| -> BTreeMap<String, i64> {
            self.items.iter().zip(row).map(|(id, &v)| (id.clone(), v as i64)).collect()
        };
        let (utilities, costs) = match &self.valuations {
            Valuations::Identical { utility, cost } => (
                RawValues::Identical(to_map(utility)),
                RawValues::Identical(to_map(cost)),
            ),
            Valuations::PerAgent { utility, cost } => (
                RawValues::PerAgent(utility.iter().map(|r| to_map(r)).collect()),
                RawValues::PerAgent(cost.iter().map(|r| to_map(r)).collect()),
            ),
        };
        RawInstance {
            items: self.items.clone(),
            k: self.k as i64,
            edges: self
                .graph
                .edges()
                .iter()
                .map(|&(u, v)| (self.items[u].clone(), self.items[v].clone()))
                .collect(),
            utilities,
            costs,
            profit_floor: self.profit_floor as i64,
            budget: self.budget as i64,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn item_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.items.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn valuations(&self) -> &Valuations {
        &self.valuations
    }

    pub fn mode(&self) -> ValuationMode {
        self.valuations.mode()
    }

    pub fn is_identical(&self) -> bool {
        self.mode() == ValuationMode::Identical
    }

    #[inline]
    pub fn utility(&self, agent: usize, item: usize) -> u64 {
        self.valuations.utility(agent, item)
    }

    #[inline]
    pub fn cost(&self, agent: usize, item: usize) -> u64 {
        self.valuations.cost(agent, item)
    }

    /// The profit floor `P`.
    pub fn profit_floor(&self) -> u64 {
        self.profit_floor
    }

    /// The cost budget `B`.
    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Sum of agent `agent`'s utilities over `items`. Cannot overflow: totals
    /// were checked at validation.
    pub fn bundle_utility(&self, agent: usize, items: &[usize]) -> u64 {
        items.iter().map(|&v| self.utility(agent, v)).sum()
    }

    pub fn bundle_cost(&self, agent: usize, items: &[usize]) -> u64 {
        items.iter().map(|&v| self.cost(agent, v)).sum()
    }

    /// Same instance with per-agent valuations (k copies when identical).
    pub fn expanded(&self) -> Instance {
        Instance {
            valuations: self.valuations.expand(self.k),
            ..self.clone()
        }
    }

    pub fn with_thresholds(&self, profit_floor: u64, budget: u64) -> Instance {
        Instance {
            profit_floor,
            budget,
            ..self.clone()
        }
    }
}
