use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Instance document as it appears on disk, before validation.
///
/// Values are signed so that negative numbers survive parsing and can be
/// reported as violations instead of generic parse errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub items: Vec<String>,
    pub k: i64,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    pub utilities: RawValues,
    pub costs: RawValues,
    #[serde(rename = "P")]
    pub profit_floor: i64,
    #[serde(rename = "B")]
    pub budget: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RawValues {
    Identical(BTreeMap<String, i64>),
    PerAgent(Vec<BTreeMap<String, i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAllocation {
    pub bundles: Vec<Vec<String>>,
}

impl RawInstance {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }
}

impl RawAllocation {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("allocation serialization cannot fail")
    }
}
