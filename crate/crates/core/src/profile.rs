use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// An entity as a set of attribute-value pairs with a stable identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityProfile {
    pub id: String,
    #[serde(rename = "attrs")]
    pub attributes: BTreeMap<String, Vec<String>>,
}

impl EntityProfile {
    pub fn new(id: impl Into<String>) -> Self {
        EntityProfile {
            id: id.into(),
            attributes: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: &str) -> Self {
        self.push(name, value);
        self
    }

    pub fn push(&mut self, name: &str, value: impl Into<String>) {
        self.attributes
            .entry(name.to_string())
            .or_default()
            .push(value.into());
    }

    pub fn values(&self, name: &str) -> &[String] {
        self.attributes.get(name).map_or(&[], Vec::as_slice)
    }

    pub fn has_attribute(&self, name: &str) -> bool {
        !self.values(name).is_empty()
    }

    /// Every value in attribute-name order.
    pub fn all_values(&self) -> impl Iterator<Item = &str> {
        self.attributes.values().flatten().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.all_values().next().is_none()
    }
}
