use serde::{Deserialize, Serialize};

use super::bag::{BagMeasure, Scheme};
use super::edit::EditMeasure;
use super::ngram_graph::GraphMeasure;
use super::text::Unit;
use super::token::TokenMeasure;
use super::vector::VectorMeasure;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    SchemaBased(String),
    SchemaAgnostic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Model {
    RawString,
    Bag {
        unit: Unit,
        n: usize,
        scheme: Scheme,
    },
    Graph {
        unit: Unit,
        n: usize,
    },
    PrecomputedVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "name", rename_all = "kebab-case")]
pub enum Measure {
    Edit(EditMeasure),
    Token(TokenMeasure),
    Bag(BagMeasure),
    Graph(GraphMeasure),
    Vector(VectorMeasure),
}

fn by_name<T: serde::de::DeserializeOwned>(name: &str) -> Option<T> {
    serde_json::from_value(serde_json::Value::String(name.to_string())).ok()
}

impl Measure {
    /// Resolves a measure name in the context of a representation model,
    /// since names like `cosine` exist in several families.
    pub fn parse(name: &str, model: &Model) -> Result<Measure> {
        let key = name.trim().to_ascii_lowercase().replace('_', "-");
        let found = match model {
            Model::RawString => by_name(&key)
                .map(Measure::Edit)
                .or_else(|| by_name(&key).map(Measure::Token)),
            Model::Bag { .. } => by_name(&key).map(Measure::Bag),
            Model::Graph { .. } => by_name(&key).map(Measure::Graph),
            Model::PrecomputedVector => by_name(&key).map(Measure::Vector),
        };
        found.ok_or_else(|| {
            Error::InvalidArgument(format!("measure `{name}` is not available for {model:?}"))
        })
    }

    pub fn name(&self) -> String {
        let v = serde_json::to_value(self).expect("measure serializes");
        v["name"].as_str().unwrap_or_default().to_string()
    }

    /// Measures whose raw value depends on argument order.
    pub fn needs_symmetrizing(&self) -> bool {
        matches!(
            self,
            Measure::Token(TokenMeasure::MongeElkan)
                | Measure::Token(TokenMeasure::Overlap)
                | Measure::Graph(GraphMeasure::Containment)
        )
    }
}

/// Representation model, similarity measure and the attributes they read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimFnConfig {
    pub scope: Scope,
    pub model: Model,
    pub measure: Measure,
}

impl SimFnConfig {
    /// Short label such as `agnostic/bag(character,2,tf-idf)/cosine`.
    pub fn describe(&self) -> String {
        let scope = match &self.scope {
            Scope::SchemaBased(a) => format!("attr:{a}"),
            Scope::SchemaAgnostic => "agnostic".to_string(),
        };
        let unit = |u: &Unit| match u {
            Unit::Character => "character",
            Unit::Token => "token",
        };
        let model = match &self.model {
            Model::RawString => "raw".to_string(),
            Model::Bag { unit: u, n, scheme } => {
                let s = match scheme {
                    Scheme::Tf => "tf",
                    Scheme::TfIdf => "tf-idf",
                };
                format!("bag({},{n},{s})", unit(u))
            }
            Model::Graph { unit: u, n } => format!("graph({},{n})", unit(u)),
            Model::PrecomputedVector => "vector".to_string(),
        };
        format!("{scope}/{model}/{}", self.measure.name())
    }

    pub fn validate(&self) -> Result<()> {
        let compatible = matches!(
            (&self.model, &self.measure),
            (Model::RawString, Measure::Edit(_) | Measure::Token(_))
                | (Model::Bag { .. }, Measure::Bag(_))
                | (Model::Graph { .. }, Measure::Graph(_))
                | (Model::PrecomputedVector, Measure::Vector(_))
        );
        if !compatible {
            return Err(Error::Config(format!(
                "measure {} cannot be used with model {:?}",
                self.measure.name(),
                self.model
            )));
        }
        if let Model::Bag { n: 0, .. } | Model::Graph { n: 0, .. } = self.model {
            return Err(Error::Config("n-gram order must be at least 1".into()));
        }
        if let Scope::SchemaBased(attr) = &self.scope {
            if attr.is_empty() {
                return Err(Error::Config("empty attribute name".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve_by_model() {
        let bag = Model::Bag {
            unit: Unit::Character,
            n: 2,
            scheme: Scheme::TfIdf,
        };
        assert_eq!(
            Measure::parse("cosine", &bag).unwrap(),
            Measure::Bag(BagMeasure::Cosine)
        );
        assert_eq!(
            Measure::parse("Cosine", &Model::RawString).unwrap(),
            Measure::Token(TokenMeasure::Cosine)
        );
        assert_eq!(
            Measure::parse("monge_elkan", &Model::RawString).unwrap(),
            Measure::Token(TokenMeasure::MongeElkan)
        );
        assert_eq!(
            Measure::parse("q-grams", &Model::RawString).unwrap(),
            Measure::Edit(EditMeasure::QGrams)
        );
        assert!(Measure::parse("arcs", &Model::RawString).is_err());
        assert_eq!(
            Measure::Bag(BagMeasure::GeneralizedJaccard).name(),
            "generalized-jaccard"
        );
    }

    #[test]
    fn incompatible_pairs_rejected() {
        let cfg = SimFnConfig {
            scope: Scope::SchemaAgnostic,
            model: Model::Graph {
                unit: Unit::Character,
                n: 3,
            },
            measure: Measure::Bag(BagMeasure::Arcs),
        };
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        let cfg = SimFnConfig {
            scope: Scope::SchemaAgnostic,
            model: Model::Bag {
                unit: Unit::Token,
                n: 1,
                scheme: Scheme::Tf,
            },
            measure: Measure::Graph(GraphMeasure::Containment),
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let cfg = SimFnConfig {
            scope: Scope::SchemaBased("title".into()),
            model: Model::Bag {
                unit: Unit::Token,
                n: 1,
                scheme: Scheme::TfIdf,
            },
            measure: Measure::Bag(BagMeasure::Cosine),
        };
        assert_eq!(cfg.describe(), "attr:title/bag(token,1,tf-idf)/cosine");
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<SimFnConfig>(&text).unwrap(), cfg);
    }
}
