//! Scenario file schema (TOML), validation against the library invariants,
//! and resolution into core types.

use pooling_core::prob::{Event, StateSpace};
use pooling_core::rules::{Weight, WeightSet, WeightSetCollection};
use pooling_core::{Act64, Belief64, Profile64, Rule64, Tolerance64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// On-disk document. Field order and names are the file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioDoc {
    pub states: Vec<String>,
    pub experts: Vec<ExpertDoc>,
    pub rule: RuleDoc,
    #[serde(default)]
    pub acts: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    pub events: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub queries: Vec<QueryDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpertDoc {
    pub name: String,
    pub prior: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleDoc {
    Linear { weights: Vec<f64> },
    MultipleWeight { vertices: Vec<Vec<f64>> },
    DualSelf { collection: Vec<Vec<Vec<f64>>> },
    Dictatorship { expert: String },
    Geometric { exponents: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QueryDoc {
    Evaluate { act: String },
    Update { event: String },
    ConditionalCe { act: String, event: String },
    Check { axiom: String },
    Demo { id: String },
}

/// Validated scenario with everything resolved into core types.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub states: StateSpace,
    pub expert_names: Vec<String>,
    pub profile: Profile64,
    pub rule: Rule64,
    pub acts: BTreeMap<String, Act64>,
    pub events: BTreeMap<String, Event>,
    pub queries: Vec<QueryDoc>,
}

#[derive(Debug)]
pub enum ScenarioError {
    Parse(String),
    Validation(String),
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Parse(m) => write!(f, "parse error: {m}"),
            ScenarioError::Validation(m) => write!(f, "validation error: {m}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

fn invalid(msg: String) -> ScenarioError {
    ScenarioError::Validation(msg)
}

pub fn parse_scenario(text: &str, tol: &Tolerance64) -> Result<Scenario, ScenarioError> {
    let doc: ScenarioDoc =
        toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    resolve(&doc, tol)
}

pub fn serialize_scenario(doc: &ScenarioDoc) -> String {
    toml::to_string(doc).expect("scenario documents always serialize")
}

pub fn resolve(doc: &ScenarioDoc, tol: &Tolerance64) -> Result<Scenario, ScenarioError> {
    let states = StateSpace::new(doc.states.clone())
        .map_err(|e| invalid(format!("states: {e}")))?;
    let dim = states.size();

    if doc.experts.is_empty() {
        return Err(invalid("experts: at least one expert is required".into()));
    }
    let mut expert_names = Vec::new();
    let mut beliefs = Vec::new();
    for ex in &doc.experts {
        if expert_names.contains(&ex.name) {
            return Err(invalid(format!("experts: duplicate name `{}`", ex.name)));
        }
        if ex.prior.len() != dim {
            return Err(invalid(format!(
                "expert `{}`: prior has {} entries for {} states",
                ex.name,
                ex.prior.len(),
                dim
            )));
        }
        beliefs.push(
            Belief64::new(ex.prior.clone(), tol)
                .map_err(|e| invalid(format!("expert `{}`: {e}", ex.name)))?,
        );
        expert_names.push(ex.name.clone());
    }
    let profile = Profile64::new(beliefs).map_err(|e| invalid(format!("experts: {e}")))?;
    let n = profile.n_experts();

    let weight = |w: &[f64], what: &str| -> Result<Weight<f64>, ScenarioError> {
        if w.len() != n {
            return Err(invalid(format!(
                "{what}: {} weights for {n} experts",
                w.len()
            )));
        }
        Weight::new(w.to_vec(), tol).map_err(|e| invalid(format!("{what}: {e}")))
    };
    let rule = match &doc.rule {
        RuleDoc::Linear { weights } => Rule64::Linear(weight(weights, "rule.weights")?),
        RuleDoc::MultipleWeight { vertices } => {
            let verts = vertices
                .iter()
                .enumerate()
                .map(|(i, v)| weight(v, &format!("rule.vertices[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Rule64::MultipleWeight(
                WeightSet::new(verts, tol).map_err(|e| invalid(format!("rule.vertices: {e}")))?,
            )
        }
        RuleDoc::DualSelf { collection } => {
            let sets = collection
                .iter()
                .enumerate()
                .map(|(i, set)| {
                    let verts = set
                        .iter()
                        .enumerate()
                        .map(|(j, v)| weight(v, &format!("rule.collection[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    WeightSet::new(verts, tol)
                        .map_err(|e| invalid(format!("rule.collection[{i}]: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Rule64::DualSelf(
                WeightSetCollection::new(sets)
                    .map_err(|e| invalid(format!("rule.collection: {e}")))?,
            )
        }
        RuleDoc::Dictatorship { expert } => {
            let idx = expert_names
                .iter()
                .position(|name| name == expert)
                .ok_or_else(|| invalid(format!("rule.expert: unknown expert `{expert}`")))?;
            Rule64::Dictatorship(idx)
        }
        RuleDoc::Geometric { exponents } => {
            if exponents.len() != n {
                return Err(invalid(format!(
                    "rule.exponents: {} entries for {n} experts",
                    exponents.len()
                )));
            }
            if exponents.iter().any(|a| !a.is_finite() || *a < 0.0) {
                return Err(invalid("rule.exponents: entries must be >= 0".into()));
            }
            Rule64::GeometricSeu(exponents.clone())
        }
    };

    let mut acts = BTreeMap::new();
    for (name, utils) in &doc.acts {
        if utils.len() != dim {
            return Err(invalid(format!(
                "act `{name}`: {} payoffs for {dim} states",
                utils.len()
            )));
        }
        acts.insert(
            name.clone(),
            Act64::new(utils.clone()).map_err(|e| invalid(format!("act `{name}`: {e}")))?,
        );
    }

    let mut events = BTreeMap::new();
    for (name, members) in &doc.events {
        let idx = members
            .iter()
            .map(|label| {
                states
                    .index_of(label)
                    .ok_or_else(|| invalid(format!("event `{name}`: unknown state `{label}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        events.insert(
            name.clone(),
            Event::new(idx, dim).map_err(|e| invalid(format!("event `{name}`: {e}")))?,
        );
    }

    for (i, q) in doc.queries.iter().enumerate() {
        let missing = |what: &str, name: &str| {
            invalid(format!("query {i}: unknown {what} `{name}`"))
        };
        match q {
            QueryDoc::Evaluate { act } => {
                if !acts.contains_key(act) {
                    return Err(missing("act", act));
                }
            }
            QueryDoc::Update { event } => {
                if !events.contains_key(event) {
                    return Err(missing("event", event));
                }
            }
            QueryDoc::ConditionalCe { act, event } => {
                if !acts.contains_key(act) {
                    return Err(missing("act", act));
                }
                if !events.contains_key(event) {
                    return Err(missing("event", event));
                }
            }
            QueryDoc::Check { axiom } => {
                axiom
                    .parse::<pooling_core::axiom_lab::Axiom>()
                    .map_err(|e| invalid(format!("query {i}: {e}")))?;
            }
            QueryDoc::Demo { id } => {
                crate::demos::lookup(id)
                    .ok_or_else(|| invalid(format!("query {i}: unknown demo `{id}`")))?;
            }
        }
    }

    Ok(Scenario {
        states,
        expert_names,
        profile,
        rule,
        acts,
        events,
        queries: doc.queries.clone(),
    })
}
