//! Attack-technique catalog: techniques with machine-matchable selector
//! rules, countermeasures with shall-statement action phrases, and
//! technique-to-countermeasure mappings. Ships a built-in catalog covering
//! the SPARTA techniques and countermeasures used by the two mission models.

use crate::model::{
    Component, ComponentKind, DataFlow, LinkKind, PayloadClass, SystemModel, TrustRelationship,
};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Which model element category a selector applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelectorTarget {
    Flow,
    Component,
    TrustRelationship,
}

impl fmt::Display for SelectorTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectorTarget::Flow => "Flow",
            SelectorTarget::Component => "Component",
            SelectorTarget::TrustRelationship => "TrustRelationship",
        })
    }
}

/// Declarative applicability rule for a technique. Absent constraints are
/// vacuously satisfied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selector {
    pub target: SelectorTarget,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link_kinds: Option<BTreeSet<LinkKind>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload_classes: Option<BTreeSet<PayloadClass>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_kinds: Option<BTreeSet<ComponentKind>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crosses_vehicle_boundary: Option<bool>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Technique {
    pub id: String,
    pub name: String,
    pub description: String,
    pub selectors: Vec<Selector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Countermeasure {
    pub id: String,
    pub name: String,
    pub description: String,
    pub action_phrase: String,
    pub rationale_clauses: Vec<String>,
}

/// Loaded catalog. Ordering of techniques, countermeasures and mappings is
/// preserved from the source document and drives downstream numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub techniques: Vec<Technique>,
    pub countermeasures: Vec<Countermeasure>,
    pub mappings: IndexMap<String, Vec<String>>,
}

impl Catalog {
    pub fn technique(&self, id: &str) -> Option<&Technique> {
        self.techniques.iter().find(|t| t.id == id)
    }

    pub fn countermeasure(&self, id: &str) -> Option<&Countermeasure> {
        self.countermeasures.iter().find(|c| c.id == id)
    }

    /// Countermeasure ids mapped to a technique, in mapping order.
    pub fn mapped_countermeasures(&self, technique_id: &str) -> &[String] {
        self.mappings
            .get(technique_id)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Position of a countermeasure in catalog declaration order.
    pub fn countermeasure_rank(&self, id: &str) -> usize {
        self.countermeasures
            .iter()
            .position(|c| c.id == id)
            .unwrap_or(usize::MAX)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("id `{id}` does not match the {what} pattern")]
    PatternViolation { id: String, what: &'static str },
    #[error("mapping for `{technique}` references unknown countermeasure `{countermeasure}`")]
    DanglingMapping {
        technique: String,
        countermeasure: String,
    },
    #[error("mapping references unknown technique `{0}`")]
    DanglingMappingKey(String),
    #[error("technique `{0}` has no mapped countermeasure")]
    MissingMapping(String),
    #[error("technique `{0}` declares no selectors")]
    EmptySelectors(String),
    #[error("technique `{technique}` selector {index}: {message}")]
    InvalidSelector {
        technique: String,
        index: usize,
        message: String,
    },
    #[error("duplicate catalog id `{0}`")]
    DuplicateId(String),
}

fn is_technique_id(id: &str) -> bool {
    // ^[A-Z]{2}-\d{4}$
    let bytes = id.as_bytes();
    bytes.len() == 7
        && bytes[0].is_ascii_uppercase()
        && bytes[1].is_ascii_uppercase()
        && bytes[2] == b'-'
        && bytes[3..].iter().all(|b| b.is_ascii_digit())
}

fn is_countermeasure_id(id: &str) -> bool {
    // ^CM\d{4}$
    let bytes = id.as_bytes();
    bytes.len() == 6 && id.starts_with("CM") && bytes[2..].iter().all(|b| b.is_ascii_digit())
}

fn check_catalog(catalog: &Catalog) -> Result<(), CatalogError> {
    let mut seen = BTreeSet::new();
    for technique in &catalog.techniques {
        if !is_technique_id(&technique.id) {
            return Err(CatalogError::PatternViolation {
                id: technique.id.clone(),
                what: "technique id",
            });
        }
        if !seen.insert(technique.id.clone()) {
            return Err(CatalogError::DuplicateId(technique.id.clone()));
        }
        if technique.selectors.is_empty() {
            return Err(CatalogError::EmptySelectors(technique.id.clone()));
        }
        for (index, selector) in technique.selectors.iter().enumerate() {
            check_selector(&technique.id, index, selector)?;
        }
    }
    let mut seen = BTreeSet::new();
    for cm in &catalog.countermeasures {
        if !is_countermeasure_id(&cm.id) {
            return Err(CatalogError::PatternViolation {
                id: cm.id.clone(),
                what: "countermeasure id",
            });
        }
        if !seen.insert(cm.id.clone()) {
            return Err(CatalogError::DuplicateId(cm.id.clone()));
        }
        if cm.action_phrase.is_empty() {
            return Err(CatalogError::InvalidSelector {
                technique: cm.id.clone(),
                index: 0,
                message: "countermeasure action phrase must be non-empty".into(),
            });
        }
    }
    for (technique_id, cm_ids) in &catalog.mappings {
        if catalog.technique(technique_id).is_none() {
            return Err(CatalogError::DanglingMappingKey(technique_id.clone()));
        }
        for cm_id in cm_ids {
            if catalog.countermeasure(cm_id).is_none() {
                return Err(CatalogError::DanglingMapping {
                    technique: technique_id.clone(),
                    countermeasure: cm_id.clone(),
                });
            }
        }
    }
    // Closure: every technique resolves to at least one countermeasure.
    for technique in &catalog.techniques {
        if catalog.mapped_countermeasures(&technique.id).is_empty() {
            return Err(CatalogError::MissingMapping(technique.id.clone()));
        }
    }
    Ok(())
}

fn check_selector(technique: &str, index: usize, selector: &Selector) -> Result<(), CatalogError> {
    let invalid = |message: String| CatalogError::InvalidSelector {
        technique: technique.to_string(),
        index,
        message,
    };
    let flow_constraints = selector.link_kinds.is_some()
        || selector.payload_classes.is_some()
        || selector.crosses_vehicle_boundary.is_some();
    match selector.target {
        SelectorTarget::Flow => {
            if selector.component_kinds.is_some() {
                return Err(invalid(
                    "component_kinds is not valid on a Flow selector".into(),
                ));
            }
            if !flow_constraints {
                return Err(invalid(
                    "Flow selector needs at least one constraint".into(),
                ));
            }
        }
        SelectorTarget::Component => {
            if flow_constraints {
                return Err(invalid(
                    "flow constraints are not valid on a Component selector".into(),
                ));
            }
            if selector.component_kinds.is_none() {
                return Err(invalid("Component selector needs component_kinds".into()));
            }
        }
        // An unconstrained TrustRelationship selector matches every declared
        // trust relationship.
        SelectorTarget::TrustRelationship => {
            if flow_constraints || selector.component_kinds.is_some() {
                return Err(invalid(
                    "TrustRelationship selectors take no constraint fields".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Load a catalog document, validating ids, selectors and mapping closure.
pub fn load_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let catalog: Catalog = serde_json::from_str(text).map_err(|e| CatalogError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    check_catalog(&catalog)?;
    Ok(catalog)
}

/// Canonical JSON serialization; `load_catalog` of the output reproduces the
/// catalog.
pub fn serialize_catalog(catalog: &Catalog) -> String {
    let mut text =
        serde_json::to_string_pretty(catalog).expect("catalog serialization cannot fail");
    text.push('\n');
    text
}

/// A candidate subject for selector matching.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Flow(&'a DataFlow),
    Component(&'a Component),
    TrustRelationship(&'a TrustRelationship),
}

impl<'a> Subject<'a> {
    pub fn id(&self) -> &'a str {
        match self {
            Subject::Flow(f) => &f.id,
            Subject::Component(c) => &c.id,
            Subject::TrustRelationship(t) => &t.id,
        }
    }

    pub fn name(&self) -> &'a str {
        match self {
            Subject::Flow(f) => &f.name,
            Subject::Component(c) => &c.name,
            // Trust relationships have no display name; the id labels them.
            Subject::TrustRelationship(t) => &t.id,
        }
    }

    pub fn target(&self) -> SelectorTarget {
        match self {
            Subject::Flow(_) => SelectorTarget::Flow,
            Subject::Component(_) => SelectorTarget::Component,
            Subject::TrustRelationship(_) => SelectorTarget::TrustRelationship,
        }
    }
}

/// Pure predicate: does `selector` apply to `subject` within `model`?
pub fn matches(selector: &Selector, model: &SystemModel, subject: Subject<'_>) -> bool {
    if selector.target != subject.target() {
        return false;
    }
    match subject {
        Subject::Flow(flow) => {
            if let Some(kinds) = &selector.link_kinds {
                if !kinds.contains(&flow.link) {
                    return false;
                }
            }
            if let Some(payloads) = &selector.payload_classes {
                if !payloads.contains(&flow.payload) {
                    return false;
                }
            }
            if let Some(expected) = selector.crosses_vehicle_boundary {
                if model.crosses_vehicle_boundary(flow) != expected {
                    return false;
                }
            }
            true
        }
        Subject::Component(component) => match &selector.component_kinds {
            Some(kinds) => kinds.contains(&component.kind),
            None => true,
        },
        Subject::TrustRelationship(_) => true,
    }
}

/// The shipped catalog: the SPARTA techniques and countermeasures exercised
/// by the two mission models, with editorial technique-to-countermeasure
/// mappings kept in data so users can override them.
pub fn builtin_catalog() -> Catalog {
    let techniques = vec![
        Technique {
            id: "IA-0009".into(),
            name: "Trusted Relationship".into(),
            description: "Adversary leverages an established trust relationship between \
                          system elements to gain access or inject traffic."
                .into(),
            selectors: vec![
                Selector {
                    target: SelectorTarget::Flow,
                    link_kinds: None,
                    payload_classes: None,
                    component_kinds: None,
                    crosses_vehicle_boundary: Some(true),
                    description: "data flow {subject} crosses a vehicle boundary and rides on \
                                  the trust between its endpoints"
                        .into(),
                },
                Selector {
                    target: SelectorTarget::TrustRelationship,
                    link_kinds: None,
                    payload_classes: None,
                    component_kinds: None,
                    crosses_vehicle_boundary: None,
                    description: "declared trust relationship {subject} gives an adversary \
                                  leverage over every member"
                        .into(),
                },
            ],
        },
        Technique {
            id: "IA-0006".into(),
            name: "Compromise Hosted Payload".into(),
            description: "Adversary compromises the hosted imaging payload chain to distort \
                          products or simulate failures."
                .into(),
            selectors: vec![
                Selector {
                    target: SelectorTarget::Component,
                    link_kinds: None,
                    payload_classes: None,
                    component_kinds: Some(
                        [
                            ComponentKind::Camera,
                            ComponentKind::Storage,
                            ComponentKind::ImageProcessing,
                        ]
                        .into_iter()
                        .collect(),
                    ),
                    crosses_vehicle_boundary: None,
                    description: "hosted payload component {subject} handles mission imagery"
                        .into(),
                },
                Selector {
                    target: SelectorTarget::Flow,
                    link_kinds: None,
                    payload_classes: Some([PayloadClass::HousekeepingData].into_iter().collect()),
                    component_kinds: None,
                    crosses_vehicle_boundary: None,
                    description: "housekeeping telemetry on {subject} can be manipulated to \
                                  simulate operational failures"
                        .into(),
                },
            ],
        },
        Technique {
            id: "DE-0002".into(),
            name: "Prevent Downlink".into(),
            description: "Adversary denies space-to-ground transmission, interrupting data \
                          delivery and real-time monitoring."
                .into(),
            selectors: vec![Selector {
                target: SelectorTarget::Flow,
                link_kinds: Some([LinkKind::Downlink].into_iter().collect()),
                payload_classes: None,
                component_kinds: None,
                crosses_vehicle_boundary: None,
                description: "downlink flow {subject} can be denied by disrupting the channel"
                    .into(),
            }],
        },
    ];

    let countermeasures = vec![
        Countermeasure {
            id: "CM0002".into(),
            name: "COMSEC".into(),
            description: "Secure communication protocols protecting external flows from \
                          interception and tampering."
                .into(),
            action_phrase: "enforce communications security on all external flows".into(),
            rationale_clauses: vec![
                "to protect the confidentiality and integrity of data in transit;".into(),
                "to reject traffic whose authenticity cannot be established.".into(),
            ],
        },
        Countermeasure {
            id: "CM0032".into(),
            name: "Onboard Intrusion Detection & Prevention".into(),
            description: "Real-time monitoring and response on the onboard computer to detect \
                          and stop hostile activity."
                .into(),
            action_phrase: "implement onboard intrusion detection mechanisms".into(),
            rationale_clauses: vec![
                "to monitor unauthorized and/or malicious access attempts;".into()
            ],
        },
        Countermeasure {
            id: "CM0038".into(),
            name: "Segmentation".into(),
            description: "Isolated compartments that limit the spread of an intrusion across \
                          blocks."
                .into(),
            action_phrase: "implement segregation".into(),
            rationale_clauses: vec![
                "to ensure that control algorithms are isolated from other system components \
                 to prevent cross-contamination of faults;"
                    .into(),
                "to provide multi-layered security for critical algorithms.".into(),
            ],
        },
        Countermeasure {
            id: "CM0039".into(),
            name: "Least Privilege".into(),
            description: "Access rights restricted to the minimum each process requires.".into(),
            action_phrase: "restrict process privileges to mission-essential functions".into(),
            rationale_clauses: vec![
                "to restrict access rights for processes to the minimum required for their \
                 functions."
                    .into(),
            ],
        },
        Countermeasure {
            id: "CM0042".into(),
            name: "Robust Fault Management".into(),
            description: "Fault detection, diagnosis and recovery keeping the system \
                          functional under attack."
                .into(),
            action_phrase: "feature robust fault management systems".into(),
            rationale_clauses: vec![
                "to detect, analyze, and promptly rectify propulsion system anomalies;".into(),
                "to support fallback operational modes that can be activated during fault \
                 conditions to maintain basic functionality."
                    .into(),
            ],
        },
        Countermeasure {
            id: "CM0070".into(),
            name: "Alternate Communications Paths".into(),
            description: "Redundant communication paths keeping data and command flows alive \
                          when the primary path fails."
                .into(),
            action_phrase: "establish and maintain alternate communication paths".into(),
            rationale_clauses: vec![
                "to ensure data transmission continuity in the case of primary link failure;"
                    .into(),
            ],
        },
    ];

    let mut mappings = IndexMap::new();
    mappings.insert(
        "IA-0009".to_string(),
        vec![
            "CM0002".into(),
            "CM0038".into(),
            "CM0039".into(),
            "CM0070".into(),
        ],
    );
    mappings.insert(
        "IA-0006".to_string(),
        vec!["CM0032".into(), "CM0038".into(), "CM0039".into()],
    );
    mappings.insert(
        "DE-0002".to_string(),
        vec!["CM0070".into(), "CM0042".into()],
    );

    Catalog {
        techniques,
        countermeasures,
        mappings,
    }
}
