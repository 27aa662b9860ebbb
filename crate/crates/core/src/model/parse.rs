//! Parser for the JSON model format.

use super::{
    Component, ComponentKind, DataFlow, LinkKind, Medium, ModelError, PayloadClass, SystemModel,
    TrustRelationship, Vehicle, VehicleRole,
};
use serde::Deserialize;
use std::collections::BTreeSet;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    name: String,
    #[serde(default)]
    vehicles: Vec<RawVehicle>,
    #[serde(default)]
    components: Vec<RawComponent>,
    #[serde(default)]
    flows: Vec<RawFlow>,
    #[serde(default)]
    trust: Vec<RawTrust>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVehicle {
    id: String,
    name: String,
    role: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    id: String,
    name: String,
    kind: String,
    vehicle: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlow {
    id: String,
    name: String,
    source: String,
    dest: String,
    link: String,
    payload: String,
    #[serde(default)]
    medium: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrust {
    id: String,
    members: Vec<String>,
    description: String,
}

fn syntax_error(err: &serde_json::Error) -> ModelError {
    ModelError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Decode the document into a model without resolving references. Enumeration
/// values are still checked; duplicate and dangling ids are left for
/// `validate` to report.
pub fn decode_model(text: &str) -> Result<SystemModel, ModelError> {
    let raw: RawModel = serde_json::from_str(text).map_err(|e| syntax_error(&e))?;

    let vehicles = raw
        .vehicles
        .into_iter()
        .map(|v| {
            let role = VehicleRole::from_str_exact(&v.role).ok_or(ModelError::UnknownKind {
                field: "vehicle role",
                value: v.role.clone(),
            })?;
            Ok(Vehicle {
                id: v.id,
                name: v.name,
                role,
            })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;

    let components = raw
        .components
        .into_iter()
        .map(|c| {
            let kind = ComponentKind::from_str_exact(&c.kind).ok_or(ModelError::UnknownKind {
                field: "component kind",
                value: c.kind.clone(),
            })?;
            Ok(Component {
                id: c.id,
                name: c.name,
                kind,
                vehicle: c.vehicle,
            })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;

    let flows = raw
        .flows
        .into_iter()
        .map(|f| {
            let link = LinkKind::from_str_exact(&f.link).ok_or(ModelError::UnknownKind {
                field: "link kind",
                value: f.link.clone(),
            })?;
            let payload =
                PayloadClass::from_str_exact(&f.payload).ok_or(ModelError::UnknownKind {
                    field: "payload class",
                    value: f.payload.clone(),
                })?;
            let medium = match f.medium {
                Some(m) => Medium::from_str_exact(&m).ok_or(ModelError::UnknownKind {
                    field: "medium",
                    value: m.clone(),
                })?,
                None => Medium::default_for(link),
            };
            Ok(DataFlow {
                id: f.id,
                name: f.name,
                source: f.source,
                dest: f.dest,
                link,
                payload,
                medium,
            })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;

    let trust = raw
        .trust
        .into_iter()
        .map(|t| {
            // Member sets are deduplicated, keeping first-occurrence order.
            let mut seen = BTreeSet::new();
            let members = t
                .members
                .into_iter()
                .filter(|m| seen.insert(m.clone()))
                .collect();
            TrustRelationship {
                id: t.id,
                members,
                description: t.description,
            }
        })
        .collect();

    Ok(SystemModel {
        name: raw.name,
        vehicles,
        components,
        flows,
        trust,
    })
}

/// Parse a model document, rejecting duplicate ids and unresolved references.
pub fn parse_model(text: &str) -> Result<SystemModel, ModelError> {
    let model = decode_model(text)?;

    for ids in [
        model
            .vehicles
            .iter()
            .map(|v| v.id.as_str())
            .collect::<Vec<_>>(),
        model.components.iter().map(|c| c.id.as_str()).collect(),
        model.flows.iter().map(|f| f.id.as_str()).collect(),
        model.trust.iter().map(|t| t.id.as_str()).collect(),
    ] {
        let mut seen = BTreeSet::new();
        for id in ids {
            if !seen.insert(id) {
                return Err(ModelError::DuplicateId(id.to_string()));
            }
        }
    }

    for component in &model.components {
        if model.vehicle(&component.vehicle).is_none() {
            return Err(ModelError::DanglingReference {
                referrer: component.id.clone(),
                kind: "vehicle",
                target: component.vehicle.clone(),
            });
        }
    }
    for flow in &model.flows {
        for endpoint in [&flow.source, &flow.dest] {
            if model.component(endpoint).is_none() {
                return Err(ModelError::DanglingReference {
                    referrer: flow.id.clone(),
                    kind: "component",
                    target: endpoint.clone(),
                });
            }
        }
    }
    for trust in &model.trust {
        for member in &trust.members {
            if model.component(member).is_none() {
                return Err(ModelError::DanglingReference {
                    referrer: trust.id.clone(),
                    kind: "component",
                    target: member.clone(),
                });
            }
        }
    }

    Ok(model)
}
