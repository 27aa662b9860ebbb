//! Mission decomposition model: vehicles, components, data flows and trust
//! relationships, plus the parser/validator for the JSON model format and the
//! built-in models for the two Earth-observation scenarios.

mod builtin;
mod parse;

pub use builtin::{builtin_model, BUILTIN_MODELS};
pub use parse::{decode_model, parse_model};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Where a vehicle sits in the mission architecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VehicleRole {
    GroundSite,
    Satellite,
    Mothership,
}

impl VehicleRole {
    /// Satellites and motherships form the space segment.
    pub fn is_space_segment(&self) -> bool {
        matches!(self, VehicleRole::Satellite | VehicleRole::Mothership)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VehicleRole::GroundSite => "GroundSite",
            VehicleRole::Satellite => "Satellite",
            VehicleRole::Mothership => "Mothership",
        }
    }

    pub fn from_str_exact(s: &str) -> Option<Self> {
        match s {
            "GroundSite" => Some(VehicleRole::GroundSite),
            "Satellite" => Some(VehicleRole::Satellite),
            "Mothership" => Some(VehicleRole::Mothership),
            _ => None,
        }
    }
}

impl fmt::Display for VehicleRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vehicle {
    pub id: String,
    pub name: String,
    pub role: VehicleRole,
}

/// Closed set of functional block kinds used by the mission decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    GroundStation,
    PayloadControl,
    Camera,
    Storage,
    ImageProcessing,
    AdcsAlgorithm,
    PropulsionControl,
    SensorsActuators,
    OnboardComputer,
    OrbitDetermination,
    SectoringAltitudeCalculation,
    ManeuverCalculation,
}

impl ComponentKind {
    pub const ALL: [ComponentKind; 12] = [
        ComponentKind::GroundStation,
        ComponentKind::PayloadControl,
        ComponentKind::Camera,
        ComponentKind::Storage,
        ComponentKind::ImageProcessing,
        ComponentKind::AdcsAlgorithm,
        ComponentKind::PropulsionControl,
        ComponentKind::SensorsActuators,
        ComponentKind::OnboardComputer,
        ComponentKind::OrbitDetermination,
        ComponentKind::SectoringAltitudeCalculation,
        ComponentKind::ManeuverCalculation,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentKind::GroundStation => "GroundStation",
            ComponentKind::PayloadControl => "PayloadControl",
            ComponentKind::Camera => "Camera",
            ComponentKind::Storage => "Storage",
            ComponentKind::ImageProcessing => "ImageProcessing",
            ComponentKind::AdcsAlgorithm => "AdcsAlgorithm",
            ComponentKind::PropulsionControl => "PropulsionControl",
            ComponentKind::SensorsActuators => "SensorsActuators",
            ComponentKind::OnboardComputer => "OnboardComputer",
            ComponentKind::OrbitDetermination => "OrbitDetermination",
            ComponentKind::SectoringAltitudeCalculation => "SectoringAltitudeCalculation",
            ComponentKind::ManeuverCalculation => "ManeuverCalculation",
        }
    }

    pub fn from_str_exact(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub id: String,
    pub name: String,
    pub kind: ComponentKind,
    pub vehicle: String,
}

/// Which segment boundary a data flow traverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinkKind {
    Internal,
    Uplink,
    Downlink,
    Isl,
}

impl LinkKind {
    pub const ALL: [LinkKind; 4] = [
        LinkKind::Internal,
        LinkKind::Uplink,
        LinkKind::Downlink,
        LinkKind::Isl,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LinkKind::Internal => "Internal",
            LinkKind::Uplink => "Uplink",
            LinkKind::Downlink => "Downlink",
            LinkKind::Isl => "Isl",
        }
    }

    pub fn from_str_exact(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Physical transmission medium of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Medium {
    #[serde(rename = "RF")]
    Rf,
    #[serde(rename = "FSO")]
    Fso,
    Wired,
}

impl Medium {
    pub fn as_str(&self) -> &'static str {
        match self {
            Medium::Rf => "RF",
            Medium::Fso => "FSO",
            Medium::Wired => "Wired",
        }
    }

    pub fn from_str_exact(s: &str) -> Option<Self> {
        match s {
            "RF" => Some(Medium::Rf),
            "FSO" => Some(Medium::Fso),
            "Wired" => Some(Medium::Wired),
            _ => None,
        }
    }

    /// Default medium when a model file omits it: wired inside a vehicle,
    /// radio on every external link.
    pub fn default_for(link: LinkKind) -> Medium {
        match link {
            LinkKind::Internal => Medium::Wired,
            _ => Medium::Rf,
        }
    }
}

impl fmt::Display for Medium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closed set of payload classes carried by data flows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PayloadClass {
    ImageSchedule,
    ScheduledCommand,
    ImageGeneration,
    RawImages,
    ProcessedImages,
    HousekeepingData,
    OrbitalElements,
    AttitudeReference,
    ImagingTimePlan,
    OrbitalManeuverSchedule,
    SensorFeedback,
    ManeuverCommand,
    Acknowledgement,
}

impl PayloadClass {
    pub const ALL: [PayloadClass; 13] = [
        PayloadClass::ImageSchedule,
        PayloadClass::ScheduledCommand,
        PayloadClass::ImageGeneration,
        PayloadClass::RawImages,
        PayloadClass::ProcessedImages,
        PayloadClass::HousekeepingData,
        PayloadClass::OrbitalElements,
        PayloadClass::AttitudeReference,
        PayloadClass::ImagingTimePlan,
        PayloadClass::OrbitalManeuverSchedule,
        PayloadClass::SensorFeedback,
        PayloadClass::ManeuverCommand,
        PayloadClass::Acknowledgement,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PayloadClass::ImageSchedule => "ImageSchedule",
            PayloadClass::ScheduledCommand => "ScheduledCommand",
            PayloadClass::ImageGeneration => "ImageGeneration",
            PayloadClass::RawImages => "RawImages",
            PayloadClass::ProcessedImages => "ProcessedImages",
            PayloadClass::HousekeepingData => "HousekeepingData",
            PayloadClass::OrbitalElements => "OrbitalElements",
            PayloadClass::AttitudeReference => "AttitudeReference",
            PayloadClass::ImagingTimePlan => "ImagingTimePlan",
            PayloadClass::OrbitalManeuverSchedule => "OrbitalManeuverSchedule",
            PayloadClass::SensorFeedback => "SensorFeedback",
            PayloadClass::ManeuverCommand => "ManeuverCommand",
            PayloadClass::Acknowledgement => "Acknowledgement",
        }
    }

    pub fn from_str_exact(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.as_str() == s)
    }
}

impl fmt::Display for PayloadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A directed data flow between two components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DataFlow {
    pub id: String,
    pub name: String,
    pub source: String,
    pub dest: String,
    pub link: LinkKind,
    pub payload: PayloadClass,
    pub medium: Medium,
}

/// A declared dependency among components whose exploitation grants an
/// adversary leverage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrustRelationship {
    pub id: String,
    pub members: Vec<String>,
    pub description: String,
}

/// One mission's decomposition. Immutable after construction; declaration
/// order of components and flows is significant downstream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemModel {
    pub name: String,
    pub vehicles: Vec<Vehicle>,
    pub components: Vec<Component>,
    pub flows: Vec<DataFlow>,
    pub trust: Vec<TrustRelationship>,
}

impl SystemModel {
    pub fn vehicle(&self, id: &str) -> Option<&Vehicle> {
        self.vehicles.iter().find(|v| v.id == id)
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn flow(&self, id: &str) -> Option<&DataFlow> {
        self.flows.iter().find(|f| f.id == id)
    }

    pub fn trust_relationship(&self, id: &str) -> Option<&TrustRelationship> {
        self.trust.iter().find(|t| t.id == id)
    }

    /// Vehicle hosting the given component, if both resolve.
    pub fn vehicle_of(&self, component_id: &str) -> Option<&Vehicle> {
        self.component(component_id)
            .and_then(|c| self.vehicle(&c.vehicle))
    }

    /// True when the flow's endpoints sit on different vehicles.
    pub fn crosses_vehicle_boundary(&self, flow: &DataFlow) -> bool {
        match (self.component(&flow.source), self.component(&flow.dest)) {
            (Some(src), Some(dst)) => src.vehicle != dst.vehicle,
            _ => false,
        }
    }

    /// Flows arriving at a component, in declaration order.
    pub fn inbound_flows<'a>(
        &'a self,
        component_id: &'a str,
    ) -> impl Iterator<Item = &'a DataFlow> {
        self.flows.iter().filter(move |f| f.dest == component_id)
    }

    /// Flows leaving a component, in declaration order.
    pub fn outbound_flows<'a>(
        &'a self,
        component_id: &'a str,
    ) -> impl Iterator<Item = &'a DataFlow> {
        self.flows.iter().filter(move |f| f.source == component_id)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown {field} `{value}`")]
    UnknownKind { field: &'static str, value: String },
    #[error("`{referrer}` references unknown {kind} `{target}`")]
    DanglingReference {
        referrer: String,
        kind: &'static str,
        target: String,
    },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Severity {
    Error,
    Warning,
}

/// A single validation finding. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub severity: Severity,
    pub subject: String,
    pub message: String,
}

pub const DUPLICATE_ID: &str = "DUPLICATE_ID";
pub const DANGLING_REFERENCE: &str = "DANGLING_REFERENCE";
pub const EMPTY_ID: &str = "EMPTY_ID";
pub const FLOW_ENDPOINTS_EQUAL: &str = "FLOW_ENDPOINTS_EQUAL";
pub const LINK_SEGMENT_MISMATCH: &str = "LINK_SEGMENT_MISMATCH";
pub const MEDIUM_LINK_MISMATCH: &str = "MEDIUM_LINK_MISMATCH";
pub const TRUST_TOO_FEW_MEMBERS: &str = "TRUST_TOO_FEW_MEMBERS";
pub const UNREFERENCED_COMPONENT: &str = "UNREFERENCED_COMPONENT";

fn violation(code: &'static str, severity: Severity, subject: &str, message: String) -> Violation {
    Violation {
        code,
        severity,
        subject: subject.to_string(),
        message,
    }
}

/// Check every model invariant. Returns an empty list iff they all hold;
/// output is sorted by (code, subject) so repeated runs are identical.
pub fn validate(model: &SystemModel) -> Vec<Violation> {
    let mut out = Vec::new();

    for (space, ids) in [
        (
            "vehicle",
            model
                .vehicles
                .iter()
                .map(|v| v.id.as_str())
                .collect::<Vec<_>>(),
        ),
        (
            "component",
            model.components.iter().map(|c| c.id.as_str()).collect(),
        ),
        ("flow", model.flows.iter().map(|f| f.id.as_str()).collect()),
        (
            "trust relationship",
            model.trust.iter().map(|t| t.id.as_str()).collect(),
        ),
    ] {
        let mut seen = BTreeSet::new();
        for id in ids {
            if id.is_empty() {
                out.push(violation(
                    EMPTY_ID,
                    Severity::Error,
                    id,
                    format!("{space} with empty id"),
                ));
            }
            if !seen.insert(id) {
                out.push(violation(
                    DUPLICATE_ID,
                    Severity::Error,
                    id,
                    format!("{space} id `{id}` declared more than once"),
                ));
            }
        }
    }

    for component in &model.components {
        if model.vehicle(&component.vehicle).is_none() {
            out.push(violation(
                DANGLING_REFERENCE,
                Severity::Error,
                &component.id,
                format!(
                    "component `{}` references unknown vehicle `{}`",
                    component.id, component.vehicle
                ),
            ));
        }
    }

    for flow in &model.flows {
        let mut endpoints_ok = true;
        for (label, endpoint) in [("source", &flow.source), ("dest", &flow.dest)] {
            if model.component(endpoint).is_none() {
                endpoints_ok = false;
                out.push(violation(
                    DANGLING_REFERENCE,
                    Severity::Error,
                    &flow.id,
                    format!(
                        "flow `{}` {label} references unknown component `{endpoint}`",
                        flow.id
                    ),
                ));
            }
        }
        if flow.source == flow.dest {
            out.push(violation(
                FLOW_ENDPOINTS_EQUAL,
                Severity::Error,
                &flow.id,
                format!("flow `{}` connects `{}` to itself", flow.id, flow.source),
            ));
            continue;
        }
        if !endpoints_ok {
            continue;
        }
        let src = model.vehicle_of(&flow.source);
        let dst = model.vehicle_of(&flow.dest);
        let (src, dst) = match (src, dst) {
            (Some(s), Some(d)) => (s, d),
            _ => continue, // dangling vehicle already reported
        };
        let segment_ok = match flow.link {
            LinkKind::Uplink => src.role == VehicleRole::GroundSite && dst.role.is_space_segment(),
            LinkKind::Downlink => {
                src.role.is_space_segment() && dst.role == VehicleRole::GroundSite
            }
            LinkKind::Isl => {
                src.role.is_space_segment() && dst.role.is_space_segment() && src.id != dst.id
            }
            LinkKind::Internal => src.id == dst.id,
        };
        if !segment_ok {
            out.push(violation(
                LINK_SEGMENT_MISMATCH,
                Severity::Error,
                &flow.id,
                format!(
                    "flow `{}` is {} but runs {} ({}) -> {} ({})",
                    flow.id, flow.link, flow.source, src.role, flow.dest, dst.role
                ),
            ));
        }
        if flow.medium == Medium::Wired && flow.link != LinkKind::Internal {
            out.push(violation(
                MEDIUM_LINK_MISMATCH,
                Severity::Error,
                &flow.id,
                format!(
                    "flow `{}` is {} but uses the Wired medium",
                    flow.id, flow.link
                ),
            ));
        }
    }

    for trust in &model.trust {
        let mut members = BTreeSet::new();
        for member in &trust.members {
            if model.component(member).is_none() {
                out.push(violation(
                    DANGLING_REFERENCE,
                    Severity::Error,
                    &trust.id,
                    format!(
                        "trust relationship `{}` references unknown component `{member}`",
                        trust.id
                    ),
                ));
            }
            members.insert(member.as_str());
        }
        if members.len() < 2 {
            out.push(violation(
                TRUST_TOO_FEW_MEMBERS,
                Severity::Error,
                &trust.id,
                format!(
                    "trust relationship `{}` has {} distinct member(s); at least 2 required",
                    trust.id,
                    members.len()
                ),
            ));
        }
    }

    for component in &model.components {
        let in_flow = model
            .flows
            .iter()
            .any(|f| f.source == component.id || f.dest == component.id);
        let in_trust = model
            .trust
            .iter()
            .any(|t| t.members.contains(&component.id));
        if !in_flow && !in_trust {
            out.push(violation(
                UNREFERENCED_COMPONENT,
                Severity::Warning,
                &component.id,
                format!(
                    "unreferenced component `{}`: no flow or trust relationship mentions it",
                    component.id
                ),
            ));
        }
    }

    out.sort_by(|a, b| (a.code, &a.subject).cmp(&(b.code, &b.subject)));
    out
}

/// Canonical JSON serialization; `parse_model` of the output reproduces the
/// model field for field.
pub fn serialize_model(model: &SystemModel) -> String {
    let mut text = serde_json::to_string_pretty(model).expect("model serialization cannot fail");
    text.push('\n');
    text
}

/// Emit the decomposition as a Graphviz digraph: one cluster per vehicle,
/// one node per component, one edge per flow labeled "payload (link)".
pub fn to_dot(model: &SystemModel) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}\" {{\n", escape_dot(&model.name)));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=box];\n");
    for vehicle in &model.vehicles {
        out.push_str(&format!(
            "  subgraph \"cluster_{}\" {{\n",
            escape_dot(&vehicle.id)
        ));
        out.push_str(&format!("    label=\"{}\";\n", escape_dot(&vehicle.name)));
        for component in model.components.iter().filter(|c| c.vehicle == vehicle.id) {
            out.push_str(&format!(
                "    \"{}\" [label=\"{}\"];\n",
                escape_dot(&component.id),
                escape_dot(&component.name)
            ));
        }
        out.push_str("  }\n");
    }
    // Components on unknown vehicles still get nodes so the graph stays total.
    for component in &model.components {
        if model.vehicle(&component.vehicle).is_none() {
            out.push_str(&format!(
                "  \"{}\" [label=\"{}\"];\n",
                escape_dot(&component.id),
                escape_dot(&component.name)
            ));
        }
    }
    for flow in &model.flows {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{} ({})\"];\n",
            escape_dot(&flow.source),
            escape_dot(&flow.dest),
            flow.payload,
            flow.link
        ));
    }
    out.push_str("}\n");
    out
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_model() -> SystemModel {
        SystemModel {
            name: "minimal".into(),
            vehicles: vec![Vehicle {
                id: "ground".into(),
                name: "Ground site".into(),
                role: VehicleRole::GroundSite,
            }],
            components: vec![Component {
                id: "ground_station".into(),
                name: "Ground station".into(),
                kind: ComponentKind::GroundStation,
                vehicle: "ground".into(),
            }],
            flows: vec![],
            trust: vec![],
        }
    }

    #[test]
    fn builtin_models_validate_clean() {
        for name in BUILTIN_MODELS {
            let model = builtin_model(name).unwrap();
            assert_eq!(validate(&model), vec![], "builtin `{name}` must validate");
        }
    }

    #[test]
    fn minimal_model_warns_unreferenced() {
        let violations = validate(&minimal_model());
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].code, UNREFERENCED_COMPONENT);
        assert_eq!(violations[0].severity, Severity::Warning);
        assert!(violations[0].message.contains("unreferenced component"));
    }

    #[test]
    fn uplink_between_space_vehicles_is_flagged() {
        let mut model = builtin_model("leo-network").unwrap();
        // Re-point the ISL plan flow as an Uplink: both endpoints are space segment.
        let flow = model
            .flows
            .iter_mut()
            .find(|f| f.id == "imaging_time_plan_isl")
            .unwrap();
        flow.link = LinkKind::Uplink;
        flow.medium = Medium::Rf;
        let violations = validate(&model);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].code, LINK_SEGMENT_MISMATCH);
        assert_eq!(violations[0].subject, "imaging_time_plan_isl");
    }

    #[test]
    fn duplicate_flow_id_is_flagged() {
        let mut model = builtin_model("single-leo").unwrap();
        let mut dup = model.flows[0].clone();
        dup.source = "storage".into();
        dup.dest = "image_processing".into();
        dup.link = LinkKind::Internal;
        dup.medium = Medium::Wired;
        model.flows.push(dup);
        let violations = validate(&model);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].code, DUPLICATE_ID);
        assert_eq!(violations[0].subject, model.flows[0].id);
    }

    #[test]
    fn wired_external_link_is_flagged() {
        let mut model = builtin_model("single-leo").unwrap();
        model.flows[0].medium = Medium::Wired; // uplink
        let violations = validate(&model);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].code, MEDIUM_LINK_MISMATCH);
    }

    #[test]
    fn trust_with_single_member_is_flagged() {
        let mut model = builtin_model("single-leo").unwrap();
        model.trust.push(TrustRelationship {
            id: "solo".into(),
            members: vec!["camera".into(), "camera".into()],
            description: "degenerate".into(),
        });
        let violations = validate(&model);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].code, TRUST_TOO_FEW_MEMBERS);
        assert_eq!(violations[0].subject, "solo");
    }

    #[test]
    fn violations_sorted_by_code_then_subject() {
        let mut model = builtin_model("single-leo").unwrap();
        model.flows[0].medium = Medium::Wired;
        let dup = model.flows[1].clone();
        model.flows.push(dup);
        let violations = validate(&model);
        let keys: Vec<_> = violations
            .iter()
            .map(|v| (v.code, v.subject.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn dot_empty_flow_model_has_clusters_and_no_edges() {
        let dot = to_dot(&minimal_model());
        assert!(dot.contains("subgraph \"cluster_ground\""));
        assert!(dot.contains("\"ground_station\" [label=\"Ground station\"]"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn dot_single_leo_has_ten_edges() {
        let model = builtin_model("single-leo").unwrap();
        // Independent count: one edge per declared flow.
        assert_eq!(model.flows.len(), 10);
        let dot = to_dot(&model);
        assert_eq!(dot.matches("->").count(), 10);
    }

    #[test]
    fn dot_leo_network_labels_isl_plan_flow() {
        let dot = to_dot(&builtin_model("leo-network").unwrap());
        assert!(dot.contains("[label=\"ImagingTimePlan (Isl)\"]"));
    }

    #[test]
    fn dot_is_byte_deterministic() {
        let model = builtin_model("leo-network").unwrap();
        assert_eq!(to_dot(&model), to_dot(&model));
    }
}
