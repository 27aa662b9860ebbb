//! Deterministic discrete-event simulation of the mission workflows over
//! their link segment, with attack injection and countermeasure effects.
//!
//! Links are latency-annotated reliable channels; every attack and
//! countermeasure effect is rule-based, so a scenario replays byte-identically.
//! The `seed` field is carried for future stochastic extensions and does not
//! influence current semantics.

mod engine;

pub use engine::{replay, run_simulation};

use crate::model::{ComponentKind, LinkKind, Medium, PayloadClass, Severity, SystemModel};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Exact mean expressed as a reduced fraction of ticks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        if den == 0 {
            return Ratio { num: 0, den: 1 };
        }
        let g = gcd(num.max(1), den).max(1);
        let g = if num == 0 { den } else { g };
        Ratio {
            num: num / g,
            den: den / g,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttackMode {
    Drop,
    Tamper,
    Delay,
    Inject,
    Eavesdrop,
}

/// Half-open tick interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: u64,
    pub end: u64,
}

impl Window {
    /// Does a transit spanning `[from, to)` overlap this window?
    pub fn overlaps(&self, from: u64, to: u64) -> bool {
        from < self.end && to > self.start
    }

    pub fn contains(&self, tick: u64) -> bool {
        self.start <= tick && tick < self.end
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delay: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_axis: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject_payload: Option<PayloadClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attack {
    pub technique: String,
    pub mode: AttackMode,
    pub target: String,
    pub window: Window,
    #[serde(default)]
    pub params: AttackParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltPath {
    pub latency: u64,
    pub medium: Medium,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkParams {
    pub latency: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_path: Option<AltPath>,
}

impl Default for LinkParams {
    fn default() -> Self {
        LinkParams {
            latency: 1,
            alt_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub tick: u64,
    pub command: String,
}

/// A fully resolved simulation scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub model: SystemModel,
    pub horizon: u64,
    pub schedule: Vec<ScheduleEntry>,
    pub link_params: BTreeMap<String, LinkParams>,
    pub deployments: BTreeSet<(String, String)>,
    pub attacks: Vec<Attack>,
    pub reroute_timeout: u64,
    pub fault_recovery: u64,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn link(&self, flow_id: &str) -> LinkParams {
        self.link_params.get(flow_id).copied().unwrap_or_default()
    }

    /// Is `countermeasure` deployed on the given component or flow?
    pub fn deployed(&self, subject: &str, countermeasure: &str) -> bool {
        self.deployments
            .contains(&(subject.to_string(), countermeasure.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Sent,
    Delivered,
    Dropped,
    Tampered,
    Rejected,
    Detected,
    Blocked,
    Rerouted,
    Eavesdropped,
    FaultInjected,
    FaultRecovered,
    Captured,
    Stored,
    Processed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimEvent {
    pub tick: u64,
    pub kind: EventKind,
    pub subjects: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub commanded: u64,
    pub captured: u64,
    pub delivered: u64,
    pub mean_delivery_latency: Ratio,
    pub detections: u64,
    pub blocked: u64,
    pub integrity_violations_accepted: u64,
    pub confidentiality_breaches: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimResult {
    pub events: Vec<SimEvent>,
    pub metrics: Metrics,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SimError {
    #[error("invalid scenario: {0}")]
    Config(String),
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),
}

/// The mission chain derived from a model: the ordered flows a capture
/// command traverses from uplink to ground delivery, plus any internal
/// archive-copy flows emitted alongside a step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub steps: Vec<String>,
    pub archives: BTreeMap<usize, Vec<String>>,
}

fn allowed_next(payload: PayloadClass) -> &'static [PayloadClass] {
    use PayloadClass::*;
    match payload {
        ImageSchedule => &[ImagingTimePlan, ImageGeneration],
        ImagingTimePlan => &[ScheduledCommand],
        ScheduledCommand => &[ImageGeneration],
        ImageGeneration => &[ImageGeneration, RawImages],
        RawImages => &[RawImages, ProcessedImages],
        _ => &[],
    }
}

/// Derive the workflow chain, rejecting models that fit neither the
/// single-vehicle pipeline nor the mothership-mediated pipeline.
pub fn derive_chain(model: &SystemModel) -> Result<Chain, SimError> {
    let mut uplinks = model
        .flows
        .iter()
        .filter(|f| f.link == LinkKind::Uplink && f.payload == PayloadClass::ImageSchedule);
    let uplink = uplinks
        .next()
        .ok_or_else(|| SimError::UnsupportedTopology("no ImageSchedule uplink".into()))?;
    if uplinks.next().is_some() {
        return Err(SimError::UnsupportedTopology(
            "more than one ImageSchedule uplink".into(),
        ));
    }

    let mut steps = vec![uplink.id.clone()];
    let mut visited: BTreeSet<&str> = [uplink.id.as_str()].into();
    let mut current = uplink;
    while !(current.payload == PayloadClass::ProcessedImages && current.link == LinkKind::Downlink)
    {
        let next = model
            .outbound_flows(&current.dest)
            .find(|f| {
                allowed_next(current.payload).contains(&f.payload)
                    && !visited.contains(f.id.as_str())
            })
            .ok_or_else(|| {
                SimError::UnsupportedTopology(format!(
                    "workflow dead-ends at component `{}` after flow `{}`",
                    current.dest, current.id
                ))
            })?;
        visited.insert(&next.id);
        steps.push(next.id.clone());
        current = next;
        if steps.len() > model.flows.len() {
            return Err(SimError::UnsupportedTopology(
                "workflow does not terminate".into(),
            ));
        }
    }

    let terminal = current;
    match model.vehicle_of(&terminal.dest) {
        Some(v) if !v.role.is_space_segment() => {}
        _ => {
            return Err(SimError::UnsupportedTopology(
                "workflow downlink does not terminate at a ground site".into(),
            ))
        }
    }

    // Internal processed-image copies leave the processing component together
    // with the downlink.
    let mut archives = BTreeMap::new();
    let copies: Vec<String> = model
        .outbound_flows(&terminal.source)
        .filter(|f| {
            f.id != terminal.id
                && f.link == LinkKind::Internal
                && f.payload == PayloadClass::ProcessedImages
        })
        .map(|f| f.id.clone())
        .collect();
    if !copies.is_empty() {
        archives.insert(steps.len() - 1, copies);
    }

    Ok(Chain { steps, archives })
}

fn is_countermeasure_id(id: &str) -> bool {
    let bytes = id.as_bytes();
    bytes.len() == 6 && id.starts_with("CM") && bytes[2..].iter().all(|b| b.is_ascii_digit())
}

fn is_technique_id(id: &str) -> bool {
    let bytes = id.as_bytes();
    bytes.len() == 7
        && bytes[0].is_ascii_uppercase()
        && bytes[1].is_ascii_uppercase()
        && bytes[2] == b'-'
        && bytes[3..].iter().all(|b| b.is_ascii_digit())
}

/// Check every scenario invariant and derive the workflow chain.
pub fn validate_config(config: &ScenarioConfig) -> Result<Chain, SimError> {
    let model = &config.model;
    if crate::model::validate(model)
        .iter()
        .any(|v| v.severity == Severity::Error)
    {
        return Err(SimError::Config("model does not validate".into()));
    }
    if config.horizon == 0 {
        return Err(SimError::Config("horizon must be at least 1 tick".into()));
    }
    let mut commands = BTreeSet::new();
    for entry in &config.schedule {
        if entry.tick >= config.horizon {
            return Err(SimError::Config(format!(
                "schedule tick {} is not before the horizon {}",
                entry.tick, config.horizon
            )));
        }
        if !commands.insert(entry.command.as_str()) {
            return Err(SimError::Config(format!(
                "duplicate capture command id `{}`",
                entry.command
            )));
        }
    }
    for (flow_id, params) in &config.link_params {
        if model.flow(flow_id).is_none() {
            return Err(SimError::Config(format!(
                "link parameters reference unknown flow `{flow_id}`"
            )));
        }
        if params.latency == 0 {
            return Err(SimError::Config(format!(
                "flow `{flow_id}` latency must be >= 1"
            )));
        }
        if let Some(alt) = params.alt_path {
            if alt.latency == 0 {
                return Err(SimError::Config(format!(
                    "flow `{flow_id}` alternate path latency must be >= 1"
                )));
            }
        }
    }
    for (subject, countermeasure) in &config.deployments {
        if model.component(subject).is_none() && model.flow(subject).is_none() {
            return Err(SimError::Config(format!(
                "deployment references unknown component or flow `{subject}`"
            )));
        }
        if !is_countermeasure_id(countermeasure) {
            return Err(SimError::Config(format!(
                "deployment countermeasure `{countermeasure}` does not match the CM pattern"
            )));
        }
    }
    for (index, attack) in config.attacks.iter().enumerate() {
        if !is_technique_id(&attack.technique) {
            return Err(SimError::Config(format!(
                "attack {index} technique `{}` does not match the technique pattern",
                attack.technique
            )));
        }
        let flow = model.flow(&attack.target).ok_or_else(|| {
            SimError::Config(format!(
                "attack {index} targets unknown flow `{}`",
                attack.target
            ))
        })?;
        if attack.window.start > attack.window.end || attack.window.end > config.horizon {
            return Err(SimError::Config(format!(
                "attack {index} window [{}, {}) must sit within the horizon {}",
                attack.window.start, attack.window.end, config.horizon
            )));
        }
        match attack.mode {
            AttackMode::Delay if attack.params.delay.is_none() => {
                return Err(SimError::Config(format!(
                    "attack {index} (Delay) needs params.delay"
                )));
            }
            AttackMode::Inject if attack.params.inject_payload.is_none() => {
                return Err(SimError::Config(format!(
                    "attack {index} (Inject) needs params.inject_payload"
                )));
            }
            AttackMode::Eavesdrop
                if flow.medium == Medium::Fso && attack.params.on_axis.is_none() =>
            {
                return Err(SimError::Config(format!(
                    "attack {index} (Eavesdrop) on an FSO flow needs params.on_axis"
                )));
            }
            _ => {}
        }
    }
    derive_chain(model)
}

/// Payload classes each component kind may legitimately accept. Injected
/// traffic outside this set is blocked by least privilege (CM0039).
pub fn privilege_set(kind: ComponentKind) -> &'static [PayloadClass] {
    use ComponentKind::*;
    use PayloadClass::*;
    match kind {
        GroundStation => &[ProcessedImages, HousekeepingData],
        PayloadControl => &[ImageSchedule, ScheduledCommand, SensorFeedback],
        Camera => &[ImageGeneration],
        Storage => &[ImageGeneration, RawImages, ProcessedImages],
        ImageProcessing => &[RawImages],
        AdcsAlgorithm => &[SensorFeedback],
        PropulsionControl => &[ManeuverCommand, AttitudeReference, SensorFeedback],
        SensorsActuators => &[],
        OnboardComputer => &[
            ImageSchedule,
            ImagingTimePlan,
            OrbitalManeuverSchedule,
            OrbitalElements,
            RawImages,
            HousekeepingData,
        ],
        OrbitDetermination => &[ScheduledCommand],
        SectoringAltitudeCalculation => &[OrbitalElements],
        ManeuverCalculation => &[OrbitalElements],
    }
}

/// Scenario document as stored on disk; the model is referenced by builtin
/// name or path and resolved by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub model: ModelRef,
    pub horizon: u64,
    #[serde(default)]
    pub schedule: Vec<ScheduleEntry>,
    #[serde(default)]
    pub link_params: BTreeMap<String, LinkParams>,
    #[serde(default)]
    pub deployments: Vec<Deployment>,
    #[serde(default)]
    pub attacks: Vec<Attack>,
    #[serde(default = "default_tick")]
    pub reroute_timeout: u64,
    #[serde(default = "default_tick")]
    pub fault_recovery: u64,
    #[serde(default)]
    pub seed: u64,
}

fn default_tick() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Deployment {
    pub subject: String,
    pub countermeasure: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Builtin { builtin: String },
    Path { path: String },
}

/// Parse a scenario document. The model reference is left unresolved.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile, SimError> {
    serde_json::from_str(text).map_err(|e| SimError::Config(e.to_string()))
}

impl ScenarioFile {
    /// Pair the parsed scenario with its resolved model.
    pub fn resolve(self, model: SystemModel) -> ScenarioConfig {
        ScenarioConfig {
            model,
            horizon: self.horizon,
            schedule: self.schedule,
            link_params: self.link_params,
            deployments: self
                .deployments
                .into_iter()
                .map(|d| (d.subject, d.countermeasure))
                .collect(),
            attacks: self.attacks,
            reroute_timeout: self.reroute_timeout,
            fault_recovery: self.fault_recovery,
            seed: self.seed,
        }
    }
}
