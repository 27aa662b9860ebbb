//! Shared generators and oracles for the property and acceptance suites.

use proptest::prelude::*;
use sbc::catalog::{Catalog, Selector, SelectorTarget};
use sbc::linksim::{
    AltPath, Attack, AttackMode, AttackParams, EventKind, LinkParams, ScenarioConfig,
    ScheduleEntry, SimResult, Window,
};
use sbc::model::{
    builtin_model, Component, ComponentKind, DataFlow, LinkKind, Medium, PayloadClass, SystemModel,
    TrustRelationship, Vehicle, VehicleRole,
};
use std::collections::{BTreeMap, BTreeSet};

pub fn arb_component_kind() -> impl Strategy<Value = ComponentKind> {
    prop::sample::select(ComponentKind::ALL.to_vec())
}

pub fn arb_payload() -> impl Strategy<Value = PayloadClass> {
    prop::sample::select(PayloadClass::ALL.to_vec())
}

/// The link kind forced by the endpoints' segments, so generated flows
/// always satisfy the segment rules.
pub fn link_for(model_vehicles: &[Vehicle], src_vehicle: &str, dst_vehicle: &str) -> LinkKind {
    let role = |id: &str| {
        model_vehicles
            .iter()
            .find(|v| v.id == id)
            .map(|v| v.role)
            .expect("vehicle resolves")
    };
    let src = role(src_vehicle);
    let dst = role(dst_vehicle);
    if src_vehicle == dst_vehicle {
        LinkKind::Internal
    } else if src == VehicleRole::GroundSite {
        LinkKind::Uplink
    } else if dst == VehicleRole::GroundSite {
        LinkKind::Downlink
    } else {
        LinkKind::Isl
    }
}

/// Structurally valid models: ids unique, references resolve, link kinds
/// follow from the endpoint segments. At most warnings under `validate`.
pub fn arb_model() -> impl Strategy<Value = SystemModel> {
    let vehicles = prop::sample::select(vec![1usize, 2, 3]).prop_map(|n| {
        let mut vehicles = vec![Vehicle {
            id: "v_ground".into(),
            name: "Ground".into(),
            role: VehicleRole::GroundSite,
        }];
        if n >= 2 {
            vehicles.push(Vehicle {
                id: "v_sat".into(),
                name: "Satellite".into(),
                role: VehicleRole::Satellite,
            });
        }
        if n >= 3 {
            vehicles.push(Vehicle {
                id: "v_mother".into(),
                name: "Mothership".into(),
                role: VehicleRole::Mothership,
            });
        }
        vehicles
    });

    (vehicles, 2usize..=6)
        .prop_flat_map(|(vehicles, component_count)| {
            let kinds = prop::collection::vec(arb_component_kind(), component_count);
            let assignments = prop::collection::vec(0..vehicles.len(), component_count);
            (Just(vehicles), kinds, assignments)
        })
        .prop_flat_map(|(vehicles, kinds, assignments)| {
            let components: Vec<Component> = kinds
                .into_iter()
                .zip(assignments)
                .enumerate()
                .map(|(i, (kind, vehicle_idx))| Component {
                    id: format!("c{i}"),
                    name: format!("Component {i}"),
                    kind,
                    vehicle: vehicles[vehicle_idx].id.clone(),
                })
                .collect();
            let n = components.len();
            let flows = prop::collection::vec(((0..n), (0..n), arb_payload()), 0..=12);
            let trust =
                prop::collection::vec(prop::collection::btree_set(0..n, 2..=n.clamp(2, 4)), 0..=2);
            (Just(vehicles), Just(components), flows, trust)
        })
        .prop_map(|(vehicles, components, raw_flows, raw_trust)| {
            let flows: Vec<DataFlow> = raw_flows
                .into_iter()
                .enumerate()
                .filter(|(_, (src, dst, _))| src != dst)
                .map(|(i, (src, dst, payload))| {
                    let src_vehicle = &components[src].vehicle;
                    let dst_vehicle = &components[dst].vehicle;
                    let link = link_for(&vehicles, src_vehicle, dst_vehicle);
                    DataFlow {
                        id: format!("f{i}"),
                        name: format!("Flow {i}"),
                        source: components[src].id.clone(),
                        dest: components[dst].id.clone(),
                        link,
                        payload,
                        medium: Medium::default_for(link),
                    }
                })
                .collect();
            let trust: Vec<TrustRelationship> = raw_trust
                .into_iter()
                .enumerate()
                .map(|(i, members)| TrustRelationship {
                    id: format!("t{i}"),
                    members: members
                        .into_iter()
                        .map(|idx| components[idx].id.clone())
                        .collect(),
                    description: format!("Trust {i}"),
                })
                .collect();
            SystemModel {
                name: "generated".into(),
                vehicles,
                components,
                flows,
                trust,
            }
        })
}

/// Independent re-implementation of selector matching for the oracle
/// equivalence test. Kept deliberately separate from the library path.
pub fn oracle_matches_flow(selector: &Selector, model: &SystemModel, flow: &DataFlow) -> bool {
    if selector.target != SelectorTarget::Flow {
        return false;
    }
    if let Some(kinds) = &selector.link_kinds {
        if !kinds.iter().any(|k| *k == flow.link) {
            return false;
        }
    }
    if let Some(payloads) = &selector.payload_classes {
        if !payloads.iter().any(|p| *p == flow.payload) {
            return false;
        }
    }
    if let Some(expected) = selector.crosses_vehicle_boundary {
        let src = model
            .component(&flow.source)
            .map(|c| c.vehicle.clone())
            .unwrap_or_default();
        let dst = model
            .component(&flow.dest)
            .map(|c| c.vehicle.clone())
            .unwrap_or_default();
        if (src != dst) != expected {
            return false;
        }
    }
    true
}

/// Brute-force triple loop over (technique, selector, subject); returns the
/// deduplicated (technique, subject) pair set.
pub fn oracle_finding_pairs(model: &SystemModel, catalog: &Catalog) -> BTreeSet<(String, String)> {
    let mut pairs = BTreeSet::new();
    for technique in &catalog.techniques {
        for selector in &technique.selectors {
            for flow in &model.flows {
                if oracle_matches_flow(selector, model, flow) {
                    pairs.insert((technique.id.clone(), flow.id.clone()));
                }
            }
            for component in &model.components {
                if selector.target == SelectorTarget::Component {
                    let kind_ok = selector
                        .component_kinds
                        .as_ref()
                        .map(|kinds| kinds.iter().any(|k| *k == component.kind))
                        .unwrap_or(true);
                    if kind_ok {
                        pairs.insert((technique.id.clone(), component.id.clone()));
                    }
                }
            }
            for trust in &model.trust {
                if selector.target == SelectorTarget::TrustRelationship {
                    pairs.insert((technique.id.clone(), trust.id.clone()));
                }
            }
        }
    }
    pairs
}

const DEPLOYABLE: [&str; 6] = ["CM0002", "CM0032", "CM0038", "CM0039", "CM0042", "CM0070"];

/// Scenario configs over the builtin models with randomized schedules,
/// latencies, deployments and well-formed attacks.
pub fn arb_scenario() -> impl Strategy<Value = ScenarioConfig> {
    prop::sample::select(vec!["single-leo", "leo-network"])
        .prop_flat_map(|name| {
            let model = builtin_model(name).unwrap();
            let flow_count = model.flows.len();
            let component_count = model.components.len();
            let horizon = 60u64..200;
            let schedule = prop::collection::vec(0u64..40, 1..=8);
            let latencies = prop::collection::vec((0..flow_count, 1u64..4, prop::bool::ANY), 0..4);
            let deployments =
                prop::collection::vec((0..component_count, 0..DEPLOYABLE.len()), 0..4);
            let attacks = prop::collection::vec(
                (
                    prop::sample::select(vec![
                        AttackMode::Drop,
                        AttackMode::Tamper,
                        AttackMode::Delay,
                        AttackMode::Inject,
                        AttackMode::Eavesdrop,
                    ]),
                    0..flow_count,
                    0u64..50,
                    1u64..30,
                    1u64..5,
                    prop::bool::ANY,
                    arb_payload(),
                ),
                0..4,
            );
            (
                Just(model),
                horizon,
                schedule,
                latencies,
                deployments,
                attacks,
                1u64..4,
                1u64..6,
                prop::num::u64::ANY,
            )
        })
        .prop_map(
            |(
                model,
                horizon,
                schedule,
                latencies,
                deployments,
                attacks,
                reroute,
                recovery,
                seed,
            )| {
                let schedule = schedule
                    .into_iter()
                    .enumerate()
                    .map(|(i, tick)| ScheduleEntry {
                        tick: tick % horizon,
                        command: format!("cap-{i:02}"),
                    })
                    .collect();
                let mut link_params = BTreeMap::new();
                for (flow_idx, latency, with_alt) in latencies {
                    let flow_id = model.flows[flow_idx].id.clone();
                    link_params.insert(
                        flow_id,
                        LinkParams {
                            latency,
                            alt_path: with_alt.then_some(AltPath {
                                latency: latency + 1,
                                medium: Medium::Rf,
                            }),
                        },
                    );
                }
                let deployments: BTreeSet<(String, String)> = deployments
                    .into_iter()
                    .map(|(component_idx, cm_idx)| {
                        (
                            model.components[component_idx].id.clone(),
                            DEPLOYABLE[cm_idx].to_string(),
                        )
                    })
                    .collect();
                let attacks = attacks
                    .into_iter()
                    .map(|(mode, flow_idx, start, len, delay, on_axis, payload)| {
                        let start = start.min(horizon - 1);
                        let end = (start + len).min(horizon);
                        Attack {
                            technique: "IA-0009".into(),
                            mode,
                            target: model.flows[flow_idx].id.clone(),
                            window: Window { start, end },
                            params: AttackParams {
                                delay: Some(delay),
                                on_axis: Some(on_axis),
                                inject_payload: Some(payload),
                            },
                        }
                    })
                    .collect();
                ScenarioConfig {
                    model,
                    horizon,
                    schedule,
                    link_params,
                    deployments,
                    attacks,
                    reroute_timeout: reroute,
                    fault_recovery: recovery,
                    seed,
                }
            },
        )
}

/// Per-flow conservation: on primary flows, every legitimate Sent resolves
/// into exactly one of Delivered/Dropped/Rejected/Blocked, or stays in
/// flight at the horizon.
pub fn check_conservation(result: &SimResult) -> Result<(), String> {
    let mut sent: BTreeMap<(String, String), i64> = BTreeMap::new();
    let mut resolved: BTreeMap<(String, String), i64> = BTreeMap::new();
    for event in &result.events {
        if event.subjects.len() < 2 {
            continue;
        }
        let msg = event.subjects[0].clone();
        let flow = event.subjects[1].clone();
        if msg.starts_with("inj:") || flow.ends_with("#alt") {
            continue;
        }
        let key = (msg, flow);
        match event.kind {
            EventKind::Sent => *sent.entry(key).or_default() += 1,
            EventKind::Delivered
            | EventKind::Dropped
            | EventKind::Rejected
            | EventKind::Blocked => *resolved.entry(key).or_default() += 1,
            _ => {}
        }
    }
    for (key, n) in &resolved {
        let s = sent.get(key).copied().unwrap_or(0);
        if *n > s {
            return Err(format!("message {key:?} resolved {n} times but sent {s}"));
        }
        if *n > 1 {
            return Err(format!("message {key:?} resolved {n} times"));
        }
    }
    Ok(())
}
