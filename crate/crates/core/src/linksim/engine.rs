//! The event-queue simulation loop. Strictly sequential; per-tick ordering
//! follows insertion order, so identical configs replay byte-identically.

use super::{
    privilege_set, validate_config, AttackMode, Chain, EventKind, Medium, Metrics, Ratio,
    ScenarioConfig, SimError, SimEvent, SimResult, Window,
};
use crate::model::{ComponentKind, PayloadClass};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

/// A message in transit on a flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub id: String,
    pub flow: String,
    pub payload: PayloadClass,
    pub sent_tick: u64,
    pub due_tick: u64,
    pub integrity: bool,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Legitimate,
    Injected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Transit {
    msg: Message,
    capture: String,
    /// Index into the chain; `None` for archive-copy transits.
    chain_step: Option<usize>,
    archive: bool,
    alt: bool,
    dropped: bool,
    eavesdrops: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Action {
    StartCapture(usize),
    Resolve(Transit),
    Reroute(Transit),
    InjectArrival(usize),
    Recover(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Queued {
    tick: u64,
    seq: u64,
    action: Action,
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.tick, self.seq).cmp(&(other.tick, other.seq))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct Engine<'a> {
    config: &'a ScenarioConfig,
    chain: Chain,
    queue: BinaryHeap<Reverse<Queued>>,
    seq: u64,
    events: Vec<SimEvent>,
    commanded: u64,
    captured: u64,
    delivered: u64,
    latency_sum: u64,
    detections: u64,
    blocked: u64,
    integrity_violations_accepted: u64,
    confidentiality_breaches: u64,
    misaligned: BTreeSet<String>,
    compromised: BTreeSet<String>,
    capture_tick: BTreeMap<String, u64>,
}

impl<'a> Engine<'a> {
    fn new(config: &'a ScenarioConfig, chain: Chain) -> Engine<'a> {
        Engine {
            config,
            chain,
            queue: BinaryHeap::new(),
            seq: 0,
            events: Vec::new(),
            commanded: 0,
            captured: 0,
            delivered: 0,
            latency_sum: 0,
            detections: 0,
            blocked: 0,
            integrity_violations_accepted: 0,
            confidentiality_breaches: 0,
            misaligned: BTreeSet::new(),
            compromised: BTreeSet::new(),
            capture_tick: BTreeMap::new(),
        }
    }

    fn push(&mut self, tick: u64, action: Action) {
        let seq = self.seq;
        self.seq += 1;
        self.queue.push(Reverse(Queued { tick, seq, action }));
    }

    fn log(&mut self, tick: u64, kind: EventKind, subjects: Vec<String>) {
        self.events.push(SimEvent {
            tick,
            kind,
            subjects,
        });
    }

    /// Countermeasure lookup on a component, also honoring flow-level
    /// deployments for link protections.
    fn deployed_on(&self, component: &str, flow: Option<&str>, cm: &str) -> bool {
        self.config.deployed(component, cm) || flow.is_some_and(|f| self.config.deployed(f, cm))
    }

    fn flow_tag(transit: &Transit) -> (String, String) {
        if transit.alt {
            (
                format!("{}#alt", transit.msg.id),
                format!("{}#alt", transit.msg.flow),
            )
        } else {
            (transit.msg.id.clone(), transit.msg.flow.clone())
        }
    }

    fn run(mut self) -> SimResult {
        for index in 0..self.config.schedule.len() {
            let tick = self.config.schedule[index].tick;
            self.push(tick, Action::StartCapture(index));
        }
        for (index, attack) in self.config.attacks.iter().enumerate() {
            if attack.mode == AttackMode::Inject {
                for tick in attack.window.start..attack.window.end {
                    self.push(tick, Action::InjectArrival(index));
                }
            }
        }

        while let Some(Reverse(next)) = self.queue.pop() {
            if next.tick >= self.config.horizon {
                break; // everything still queued is in flight at the horizon
            }
            match next.action {
                Action::StartCapture(index) => self.start_capture(index, next.tick),
                Action::Resolve(transit) => self.resolve(transit, next.tick),
                Action::Reroute(transit) => self.reroute(transit, next.tick),
                Action::InjectArrival(index) => self.inject_arrival(index, next.tick),
                Action::Recover(component) => self.recover(&component, next.tick),
            }
        }

        let metrics = Metrics {
            commanded: self.commanded,
            captured: self.captured,
            delivered: self.delivered,
            mean_delivery_latency: Ratio::new(self.latency_sum, self.delivered),
            detections: self.detections,
            blocked: self.blocked,
            integrity_violations_accepted: self.integrity_violations_accepted,
            confidentiality_breaches: self.confidentiality_breaches,
        };
        SimResult {
            events: self.events,
            metrics,
        }
    }

    fn start_capture(&mut self, index: usize, tick: u64) {
        let command = self.config.schedule[index].command.clone();
        self.commanded += 1;
        self.capture_tick.insert(command.clone(), tick);
        self.send_step(&command, 0, tick);
    }

    fn send_step(&mut self, capture: &str, step: usize, tick: u64) {
        let flow_id = self.chain.steps[step].clone();
        self.send_transit(capture, &flow_id, Some(step), false, tick);
        if let Some(archives) = self.chain.archives.get(&step).cloned() {
            for archive_flow in archives {
                self.send_transit(capture, &archive_flow, None, true, tick);
            }
        }
    }

    fn send_transit(
        &mut self,
        capture: &str,
        flow_id: &str,
        chain_step: Option<usize>,
        archive: bool,
        tick: u64,
    ) {
        let flow = self.config.model.flow(flow_id).expect("validated flow");
        let payload = flow.payload;
        let medium = flow.medium;
        let mut due = tick + self.config.link(flow_id).latency;

        // Delay attacks extend the due tick once each, in declaration order.
        for attack in &self.config.attacks {
            if attack.mode == AttackMode::Delay
                && attack.target == flow_id
                && attack.window.overlaps(tick, due)
            {
                due += attack.params.delay.unwrap_or(0);
            }
        }
        let overlapping = |window: &Window| window.overlaps(tick, due);
        let dropped =
            self.config.attacks.iter().any(|a| {
                a.mode == AttackMode::Drop && a.target == flow_id && overlapping(&a.window)
            });
        let tampered =
            self.config.attacks.iter().any(|a| {
                a.mode == AttackMode::Tamper && a.target == flow_id && overlapping(&a.window)
            });
        let eavesdrops = self
            .config
            .attacks
            .iter()
            .filter(|a| {
                a.mode == AttackMode::Eavesdrop
                    && a.target == flow_id
                    && overlapping(&a.window)
                    && match medium {
                        Medium::Rf => true,
                        Medium::Fso => a.params.on_axis == Some(true),
                        Medium::Wired => false,
                    }
            })
            .count() as u64;

        let msg_id = format!("{capture}:{flow_id}");
        self.log(
            tick,
            EventKind::Sent,
            vec![msg_id.clone(), flow_id.to_string()],
        );
        let transit = Transit {
            msg: Message {
                id: msg_id,
                flow: flow_id.to_string(),
                payload,
                sent_tick: tick,
                due_tick: due,
                integrity: !tampered,
                provenance: Provenance::Legitimate,
            },
            capture: capture.to_string(),
            chain_step,
            archive,
            alt: false,
            dropped,
            eavesdrops,
        };
        self.push(due, Action::Resolve(transit));
    }

    fn resolve(&mut self, transit: Transit, tick: u64) {
        let (msg_tag, flow_tag) = Self::flow_tag(&transit);
        for _ in 0..transit.eavesdrops {
            self.confidentiality_breaches += 1;
            self.log(
                tick,
                EventKind::Eavesdropped,
                vec![msg_tag.clone(), flow_tag.clone()],
            );
        }
        if transit.dropped {
            self.log(tick, EventKind::Dropped, vec![msg_tag, flow_tag]);
            let flow = self
                .config
                .model
                .flow(&transit.msg.flow)
                .expect("validated flow");
            let sender = flow.source.clone();
            let has_alt = self.config.link(&transit.msg.flow).alt_path.is_some();
            if has_alt && self.deployed_on(&sender, Some(&transit.msg.flow), "CM0070") {
                self.push(tick + self.config.reroute_timeout, Action::Reroute(transit));
            }
            return;
        }
        if !transit.msg.integrity {
            self.log(
                tick,
                EventKind::Tampered,
                vec![msg_tag.clone(), flow_tag.clone()],
            );
            let flow = self
                .config
                .model
                .flow(&transit.msg.flow)
                .expect("validated flow");
            let receiver = flow.dest.clone();
            if self.deployed_on(&receiver, Some(&transit.msg.flow), "CM0002") {
                self.log(
                    tick,
                    EventKind::Rejected,
                    vec![msg_tag.clone(), flow_tag.clone()],
                );
                self.log(tick, EventKind::Detected, vec![msg_tag, flow_tag]);
                self.detections += 1;
                return;
            }
            self.integrity_violations_accepted += 1;
            self.log(tick, EventKind::Delivered, vec![msg_tag, flow_tag]);
        } else {
            self.log(tick, EventKind::Delivered, vec![msg_tag, flow_tag]);
        }
        self.on_delivery(&transit, tick);
    }

    fn on_delivery(&mut self, transit: &Transit, tick: u64) {
        let flow = self
            .config
            .model
            .flow(&transit.msg.flow)
            .expect("validated flow");
        let dest_id = flow.dest.clone();
        let dest = self
            .config
            .model
            .component(&dest_id)
            .expect("validated component");
        let dest_kind = dest.kind;
        let dest_vehicle = dest.vehicle.clone();

        if transit.archive {
            if dest_kind == ComponentKind::Storage {
                self.log(
                    tick,
                    EventKind::Stored,
                    vec![transit.msg.id.clone(), dest_id],
                );
            }
            return;
        }

        match dest_kind {
            ComponentKind::Camera => {
                self.captured += 1;
                let mut subjects = vec![transit.capture.clone(), dest_id.clone()];
                if self.misaligned.contains(&dest_vehicle) {
                    subjects.push("degraded".to_string());
                }
                self.log(tick, EventKind::Captured, subjects);
            }
            ComponentKind::Storage => {
                self.log(
                    tick,
                    EventKind::Stored,
                    vec![transit.msg.id.clone(), dest_id.clone()],
                );
            }
            ComponentKind::ImageProcessing => {
                self.log(
                    tick,
                    EventKind::Processed,
                    vec![transit.msg.id.clone(), dest_id.clone()],
                );
            }
            ComponentKind::GroundStation
                if transit.msg.payload == PayloadClass::ProcessedImages =>
            {
                self.delivered += 1;
                let commanded_at = self
                    .capture_tick
                    .get(&transit.capture)
                    .copied()
                    .unwrap_or(transit.msg.sent_tick);
                self.latency_sum += tick - commanded_at;
            }
            _ => {}
        }

        if let Some(step) = transit.chain_step {
            if step + 1 < self.chain.steps.len() {
                let capture = transit.capture.clone();
                self.send_step(&capture, step + 1, tick);
            }
        }
    }

    fn reroute(&mut self, mut transit: Transit, tick: u64) {
        transit.alt = true;
        // Alternate-path transits are immune to attacks on the primary flow.
        transit.dropped = false;
        transit.eavesdrops = 0;
        transit.msg.integrity = true;
        let alt = self
            .config
            .link(&transit.msg.flow)
            .alt_path
            .expect("reroute requires an alternate path");
        let (msg_tag, flow_tag) = Self::flow_tag(&transit);
        self.log(tick, EventKind::Rerouted, vec![msg_tag, flow_tag]);
        transit.msg.sent_tick = tick;
        transit.msg.due_tick = tick + alt.latency;
        let due = transit.msg.due_tick;
        self.push(due, Action::Resolve(transit));
    }

    fn inject_arrival(&mut self, attack_index: usize, tick: u64) {
        let attack = &self.config.attacks[attack_index];
        let payload = attack
            .params
            .inject_payload
            .expect("validated inject payload");
        let flow = self
            .config
            .model
            .flow(&attack.target)
            .expect("validated flow");
        let flow_id = flow.id.clone();
        let receiver_id = flow.dest.clone();
        let receiver = self
            .config
            .model
            .component(&receiver_id)
            .expect("validated component");
        let receiver_kind = receiver.kind;
        let receiver_vehicle = receiver.vehicle.clone();
        // Adversary transmissions are adjacent to the receiver; the transit
        // occupies [tick, tick + 1) and the message executes on arrival.
        let msg = Message {
            id: format!("inj:{attack_index}:{flow_id}:{tick}"),
            flow: flow_id.clone(),
            payload,
            sent_tick: tick,
            due_tick: tick + 1,
            integrity: true,
            provenance: Provenance::Injected,
        };

        if self.deployed_on(&receiver_id, Some(&flow_id), "CM0032") {
            self.log(
                tick,
                EventKind::Detected,
                vec![msg.id.clone(), flow_id.clone()],
            );
            self.log(tick, EventKind::Blocked, vec![msg.id, flow_id]);
            self.detections += 1;
            self.blocked += 1;
            return;
        }
        if self.config.deployed(&receiver_id, "CM0039")
            && !privilege_set(receiver_kind).contains(&payload)
        {
            self.log(tick, EventKind::Blocked, vec![msg.id, flow_id]);
            self.blocked += 1;
            return;
        }

        // The injected command executes on the receiver.
        self.log(
            tick,
            EventKind::Delivered,
            vec![msg.id.clone(), flow_id.clone()],
        );
        self.log(
            tick,
            EventKind::FaultInjected,
            vec![msg.id, receiver_id.clone()],
        );
        self.compromised.insert(receiver_id.clone());
        if payload == PayloadClass::ManeuverCommand
            && receiver_kind == ComponentKind::PropulsionControl
            && !self.config.deployed(&receiver_id, "CM0038")
        {
            // Cross-component effect: hostile maneuvering misaligns the
            // vehicle, degrading subsequent captures. CM0038 confines the
            // compromise to the component itself.
            self.misaligned.insert(receiver_vehicle);
        }
        if self.config.deployed(&receiver_id, "CM0042") {
            self.push(
                tick + self.config.fault_recovery,
                Action::Recover(receiver_id),
            );
        }
    }

    fn recover(&mut self, component: &str, tick: u64) {
        self.log(tick, EventKind::FaultRecovered, vec![component.to_string()]);
        self.compromised.remove(component);
        if let Some(vehicle) = self
            .config
            .model
            .component(component)
            .map(|c| c.vehicle.clone())
        {
            self.misaligned.remove(&vehicle);
        }
    }
}

/// Execute a scenario. Deterministic: identical configs produce identical
/// results, event for event.
pub fn run_simulation(config: &ScenarioConfig) -> Result<SimResult, SimError> {
    let chain = validate_config(config)?;
    Ok(Engine::new(config, chain).run())
}

/// Named entry point for the determinism contract; semantics are identical
/// to [`run_simulation`].
pub fn replay(config: &ScenarioConfig) -> Result<SimResult, SimError> {
    run_simulation(config)
}
