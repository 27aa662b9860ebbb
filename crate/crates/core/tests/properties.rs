//! Property suites for the model, surface, threat and simulation invariants.

mod common;

use common::{arb_model, arb_scenario, check_conservation, oracle_finding_pairs};
use proptest::prelude::*;
use sbc::catalog::builtin_catalog;
use sbc::linksim::{run_simulation, AltPath, Attack, AttackMode, AttackParams, LinkParams, Window};
use sbc::model::{
    builtin_model, parse_model, serialize_model, to_dot, validate, LinkKind, Medium, Severity,
    LINK_SEGMENT_MISMATCH,
};
use sbc::surface::{builtin_labels, coverage_warnings, enumerate_surfaces};
use sbc::threatmap::enumerate_threats;
use std::collections::BTreeSet;

#[test]
fn shipped_model_files_match_the_builtins() {
    for name in ["single-leo", "leo-network"] {
        let path = format!(
            "{}/../../models/{name}.model.json",
            env!("CARGO_MANIFEST_DIR")
        );
        let text = std::fs::read_to_string(&path).unwrap();
        let model = builtin_model(name).unwrap();
        assert_eq!(text, serialize_model(&model), "{path} is out of sync");
        assert_eq!(parse_model(&text).unwrap(), model);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_models_have_no_error_violations(model in arb_model()) {
        let errors: Vec<_> = validate(&model)
            .into_iter()
            .filter(|v| v.severity == Severity::Error)
            .collect();
        prop_assert!(errors.is_empty(), "unexpected errors: {errors:?}");
    }

    #[test]
    fn serialize_parse_is_identity(model in arb_model()) {
        let text = serialize_model(&model);
        let reparsed = parse_model(&text).unwrap();
        prop_assert_eq!(&reparsed, &model);
        prop_assert_eq!(serialize_model(&reparsed), text);
    }

    #[test]
    fn breaking_a_link_kind_is_always_flagged(model in arb_model(), pick in prop::num::usize::ANY) {
        prop_assume!(!model.flows.is_empty());
        let mut broken = model.clone();
        let idx = pick % broken.flows.len();
        let flow = &mut broken.flows[idx];
        // Re-label with a link kind the endpoints cannot satisfy.
        let wrong = LinkKind::ALL
            .iter()
            .copied()
            .find(|k| *k != flow.link)
            .unwrap();
        flow.link = wrong;
        flow.medium = Medium::default_for(wrong);
        let violations = validate(&broken);
        let flow_id = broken.flows[idx].id.clone();
        prop_assert!(
            violations
                .iter()
                .any(|v| v.code == LINK_SEGMENT_MISMATCH && v.subject == flow_id),
            "no LINK_SEGMENT_MISMATCH for {flow_id}: {violations:?}"
        );
    }

    #[test]
    fn dot_output_is_stable(model in arb_model()) {
        prop_assert_eq!(to_dot(&model), to_dot(&model));
    }

    #[test]
    fn surface_covers_or_warns_about_every_flow(model in arb_model()) {
        let labels = builtin_labels();
        let entries = enumerate_surfaces(&model, &labels).unwrap();
        let warnings = coverage_warnings(&model, &labels).unwrap();
        let covered: BTreeSet<&str> = entries.iter().map(|e| e.related_flow.as_str()).collect();
        let warned: BTreeSet<&str> = warnings.iter().map(|w| w.flow.as_str()).collect();
        for flow in &model.flows {
            let id = flow.id.as_str();
            prop_assert!(
                covered.contains(id) ^ warned.contains(id),
                "flow {id} must be covered xor warned (covered: {}, warned: {})",
                covered.contains(id),
                warned.contains(id)
            );
        }
    }

    #[test]
    fn threat_enumeration_matches_the_brute_force_oracle(model in arb_model()) {
        let catalog = builtin_catalog();
        let report = enumerate_threats(&model, &catalog);
        let got: BTreeSet<(String, String)> = report
            .findings
            .iter()
            .map(|f| (f.technique.clone(), f.subject.clone()))
            .collect();
        // Dedup inside enumerate_threats must not merge distinct pairs.
        prop_assert_eq!(got.len(), report.findings.len());
        prop_assert_eq!(got, oracle_finding_pairs(&model, &catalog));
    }

    #[test]
    fn adding_a_flow_never_removes_findings(model in arb_model(), payload_pick in prop::num::usize::ANY) {
        prop_assume!(model.components.len() >= 2);
        let catalog = builtin_catalog();
        let before: BTreeSet<(String, String)> = enumerate_threats(&model, &catalog)
            .findings
            .iter()
            .map(|f| (f.technique.clone(), f.subject.clone()))
            .collect();
        let mut extended = model.clone();
        let src = &extended.components[0];
        let dst = &extended.components[1];
        let link = common::link_for(&extended.vehicles, &src.vehicle, &dst.vehicle);
        let payload = sbc::model::PayloadClass::ALL[payload_pick % sbc::model::PayloadClass::ALL.len()];
        extended.flows.push(sbc::model::DataFlow {
            id: "f_extra".into(),
            name: "Extra".into(),
            source: src.id.clone(),
            dest: dst.id.clone(),
            link,
            payload,
            medium: Medium::default_for(link),
        });
        let after: BTreeSet<(String, String)> = enumerate_threats(&extended, &catalog)
            .findings
            .iter()
            .map(|f| (f.technique.clone(), f.subject.clone()))
            .collect();
        prop_assert!(before.is_subset(&after));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conservation_holds_on_generated_scenarios(config in arb_scenario()) {
        let result = run_simulation(&config).unwrap();
        if let Err(msg) = check_conservation(&result) {
            prop_assert!(false, "{msg}");
        }
    }

    #[test]
    fn replay_reproduces_the_result(config in arb_scenario()) {
        let a = run_simulation(&config).unwrap();
        let b = sbc::linksim::replay(&config).unwrap();
        prop_assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn widening_a_drop_window_never_increases_delivery(
        captures in 1usize..8,
        spacing in 1u64..12,
        flow_pick in prop::num::usize::ANY,
        start in 0u64..50,
        end_a in 0u64..100,
        end_b in 0u64..100,
    ) {
        let model = builtin_model("single-leo").unwrap();
        let flow = model.flows[flow_pick % model.flows.len()].id.clone();
        let horizon = 160;
        let (narrow, wide) = if end_a <= end_b { (end_a, end_b) } else { (end_b, end_a) };
        let narrow = narrow.max(start).min(horizon);
        let wide = wide.max(start).min(horizon);
        let base = sbc::linksim::ScenarioConfig {
            model,
            horizon,
            schedule: (0..captures)
                .map(|i| sbc::linksim::ScheduleEntry {
                    tick: i as u64 * spacing,
                    command: format!("cap-{i:02}"),
                })
                .collect(),
            link_params: Default::default(),
            deployments: Default::default(),
            attacks: vec![Attack {
                technique: "DE-0002".into(),
                mode: AttackMode::Drop,
                target: flow,
                window: Window { start, end: narrow },
                params: AttackParams::default(),
            }],
            reroute_timeout: 2,
            fault_recovery: 3,
            seed: 0,
        };
        let mut widened = base.clone();
        widened.attacks[0].window.end = wide;
        let delivered_narrow = run_simulation(&base).unwrap().metrics.delivered;
        let delivered_wide = run_simulation(&widened).unwrap().metrics.delivered;
        prop_assert!(
            delivered_wide <= delivered_narrow,
            "widening [{start}, {narrow}) to [{start}, {wide}) raised delivered from \
             {delivered_narrow} to {delivered_wide}"
        );
    }

    #[test]
    fn comsec_never_increases_accepted_violations(
        config in arb_scenario(),
        component_pick in prop::num::usize::ANY,
    ) {
        let mut protected = config.clone();
        let component =
            &config.model.components[component_pick % config.model.components.len()];
        protected
            .deployments
            .insert((component.id.clone(), "CM0002".to_string()));
        let base = run_simulation(&config).unwrap();
        let hardened = run_simulation(&protected).unwrap();
        prop_assert!(
            hardened.metrics.integrity_violations_accepted
                <= base.metrics.integrity_violations_accepted
        );
    }

    #[test]
    fn alternate_paths_never_decrease_delivery(
        config in arb_scenario(),
        flow_pick in prop::num::usize::ANY,
    ) {
        // Give one flow an alternate path in both runs; only the hardened
        // run deploys CM0070 at its sender.
        let mut base = config.clone();
        let flow = base.model.flows[flow_pick % base.model.flows.len()].clone();
        let entry = base
            .link_params
            .entry(flow.id.clone())
            .or_insert(LinkParams { latency: 1, alt_path: None });
        entry.alt_path = Some(AltPath { latency: 2, medium: Medium::Rf });
        let mut hardened = base.clone();
        hardened
            .deployments
            .insert((flow.source.clone(), "CM0070".to_string()));
        let delivered_base = run_simulation(&base).unwrap().metrics.delivered;
        let delivered_hardened = run_simulation(&hardened).unwrap().metrics.delivered;
        prop_assert!(delivered_hardened >= delivered_base);
    }
}
