//! Threat enumeration: match catalog selectors against a model and produce
//! an ordered, explained, deduplicated list of findings.

use crate::catalog::{matches, Catalog, SelectorTarget, Subject};
use crate::model::SystemModel;
use serde::Serialize;
use std::collections::BTreeSet;

/// One (technique, subject) match with the selector that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreatFinding {
    pub technique: String,
    pub subject_kind: SelectorTarget,
    pub subject: String,
    pub selector_index: usize,
    pub rationale: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreatReport {
    pub model: String,
    pub findings: Vec<ThreatFinding>,
}

fn instantiate(description: &str, subject_name: &str) -> String {
    if description.contains("{subject}") {
        description.replace("{subject}", subject_name)
    } else {
        format!("{description}: {subject_name}")
    }
}

/// Subjects of a model in declaration order: components, then flows, then
/// trust relationships, mirroring the document layout.
fn subjects(model: &SystemModel) -> Vec<Subject<'_>> {
    let mut out = Vec::new();
    out.extend(model.components.iter().map(Subject::Component));
    out.extend(model.flows.iter().map(Subject::Flow));
    out.extend(model.trust.iter().map(Subject::TrustRelationship));
    out
}

/// Evaluate every catalog selector against every model subject.
///
/// Findings are deduplicated per (technique, subject), keeping the lowest
/// selector index, and ordered by technique id then subject declaration
/// order.
pub fn enumerate_threats(model: &SystemModel, catalog: &Catalog) -> ThreatReport {
    let subjects = subjects(model);
    let mut technique_ids: Vec<&str> = catalog.techniques.iter().map(|t| t.id.as_str()).collect();
    technique_ids.sort_unstable();

    let mut findings = Vec::new();
    for technique_id in technique_ids {
        let technique = catalog.technique(technique_id).expect("id from catalog");
        for (subject_pos, subject) in subjects.iter().enumerate() {
            let mut matched: Option<(usize, &str)> = None;
            for (index, selector) in technique.selectors.iter().enumerate() {
                if matches(selector, model, *subject) {
                    matched = Some((index, selector.description.as_str()));
                    break; // lowest selector index wins
                }
            }
            if let Some((index, description)) = matched {
                findings.push((
                    subject_pos,
                    ThreatFinding {
                        technique: technique.id.clone(),
                        subject_kind: subject.target(),
                        subject: subject.id().to_string(),
                        selector_index: index,
                        rationale: instantiate(description, subject.name()),
                    },
                ));
            }
        }
    }
    // Technique blocks were produced in lexicographic order; subjects inside
    // each block keep declaration order.
    ThreatReport {
        model: model.name.clone(),
        findings: findings.into_iter().map(|(_, f)| f).collect(),
    }
}

/// Deduplicated, lexicographically ordered technique ids of a report.
pub fn techniques_present(report: &ThreatReport) -> BTreeSet<String> {
    report
        .findings
        .iter()
        .map(|f| f.technique.clone())
        .collect()
}

/// Render a report as a Markdown table.
pub fn render_markdown(report: &ThreatReport) -> String {
    let mut out = String::new();
    out.push_str("| Technique | Subject kind | Subject | Rationale |\n");
    out.push_str("| --- | --- | --- | --- |\n");
    for finding in &report.findings {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            finding.technique, finding.subject_kind, finding.subject, finding.rationale
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;
    use crate::model::builtin_model;

    fn single_leo_report() -> ThreatReport {
        enumerate_threats(&builtin_model("single-leo").unwrap(), &builtin_catalog())
    }

    fn pairs(report: &ThreatReport) -> Vec<(String, String)> {
        report
            .findings
            .iter()
            .map(|f| (f.technique.clone(), f.subject.clone()))
            .collect()
    }

    #[test]
    fn single_leo_findings_are_exactly_the_expected_set_in_order() {
        let report = single_leo_report();
        assert_eq!(
            pairs(&report),
            [
                ("DE-0002", "processed_images_downlink"),
                ("DE-0002", "housekeeping_downlink"),
                ("IA-0006", "camera"),
                ("IA-0006", "storage"),
                ("IA-0006", "image_processing"),
                ("IA-0006", "housekeeping_downlink"),
                ("IA-0009", "image_schedule"),
                ("IA-0009", "processed_images_downlink"),
                ("IA-0009", "housekeeping_downlink"),
                ("IA-0009", "ground-to-space"),
                ("IA-0009", "image-acquisition-cluster"),
            ]
            .map(|(t, s)| (t.to_string(), s.to_string()))
        );
    }

    #[test]
    fn single_leo_technique_set() {
        let report = single_leo_report();
        let present: Vec<String> = techniques_present(&report).into_iter().collect();
        assert_eq!(present, ["DE-0002", "IA-0006", "IA-0009"]);
    }

    #[test]
    fn rationale_carries_subject_name() {
        let report = single_leo_report();
        let uplink = report
            .findings
            .iter()
            .find(|f| f.technique == "IA-0009" && f.subject == "image_schedule")
            .unwrap();
        assert!(uplink.rationale.contains("Image schedule"));
        assert_eq!(uplink.selector_index, 0);
    }

    #[test]
    fn leo_network_adds_trust_and_isl_findings() {
        let model = builtin_model("leo-network").unwrap();
        let report = enumerate_threats(&model, &builtin_catalog());
        let got = pairs(&report);
        assert!(got.contains(&("IA-0009".into(), "mothership-trailing".into())));
        for isl in [
            "imaging_time_plan_isl",
            "maneuver_schedule_isl",
            "raw_images_isl",
            "housekeeping_isl",
        ] {
            assert!(
                got.contains(&("IA-0009".into(), isl.into())),
                "missing IA-0009 finding for {isl}"
            );
        }
        assert!(techniques_present(&report).contains("IA-0009"));
    }

    #[test]
    fn model_without_flows_or_trust_yields_no_findings() {
        let mut model = builtin_model("single-leo").unwrap();
        model.flows.clear();
        model.trust.clear();
        model.components.clear(); // also drop components so IA-0006 stays quiet
        let report = enumerate_threats(&model, &builtin_catalog());
        assert!(report.findings.is_empty());
        assert!(techniques_present(&report).is_empty());
    }

    #[test]
    fn duplicate_selector_matches_collapse_to_lowest_index() {
        use crate::catalog::{Selector, SelectorTarget};
        let model = builtin_model("single-leo").unwrap();
        let mut catalog = builtin_catalog();
        // Second selector that also matches every downlink flow.
        let technique = catalog
            .techniques
            .iter_mut()
            .find(|t| t.id == "DE-0002")
            .unwrap();
        technique.selectors.push(Selector {
            target: SelectorTarget::Flow,
            link_kinds: Some([crate::model::LinkKind::Downlink].into_iter().collect()),
            payload_classes: None,
            component_kinds: None,
            crosses_vehicle_boundary: None,
            description: "shadow".into(),
        });
        let report = enumerate_threats(&model, &catalog);
        let de0002: Vec<_> = report
            .findings
            .iter()
            .filter(|f| f.technique == "DE-0002")
            .collect();
        assert_eq!(de0002.len(), 2);
        assert!(de0002.iter().all(|f| f.selector_index == 0));
    }

    #[test]
    fn findings_re_evaluate_true_under_matches() {
        let model = builtin_model("leo-network").unwrap();
        let catalog = builtin_catalog();
        let report = enumerate_threats(&model, &catalog);
        for finding in &report.findings {
            let technique = catalog.technique(&finding.technique).unwrap();
            let selector = &technique.selectors[finding.selector_index];
            let ok = match finding.subject_kind {
                SelectorTarget::Flow => matches(
                    selector,
                    &model,
                    Subject::Flow(model.flow(&finding.subject).unwrap()),
                ),
                SelectorTarget::Component => matches(
                    selector,
                    &model,
                    Subject::Component(model.component(&finding.subject).unwrap()),
                ),
                SelectorTarget::TrustRelationship => matches(
                    selector,
                    &model,
                    Subject::TrustRelationship(model.trust_relationship(&finding.subject).unwrap()),
                ),
            };
            assert!(ok, "finding {finding:?} does not re-evaluate");
        }
    }

    #[test]
    fn reports_serialize_identically_across_runs() {
        let model = builtin_model("leo-network").unwrap();
        let catalog = builtin_catalog();
        let a = serde_json::to_string(&enumerate_threats(&model, &catalog)).unwrap();
        let b = serde_json::to_string(&enumerate_threats(&model, &catalog)).unwrap();
        assert_eq!(a, b);
    }
}
