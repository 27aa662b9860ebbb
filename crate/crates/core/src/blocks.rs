//! Secure-block synthesis and shall-statement generation: map threat
//! findings to countermeasures, attach them to components, and emit numbered
//! requirement statements with rationale sub-clauses.

use crate::catalog::{Catalog, SelectorTarget};
use crate::model::SystemModel;
use crate::threatmap::{ThreatFinding, ThreatReport};
use serde::Serialize;
use std::collections::BTreeMap;

/// A component annotated with the countermeasures it must implement and the
/// findings that motivated them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecureBlock {
    pub component: String,
    pub component_name: String,
    pub countermeasures: Vec<String>,
    pub provenance: Vec<ThreatFinding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecurityPlan {
    pub model: String,
    pub blocks: Vec<SecureBlock>,
    pub unmapped: Vec<ThreatFinding>,
}

/// One numbered requirement with its rationale sub-clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShallStatement {
    pub label: String,
    pub subject: String,
    pub requirement: String,
    pub clauses: Vec<ShallClause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShallClause {
    pub label: String,
    pub text: String,
}

/// Reproduction harness for a hand-curated statement set: which blocks and
/// countermeasures to emit, in which order, with which clause texts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub name: String,
    pub block_order: Vec<(String, Vec<String>)>,
    pub clause_selection: BTreeMap<(String, String), Vec<String>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ShallError {
    #[error("profile `{profile}` references unknown {what} `{id}`")]
    DanglingProfileReference {
        profile: String,
        what: &'static str,
        id: String,
    },
}

/// Attach mapped countermeasures to components.
///
/// Component findings attach to the component itself, flow findings to both
/// endpoints, trust findings to every member. Blocks follow component
/// declaration order; countermeasures within a block follow catalog order.
pub fn derive_plan(report: &ThreatReport, catalog: &Catalog, model: &SystemModel) -> SecurityPlan {
    let mut per_component: BTreeMap<&str, (Vec<String>, Vec<ThreatFinding>)> = BTreeMap::new();
    let mut unmapped = Vec::new();

    for finding in &report.findings {
        let countermeasures = catalog.mapped_countermeasures(&finding.technique);
        if countermeasures.is_empty() {
            unmapped.push(finding.clone());
            continue;
        }
        let targets: Vec<&str> = match finding.subject_kind {
            SelectorTarget::Component => vec![finding.subject.as_str()],
            SelectorTarget::Flow => match model.flow(&finding.subject) {
                Some(flow) => vec![flow.source.as_str(), flow.dest.as_str()],
                None => vec![],
            },
            SelectorTarget::TrustRelationship => match model.trust_relationship(&finding.subject) {
                Some(trust) => trust.members.iter().map(|m| m.as_str()).collect(),
                None => vec![],
            },
        };
        for target in targets {
            let slot = per_component.entry(target).or_default();
            for cm in countermeasures {
                if !slot.0.contains(cm) {
                    slot.0.push(cm.clone());
                }
            }
            slot.1.push(finding.clone());
        }
    }

    let blocks = model
        .components
        .iter()
        .filter_map(|component| {
            let (mut countermeasures, provenance) = per_component.remove(component.id.as_str())?;
            countermeasures.sort_by_key(|cm| catalog.countermeasure_rank(cm));
            Some(SecureBlock {
                component: component.id.clone(),
                component_name: component.name.clone(),
                countermeasures,
                provenance,
            })
        })
        .collect();

    SecurityPlan {
        model: report.model.clone(),
        blocks,
        unmapped,
    }
}

/// Generate numbered shall statements from a plan.
///
/// Without a profile: one statement per (block, countermeasure) in plan
/// order, clauses taken from the countermeasure's rationale clauses. With a
/// profile: statements and clauses follow the profile. Numbering is dense
/// from EO 1 either way.
pub fn generate_shall(
    plan: &SecurityPlan,
    catalog: &Catalog,
    profile: Option<&Profile>,
) -> Result<Vec<ShallStatement>, ShallError> {
    let picks: Vec<(String, String, Vec<String>)> = match profile {
        None => plan
            .blocks
            .iter()
            .flat_map(|block| {
                block.countermeasures.iter().map(move |cm| {
                    let clauses = catalog
                        .countermeasure(cm)
                        .map(|c| c.rationale_clauses.clone())
                        .unwrap_or_default();
                    (block.component_name.clone(), cm.clone(), clauses)
                })
            })
            .collect(),
        Some(profile) => {
            let mut picks = Vec::new();
            for (component, countermeasures) in &profile.block_order {
                let block = plan
                    .blocks
                    .iter()
                    .find(|b| b.component == *component)
                    .ok_or(ShallError::DanglingProfileReference {
                        profile: profile.name.clone(),
                        what: "component",
                        id: component.clone(),
                    })?;
                for cm in countermeasures {
                    let countermeasure =
                        catalog
                            .countermeasure(cm)
                            .ok_or(ShallError::DanglingProfileReference {
                                profile: profile.name.clone(),
                                what: "countermeasure",
                                id: cm.clone(),
                            })?;
                    let clauses = profile
                        .clause_selection
                        .get(&(component.clone(), cm.clone()))
                        .cloned()
                        .unwrap_or_else(|| countermeasure.rationale_clauses.clone());
                    picks.push((block.component_name.clone(), cm.clone(), clauses));
                }
            }
            picks
        }
    };

    let statements = picks
        .into_iter()
        .enumerate()
        .map(|(i, (component_name, cm, clauses))| {
            let n = i + 1;
            let action = catalog
                .countermeasure(&cm)
                .map(|c| c.action_phrase.clone())
                .unwrap_or_default();
            let subject = format!("{component_name} block");
            ShallStatement {
                label: format!("EO {n}"),
                requirement: format!("{subject} shall {action}"),
                subject,
                clauses: clauses
                    .into_iter()
                    .enumerate()
                    .map(|(j, text)| ShallClause {
                        label: format!("EO {n}.{}", j + 1),
                        text,
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(statements)
}

/// The shipped "paper-eo" profile: the curated four-statement set covering
/// the ADCS, payload control and propulsion control blocks.
pub fn builtin_profile() -> Profile {
    let block_order = vec![
        (
            "adcs".to_string(),
            vec!["CM0032".to_string(), "CM0038".to_string()],
        ),
        ("payload_control".to_string(), vec!["CM0070".to_string()]),
        ("propulsion_control".to_string(), vec!["CM0042".to_string()]),
    ];
    let mut clause_selection = BTreeMap::new();
    clause_selection.insert(
        ("adcs".to_string(), "CM0032".to_string()),
        vec!["to monitor unauthorized and/or malicious access attempts;".to_string()],
    );
    clause_selection.insert(
        ("adcs".to_string(), "CM0038".to_string()),
        vec![
            "to ensure that control algorithms are isolated from other system components to \
             prevent cross-contamination of faults;"
                .to_string(),
            "to provide multi-layered security for critical algorithms.".to_string(),
        ],
    );
    clause_selection.insert(
        ("payload_control".to_string(), "CM0070".to_string()),
        vec![
            "to ensure data transmission continuity in the case of primary link failure;"
                .to_string(),
        ],
    );
    clause_selection.insert(
        ("propulsion_control".to_string(), "CM0042".to_string()),
        vec![
            "to detect, analyze, and promptly rectify propulsion system anomalies;".to_string(),
            "to support fallback operational modes that can be activated during fault \
             conditions to maintain basic functionality."
                .to_string(),
        ],
    );
    Profile {
        name: "paper-eo".into(),
        block_order,
        clause_selection,
    }
}

/// Render statements as the nested Markdown list layout.
pub fn render_shall_markdown(statements: &[ShallStatement]) -> String {
    let mut out = String::new();
    for statement in statements {
        if statement.clauses.is_empty() {
            out.push_str(&format!(
                "{}: {}.\n",
                statement.label, statement.requirement
            ));
        } else {
            out.push_str(&format!(
                "{}: {}:\n",
                statement.label, statement.requirement
            ));
            for clause in &statement.clauses {
                out.push_str(&format!("  - {}: {}\n", clause.label, clause.text));
            }
        }
    }
    out
}

/// Render a plan as Markdown sections.
pub fn render_plan_markdown(plan: &SecurityPlan) -> String {
    let mut out = String::new();
    for block in &plan.blocks {
        out.push_str(&format!(
            "- **{}** ({}): {}\n",
            block.component_name,
            block.component,
            block.countermeasures.join(", ")
        ));
        for finding in &block.provenance {
            out.push_str(&format!(
                "  - {} on {} {}: {}\n",
                finding.technique, finding.subject_kind, finding.subject, finding.rationale
            ));
        }
    }
    if !plan.unmapped.is_empty() {
        out.push_str("\nUnmapped findings:\n");
        for finding in &plan.unmapped {
            out.push_str(&format!("- {} on {}\n", finding.technique, finding.subject));
        }
    }
    out
}
