//! End-to-end pipeline report: run any subset of the analysis steps on one
//! model and emit a single document whose sections are byte-identical to the
//! standalone subcommand outputs.

use crate::blocks::{
    derive_plan, generate_shall, render_plan_markdown, render_shall_markdown, Profile,
    SecurityPlan, ShallError, ShallStatement,
};
use crate::catalog::{Catalog, Countermeasure};
use crate::linksim::{run_simulation, ScenarioConfig, SimError, SimResult};
use crate::model::SystemModel;
use crate::surface::{
    enumerate_surfaces, render_markdown as render_surface_markdown, ServiceLabels, SurfaceEntry,
    SurfaceError,
};
use crate::threatmap::{
    enumerate_threats, render_markdown as render_threats_markdown, techniques_present, ThreatReport,
};
use serde::Serialize;

/// Pipeline step numbers, matching the methodology order: scope, decompose,
/// surfaces, threats, principles, secure blocks, shall statements.
pub const STEP_SCOPE: u8 = 1;
pub const STEP_DECOMPOSITION: u8 = 2;
pub const STEP_SURFACE: u8 = 3;
pub const STEP_THREATS: u8 = 4;
pub const STEP_PRINCIPLES: u8 = 5;
pub const STEP_BLOCKS: u8 = 6;
pub const STEP_SHALL: u8 = 7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScopeSection {
    pub step: u8,
    pub model: String,
    pub catalog: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionSection {
    pub step: u8,
    pub vehicles: usize,
    pub components: usize,
    pub flows: usize,
    pub trust_relationships: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceSection {
    pub step: u8,
    pub entries: Vec<SurfaceEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreatSection {
    pub step: u8,
    #[serde(flatten)]
    pub report: ThreatReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipleSection {
    pub step: u8,
    pub countermeasures: Vec<Countermeasure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSection {
    pub step: u8,
    #[serde(flatten)]
    pub plan: SecurityPlan,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShallSection {
    pub step: u8,
    pub statements: Vec<ShallStatement>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<ScopeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threats: Option<ThreatSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principles: Option<PrincipleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlockSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shall: Option<ShallSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimResult>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Shall(#[from] ShallError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Run steps 2-7 (or the requested subset) plus the optional simulation.
#[allow(clippy::too_many_arguments)]
pub fn build_report(
    model: &SystemModel,
    catalog: &Catalog,
    catalog_label: &str,
    labels: &ServiceLabels,
    profile: Option<&Profile>,
    steps: &[u8],
    scenario: Option<&ScenarioConfig>,
) -> Result<PipelineReport, ReportError> {
    let wanted = |step: u8| steps.contains(&step);
    let mut report = PipelineReport {
        model: model.name.clone(),
        scope: None,
        decomposition: None,
        surface: None,
        threats: None,
        principles: None,
        blocks: None,
        shall: None,
        simulation: None,
    };

    if wanted(STEP_SCOPE) {
        report.scope = Some(ScopeSection {
            step: STEP_SCOPE,
            model: model.name.clone(),
            catalog: catalog_label.to_string(),
        });
    }
    if wanted(STEP_DECOMPOSITION) {
        report.decomposition = Some(DecompositionSection {
            step: STEP_DECOMPOSITION,
            vehicles: model.vehicles.len(),
            components: model.components.len(),
            flows: model.flows.len(),
            trust_relationships: model.trust.len(),
        });
    }
    if wanted(STEP_SURFACE) {
        report.surface = Some(SurfaceSection {
            step: STEP_SURFACE,
            entries: enumerate_surfaces(model, labels)?,
        });
    }

    let needs_threats = wanted(STEP_THREATS)
        || wanted(STEP_PRINCIPLES)
        || wanted(STEP_BLOCKS)
        || wanted(STEP_SHALL);
    let threat_report = needs_threats.then(|| enumerate_threats(model, catalog));

    if let Some(threat_report) = &threat_report {
        if wanted(STEP_THREATS) {
            report.threats = Some(ThreatSection {
                step: STEP_THREATS,
                report: threat_report.clone(),
            });
        }
        if wanted(STEP_PRINCIPLES) {
            let mut countermeasures = Vec::new();
            for technique in techniques_present(threat_report) {
                for cm_id in catalog.mapped_countermeasures(&technique) {
                    if let Some(cm) = catalog.countermeasure(cm_id) {
                        if !countermeasures.contains(cm) {
                            countermeasures.push(cm.clone());
                        }
                    }
                }
            }
            countermeasures.sort_by_key(|cm| catalog.countermeasure_rank(&cm.id));
            report.principles = Some(PrincipleSection {
                step: STEP_PRINCIPLES,
                countermeasures,
            });
        }
        let needs_plan = wanted(STEP_BLOCKS) || wanted(STEP_SHALL);
        if needs_plan {
            let plan = derive_plan(threat_report, catalog, model);
            if wanted(STEP_SHALL) {
                report.shall = Some(ShallSection {
                    step: STEP_SHALL,
                    statements: generate_shall(&plan, catalog, profile)?,
                });
            }
            if wanted(STEP_BLOCKS) {
                report.blocks = Some(BlockSection {
                    step: STEP_BLOCKS,
                    plan,
                });
            }
        }
    }

    if let Some(scenario) = scenario {
        report.simulation = Some(run_simulation(scenario)?);
    }

    Ok(report)
}

/// Render the report as Markdown. Section bodies reuse the standalone
/// renderers verbatim.
pub fn render_markdown(report: &PipelineReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# Secure-by-component report: {}\n", report.model));
    if let Some(scope) = &report.scope {
        out.push_str(&format!("\n## Step {}: Scope\n\n", scope.step));
        out.push_str(&format!(
            "Link-segment security engineering for model `{}` against catalog `{}`.\n",
            scope.model, scope.catalog
        ));
    }
    if let Some(d) = &report.decomposition {
        out.push_str(&format!("\n## Step {}: Decomposition\n\n", d.step));
        out.push_str(&format!(
            "{} vehicles, {} components, {} data flows, {} trust relationships.\n",
            d.vehicles, d.components, d.flows, d.trust_relationships
        ));
    }
    if let Some(s) = &report.surface {
        out.push_str(&format!("\n## Step {}: Attack surface\n\n", s.step));
        out.push_str(&render_surface_markdown(&s.entries));
    }
    if let Some(t) = &report.threats {
        out.push_str(&format!("\n## Step {}: Threats\n\n", t.step));
        out.push_str(&render_threats_markdown(&t.report));
    }
    if let Some(p) = &report.principles {
        out.push_str(&format!(
            "\n## Step {}: Secure-by-design principles\n\n",
            p.step
        ));
        for cm in &p.countermeasures {
            out.push_str(&format!(
                "- **{} ({})**: {}\n",
                cm.name, cm.id, cm.description
            ));
        }
    }
    if let Some(b) = &report.blocks {
        out.push_str(&format!("\n## Step {}: Secure blocks\n\n", b.step));
        out.push_str(&render_plan_markdown(&b.plan));
    }
    if let Some(s) = &report.shall {
        out.push_str(&format!("\n## Step {}: Shall statements\n\n", s.step));
        out.push_str(&render_shall_markdown(&s.statements));
    }
    if let Some(sim) = &report.simulation {
        out.push_str("\n## Simulation\n\n");
        out.push_str(&format!(
            "commanded {}, captured {}, delivered {}; detections {}, blocked {}, \
             integrity violations accepted {}, confidentiality breaches {}; {} events.\n",
            sim.metrics.commanded,
            sim.metrics.captured,
            sim.metrics.delivered,
            sim.metrics.detections,
            sim.metrics.blocked,
            sim.metrics.integrity_violations_accepted,
            sim.metrics.confidentiality_breaches,
            sim.events.len()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::builtin_profile;
    use crate::catalog::builtin_catalog;
    use crate::model::builtin_model;
    use crate::surface::builtin_labels;

    #[test]
    fn full_report_contains_every_requested_section() {
        let model = builtin_model("single-leo").unwrap();
        let catalog = builtin_catalog();
        let labels = builtin_labels();
        let profile = builtin_profile();
        let report = build_report(
            &model,
            &catalog,
            "builtin",
            &labels,
            Some(&profile),
            &[1, 2, 3, 4, 5, 6, 7],
            None,
        )
        .unwrap();
        assert!(report.scope.is_some());
        assert!(report.decomposition.is_some());
        assert_eq!(report.surface.as_ref().unwrap().entries.len(), 6);
        assert!(!report.threats.as_ref().unwrap().report.findings.is_empty());
        assert_eq!(report.principles.as_ref().unwrap().countermeasures.len(), 6);
        assert_eq!(report.blocks.as_ref().unwrap().plan.blocks.len(), 8);
        assert_eq!(report.shall.as_ref().unwrap().statements.len(), 4);
        assert!(report.simulation.is_none());

        let md = render_markdown(&report);
        for header in [
            "## Step 1: Scope",
            "## Step 2: Decomposition",
            "## Step 3: Attack surface",
            "## Step 4: Threats",
            "## Step 5: Secure-by-design principles",
            "## Step 6: Secure blocks",
            "## Step 7: Shall statements",
        ] {
            assert!(md.contains(header), "missing {header}");
        }
    }

    #[test]
    fn sections_track_requested_steps() {
        let model = builtin_model("single-leo").unwrap();
        let catalog = builtin_catalog();
        let labels = builtin_labels();
        let report =
            build_report(&model, &catalog, "builtin", &labels, None, &[3, 4], None).unwrap();
        assert!(report.scope.is_none());
        assert!(report.surface.is_some());
        assert!(report.threats.is_some());
        assert!(report.blocks.is_none());
        assert!(report.shall.is_none());
    }

    #[test]
    fn report_json_is_deterministic() {
        let model = builtin_model("leo-network").unwrap();
        let catalog = builtin_catalog();
        let labels = builtin_labels();
        let a = serde_json::to_string(
            &build_report(
                &model,
                &catalog,
                "builtin",
                &labels,
                None,
                &[2, 3, 4, 5, 6, 7],
                None,
            )
            .unwrap(),
        )
        .unwrap();
        let b = serde_json::to_string(
            &build_report(
                &model,
                &catalog,
                "builtin",
                &labels,
                None,
                &[2, 3, 4, 5, 6, 7],
                None,
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
