//! Attack-surface enumeration: derive the (component, input, processing,
//! output, related data flow) table from a model. The table strings are
//! editorial, so they live in a data-driven label table rather than code;
//! the builtin labels reproduce the published outlines for both scenarios.

use crate::model::PayloadClass;
use crate::model::{ComponentKind, SystemModel};
use serde::Serialize;
use std::collections::BTreeMap;

/// What a label row keys on. Component-id overrides take precedence over
/// kind-level rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelKey {
    Kind(ComponentKind),
    Component(String),
}

/// Which of the paired flows a surface entry records as its related flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelatedSide {
    Inbound,
    Outbound,
}

/// One row of the service-label table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelRow {
    pub key: LabelKey,
    /// Restricts which inbound payload class triggers this row; `None`
    /// matches any inbound flow.
    pub inbound: Option<PayloadClass>,
    /// Selects the designated outbound flow when `related` is `Outbound`.
    pub outbound: Option<PayloadClass>,
    pub input_label: String,
    pub processing_label: String,
    pub output_label: String,
    pub related: RelatedSide,
    /// Display override for the related-flow column. The structural
    /// `related_flow` id still points at a real flow of the model.
    pub related_label: Option<String>,
}

/// Label table: firing rows plus a default processing label per kind. Every
/// component kind present in a model must appear in one or the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceLabels {
    pub rows: Vec<LabelRow>,
    pub defaults: BTreeMap<ComponentKind, String>,
}

impl ServiceLabels {
    /// Rows applying to a component: id overrides win over kind rows.
    fn rows_for<'a>(&'a self, component_id: &str, kind: ComponentKind) -> Vec<&'a LabelRow> {
        let overrides: Vec<&LabelRow> = self
            .rows
            .iter()
            .filter(|r| matches!(&r.key, LabelKey::Component(id) if id == component_id))
            .collect();
        if !overrides.is_empty() {
            return overrides;
        }
        self.rows
            .iter()
            .filter(|r| matches!(&r.key, LabelKey::Kind(k) if *k == kind))
            .collect()
    }

    fn knows_kind(&self, kind: ComponentKind) -> bool {
        self.defaults.contains_key(&kind)
            || self
                .rows
                .iter()
                .any(|r| matches!(&r.key, LabelKey::Kind(k) if *k == kind))
    }
}

/// One row of the attack-surface table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceEntry {
    pub component: String,
    pub component_name: String,
    pub input: String,
    pub processing: String,
    pub output: String,
    pub related_flow: String,
    pub related_name: String,
}

/// A flow the enumeration did not cover, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageWarning {
    pub flow: String,
    pub message: String,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("component kind `{0}` is absent from the label table")]
    MissingLabel(ComponentKind),
}

/// Enumerate the attack surface of `model` under `labels`.
///
/// For each component in declaration order, each inbound flow (declaration
/// order) that a label row pairs with emits one entry; multi-row kinds emit
/// one entry per row. Components whose rows match no inbound flow emit
/// nothing and surface through [`coverage_warnings`] instead.
pub fn enumerate_surfaces(
    model: &SystemModel,
    labels: &ServiceLabels,
) -> Result<Vec<SurfaceEntry>, SurfaceError> {
    for component in &model.components {
        if !labels.knows_kind(component.kind)
            && !labels
                .rows
                .iter()
                .any(|r| matches!(&r.key, LabelKey::Component(id) if *id == component.id))
        {
            return Err(SurfaceError::MissingLabel(component.kind));
        }
    }

    let mut entries = Vec::new();
    for component in &model.components {
        let rows = labels.rows_for(&component.id, component.kind);
        if rows.is_empty() {
            continue;
        }
        for inbound in model.inbound_flows(&component.id) {
            for row in &rows {
                if let Some(required) = row.inbound {
                    if required != inbound.payload {
                        continue;
                    }
                }
                let related = match row.related {
                    RelatedSide::Inbound => inbound,
                    RelatedSide::Outbound => model
                        .outbound_flows(&component.id)
                        .find(|f| row.outbound.is_none_or(|p| p == f.payload))
                        .or_else(|| model.outbound_flows(&component.id).next())
                        .unwrap_or(inbound),
                };
                entries.push(SurfaceEntry {
                    component: component.id.clone(),
                    component_name: component.name.clone(),
                    input: row.input_label.clone(),
                    processing: row.processing_label.clone(),
                    output: row.output_label.clone(),
                    related_flow: related.id.clone(),
                    related_name: row
                        .related_label
                        .clone()
                        .unwrap_or_else(|| related.name.clone()),
                });
            }
        }
    }
    Ok(entries)
}

/// Flows that appear as nobody's related flow, with the cause.
pub fn coverage_warnings(
    model: &SystemModel,
    labels: &ServiceLabels,
) -> Result<Vec<CoverageWarning>, SurfaceError> {
    let entries = enumerate_surfaces(model, labels)?;
    let mut warnings = Vec::new();
    for flow in &model.flows {
        if entries.iter().any(|e| e.related_flow == flow.id) {
            continue;
        }
        let message = match model.component(&flow.dest) {
            Some(dest) if labels.rows_for(&dest.id, dest.kind).is_empty() => format!(
                "flow `{}` is uncovered: destination kind {} has no label row",
                flow.id, dest.kind
            ),
            Some(_) => format!(
                "flow `{}` is uncovered: no label row designates it",
                flow.id
            ),
            None => format!(
                "flow `{}` is uncovered: destination does not resolve",
                flow.id
            ),
        };
        warnings.push(CoverageWarning {
            flow: flow.id.clone(),
            message,
        });
    }
    Ok(warnings)
}

/// Render entries as the five-column Markdown table.
pub fn render_markdown(entries: &[SurfaceEntry]) -> String {
    let mut out = String::new();
    out.push_str("| Component | Input | Processing | Output | Related data flow |\n");
    out.push_str("| --- | --- | --- | --- | --- |\n");
    for entry in entries {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            entry.component_name, entry.input, entry.processing, entry.output, entry.related_name
        ));
    }
    out
}

fn kind_row(
    kind: ComponentKind,
    inbound: Option<PayloadClass>,
    outbound: Option<PayloadClass>,
    input: &str,
    processing: &str,
    output: &str,
    related: RelatedSide,
) -> LabelRow {
    LabelRow {
        key: LabelKey::Kind(kind),
        inbound,
        outbound,
        input_label: input.into(),
        processing_label: processing.into(),
        output_label: output.into(),
        related,
        related_label: None,
    }
}

fn component_row(
    component: &str,
    processing: &str,
    related: RelatedSide,
    outbound: Option<PayloadClass>,
    related_label: Option<&str>,
) -> LabelRow {
    LabelRow {
        key: LabelKey::Component(component.into()),
        inbound: None,
        outbound,
        input_label: "Signal from payload control".into(),
        processing_label: processing.into(),
        output_label: "Acknowledgement".into(),
        related,
        related_label: related_label.map(|s| s.to_string()),
    }
}

/// The shipped label table reproducing both published surface outlines.
pub fn builtin_labels() -> ServiceLabels {
    use ComponentKind::*;
    use PayloadClass::*;
    use RelatedSide::{Inbound, Outbound};

    let rows = vec![
        kind_row(
            GroundStation,
            Some(ProcessedImages),
            None,
            "Processed images",
            "Image service",
            "Image product",
            Inbound,
        ),
        kind_row(
            ImageProcessing,
            Some(RawImages),
            Some(ProcessedImages),
            "Raw images",
            "Image service",
            "Processed images",
            Outbound,
        ),
        kind_row(
            ImageProcessing,
            Some(RawImages),
            Some(ProcessedImages),
            "Raw image data",
            "Image processing service",
            "Processed images",
            Outbound,
        ),
        kind_row(
            PayloadControl,
            Some(ImageSchedule),
            None,
            "Image schedule",
            "Scheduling service",
            "Scheduled commands",
            Inbound,
        ),
        kind_row(
            Camera,
            Some(ImageGeneration),
            None,
            "Image schedule command",
            "Image acquisition service",
            "Image data",
            Inbound,
        ),
        kind_row(
            Storage,
            Some(ImageGeneration),
            None,
            "Image data",
            "Data storage service",
            "Raw images",
            Inbound,
        ),
        // Mothership OBC sub-function rows: literal strings, one entry each.
        component_row("orbit_determination", "Commands", Outbound, None, None),
        component_row(
            "sectoring_altitude",
            "Commands",
            Inbound,
            None,
            Some("Processed images"),
        ),
        component_row(
            "maneuver_calculation",
            "Commands",
            Inbound,
            None,
            Some("Processed images"),
        ),
        component_row(
            "mothership_image_processing",
            "Image data",
            Outbound,
            Some(ProcessedImages),
            None,
        ),
        component_row("mothership_storage", "Image data", Inbound, None, None),
    ];

    let defaults = [
        (GroundStation, "Image service"),
        (PayloadControl, "Scheduling service"),
        (Camera, "Image acquisition service"),
        (Storage, "Data storage service"),
        (ImageProcessing, "Image processing service"),
        (AdcsAlgorithm, "Attitude control service"),
        (PropulsionControl, "Propulsion control service"),
        (SensorsActuators, "Sensor feedback service"),
        (OnboardComputer, "Coordination service"),
        (OrbitDetermination, "Commands"),
        (SectoringAltitudeCalculation, "Commands"),
        (ManeuverCalculation, "Commands"),
    ]
    .into_iter()
    .map(|(k, v)| (k, v.to_string()))
    .collect();

    ServiceLabels { rows, defaults }
}
