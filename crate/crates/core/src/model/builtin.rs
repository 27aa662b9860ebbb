//! Built-in mission models for the two Earth-observation scenarios.

use super::{
    Component, ComponentKind, DataFlow, LinkKind, Medium, ModelError, PayloadClass, SystemModel,
    TrustRelationship, Vehicle, VehicleRole,
};

/// Scenario names accepted by [`builtin_model`].
pub const BUILTIN_MODELS: [&str; 2] = ["single-leo", "leo-network"];

fn vehicle(id: &str, name: &str, role: VehicleRole) -> Vehicle {
    Vehicle {
        id: id.into(),
        name: name.into(),
        role,
    }
}

fn component(id: &str, name: &str, kind: ComponentKind, vehicle: &str) -> Component {
    Component {
        id: id.into(),
        name: name.into(),
        kind,
        vehicle: vehicle.into(),
    }
}

fn flow(
    id: &str,
    name: &str,
    source: &str,
    dest: &str,
    link: LinkKind,
    payload: PayloadClass,
    medium: Medium,
) -> DataFlow {
    DataFlow {
        id: id.into(),
        name: name.into(),
        source: source.into(),
        dest: dest.into(),
        link,
        payload,
        medium,
    }
}

fn trust(id: &str, members: &[&str], description: &str) -> TrustRelationship {
    TrustRelationship {
        id: id.into(),
        members: members.iter().map(|m| m.to_string()).collect(),
        description: description.into(),
    }
}

/// Return one of the shipped mission models.
pub fn builtin_model(scenario: &str) -> Result<SystemModel, ModelError> {
    match scenario {
        "single-leo" => Ok(single_leo()),
        "leo-network" => Ok(leo_network()),
        other => Err(ModelError::UnknownScenario(other.to_string())),
    }
}

/// A single LEO satellite imaging for one ground station.
fn single_leo() -> SystemModel {
    use ComponentKind::*;
    use LinkKind::*;
    use Medium::{Rf, Wired};
    use PayloadClass::*;

    SystemModel {
        name: "single-leo".into(),
        vehicles: vec![
            vehicle("ground", "Ground site", VehicleRole::GroundSite),
            vehicle("leo_sat", "LEO satellite", VehicleRole::Satellite),
        ],
        components: vec![
            component("ground_station", "Ground station", GroundStation, "ground"),
            component(
                "payload_control",
                "Payload control",
                PayloadControl,
                "leo_sat",
            ),
            component("camera", "Camera", Camera, "leo_sat"),
            component("storage", "Storage", Storage, "leo_sat"),
            component(
                "image_processing",
                "Image processing",
                ImageProcessing,
                "leo_sat",
            ),
            component(
                "adcs",
                "Attitude determination and control algorithm",
                AdcsAlgorithm,
                "leo_sat",
            ),
            component(
                "propulsion_control",
                "Propulsion control",
                PropulsionControl,
                "leo_sat",
            ),
            component(
                "sensors_actuators",
                "Sensors and actuators",
                SensorsActuators,
                "leo_sat",
            ),
        ],
        flows: vec![
            flow(
                "image_schedule",
                "Image schedule",
                "ground_station",
                "payload_control",
                Uplink,
                ImageSchedule,
                Rf,
            ),
            flow(
                "image_generation",
                "Image generation",
                "payload_control",
                "camera",
                Internal,
                ImageGeneration,
                Wired,
            ),
            flow(
                "image_capture",
                "Image generation",
                "camera",
                "storage",
                Internal,
                ImageGeneration,
                Wired,
            ),
            flow(
                "raw_images",
                "Raw images",
                "storage",
                "image_processing",
                Internal,
                RawImages,
                Wired,
            ),
            flow(
                "processed_images_downlink",
                "Processed images",
                "image_processing",
                "ground_station",
                Downlink,
                ProcessedImages,
                Rf,
            ),
            flow(
                "housekeeping_downlink",
                "Housekeeping data",
                "storage",
                "ground_station",
                Downlink,
                HousekeepingData,
                Rf,
            ),
            flow(
                "maneuver_command",
                "Maneuver command",
                "payload_control",
                "propulsion_control",
                Internal,
                ManeuverCommand,
                Wired,
            ),
            flow(
                "attitude_reference",
                "Attitude reference",
                "adcs",
                "propulsion_control",
                Internal,
                AttitudeReference,
                Wired,
            ),
            flow(
                "sensor_feedback_payload",
                "Sensor feedback",
                "sensors_actuators",
                "payload_control",
                Internal,
                SensorFeedback,
                Wired,
            ),
            flow(
                "sensor_feedback_propulsion",
                "Sensor feedback",
                "sensors_actuators",
                "propulsion_control",
                Internal,
                SensorFeedback,
                Wired,
            ),
        ],
        trust: vec![
            trust(
                "ground-to-space",
                &["ground_station", "payload_control"],
                "Uplink tasking trust between the ground station and the payload control element",
            ),
            trust(
                "image-acquisition-cluster",
                &[
                    "adcs",
                    "propulsion_control",
                    "sensors_actuators",
                    "payload_control",
                ],
                "Intra-satellite trust among the components supporting image acquisition",
            ),
        ],
    }
}

/// A trailing-satellite network coordinated by a mothership that processes,
/// stores and downlinks the imagery.
fn leo_network() -> SystemModel {
    use ComponentKind::*;
    use LinkKind::*;
    use Medium::{Fso, Rf, Wired};
    use PayloadClass::*;

    SystemModel {
        name: "leo-network".into(),
        vehicles: vec![
            vehicle("ground", "Ground site", VehicleRole::GroundSite),
            vehicle("mothership", "Mothership", VehicleRole::Mothership),
            vehicle("trailing_sat", "Trailing satellite", VehicleRole::Satellite),
        ],
        components: vec![
            component("ground_station", "Ground station", GroundStation, "ground"),
            component(
                "mothership_obc",
                "Onboard computer",
                OnboardComputer,
                "mothership",
            ),
            component(
                "orbit_determination",
                "Orbit determination",
                OrbitDetermination,
                "mothership",
            ),
            component(
                "sectoring_altitude",
                "Sectoring altitude calculation",
                SectoringAltitudeCalculation,
                "mothership",
            ),
            component(
                "maneuver_calculation",
                "Maneuver calculation",
                ManeuverCalculation,
                "mothership",
            ),
            component(
                "satellite_obc",
                "Onboard computer",
                OnboardComputer,
                "trailing_sat",
            ),
            component(
                "payload_control",
                "Payload control",
                PayloadControl,
                "trailing_sat",
            ),
            component("camera", "Camera", Camera, "trailing_sat"),
            component("storage", "Storage", Storage, "trailing_sat"),
            component(
                "mothership_image_processing",
                "Image processing",
                ImageProcessing,
                "mothership",
            ),
            component("mothership_storage", "Storage", Storage, "mothership"),
            component(
                "adcs",
                "Attitude determination and control algorithm",
                AdcsAlgorithm,
                "trailing_sat",
            ),
            component(
                "propulsion_control",
                "Propulsion control",
                PropulsionControl,
                "trailing_sat",
            ),
            component(
                "sensors_actuators",
                "Sensors and actuators",
                SensorsActuators,
                "trailing_sat",
            ),
        ],
        flows: vec![
            flow(
                "image_schedule",
                "Image schedule",
                "ground_station",
                "mothership_obc",
                Uplink,
                ImageSchedule,
                Rf,
            ),
            flow(
                "orbit_coordination",
                "Orbit coordination",
                "mothership_obc",
                "orbit_determination",
                Internal,
                ScheduledCommand,
                Wired,
            ),
            flow(
                "sectoring_altitude_data",
                "Sectoring and altitude",
                "orbit_determination",
                "sectoring_altitude",
                Internal,
                OrbitalElements,
                Wired,
            ),
            flow(
                "maneuver_coordination",
                "Maneuver coordination",
                "sectoring_altitude",
                "maneuver_calculation",
                Internal,
                OrbitalElements,
                Wired,
            ),
            flow(
                "imaging_time_plan",
                "Imaging time plan",
                "sectoring_altitude",
                "mothership_obc",
                Internal,
                ImagingTimePlan,
                Wired,
            ),
            flow(
                "maneuver_schedule",
                "Orbital maneuver schedule",
                "maneuver_calculation",
                "mothership_obc",
                Internal,
                OrbitalManeuverSchedule,
                Wired,
            ),
            flow(
                "imaging_time_plan_isl",
                "Imaging time plan",
                "mothership_obc",
                "satellite_obc",
                Isl,
                ImagingTimePlan,
                Fso,
            ),
            flow(
                "maneuver_schedule_isl",
                "Orbital maneuver schedule",
                "mothership_obc",
                "satellite_obc",
                Isl,
                OrbitalManeuverSchedule,
                Fso,
            ),
            flow(
                "capture_tasking",
                "Capture tasking",
                "satellite_obc",
                "payload_control",
                Internal,
                ScheduledCommand,
                Wired,
            ),
            flow(
                "image_generation",
                "Image generation",
                "payload_control",
                "camera",
                Internal,
                ImageGeneration,
                Wired,
            ),
            flow(
                "image_capture",
                "Image generation",
                "camera",
                "storage",
                Internal,
                ImageGeneration,
                Wired,
            ),
            flow(
                "raw_images_isl",
                "Raw images",
                "storage",
                "mothership_obc",
                Isl,
                RawImages,
                Fso,
            ),
            flow(
                "housekeeping_isl",
                "Housekeeping data",
                "storage",
                "mothership_obc",
                Isl,
                HousekeepingData,
                Fso,
            ),
            flow(
                "raw_image_processing",
                "Raw images",
                "mothership_obc",
                "mothership_image_processing",
                Internal,
                RawImages,
                Wired,
            ),
            flow(
                "processed_images_downlink",
                "Processed images",
                "mothership_image_processing",
                "ground_station",
                Downlink,
                ProcessedImages,
                Rf,
            ),
            flow(
                "processed_images_archive",
                "Processed images",
                "mothership_image_processing",
                "mothership_storage",
                Internal,
                ProcessedImages,
                Wired,
            ),
            flow(
                "housekeeping_downlink",
                "Housekeeping data",
                "mothership_obc",
                "ground_station",
                Downlink,
                HousekeepingData,
                Rf,
            ),
            flow(
                "maneuver_command",
                "Maneuver command",
                "payload_control",
                "propulsion_control",
                Internal,
                ManeuverCommand,
                Wired,
            ),
            flow(
                "attitude_reference",
                "Attitude reference",
                "adcs",
                "propulsion_control",
                Internal,
                AttitudeReference,
                Wired,
            ),
            flow(
                "sensor_feedback_payload",
                "Sensor feedback",
                "sensors_actuators",
                "payload_control",
                Internal,
                SensorFeedback,
                Wired,
            ),
            flow(
                "sensor_feedback_propulsion",
                "Sensor feedback",
                "sensors_actuators",
                "propulsion_control",
                Internal,
                SensorFeedback,
                Wired,
            ),
        ],
        trust: vec![
            trust(
                "ground-to-space",
                &["ground_station", "payload_control"],
                "Uplink tasking trust between the ground station and the payload control element",
            ),
            trust(
                "image-acquisition-cluster",
                &[
                    "adcs",
                    "propulsion_control",
                    "sensors_actuators",
                    "payload_control",
                ],
                "Intra-satellite trust among the components supporting image acquisition",
            ),
            trust(
                "mothership-trailing",
                &["mothership_obc", "satellite_obc"],
                "Coordination trust between the mothership OBC and the trailing satellite OBC",
            ),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_leo_component_order_is_fixed() {
        let model = builtin_model("single-leo").unwrap();
        let ids: Vec<_> = model.components.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "ground_station",
                "payload_control",
                "camera",
                "storage",
                "image_processing",
                "adcs",
                "propulsion_control",
                "sensors_actuators"
            ]
        );
    }

    #[test]
    fn single_leo_uplink_carries_image_schedule_into_payload_control() {
        let model = builtin_model("single-leo").unwrap();
        let uplink = model
            .flows
            .iter()
            .find(|f| f.link == LinkKind::Uplink)
            .unwrap();
        assert_eq!(uplink.payload, PayloadClass::ImageSchedule);
        assert_eq!(uplink.dest, "payload_control");
    }

    #[test]
    fn leo_network_plan_flows_run_over_isl() {
        let model = builtin_model("leo-network").unwrap();
        let plan = model.flow("imaging_time_plan_isl").unwrap();
        assert_eq!(plan.link, LinkKind::Isl);
        assert_eq!(plan.payload, PayloadClass::ImagingTimePlan);
        assert_eq!(plan.source, "mothership_obc");
        assert_eq!(plan.dest, "satellite_obc");
        assert_eq!(plan.medium, Medium::Fso);
    }

    #[test]
    fn leo_network_has_mothership_trailing_trust() {
        let model = builtin_model("leo-network").unwrap();
        let t = model.trust_relationship("mothership-trailing").unwrap();
        assert_eq!(
            t.members,
            vec!["mothership_obc".to_string(), "satellite_obc".to_string()]
        );
    }

    #[test]
    fn unknown_scenario_is_rejected() {
        assert_eq!(
            builtin_model("mars-relay"),
            Err(ModelError::UnknownScenario("mars-relay".into()))
        );
    }
}
