//! Secure-by-component engineering toolkit for satellite Earth-observation
//! data systems.
//!
//! The library ingests a declarative model of a mission (vehicles, components,
//! data flows, trust relationships), enumerates its attack surface, matches a
//! catalog of attack techniques against it, maps the findings to
//! countermeasures, synthesizes secure blocks with numbered `shall`
//! requirements, and validates designs with a deterministic link-segment
//! attack simulator.

pub mod blocks;
pub mod catalog;
pub mod linksim;
pub mod model;
pub mod report;
pub mod surface;
pub mod threatmap;

pub use model::{builtin_model, parse_model, serialize_model, to_dot, validate, SystemModel};
