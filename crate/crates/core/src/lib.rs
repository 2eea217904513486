//! Compiler and shuttling-noise simulator for linear-tape trapped-ion
//! devices: one long ion chain moved under a fixed-width laser head.
//!
//! The pipeline is parse → decompose → place → route → schedule → price;
//! [`pipeline::compile`] runs all of it for one device.

pub mod artifacts;
pub mod bench;
pub mod circuit;
pub mod device;
pub mod error;
pub mod frontend;
pub mod mapping;
pub mod noise;
pub mod oracle;
mod par;
pub mod pipeline;
pub mod router;
pub mod scheduler;

pub use circuit::{build_dag, Circuit, Gate, GateKind};
pub use device::DeviceSpec;
pub use error::{Error, Result};
pub use mapping::{gate_distance, IonIndex, Mapping, QubitId};
pub use noise::{FidelityReport, NoiseParams};
pub use pipeline::{compile, Compiled, RouterKind};
pub use router::{RoutedCircuit, RouterConfig};
pub use scheduler::{HeadPosition, Schedule, Step};
