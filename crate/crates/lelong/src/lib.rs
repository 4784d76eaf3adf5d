//! File formats, rendering and the command-line front end for
//! [`lelong_core`].

pub mod cli;
pub mod instance;
pub mod render;
pub mod report;

pub use instance::{parse_instance, serialize_instance, InstanceError};
