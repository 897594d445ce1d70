//! Execution target: optional coupling map plus a noise model.

use alloc::string::String;

use crate::circuit::Circuit;
use crate::noise::{noisy_sample, NoiseModel};
use crate::state::CountsHistogram;
use crate::transpile::{route, simplify, CouplingMap};
use crate::Result;

/// Where circuits run. Without a coupling map every cNOT is allowed and the
/// circuit executes as written.
#[derive(Debug, Clone, PartialEq)]
pub struct Device {
    pub name: String,
    pub coupling: Option<CouplingMap>,
    pub noise: NoiseModel,
}

impl Device {
    /// Noiseless, all-to-all.
    pub fn ideal() -> Device {
        Device {
            name: String::from("ideal"),
            coupling: None,
            noise: NoiseModel::ideal(),
        }
    }

    pub fn new(name: impl Into<String>, coupling: Option<CouplingMap>, noise: NoiseModel) -> Device {
        Device {
            name: name.into(),
            coupling,
            noise,
        }
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Device {
        self.noise = noise;
        self
    }

    /// The circuit as it would be executed: routed onto the coupling map and
    /// simplified. Classical bits keep their meaning.
    pub fn compile(&self, circuit: &Circuit) -> Result<Circuit> {
        match &self.coupling {
            Some(map) => Ok(simplify(&route(circuit, map)?.circuit)),
            None => Ok(circuit.clone()),
        }
    }

    /// Compile and sample `circuit`'s measurements.
    pub fn run(&self, circuit: &Circuit, shots: u64, seed: u64) -> Result<CountsHistogram> {
        noisy_sample(&self.compile(circuit)?, &self.noise, shots, seed)
    }
}
