use std::collections::BTreeMap;

use gamma_forge_core::{AxiomConfig, SearchConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::TOOL_VERSION;

/// Provenance record written beside every output bundle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub config: Option<SearchConfig>,
    pub axiom_mode: Option<AxiomConfig>,
    pub seed: Option<u64>,
    /// Input path → SHA-256.
    pub inputs: BTreeMap<String, String>,
    /// Output file name → SHA-256.
    pub outputs: BTreeMap<String, String>,
    pub wall_time_s: f64,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            config: None,
            axiom_mode: None,
            seed: None,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            wall_time_s: 0.0,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
