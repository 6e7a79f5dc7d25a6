use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        InputDigest { name: name.into(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// Everything that determines a run's output. Thread count is left out on
/// purpose: results do not depend on it.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub field: Option<String>,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
}

impl RunManifest {
    pub fn new(command: &'static str) -> Self {
        RunManifest {
            tool: "ratrecon",
            version: env!("CARGO_PKG_VERSION"),
            command,
            field: None,
            seed: None,
            config: serde_json::Value::Null,
            inputs: Vec::new(),
        }
    }
}
