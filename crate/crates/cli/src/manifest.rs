//! Per-run manifests: enough to reproduce any output bit for bit with the
//! same build.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
    pub wall_ms: u128,
}

pub struct ManifestBuilder {
    manifest: RunManifest,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str) -> Self {
        ManifestBuilder {
            manifest: RunManifest {
                command: command.to_string(),
                argv: std::env::args().collect(),
                inputs: Vec::new(),
                outputs: Vec::new(),
                seed: None,
                tolerances: BTreeMap::new(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                wall_ms: 0,
            },
            started: Instant::now(),
        }
    }

    pub fn input(mut self, path: &str) -> Self {
        self.manifest.inputs.push(path.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.manifest.seed = Some(seed);
        self
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.manifest.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn output(mut self, path: &str) -> Self {
        self.manifest.outputs.push(path.to_string());
        self
    }

    /// Writes `<primary output>.manifest.json`.
    pub fn write(mut self) -> std::io::Result<()> {
        let Some(primary) = self.manifest.outputs.first().cloned() else {
            return Ok(());
        };
        self.manifest.wall_ms = self.started.elapsed().as_millis();
        let path = format!("{primary}.manifest.json");
        let text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        std::fs::write(path, text + "\n")
    }
}
