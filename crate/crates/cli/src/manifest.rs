use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::output::write_json;
use crate::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub bytes: u64,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path) -> std::io::Result<Self> {
        let mut f = File::open(path)?;
        let mut hasher = Sha256::new();
        let mut buf = vec![0u8; 1 << 16];
        let mut bytes = 0u64;
        loop {
            let n = f.read(&mut buf)?;
            if n == 0 {
                break;
            }
            hasher.update(&buf[..n]);
            bytes += n as u64;
        }
        Ok(Self { path: path.to_path_buf(), bytes, sha256: hex::encode(hasher.finalize()) })
    }
}

/// Provenance of one run: what went in, what came out, and how long it took.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub seeds: BTreeMap<String, u64>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub stage_counts: BTreeMap<String, u64>,
    pub timings_ms: BTreeMap<String, u128>,
}

/// Collects manifest fields while a command runs.
pub struct Recorder {
    manifest: RunManifest,
    started: Instant,
    stage: Option<(String, Instant)>,
}

impl Recorder {
    pub fn new<A: Serialize>(command: &str, args: &A) -> Self {
        Self {
            manifest: RunManifest {
                tool: "votecast".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: command.into(),
                config: serde_json::to_value(args).unwrap_or(serde_json::Value::Null),
                seeds: BTreeMap::new(),
                inputs: Vec::new(),
                outputs: Vec::new(),
                stage_counts: BTreeMap::new(),
                timings_ms: BTreeMap::new(),
            },
            started: Instant::now(),
            stage: None,
        }
    }

    pub fn seed(&mut self, name: &str, seed: u64) {
        self.manifest.seeds.insert(name.into(), seed);
    }

    pub fn count(&mut self, name: &str, n: u64) {
        self.manifest.stage_counts.insert(name.into(), n);
    }

    pub fn input(&mut self, path: &Path) -> Result<(), Failure> {
        let d = FileDigest::of(path).map_err(|e| Failure::input(anyhow::anyhow!("{}: {e}", path.display())))?;
        self.manifest.inputs.push(d);
        Ok(())
    }

    pub fn output(&mut self, path: &Path) -> Result<(), Failure> {
        let d = FileDigest::of(path).map_err(|e| Failure::internal(anyhow::anyhow!("{}: {e}", path.display())))?;
        self.manifest.outputs.push(d);
        Ok(())
    }

    /// Starts timing `name`, closing the previous stage.
    pub fn stage(&mut self, name: &str) {
        self.close_stage();
        self.stage = Some((name.to_string(), Instant::now()));
    }

    fn close_stage(&mut self) {
        if let Some((name, t)) = self.stage.take() {
            self.manifest.timings_ms.insert(name, t.elapsed().as_millis());
        }
    }

    /// Writes `manifest-<command>.json` into `dir`.
    pub fn finish(mut self, dir: &Path) -> Result<RunManifest, Failure> {
        self.close_stage();
        self.manifest.timings_ms.insert("total".into(), self.started.elapsed().as_millis());
        let path = dir.join(format!("manifest-{}.json", self.manifest.command));
        write_json(&path, &self.manifest)?;
        Ok(self.manifest)
    }
}
