//! Run manifests: enough to reproduce a run exactly (config, seed, input
//! hashes). Identical runs produce byte-identical manifests.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use jachai_core::config::RunConfig;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub config: RunConfig,
    pub inputs: Vec<InputStamp>,
}

#[derive(Debug, Serialize)]
pub struct InputStamp {
    pub path: PathBuf,
    pub bytes: u64,
    pub fnv1a64: String,
}

impl RunManifest {
    pub fn new(command: &'static str, config: &RunConfig) -> RunManifest {
        RunManifest {
            command,
            config: config.clone(),
            inputs: Vec::new(),
        }
    }

    pub fn stamp_input(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path)
            .with_context(|| format!("cannot read input {}", path.display()))?;
        self.inputs.push(InputStamp {
            path: path.to_path_buf(),
            bytes: bytes.len() as u64,
            fnv1a64: format!("{:016x}", fnv1a64(&bytes)),
        });
        Ok(())
    }

    pub fn write(&self, out_dir: &Path) -> Result<()> {
        let path = out_dir.join("run_manifest.json");
        let body = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, body)
            .with_context(|| format!("cannot write {}", path.display()))?;
        Ok(())
    }
}

/// FNV-1a, 64-bit.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_known_vectors() {
        assert_eq!(fnv1a64(b""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a64(b"a"), 0xaf63_dc4c_8601_ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x8594_4171_f739_67e8);
    }
}
