//! Run manifests: written before any other output, carrying everything
//! needed to reproduce the run (resolved config, seed, tool version, hash).

use crate::config::RunConfig;
use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub struct RunManifest {
    pub command: String,
    pub out_dir: PathBuf,
    pub config: RunConfig,
    pub config_hash: String,
}

impl RunManifest {
    pub fn new(command: &str, out_dir: &Path, config: RunConfig) -> Self {
        let canonical = config.canonical_toml();
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let config_hash = format!("{:x}", hasher.finalize());
        RunManifest {
            command: command.to_string(),
            out_dir: out_dir.to_path_buf(),
            config,
            config_hash,
        }
    }

    /// Create the run directory and write `manifest.txt`. Refuses to touch a
    /// directory that already holds a manifest unless `force` is set.
    pub fn write(&self, force: bool) -> Result<()> {
        std::fs::create_dir_all(&self.out_dir)
            .with_context(|| format!("creating {}", self.out_dir.display()))?;
        let path = self.out_dir.join("manifest.txt");
        if path.exists() && !force {
            bail!(
                "{} already exists; pass --force to overwrite the run directory",
                path.display()
            );
        }
        let mut text = String::new();
        text.push_str(&format!("command = {}\n", self.command));
        text.push_str(&format!("version = {}\n", env!("CARGO_PKG_VERSION")));
        text.push_str(&format!("config_hash = {}\n", self.config_hash));
        text.push_str("\n# resolved configuration (defaults applied)\n");
        text.push_str(&self.config.canonical_toml());
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}
