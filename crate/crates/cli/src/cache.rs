//! Result cache keyed by the command line, enabled by `CIRCLE_HALL_CACHE_DIR`.
//!
//! The acceptance suite is never cached, since its last row measures a run.

use crate::Command;
use anyhow::Result;
use sha2::{Digest, Sha256};
use std::path::PathBuf;

pub const CACHE_DIR_VAR: &str = "CIRCLE_HALL_CACHE_DIR";

fn cache_path(command: &Command, args: &[String]) -> Option<PathBuf> {
    if matches!(command, Command::Suite { .. }) {
        return None;
    }
    let dir = std::env::var_os(CACHE_DIR_VAR).filter(|d| !d.is_empty())?;
    let mut hasher = Sha256::new();
    hasher.update(env!("CARGO_PKG_VERSION").as_bytes());
    let mut skip_value = false;
    for arg in args {
        if skip_value {
            skip_value = false;
            continue;
        }
        if arg == "--output" {
            skip_value = true;
            continue;
        }
        if arg.starts_with("--output=") {
            continue;
        }
        hasher.update([0u8]);
        hasher.update(arg.as_bytes());
    }
    Some(PathBuf::from(dir).join(format!("{:x}.json", hasher.finalize())))
}

/// The cached output of an identical earlier invocation, if any.
pub fn lookup(command: &Command, args: &[String]) -> Result<Option<String>> {
    match cache_path(command, args) {
        Some(path) if path.exists() => Ok(Some(std::fs::read_to_string(path)?)),
        _ => Ok(None),
    }
}

pub fn store(command: &Command, args: &[String], text: &str) -> Result<()> {
    if let Some(path) = cache_path(command, args) {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, text)?;
    }
    Ok(())
}
