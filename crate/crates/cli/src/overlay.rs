use std::path::Path;

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::Failure;

pub fn load(path: &Path) -> Result<toml::Table, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))
        .map_err(Failure::Config)?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display())).map_err(Failure::Config)
}

/// The subcommand's table if present, else the file's top-level scalars.
pub fn section(file: &toml::Table, name: &str) -> toml::Table {
    match file.get(name) {
        Some(toml::Value::Table(t)) => t.clone(),
        _ => file.iter().filter(|(_, v)| !v.is_table()).map(|(k, v)| (k.clone(), v.clone())).collect(),
    }
}

/// Replaces fields of `args` with the values in `layer`. Unknown keys and
/// ill-typed values are configuration errors.
pub fn merge<A: Serialize + DeserializeOwned>(args: A, layer: Option<&toml::Table>) -> Result<A, Failure> {
    let Some(layer) = layer else { return Ok(args) };
    let mut base = toml::Table::try_from(&args).context("serializing arguments").map_err(Failure::Internal)?;
    for (k, v) in layer {
        base.insert(k.replace('-', "_"), v.clone());
    }
    toml::Value::Table(base).try_into().context("applying config file").map_err(Failure::Config)
}
