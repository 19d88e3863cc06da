use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use crate::Failure;

pub fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(Failure::Internal)
}

pub fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    if let Some(parent) = path.parent() {
        ensure_dir(parent)?;
    }
    File::create(path).map(BufWriter::new).with_context(|| format!("creating {}", path.display())).map_err(Failure::Internal)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(anyhow::Error::from)
        .and_then(|_| w.write_all(b"\n").map_err(Into::into))
        .and_then(|_| w.flush().map_err(Into::into))
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Internal)
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(create(path)?);
    for r in rows {
        w.serialize(r).with_context(|| format!("writing {}", path.display())).map_err(Failure::Internal)?;
    }
    w.flush().with_context(|| format!("writing {}", path.display())).map_err(Failure::Internal)
}

pub fn open(path: &Path) -> Result<File, Failure> {
    File::open(path).with_context(|| format!("opening {}", path.display())).map_err(Failure::Input)
}

pub fn read_to_string(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Input)
}

pub fn require_exists(path: &Path) -> Result<(), Failure> {
    if path.exists() {
        Ok(())
    } else {
        Err(Failure::input(anyhow::anyhow!("{} does not exist", path.display())))
    }
}

/// Files under `path` (recursively, sorted) with the given extension, or
/// `path` itself when it is a file.
pub fn expand_inputs(path: &Path, extension: &str) -> Result<Vec<PathBuf>, Failure> {
    require_exists(path)?;
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut out = Vec::new();
    let mut stack = vec![path.to_path_buf()];
    while let Some(dir) = stack.pop() {
        let entries = fs::read_dir(&dir).with_context(|| format!("listing {}", dir.display())).map_err(Failure::Input)?;
        for e in entries {
            let p = e.map_err(|e| Failure::input(anyhow::anyhow!("{}: {e}", dir.display())))?.path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|x| x == extension) {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(out)
}
