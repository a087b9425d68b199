//! Optional on-disk store for transition matrices, enabled by `PEAKALG_CACHE_DIR`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use peakalg::nsqf::{transition_matrix, MatrixPair, TransitionMatrix};

pub const ENV_VAR: &str = "PEAKALG_CACHE_DIR";

fn slug(pair: MatrixPair) -> String {
    pair.to_string().replace(',', "_")
}

pub fn file_name(n: u32, pair: MatrixPair) -> String {
    format!("matrix-n{n}-{}-v{}.json", slug(pair), peakalg::VERSION)
}

fn read(path: &Path, n: u32, pair: MatrixPair) -> Option<TransitionMatrix> {
    let text = fs::read_to_string(path).ok()?;
    let m: TransitionMatrix = serde_json::from_str(&text).ok()?;
    (m.n == n && m.pair() == Some(pair)).then_some(m)
}

fn write(dir: &Path, path: &Path, m: &TransitionMatrix) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let json = serde_json::to_string(m).map_err(std::io::Error::other)?;
    // Write then rename so concurrent readers never see a partial file.
    let tmp = dir.join(format!(".{}.{}.tmp", path.file_name().and_then(|s| s.to_str()).unwrap_or("matrix"), std::process::id()));
    fs::write(&tmp, json)?;
    fs::rename(&tmp, path)
}

/// Loads from the cache directory when present and valid, computing and
/// storing otherwise. Unreadable or stale files are recomputed.
pub fn matrix(n: u32, pair: MatrixPair, dir: Option<PathBuf>) -> peakalg::Result<Arc<TransitionMatrix>> {
    let Some(dir) = dir else {
        return transition_matrix(n, pair);
    };
    let path = dir.join(file_name(n, pair));
    if let Some(m) = read(&path, n, pair) {
        return Ok(Arc::new(m));
    }
    let m = transition_matrix(n, pair)?;
    if let Err(e) = write(&dir, &path, &m) {
        eprintln!("warning: could not write {}: {e}", path.display());
    }
    Ok(m)
}

pub fn dir_from_env() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}
