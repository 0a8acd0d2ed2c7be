//! Factor cache persistence: a JSON list of `{value, factors}` records
//! loaded into the in-process cache at startup and captured back on exit.
//! Entries that fail validation inside the core are dropped silently, so
//! a stale or hand-edited file can only slow a run down, never poison it.

use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use spectra_core::arith::{cache_seed, cache_snapshot};

#[derive(Serialize, Deserialize)]
struct Entry {
    value: String,
    factors: Vec<(String, u32)>,
}

/// Seeds the cache from `path`. A missing file is a fresh cache, not an
/// error; unreadable JSON is reported because it usually means the path
/// points at something else entirely.
pub fn load(path: &Path) -> Result<usize, String> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(format!("cannot read cache {}: {e}", path.display())),
    };
    let entries: Vec<Entry> =
        serde_json::from_str(&text).map_err(|e| format!("bad cache {}: {e}", path.display()))?;
    let count = entries.len();
    cache_seed(entries.into_iter().filter_map(decode));
    Ok(count)
}

/// Writes the current cache contents back to `path`, sorted, with a
/// trailing newline; rewrites are byte-identical for identical caches.
pub fn save(path: &Path) -> Result<(), String> {
    let entries: Vec<Entry> = cache_snapshot()
        .into_iter()
        .map(|(n, pairs)| Entry {
            value: n.to_string(),
            factors: pairs.into_iter().map(|(p, e)| (p.to_string(), e)).collect(),
        })
        .collect();
    let mut body = serde_json::to_string_pretty(&entries)
        .map_err(|e| format!("cache serialization: {e}"))?;
    body.push('\n');
    std::fs::write(path, body).map_err(|e| format!("cannot write cache {}: {e}", path.display()))
}

fn decode(entry: Entry) -> Option<(BigUint, Vec<(BigUint, u32)>)> {
    let value: BigUint = entry.value.parse().ok()?;
    let factors = entry
        .factors
        .into_iter()
        .map(|(p, e)| p.parse().map(|p| (p, e)))
        .collect::<Result<Vec<_>, _>>()
        .ok()?;
    Some((value, factors))
}
