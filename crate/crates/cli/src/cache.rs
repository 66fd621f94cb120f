//! Append-only JSON-lines cache of Hall polynomials.
//!
//! One record per line: `{"version":..,"n":..,"A":..,"B":..,"C":..,"phi":{..}}`.
//! Lines that fail to parse (a torn final write, say) and records from another
//! engine version are skipped on load.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use hall_core::{CyclicMatrix, QPoly};
use serde_json::{json, Value};

use crate::json::{qpoly_from_json, qpoly_to_json};
use crate::CliError;

/// Bumped whenever a change could alter stored values.
pub const ENGINE_VERSION: &str = concat!("hall-core-", env!("CARGO_PKG_VERSION"));

pub type Key = (CyclicMatrix, CyclicMatrix, CyclicMatrix);

#[derive(Debug)]
pub struct HallCache {
    path: Option<PathBuf>,
    entries: BTreeMap<Key, QPoly>,
}

fn record_key(v: &Value) -> Option<Key> {
    let get = |k: &str| v.get(k)?.as_str()?.parse::<CyclicMatrix>().ok();
    let (a, b, c) = (get("A")?, get("B")?, get("C")?);
    let n = v.get("n")?.as_u64()? as usize;
    (a.n() == n && b.n() == n && c.n() == n).then_some((a, b, c))
}

impl HallCache {
    /// A cache that never touches the disk.
    pub fn in_memory() -> Self {
        HallCache { path: None, entries: BTreeMap::new() }
    }

    pub fn open(path: &Path) -> Result<Self, CliError> {
        let mut cache = HallCache { path: Some(path.to_path_buf()), entries: BTreeMap::new() };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            let Ok(v) = serde_json::from_str::<Value>(&line) else { continue };
            if v.get("version").and_then(Value::as_str) != Some(ENGINE_VERSION) {
                continue;
            }
            let (Some(key), Some(phi)) = (record_key(&v), v.get("phi")) else { continue };
            if let Ok(phi) = qpoly_from_json(phi) {
                cache.entries.insert(key, phi);
            }
        }
        Ok(cache)
    }

    pub fn get(&self, key: &Key) -> Option<&QPoly> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Key, &QPoly)> {
        self.entries.iter()
    }

    pub fn insert(&mut self, key: Key, phi: QPoly) -> Result<(), CliError> {
        if self.entries.get(&key) == Some(&phi) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let (a, b, c) = &key;
            let record = json!({
                "version": ENGINE_VERSION,
                "n": a.n(),
                "A": a.to_string(),
                "B": b.to_string(),
                "C": c.to_string(),
                "phi": qpoly_to_json(&phi),
            });
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "{record}")?;
        }
        self.entries.insert(key, phi);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> CyclicMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn survives_a_torn_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let key = (m("n=2;1,2:2"), m("n=2;1,2:1"), m("n=2;1,2:1"));
        let phi = QPoly::from_terms([(0u32, 1i64), (1, 1)]);
        {
            let mut c = HallCache::open(&path).unwrap();
            c.insert(key.clone(), phi.clone()).unwrap();
        }
        std::fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"{\"version\":").unwrap();
        let c = HallCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&key), Some(&phi));
    }
}
