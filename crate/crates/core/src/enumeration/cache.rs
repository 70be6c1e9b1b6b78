//! One canonical-JSON file per task, named by the SHA-256 of the task.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::{run_task, EnumerationResult, EnumerationTask, RESULT_VERSION};

/// Re-validate one element in this many on every cache hit.
const SPOT_CHECK_STRIDE: usize = 100;

pub const CACHE_ENV: &str = "FREUDENTHAL_CACHE";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$FREUDENTHAL_CACHE`, else the user data directory.
    pub fn default_dir() -> PathBuf {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return PathBuf::from(p);
        }
        dirs::data_local_dir().unwrap_or_else(|| PathBuf::from(".")).join("freudenthal").join("cache")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(task: &EnumerationTask) -> String {
        hex::encode(Sha256::digest(task.canonical().as_bytes()))
    }

    pub fn path(&self, task: &EnumerationTask) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(task)))
    }

    /// A stored result for `task`, if present, current and passing the spot check.
    pub fn load(&self, task: &EnumerationTask) -> Result<Option<EnumerationResult>> {
        let path = self.path(task);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let Ok(result) = serde_json::from_str::<EnumerationResult>(&text) else { return Ok(None) };
        if result.version != RESULT_VERSION || &result.task != task || !result.validate(SPOT_CHECK_STRIDE)? {
            return Ok(None);
        }
        Ok(Some(result))
    }

    pub fn store(&self, result: &EnumerationResult) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let path = self.path(&result.task);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, result.to_json().to_string())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn run(&self, task: &EnumerationTask) -> Result<EnumerationResult> {
        if let Some(r) = self.load(task)? {
            return Ok(r);
        }
        let r = run_task(task)?;
        self.store(&r)?;
        Ok(r)
    }

    /// Removes every cached result; returns how many files were deleted.
    pub fn clear(&self) -> Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut n = 0;
        for entry in entries {
            let p = entry?.path();
            if p.extension().is_some_and(|x| x == "json") {
                fs::remove_file(p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::PairingClass;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let task = EnumerationTask::JordanRank1PsdPairing { pairing: PairingClass::I, value: 1 };
        let r = cache.run(&task).unwrap();
        assert_eq!(cache.load(&task).unwrap(), Some(r.clone()));
        let mut bad = r.clone();
        bad.aggregate += 1;
        std::fs::write(cache.path(&task), bad.to_json().to_string()).unwrap();
        assert_eq!(cache.load(&task).unwrap(), None);
        assert_eq!(cache.run(&task).unwrap(), r);
        assert_eq!(cache.clear().unwrap(), 1);
    }
}
