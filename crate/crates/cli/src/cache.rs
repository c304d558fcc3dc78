//! Lift-distance memoization in the directory named by `SYSTOLE_LAB_CACHE`.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use systole_core::covering::{lift_distances, CoverError, DistanceModel};
use systole_core::Surface;

pub const ENV: &str = "SYSTOLE_LAB_CACHE";

#[derive(Serialize, Deserialize)]
struct Entry {
    radius: f64,
    distances: Vec<f64>,
}

fn key(surface: &Surface, v: usize, model: DistanceModel) -> String {
    let spec = serde_json::to_vec(&surface.to_spec()).expect("surface specs serialize");
    let mut h = Sha256::new();
    h.update(&spec);
    h.update(format!("|{v}|{model}").as_bytes());
    format!("{:x}", h.finalize())
}

/// Sorted lift distances of `v` up to `radius`, reusing any cached
/// development that reached at least as far.
pub fn cached_lift_distances(
    dir: Option<PathBuf>,
    surface: &Surface,
    v: usize,
    radius: f64,
    model: DistanceModel,
) -> Result<(Vec<f64>, bool), CoverError> {
    let Some(dir) = dir else {
        return Ok((lift_distances(surface, v, radius, model)?, false));
    };
    let path = dir.join(format!("{}.json", key(surface, v, model)));
    if let Some(entry) = std::fs::read(&path)
        .ok()
        .and_then(|b| serde_json::from_slice::<Entry>(&b).ok())
    {
        if entry.radius >= radius {
            let limit = radius + 1e-9 * radius.max(1.0);
            let d = entry.distances.into_iter().filter(|&d| d <= limit).collect();
            return Ok((d, true));
        }
    }
    let distances = lift_distances(surface, v, radius, model)?;
    let entry = Entry { radius, distances };
    // A cache that cannot be written only costs time.
    if std::fs::create_dir_all(&dir).is_ok() {
        let tmp = path.with_extension("tmp");
        if std::fs::write(&tmp, serde_json::to_vec(&entry).expect("entries serialize")).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
    Ok((entry.distances, false))
}
