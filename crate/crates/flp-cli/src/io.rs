//! Profile file formats: JSON `{"n": ..., "locations": [...]}` and CSV with
//! a single `location` column. Format is chosen by file extension; floats are
//! written with Rust's shortest round-trip formatting, so files replay to the
//! exact same bits.

use std::path::Path;

use anyhow::{bail, Context, Result};
use flp_core::LocationProfile;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct ProfileFile {
    n: usize,
    locations: Vec<f64>,
}

pub fn read_profile(path: &Path) -> Result<LocationProfile> {
    let locations = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let file: ProfileFile =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if file.n != file.locations.len() {
                bail!(
                    "{}: n = {} but {} locations given",
                    path.display(),
                    file.n,
                    file.locations.len()
                );
            }
            file.locations
        }
        Some("csv") => {
            let mut reader = csv::Reader::from_path(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let headers = reader.headers()?.clone();
            if headers.iter().collect::<Vec<_>>() != ["location"] {
                bail!("{}: expected single CSV header `location`", path.display());
            }
            let mut locations = Vec::new();
            for record in reader.records() {
                let record = record?;
                let field = record
                    .get(0)
                    .with_context(|| format!("{}: empty CSV row", path.display()))?;
                locations.push(field.trim().parse::<f64>().with_context(|| {
                    format!("{}: bad location value {field:?}", path.display())
                })?);
            }
            locations
        }
        _ => bail!("{}: unknown profile format (want .json or .csv)", path.display()),
    };
    LocationProfile::new(locations).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

pub fn write_profile(path: &Path, profile: &LocationProfile) -> Result<()> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            let file = ProfileFile {
                n: profile.n(),
                locations: profile.locations().to_vec(),
            };
            std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
        }
        Some("csv") => {
            let mut writer = csv::Writer::from_path(path)?;
            writer.write_record(["location"])?;
            for &x in profile.locations() {
                writer.write_record([format!("{x}")])?;
            }
            writer.flush()?;
        }
        _ => bail!("{}: unknown profile format (want .json or .csv)", path.display()),
    }
    Ok(())
}

/// Parses an inclusive `lo..hi` range (a bare number means `n..n`).
pub fn parse_n_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse()?, hi.trim().parse()?),
        None => {
            let n = s.trim().parse()?;
            (n, n)
        }
    };
    if lo < 2 || hi < lo {
        bail!("invalid agent-count range {s:?} (need 2 <= lo <= hi)");
    }
    Ok((lo, hi))
}
