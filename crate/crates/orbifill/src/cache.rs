//! Content-addressed cache of enumerated groups.
//!
//! An entry is the canonical group document plus `elements` (every matrix as
//! literal strings) and `mult_table`, stored as `<digest>.json`.

use std::io::Write;
use std::path::{Path, PathBuf};

use orbifill_core::cyclotomic::parse_literal;
use orbifill_core::group::{FiniteUnitaryGroup, GroupError, GroupPresentation, UnitaryMatrix};
use serde::{Deserialize, Serialize};

use crate::doc::GroupDocument;
use crate::error::CliError;

pub const SCHEMA: &str = "orbifill.group-cache.v1";

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "ORBIFILL_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// An entry existed but was rejected and recomputed.
    Replaced,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    schema: String,
    name: String,
    dimension: usize,
    conductor: u32,
    generators: Vec<Vec<Vec<String>>>,
    elements: Vec<Vec<Vec<String>>>,
    mult_table: Vec<Vec<usize>>,
}

pub fn entry_path(dir: &Path, doc: &GroupDocument) -> PathBuf {
    dir.join(format!("{}.json", doc.digest()))
}

/// Enumerates the group of `doc`, going through the cache in `dir` when one
/// is given. Cache traffic is reported on `log`, never on stdout.
pub fn load_group(
    doc: &GroupDocument,
    dir: Option<&Path>,
    max_order: usize,
    log: &mut dyn Write,
) -> Result<(FiniteUnitaryGroup, CacheStatus), CliError> {
    let presentation = doc.presentation()?;
    let Some(dir) = dir else {
        return Ok((presentation.enumerate(max_order)?, CacheStatus::Disabled));
    };
    let path = entry_path(dir, doc);
    let mut status = CacheStatus::Miss;
    if path.exists() {
        match read_entry(&path, doc, &presentation) {
            Ok(g) => {
                if g.order() > max_order {
                    return Err(GroupError::GroupTooLarge { max_order }.into());
                }
                let _ = writeln!(log, "cache hit: {}", path.display());
                return Ok((g, CacheStatus::Hit));
            }
            Err(reason) => {
                let _ = writeln!(log, "warning: ignoring corrupt cache entry {}: {reason}", path.display());
                status = CacheStatus::Replaced;
            }
        }
    }
    if status == CacheStatus::Miss {
        let _ = writeln!(log, "cache miss: {}", path.display());
    }
    let group = presentation.enumerate(max_order)?;
    if let Err(e) = write_entry(dir, &path, doc, &group) {
        let _ = writeln!(log, "warning: could not write cache entry {}: {e}", path.display());
    }
    Ok((group, status))
}

fn read_entry(
    path: &Path,
    doc: &GroupDocument,
    presentation: &GroupPresentation,
) -> Result<FiniteUnitaryGroup, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let entry: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if entry.schema != SCHEMA {
        return Err(format!("unknown schema {:?}", entry.schema));
    }
    let canon = doc.canonical();
    if entry.name != canon.name
        || entry.dimension != canon.dimension
        || entry.conductor != canon.conductor
        || entry.generators != canon.generators
    {
        return Err("entry does not match the input document".into());
    }
    let mut elements = Vec::with_capacity(entry.elements.len());
    for (i, m) in entry.elements.iter().enumerate() {
        let rows = m
            .iter()
            .map(|r| r.iter().map(|lit| parse_literal(lit, entry.conductor)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("elements[{i}]: {e}"))?;
        if rows.len() != entry.dimension || rows.iter().any(|r| r.len() != entry.dimension) {
            return Err(format!("elements[{i}] has the wrong shape"));
        }
        elements.push(UnitaryMatrix::from_rows(entry.conductor, rows).map_err(|e| format!("elements[{i}]: {e}"))?);
    }
    FiniteUnitaryGroup::from_parts(presentation, elements, entry.mult_table).map_err(|e| e.to_string())
}

fn write_entry(dir: &Path, path: &Path, doc: &GroupDocument, group: &FiniteUnitaryGroup) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let canon = doc.canonical();
    let entry = Entry {
        schema: SCHEMA.into(),
        name: canon.name,
        dimension: canon.dimension,
        conductor: canon.conductor,
        generators: canon.generators,
        elements: group.elements().iter().map(UnitaryMatrix::to_literals).collect(),
        mult_table: group.table_rows().map(<[usize]>::to_vec).collect(),
    };
    let text = serde_json::to_string(&entry).expect("entries serialize");
    let tmp = dir.join(format!(".{}.{}.tmp", doc.digest(), std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}
