//! JSON ingestion for cushioned and layered specs.
//!
//! ```json
//! {"n": 5, "levels": [{"m": 2, "h": 1, "cushion": [[], [5]]}, {"m": 1, "h": 0, "cushion": [[]]}]}
//! {"fs": [[[]], [[1], [2]]], "gs": [[[3, 4, 5]], [[], [3], [3, 4], [3, 5], [4, 5]]]}
//! ```
//!
//! Subsets are ascending integer arrays, `[]` for the empty set. A layered
//! document may carry `"n"`; otherwise the ground is its largest element.

use serde::{Deserialize, Serialize};

use super::cushion::{CushionLevel, CushionSpec};
use super::layered::LayeredSpec;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::SubsetMask;

type Sets = Vec<Vec<u32>>;

#[derive(Debug, Serialize, Deserialize)]
struct LevelDoc {
    m: u32,
    h: u32,
    cushion: Sets,
}

#[derive(Debug, Serialize, Deserialize)]
struct CushionDoc {
    n: u32,
    levels: Vec<LevelDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LayeredDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    fs: Vec<Sets>,
    gs: Vec<Sets>,
}

fn to_family(n: u32, sets: &Sets, what: &str) -> Result<Family> {
    let mut masks = Vec::with_capacity(sets.len());
    for s in sets {
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(format!("{what}: subset {s:?} is not strictly ascending")));
        }
        if let Some(&e) = s.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidSpec(format!("{what}: element {e} outside [1,{n}]")));
        }
        let m = SubsetMask::from_elements(s.iter().copied())?;
        if masks.contains(&m) {
            return Err(Error::InvalidSpec(format!("{what}: duplicate subset {m}")));
        }
        masks.push(m);
    }
    Family::new(n, masks)
}

fn to_sets(f: &Family) -> Sets {
    f.members().iter().map(|m| m.elements().collect()).collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::InvalidSpec(format!("malformed JSON: {e}"))
}

pub fn parse_cushion_spec(text: &str) -> Result<CushionSpec> {
    let doc: CushionDoc = serde_json::from_str(text).map_err(json_err)?;
    let levels = doc
        .levels
        .iter()
        .enumerate()
        .map(|(j, l)| {
            Ok(CushionLevel {
                m: l.m,
                h: l.h,
                cushion: to_family(doc.n, &l.cushion, &format!("level {}", j + 1))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CushionSpec::new(doc.n, levels)
}

pub fn cushion_spec_to_json(spec: &CushionSpec) -> String {
    let doc = CushionDoc {
        n: spec.n,
        levels: spec
            .levels
            .iter()
            .map(|l| LevelDoc { m: l.m, h: l.h, cushion: to_sets(&l.cushion) })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn parse_layered_spec(text: &str) -> Result<LayeredSpec> {
    let doc: LayeredDoc = serde_json::from_str(text).map_err(json_err)?;
    let max_elem = doc
        .fs
        .iter()
        .chain(&doc.gs)
        .flatten()
        .flatten()
        .copied()
        .max()
        .unwrap_or(1);
    let n = doc.n.unwrap_or(max_elem).max(1);
    let fs = doc
        .fs
        .iter()
        .enumerate()
        .map(|(j, s)| to_family(n, s, &format!("F{}", j + 1)))
        .collect::<Result<Vec<_>>>()?;
    let gs = doc
        .gs
        .iter()
        .enumerate()
        .map(|(j, s)| to_family(n, s, &format!("G{}", j + 1)))
        .collect::<Result<Vec<_>>>()?;
    LayeredSpec::new(fs, gs)
}

pub fn layered_spec_to_json(spec: &LayeredSpec) -> String {
    let doc = LayeredDoc {
        n: Some(spec.n()),
        fs: spec.fs.iter().map(to_sets).collect(),
        gs: spec.gs.iter().map(to_sets).collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}
