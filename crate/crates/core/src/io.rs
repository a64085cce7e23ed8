//! JSON structure files.
//!
//! ```json
//! {"k":2,"m":2,"n":2,"f":[[0],[0,1],[0,1],[1]],"g":[0,0,0,1]}
//! ```
//!
//! `f` holds `k^m` rows and `g` holds `k^n` entries, both in row-major tuple
//! order. Rows of `f` are strictly increasing, non-empty element lists.
//! Output is compact and byte-stable: loading and re-emitting a file yields
//! the same bytes.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::subset::SubsetMask;
use crate::table::{check_universe, Element, HyperOpTable, OpTable, TupleShape};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    k: usize,
    m: usize,
    n: usize,
    f: Vec<Vec<Element>>,
    g: Vec<Element>,
}

impl StructureFile {
    fn validate(self) -> Result<Structure> {
        check_universe(self.k)?;
        if self.m < 2 {
            return Err(Error::ArityTooSmall(self.m));
        }
        if self.n < 2 {
            return Err(Error::ArityTooSmall(self.n));
        }
        let f_shape = TupleShape::new(self.k, self.m)?;
        if self.f.len() != f_shape.count() {
            return Err(Error::domain(format!(
                "\"f\" has {} rows, expected k^m = {}",
                self.f.len(),
                f_shape.count()
            )));
        }
        let mut entries = Vec::with_capacity(self.f.len());
        for (i, row) in self.f.iter().enumerate() {
            let bad = |reason: String| Error::InvalidEntry {
                flat_index: i,
                tuple: f_shape.decode(i),
                reason,
            };
            if row.is_empty() {
                return Err(bad("empty subset in f".into()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= self.k) {
                return Err(bad(format!("element {x} out of range in f")));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("f row is not strictly increasing".into()));
            }
            entries.push(row.iter().copied().collect::<SubsetMask>());
        }
        let g_shape = TupleShape::new(self.k, self.n)?;
        if self.g.len() != g_shape.count() {
            return Err(Error::domain(format!(
                "\"g\" has {} entries, expected k^n = {}",
                self.g.len(),
                g_shape.count()
            )));
        }
        Structure::new(
            HyperOpTable::new(self.k, self.m, entries)?,
            OpTable::new(self.k, self.n, self.g)?,
        )
    }

    fn from_structure(s: &Structure) -> Self {
        StructureFile {
            k: s.k(),
            m: s.m(),
            n: s.n(),
            f: s.f().entries().iter().map(|e| e.to_vec()).collect(),
            g: s.g().entries().collect(),
        }
    }
}

impl Serialize for Structure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StructureFile::from_structure(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Structure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        StructureFile::deserialize(deserializer)?
            .validate()
            .map_err(serde::de::Error::custom)
    }
}

/// Parses and validates a structure file. Validation errors keep their
/// flat index and decoded tuple.
pub fn from_json_str(text: &str) -> Result<Structure> {
    let raw: StructureFile = serde_json::from_str(text)?;
    raw.validate()
}

pub fn to_json_string(s: &Structure) -> String {
    serde_json::to_string(s).expect("structure serialization is infallible")
}

pub fn load(path: impl AsRef<Path>) -> Result<Structure> {
    from_json_str(&std::fs::read_to_string(path)?)
}
