//! Group definition files: JSON with `name`, `cyclotomic_order` and
//! `generators`, each generator a list of rows of cyclotomic strings in `z`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{builtin, CatalogEntry};
use crate::exact::{lcm, CycMatrix, Cyclotomic, ExactError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed group file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("generator {generator}, row {row}, column {col}: {source}")]
    Entry { generator: usize, row: usize, col: usize, source: ExactError },
    #[error("generator {generator} is not square ({rows} rows, row {row} has {len} entries)")]
    Shape { generator: usize, rows: usize, row: usize, len: usize },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("generator {generator} needs order {needed}, not a divisor of the declared {declared}")]
    OrderMismatch { generator: usize, needed: u32, declared: u32 },
}

#[derive(Serialize, Deserialize)]
struct RawGroupFile {
    name: String,
    cyclotomic_order: u32,
    generators: Vec<Vec<Vec<String>>>,
}

/// A group as given by generators, from a file or the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDefinition {
    pub name: String,
    pub cyclotomic_order: u32,
    pub generators: Vec<CycMatrix>,
}

impl GroupDefinition {
    pub fn from_catalog(entry: &CatalogEntry) -> Self {
        let order = entry.generators.iter().fold(entry.cyclotomic_order, |m, g| lcm(m, g.order()));
        GroupDefinition { name: entry.name.to_string(), cyclotomic_order: order, generators: entry.generators.clone() }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        let raw: RawGroupFile = serde_json::from_str(text)?;
        let n = raw.cyclotomic_order;
        if n == 0 {
            return Err(IoError::ZeroOrder);
        }
        let mut generators = Vec::with_capacity(raw.generators.len());
        for (gi, rows) in raw.generators.iter().enumerate() {
            let mut parsed = Vec::with_capacity(rows.len());
            for (ri, row) in rows.iter().enumerate() {
                if row.len() != rows.len() {
                    return Err(IoError::Shape { generator: gi, rows: rows.len(), row: ri, len: row.len() });
                }
                let r = row
                    .iter()
                    .enumerate()
                    .map(|(ci, s)| {
                        Cyclotomic::parse(s, n).map_err(|source| IoError::Entry { generator: gi, row: ri, col: ci, source })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                parsed.push(r);
            }
            let m = CycMatrix::from_rows(n, parsed)
                .map_err(|source| IoError::Entry { generator: gi, row: 0, col: 0, source })?;
            generators.push(m);
        }
        Ok(GroupDefinition { name: raw.name, cyclotomic_order: n, generators })
    }

    /// Canonical text: entries in reduced form, one matrix row per line.
    pub fn to_canonical_string(&self) -> Result<String, IoError> {
        let n = self.cyclotomic_order;
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"name\": {},\n", serde_json::to_string(&self.name)?));
        out.push_str(&format!("  \"cyclotomic_order\": {n},\n"));
        out.push_str("  \"generators\": [\n");
        for (gi, g) in self.generators.iter().enumerate() {
            if n % g.order() != 0 {
                return Err(IoError::OrderMismatch { generator: gi, needed: g.order(), declared: n });
            }
            out.push_str("    [\n");
            for r in 0..g.rows() {
                let cells: Vec<String> = g
                    .row(r)
                    .iter()
                    .map(|c| serde_json::to_string(&c.lift(n).expect("order divides").to_string()))
                    .collect::<Result<_, _>>()?;
                let sep = if r + 1 < g.rows() { "," } else { "" };
                out.push_str(&format!("      [{}]{sep}\n", cells.join(", ")));
            }
            let sep = if gi + 1 < self.generators.len() { "," } else { "" };
            out.push_str(&format!("    ]{sep}\n"));
        }
        out.push_str("  ]\n}\n");
        Ok(out)
    }
}

/// A catalog name, or else a path to a group file.
pub fn load_group(spec: &str) -> Result<GroupDefinition, IoError> {
    if let Ok(entry) = builtin(spec) {
        return Ok(GroupDefinition::from_catalog(&entry));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: spec.to_string(), source })?;
    GroupDefinition::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::NAMES;

    #[test]
    fn catalog_round_trip() {
        for name in NAMES {
            let def = GroupDefinition::from_catalog(&builtin(name).unwrap());
            let text = def.to_canonical_string().unwrap();
            let back = GroupDefinition::parse(&text).unwrap();
            assert_eq!(back, def, "{name}");
            assert_eq!(back.to_canonical_string().unwrap(), text);
        }
    }

    #[test]
    fn rows_are_one_per_line() {
        let def = GroupDefinition::from_catalog(&builtin("Z2").unwrap());
        let text = def.to_canonical_string().unwrap();
        assert!(text.contains("      [\"0\", \"1\", \"0\", \"0\", \"0\", \"0\", \"0\", \"0\"],\n"));
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(matches!(GroupDefinition::parse("{"), Err(IoError::Json(_))));
        let bad = r#"{"name":"x","cyclotomic_order":4,"generators":[[["1","0"],["0"]]]}"#;
        assert!(matches!(GroupDefinition::parse(bad), Err(IoError::Shape { row: 1, .. })));
        let bad = r#"{"name":"x","cyclotomic_order":4,"generators":[[["1","q"],["0","1"]]]}"#;
        assert!(matches!(GroupDefinition::parse(bad), Err(IoError::Entry { col: 1, .. })));
        assert!(matches!(load_group("/nonexistent/file.json"), Err(IoError::Read { .. })));
    }

    #[test]
    fn user_file_with_fractions() {
        let text = r#"{"name":"t","cyclotomic_order":4,"generators":[[["0","1"],["-z","0"]]]}"#;
        let def = GroupDefinition::parse(text).unwrap();
        assert_eq!(def.generators[0].get(1, 0), &Cyclotomic::root_of_unity(4, 3));
    }
}
