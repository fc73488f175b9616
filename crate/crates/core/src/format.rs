//! TOML module files.
//!
//! ```toml
//! prime = 5
//! num_vars = 3
//! target_twists = [-1, -1, -1]
//! source_twists = [0]
//! matrix = [["x0"], ["x1"], ["x2"]]
//! locally_free = true
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldError;
use crate::module::{GradedMap, GradedModule};
use crate::poly::{MultiPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed module file: {0}")]
    Syntax(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("num_vars must be at least 1")]
    NoVariables,
    #[error("matrix has {found} rows, expected {expected} (one per target twist)")]
    RowCount { found: usize, expected: usize },
    #[error("matrix row {row} has {found} entries, expected {expected} (one per source twist)")]
    ColumnCount { row: usize, found: usize, expected: usize },
    #[error("entry ({row},{col}): {reason}")]
    Entry { row: usize, col: usize, reason: String },
    #[error("entry ({row},{col}) is not homogeneous of degree {expected}")]
    NotHomogeneous { row: usize, col: usize, expected: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub prime: u64,
    pub num_vars: usize,
    pub target_twists: Vec<i64>,
    #[serde(default)]
    pub source_twists: Vec<i64>,
    #[serde(default)]
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locally_free: Option<bool>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        toml::from_str(text).map_err(|e| FormatError::Syntax(e.message().to_string()))
    }

    pub fn from_module(m: &GradedModule) -> Self {
        let pres = m.presentation();
        ModuleFile {
            prime: m.ring().modulus(),
            num_vars: m.ring().num_vars,
            target_twists: pres.target_twists().to_vec(),
            source_twists: pres.source_twists().to_vec(),
            matrix: pres.entries().iter().map(|row| row.iter().map(MultiPoly::to_string).collect()).collect(),
            locally_free: Some(m.is_locally_free()),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("module files serialize")
    }

    /// Builds the module over `F_p` with `p = prime.unwrap_or(self.prime)`;
    /// coefficients are read as integers and reduced mod `p`.
    pub fn to_module(&self, prime: Option<u64>) -> Result<GradedModule, FormatError> {
        if self.num_vars == 0 {
            return Err(FormatError::NoVariables);
        }
        let ring = PolyRing::new(self.num_vars, prime.unwrap_or(self.prime))?;
        let rows = self.target_twists.len();
        let cols = self.source_twists.len();
        // An empty matrix stands for "no relations".
        let matrix: Vec<Vec<String>> =
            if cols == 0 && self.matrix.is_empty() { vec![Vec::new(); rows] } else { self.matrix.clone() };
        if matrix.len() != rows {
            return Err(FormatError::RowCount { found: matrix.len(), expected: rows });
        }
        let mut entries = Vec::with_capacity(rows);
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(FormatError::ColumnCount { row: r, found: row.len(), expected: cols });
            }
            let mut out = Vec::with_capacity(cols);
            for (c, text) in row.iter().enumerate() {
                let f = ring.parse(text).map_err(|e| FormatError::Entry { row: r, col: c, reason: e.to_string() })?;
                let expected = self.source_twists[c] - self.target_twists[r];
                if !f.is_homogeneous_of_degree(expected) {
                    return Err(FormatError::NotHomogeneous { row: r, col: c, expected });
                }
                out.push(f);
            }
            entries.push(out);
        }
        let map = GradedMap::new(ring, self.target_twists.clone(), self.source_twists.clone(), entries)
            .expect("validated above");
        Ok(GradedModule::new(map, self.locally_free.unwrap_or(false)))
    }
}

pub fn load_module(text: &str, prime: Option<u64>) -> Result<GradedModule, FormatError> {
    ModuleFile::parse(text)?.to_module(prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const TANGENT: &str = r#"
prime = 5
num_vars = 3
target_twists = [-1, -1, -1]
source_twists = [0]
matrix = [["x0"], ["x1"], ["x2"]]
locally_free = true
"#;

    #[test]
    fn loads_tangent_module() {
        let m = load_module(TANGENT, None).unwrap();
        let r = PolyRing::new(3, 5).unwrap();
        assert_eq!(m, catalog::tangent(r));
        let m7 = load_module(TANGENT, Some(7)).unwrap();
        assert_eq!(m7.ring().modulus(), 7);
    }

    #[test]
    fn round_trip_through_text() {
        let r = PolyRing::new(4, 3).unwrap();
        let m = catalog::omega(r, 1);
        let text = ModuleFile::from_module(&m).to_toml();
        assert_eq!(load_module(&text, None).unwrap(), m);
    }

    #[test]
    fn line_bundle_without_matrix() {
        let m = load_module("prime = 2\nnum_vars = 3\ntarget_twists = [0]\n", None).unwrap();
        assert_eq!(m.num_generators(), 1);
        assert!(!m.is_locally_free());
    }

    #[test]
    fn errors_name_the_entry() {
        let bad = TANGENT.replace(r#"["x1"]"#, r#"["x1^2"]"#);
        assert_eq!(load_module(&bad, None), Err(FormatError::NotHomogeneous { row: 1, col: 0, expected: 1 }));
        let bad = TANGENT.replace(r#"["x2"]"#, r#"["x7"]"#);
        assert!(matches!(load_module(&bad, None), Err(FormatError::Entry { row: 2, col: 0, .. })));
        let bad = TANGENT.replace("prime = 5", "prime = 6");
        assert_eq!(load_module(&bad, None), Err(FormatError::Field(FieldError::NotPrime(6))));
        let bad = TANGENT.replace(r#", ["x2"]"#, "");
        assert_eq!(load_module(&bad, None), Err(FormatError::RowCount { found: 2, expected: 3 }));
        assert!(matches!(load_module("prime = ", None), Err(FormatError::Syntax(_))));
        assert!(matches!(load_module("prime = 5\nnum_vars = 2\ntarget_twists=[0]\nextra = 1", None), Err(FormatError::Syntax(_))));
    }
}
