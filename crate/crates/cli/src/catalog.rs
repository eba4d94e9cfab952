//! JSON-lines catalog of verified constructions.
//!
//! Each line is one [`CatalogEntry`]. Entries are rebuilt from their recipe
//! on `check`; the adjacency hash (SHA-256 of the `matrix` text) pins the
//! exact vertex ordering, and an optional stored adjacency is re-verified
//! independently.

use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::Path;

use dsrg::constructions::Construction;
use dsrg::params::spectrum;
use dsrg::quotients::{stabilizer, Direction};
use dsrg::{verify_dsrg, Digraph, ParamTuple};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::formats::{parse_graph, to_matrix, TupleJson};
use crate::recipe::Recipe;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub recipe: Recipe,
    pub tuple: TupleJson,
    /// `DSRG`, `SRG` or `tournament`
    pub kind: String,
    /// `[value, multiplicity]` pairs, ascending
    pub spectrum: Vec<[i64; 2]>,
    /// `[|G_S|, |G_{S⁻¹}|]` for Cayley constructions
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizers: Option<[usize; 2]>,
    pub sha256: String,
    /// Adjacency in `matrix` format, when stored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog I/O on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
}

pub fn adjacency_hash(d: &Digraph) -> String {
    hex::encode(Sha256::digest(to_matrix(d).as_bytes()))
}

impl CatalogEntry {
    pub fn from_construction(recipe: Recipe, c: &Construction, store_adjacency: bool) -> Self {
        let p = c.expected;
        let spectrum = spectrum(&p).map(|s| s.multiset().into_iter().map(|(v, m)| [v, m]).collect()).unwrap_or_default();
        let stabilizers = c
            .cayley
            .as_ref()
            .map(|cg| [stabilizer(cg, Direction::Out).len(), stabilizer(cg, Direction::In).len()]);
        CatalogEntry {
            recipe,
            tuple: p.into(),
            kind: p.kind().to_string(),
            spectrum,
            stabilizers,
            sha256: adjacency_hash(&c.graph),
            adjacency: store_adjacency.then(|| to_matrix(&c.graph)),
        }
    }

    pub fn tuple(&self) -> ParamTuple {
        self.tuple.into()
    }

    /// Rebuilds the recipe and compares every recorded field; also
    /// re-verifies the stored adjacency when present.
    pub fn recheck(&self) -> Result<(), String> {
        let c = self.recipe.build().map_err(|e| format!("rebuild failed: {e}"))?;
        let found = verify_dsrg(&c.graph).map_err(|e| format!("rebuilt graph is not a DSRG: {e}"))?;
        let fresh = CatalogEntry::from_construction(self.recipe.clone(), &c, self.adjacency.is_some());
        if found != self.tuple() {
            return Err(format!("recorded tuple {} but the graph verifies as {found}", self.tuple()));
        }
        let fields = [
            ("kind", fresh.kind == self.kind),
            ("spectrum", fresh.spectrum == self.spectrum),
            ("stabilizers", fresh.stabilizers == self.stabilizers),
            ("sha256", fresh.sha256 == self.sha256),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, ok)| !ok) {
            return Err(format!("{name} differs from the rebuilt construction"));
        }
        if let Some(stored) = &self.adjacency {
            let g = parse_graph(stored).map_err(|e| format!("stored adjacency: {e}"))?;
            if adjacency_hash(&g.digraph) != self.sha256 {
                return Err("stored adjacency does not match sha256".into());
            }
            let t = verify_dsrg(&g.digraph).map_err(|e| format!("stored adjacency is not a DSRG: {e}"))?;
            if t != self.tuple() {
                return Err(format!("stored adjacency verifies as {t}"));
            }
        }
        Ok(())
    }
}

/// Reads every entry; a missing file is an empty catalog.
pub fn load(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(source) => return Err(CatalogError::Io { path: path.display().to_string(), source }),
    };
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| CatalogError::Corrupt { line: i + 1, reason: e.to_string() }))
        .collect()
}

pub fn append(path: &Path, entry: &CatalogEntry) -> Result<(), CatalogError> {
    let io = |source| CatalogError::Io { path: path.display().to_string(), source };
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    let line = serde_json::to_string(entry).expect("entry serializes");
    writeln!(f, "{line}").map_err(io)
}
