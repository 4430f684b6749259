//! Result tables and their byte-stable CSV serialisation.
//!
//! Layout: `#`-prefixed metadata comments (config hash, seed, version,
//! free-form notes), a header row, then data rows with every value printed
//! to 12 significant digits and `\n` line endings. Equal config + seed
//! gives byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// FNV-1a 64-bit hash; stable fingerprint for config provenance.
pub fn fnv1a_64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Provenance carried in the CSV header comments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMetadata {
    pub config_hash: u64,
    pub seed: u64,
    pub version: String,
}

impl TableMetadata {
    pub fn new(config_hash: u64, seed: u64) -> Self {
        Self {
            config_hash,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Rectangular table of real values with named columns.
#[derive(Debug, Clone)]
pub struct ResultTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: TableMetadata,
    /// Extra `# note:` comment lines (parameter context, column legends).
    pub notes: Vec<String>,
}

impl ResultTable {
    pub fn new(name: impl Into<String>, columns: Vec<String>, metadata: TableMetadata) -> Self {
        assert!(columns.len() >= 2, "a result table needs at least two columns");
        Self {
            name: name.into(),
            columns,
            rows: Vec::new(),
            metadata,
            notes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# config_hash: {:016x}", self.metadata.config_hash);
        let _ = writeln!(out, "# seed: {}", self.metadata.seed);
        let _ = writeln!(out, "# version: {}", self.metadata.version);
        for note in &self.notes {
            let _ = writeln!(out, "# note: {note}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| format!("{v:.11e}")).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// Reads the metadata back out of a serialised table; used to check
    /// that provenance round-trips.
    pub fn metadata_from_csv(text: &str) -> Option<TableMetadata> {
        let mut config_hash = None;
        let mut seed = None;
        let mut version = None;
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            if let Some(v) = line.strip_prefix("# config_hash: ") {
                config_hash = u64::from_str_radix(v.trim(), 16).ok();
            } else if let Some(v) = line.strip_prefix("# seed: ") {
                seed = v.trim().parse().ok();
            } else if let Some(v) = line.strip_prefix("# version: ") {
                version = Some(v.trim().to_string());
            }
        }
        Some(TableMetadata {
            config_hash: config_hash?,
            seed: seed?,
            version: version?,
        })
    }

    /// Writes `<out_dir>/<name>.csv` and returns its path.
    pub fn write_csv(&self, out_dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(out_dir)?;
        let path = out_dir.join(format!("{}.csv", self.name));
        std::fs::write(&path, self.to_csv())?;
        Ok(path)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}
