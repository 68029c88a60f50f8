use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use super::BenchError;

/// Dataset listing: one `id<TAB>path` per line, relative paths resolved against `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetManifest {
    pub root: PathBuf,
    pub entries: Vec<(String, PathBuf)>,
}

impl DatasetManifest {
    pub fn parse(text: &str, root: impl Into<PathBuf>) -> Result<Self, BenchError> {
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, path) = line
                .split_once('\t')
                .ok_or_else(|| BenchError::Manifest(format!("line {}: expected `id<TAB>path`", n + 1)))?;
            if id.is_empty() || path.is_empty() {
                return Err(BenchError::Manifest(format!("line {}: empty id or path", n + 1)));
            }
            if !seen.insert(id.to_string()) {
                return Err(BenchError::Manifest(format!("line {}: duplicate id `{id}`", n + 1)));
            }
            entries.push((id.to_string(), PathBuf::from(path)));
        }
        if entries.is_empty() {
            return Err(BenchError::Manifest("manifest lists no images".into()));
        }
        Ok(Self {
            root: root.into(),
            entries,
        })
    }

    /// Reads a manifest file; its directory becomes the root.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, BenchError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))?;
        let root = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, root)
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.root.join(path)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_resolves() {
        let m = DatasetManifest::parse("# corpus\nlena\timgs/lena.ppm\n\nabs\t/tmp/x.pgm\n", "/data").unwrap();
        assert_eq!(m.entries.len(), 2);
        assert_eq!(m.resolve(&m.entries[0].1), PathBuf::from("/data/imgs/lena.ppm"));
        assert_eq!(m.resolve(&m.entries[1].1), PathBuf::from("/tmp/x.pgm"));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(DatasetManifest::parse("a b\n", ".").is_err());
        assert!(DatasetManifest::parse("a\tx\na\ty\n", ".").is_err());
        assert!(DatasetManifest::parse("\n# only comments\n", ".").is_err());
    }
}
