//! File formats and argument parsing helpers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use heegaard_core::diagram::{validate_diagram, HeegaardDiagram};
use heegaard_core::freegroup::{Basis, CurveSystem, NamedCurve};
use serde::{Deserialize, Serialize};

/// Errors reported with exit code 2.
#[derive(Debug)]
pub enum InputError {
    /// A library call rejected the input.
    Core(heegaard_core::Error),
    /// A file could not be read or written.
    Io(PathBuf, std::io::Error),
    /// A file is not valid JSON for its format.
    Json(PathBuf, serde_json::Error),
    /// Flags are missing or inconsistent.
    Usage(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Core(e) => write!(f, "{e}"),
            InputError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            InputError::Json(p, e) => write!(f, "{}: {e}", p.display()),
            InputError::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for InputError {}

impl From<heegaard_core::Error> for InputError {
    fn from(e: heegaard_core::Error) -> Self {
        InputError::Core(e)
    }
}

/// Result alias for command code.
pub type Result<T, E = InputError> = std::result::Result<T, E>;

/// A curve system file: `{ "basis": [...], "curves": { name: word } }`.
/// Curves are ordered by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    /// Generator names.
    pub basis: Vec<String>,
    /// Curve words keyed by name.
    pub curves: BTreeMap<String, String>,
}

impl SystemFile {
    /// Parses the words.
    pub fn to_system(&self) -> Result<CurveSystem> {
        let basis = Basis::new(self.basis.iter().cloned())?;
        Ok(CurveSystem::parse(basis, self.curves.iter().map(|(k, v)| (k.as_str(), v.as_str())))?)
    }

    /// Formats a system.
    pub fn from_system(s: &CurveSystem) -> Self {
        SystemFile {
            basis: s.basis.names().to_vec(),
            curves: s.curves.iter().map(|c| (c.name.clone(), c.word.format(&s.basis))).collect(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io(path.to_path_buf(), e))
}

/// Reads a system file.
pub fn read_system(path: &Path) -> Result<CurveSystem> {
    let f: SystemFile = serde_json::from_str(&read(path)?).map_err(|e| InputError::Json(path.to_path_buf(), e))?;
    f.to_system()
}

/// Reads and validates a diagram file.
pub fn read_diagram(path: &Path) -> Result<HeegaardDiagram> {
    let d: HeegaardDiagram = serde_json::from_str(&read(path)?).map_err(|e| InputError::Json(path.to_path_buf(), e))?;
    let v = validate_diagram(&d);
    if v.is_empty() {
        Ok(d)
    } else {
        Err(heegaard_core::Error::InvalidDiagram(v).into())
    }
}

/// Writes `text` to `path`, creating parent directories.
pub fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| InputError::Io(dir.to_path_buf(), e))?;
    }
    std::fs::write(path, text).map_err(|e| InputError::Io(path.to_path_buf(), e))
}

/// Parses `M/N` or `M`.
pub fn parse_slope(text: &str) -> Result<(i64, i64)> {
    let bad = || InputError::Usage(format!("bad slope `{text}`, expected M/N"));
    let (m, n) = match text.split_once('/') {
        Some((m, n)) => (m.trim(), n.trim()),
        None => (text.trim(), "1"),
    };
    Ok((m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?))
}

/// Parses a comma-separated list of integers.
pub fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| InputError::Usage(format!("bad integer `{}` in `{text}`", t.trim()))))
        .collect()
}

/// Splits a comma-separated list of names.
pub fn parse_names(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// `x, y, z` truncated to `k` for `k ≤ 3`, otherwise `x1 … xk`.
pub fn default_basis(k: usize) -> Basis {
    if k <= 3 {
        Basis::new(["x", "y", "z"].into_iter().take(k)).expect("valid names")
    } else {
        Basis::numbered(k)
    }
}

/// Names words `c1, c2, …`.
pub fn system_from_words(basis: Basis, words: &[String]) -> Result<CurveSystem> {
    let curves = words
        .iter()
        .enumerate()
        .map(|(i, w)| Ok(NamedCurve { name: format!("c{}", i + 1), word: basis.parse_cyclic(w)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSystem::new(basis, curves)?)
}
