use std::cell::RefCell;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use lowrw::io::parse_edge_list;
use lowrw::Graph;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Raised when a check fails; maps to exit code 1.
#[derive(Debug)]
pub struct Unverified(pub String);

impl fmt::Display for Unverified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for Unverified {}

pub fn unverified(msg: impl Into<String>) -> anyhow::Error {
    Unverified(msg.into()).into()
}

/// Shared run settings plus the files a run touched, for the manifest.
pub struct Ctx {
    pub seed: u64,
    pub no_timing: bool,
    out_dir: Option<PathBuf>,
    pub inputs: RefCell<Vec<String>>,
    pub outputs: RefCell<Vec<String>>,
}

impl Ctx {
    pub fn new(seed: u64, no_timing: bool, out_dir: Option<PathBuf>) -> Self {
        Ctx {
            seed,
            no_timing,
            out_dir,
            inputs: RefCell::new(Vec::new()),
            outputs: RefCell::new(Vec::new()),
        }
    }

    pub fn millis(&self, d: std::time::Duration) -> u64 {
        if self.no_timing {
            0
        } else {
            d.as_millis() as u64
        }
    }

    pub fn read_text(&self, path: &Path) -> Result<String> {
        self.inputs.borrow_mut().push(path.display().to_string());
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }

    pub fn read_graph(&self, path: &Path) -> Result<Graph> {
        let text = self.read_text(path)?;
        parse_edge_list(&text).with_context(|| format!("parsing edge list {}", path.display()))
    }

    pub fn read_json<T: DeserializeOwned>(&self, path: &Path) -> Result<T> {
        let text = self.read_text(path)?;
        serde_json::from_str(&text).with_context(|| format!("parsing JSON {}", path.display()))
    }

    fn resolve(&self, path: &Path) -> PathBuf {
        match &self.out_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    /// Writes to `path` (through a temporary file and a rename), or to
    /// stdout when `path` is absent or `-`.
    pub fn emit(&self, path: Option<&Path>, content: &str) -> Result<()> {
        match path {
            Some(p) if p != Path::new("-") => {
                let target = self.resolve(p);
                if let Some(parent) = target.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
                }
                let tmp = target.with_extension("partial");
                fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
                fs::rename(&tmp, &target).with_context(|| format!("writing {}", target.display()))?;
                self.outputs.borrow_mut().push(target.display().to_string());
                Ok(())
            }
            _ => {
                let mut out = std::io::stdout().lock();
                out.write_all(content.as_bytes())?;
                Ok(())
            }
        }
    }

    pub fn emit_json<T: Serialize>(&self, path: Option<&Path>, value: &T) -> Result<()> {
        let mut text = serde_json::to_string(value)?;
        text.push('\n');
        self.emit(path, &text)
    }
}
