//! Atomic file emission with a `.meta.json` sidecar next to every output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::config::RunConfig;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "U2POINT_OUT_DIR";

pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
}

/// Write through a temporary file in the same directory and rename it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Collects the files of one run.
pub struct Emitter<'a> {
    cfg: &'a RunConfig,
    pub written: Vec<PathBuf>,
}

impl<'a> Emitter<'a> {
    pub fn new(cfg: &'a RunConfig) -> Self {
        Self { cfg, written: Vec::new() }
    }

    fn path(&self, suffix: &str) -> PathBuf {
        self.cfg.output.dir.join(format!("{}{suffix}", self.cfg.output.stem))
    }

    fn emit(&mut self, suffix: &str, kind: &str, body: &[u8]) -> std::io::Result<()> {
        let path = self.path(suffix);
        write_atomic(&path, body)?;
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let meta = json!({
            "tool": "u2point",
            "version": env!("CARGO_PKG_VERSION"),
            "file": name,
            "format": kind,
            "config": self.cfg,
        });
        let mut m = serde_json::to_string_pretty(&meta).expect("config serializes");
        m.push('\n');
        let meta_path = self.path(&format!("{suffix}.meta.json"));
        write_atomic(&meta_path, m.as_bytes())?;
        self.written.push(path);
        self.written.push(meta_path);
        Ok(())
    }

    /// `<stem><suffix>` as CSV; `suffix` includes the extension.
    pub fn csv(&mut self, suffix: &str, body: &str) -> std::io::Result<()> {
        self.emit(suffix, "csv", body.as_bytes())
    }

    pub fn json<S: Serialize>(&mut self, suffix: &str, value: &S) -> std::io::Result<()> {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        self.emit(suffix, "json", s.as_bytes())
    }
}
