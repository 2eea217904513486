//! File access with diagnostics that name the path.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::Fail;

pub fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

pub fn create_dir(path: &Path) -> Result<(), Fail> {
    fs::create_dir_all(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

/// Writes next to the destination, then renames over it, so readers never
/// see a half-written file.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Fail> {
    let io = |e: std::io::Error| Fail(2, format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Fail(2, format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}
