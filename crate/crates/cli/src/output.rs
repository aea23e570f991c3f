use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Writes `contents` to `dir/name` by way of a temporary file and a rename,
/// so readers never observe a half-written artifact.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, &target)?;
    Ok(target)
}

/// Joins rows into CSV text with a header line. Fields are plain numbers or
/// bit strings, so no quoting is needed.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `key: value` lines describing how an artifact was produced.
pub fn metadata(entries: &[(&str, String)]) -> String {
    entries
        .iter()
        .map(|(k, v)| format!("{k}: {v}\n"))
        .collect()
}
