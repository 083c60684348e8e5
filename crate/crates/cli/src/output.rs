use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::commands::Failure;

/// Writes `text` to stdout, or atomically to `path`: the file either appears
/// complete or not at all.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(Failure::io);
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(Failure::io)?;
    tmp.write_all(text.as_bytes()).map_err(Failure::io)?;
    tmp.as_file().sync_all().map_err(Failure::io)?;
    tmp.persist(path).map_err(|e| Failure::io(e.error))?;
    Ok(())
}
