//! Content-addressed expansion cache: one JSON file per
//! (q, r, form, order, engine version).  Writes go through a temporary
//! file and an atomic rename, so processes sharing a directory never
//! observe partial entries; a request is served by any entry of the same
//! key whose order covers it, truncated down.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use drinfeld_core::expand::FormId;
use drinfeld_core::field::Gf;
use drinfeld_core::texp::TExp;

use crate::series::SeriesJson;

pub const ENGINE_VERSION: u32 = 1;

pub struct Cache {
    dir: PathBuf,
    enabled: bool,
    /// Set when an entry was corrupt or the directory misbehaved; the
    /// command still completes (recomputing as needed) but reports the
    /// cache status through its exit code.
    pub trouble: bool,
}

fn file_form(form: &FormId) -> String {
    form.to_string().replace(':', "_")
}

impl Cache {
    pub fn open(dir: &Path) -> Cache {
        let mut c = Cache {
            dir: dir.to_path_buf(),
            enabled: true,
            trouble: false,
        };
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("warning: cannot use cache directory {}: {e}", dir.display());
            c.enabled = false;
            c.trouble = true;
        }
        c
    }

    fn key(&self, q: u32, r: u32, form: &FormId, order: i64) -> PathBuf {
        self.dir.join(format!(
            "{q}-{r}-{}-{order}-v{ENGINE_VERSION}.json",
            file_form(form)
        ))
    }

    /// Smallest cached order covering the request, if any.
    fn best_candidate(&self, q: u32, r: u32, form: &FormId, order: i64) -> Option<(i64, PathBuf)> {
        let prefix = format!("{q}-{r}-{}-", file_form(form));
        let suffix = format!("-v{ENGINE_VERSION}.json");
        let mut best: Option<(i64, PathBuf)> = None;
        for entry in fs::read_dir(&self.dir).ok()?.flatten() {
            let name = entry.file_name();
            let name = name.to_string_lossy();
            let Some(mid) = name
                .strip_prefix(&prefix)
                .and_then(|m| m.strip_suffix(&suffix))
            else {
                continue;
            };
            let Ok(n) = mid.parse::<i64>() else { continue };
            if n >= order && best.as_ref().map_or(true, |(b, _)| n < *b) {
                best = Some((n, entry.path()));
            }
        }
        best
    }

    pub fn load(&mut self, field: &Gf, q: u32, r: u32, form: &FormId, order: i64) -> Option<TExp> {
        if !self.enabled {
            return None;
        }
        let (cached_order, path) = self.best_candidate(q, r, form, order)?;
        match read_entry(field, q, r, form, cached_order, &path) {
            Ok(f) => Some(f.truncate(order)),
            Err(why) => {
                eprintln!(
                    "warning: corrupted cache entry {}: {why}; recomputing",
                    path.display()
                );
                self.trouble = true;
                None
            }
        }
    }

    /// Last writer wins; identical flags produce identical bytes, and a
    /// fresh write heals a corrupted entry under the same key.
    pub fn store(&mut self, q: u32, r: u32, form: &FormId, f: &TExp) {
        if !self.enabled {
            return;
        }
        let path = self.key(q, r, form, f.n_max());
        let json = SeriesJson::from_texp(q, r, &form.to_string(), f);
        if let Err(why) = write_atomic(&self.dir, &path, &json.to_bytes()) {
            eprintln!("warning: cannot write cache entry {}: {why}", path.display());
            self.trouble = true;
        }
    }
}

fn read_entry(
    field: &Gf,
    q: u32,
    r: u32,
    form: &FormId,
    order: i64,
    path: &Path,
) -> Result<TExp, String> {
    let bytes = fs::read(path).map_err(|e| e.to_string())?;
    let json: SeriesJson = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    let h = &json.header;
    if h.q != q || h.r != r || h.form != form.to_string() || h.order != order {
        return Err("header does not match its key".into());
    }
    if h.weight != form.weight(field, r) {
        return Err("stored weight disagrees with the form".into());
    }
    json.to_texp(field)
}

fn write_atomic(dir: &Path, path: &Path, bytes: &[u8]) -> Result<(), String> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| e.to_string())?;
    tmp.write_all(bytes).map_err(|e| e.to_string())?;
    tmp.persist(path).map_err(|e| e.to_string())?;
    Ok(())
}
