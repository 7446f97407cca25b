//! Search results persisted under a SHA-256 key of the undecorated diagram
//! and the search options.

use std::io;
use std::path::{Path, PathBuf};

use flatrep::diagram::SingularLinkDiagram;
use flatrep::sld::SldDocument;
use flatrep::SearchOptions;
use sha2::{Digest, Sha256};

use crate::report::SearchSummary;

pub fn key(d: &SingularLinkDiagram, opts: &SearchOptions) -> String {
    let mut h = Sha256::new();
    h.update(b"flatrep search v1\n");
    h.update(SldDocument::from_parts(None, d, None).serialize());
    h.update(format!(
        "group={} dedup={} involutions={} paths={:?}\n",
        opts.group.name(),
        opts.dedup,
        opts.involutions_only_on_hopfs,
        opts.sw_paths
    ));
    hex::encode(h.finalize())
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// A stored result, or `None` when absent or unreadable.
pub fn load(dir: &Path, key: &str) -> Option<SearchSummary> {
    let text = std::fs::read_to_string(path(dir, key)).ok()?;
    let mut s: SearchSummary = serde_json::from_str(&text).ok()?;
    s.cached = true;
    Some(s)
}

pub fn store(dir: &Path, key: &str, summary: &SearchSummary) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{key}.tmp"));
    std::fs::write(&tmp, serde_json::to_string_pretty(summary)?)?;
    std::fs::rename(tmp, path(dir, key))
}
