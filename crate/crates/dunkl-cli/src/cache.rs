//! Advisory on-disk cache, enabled by the `DUNKL_CACHE_DIR` environment
//! variable.
//!
//! Each context gets one file named by a hash of its stable cache key. The
//! file holds a magic/version line followed by a JSON payload with the
//! intertwining matrices and (for Jack computations) the `zeta` memo. The
//! cache is purely advisory: unreadable, mismatched, or stale files are
//! ignored and results never depend on its presence.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;

use dunkl_core::dunkl::DunklContext;
use dunkl_core::jack::{export_zeta_memo, import_zeta_memo};

/// Format tag written as the first line of every cache file; bump on any
/// layout change.
const MAGIC: &str = "DUNKLCACHE v1";

fn cache_file(ctx: &DunklContext) -> Option<PathBuf> {
    let dir = std::env::var_os("DUNKL_CACHE_DIR")?;
    let mut h = DefaultHasher::new();
    ctx.cache_key().hash(&mut h);
    Some(PathBuf::from(dir).join(format!("{:016x}.dunklcache", h.finish())))
}

/// Load any cached data for this context. Failures are silently ignored.
pub fn load(ctx: &DunklContext) {
    let Some(path) = cache_file(ctx) else { return };
    let Ok(raw) = std::fs::read_to_string(&path) else {
        return;
    };
    let Some((header, payload)) = raw.split_once('\n') else {
        return;
    };
    if header != MAGIC {
        return;
    }
    let Ok(doc) = serde_json::from_str::<serde_json::Value>(payload) else {
        return;
    };
    if doc.get("key").and_then(|k| k.as_str()) != Some(ctx.cache_key().as_str()) {
        return;
    }
    if let Some(v0) = doc.get("v0") {
        let _ = ctx.import_v0_cache(v0);
    }
    if let Some(zeta) = doc.get("zeta") {
        let _ = import_zeta_memo(zeta);
    }
}

/// Persist this context's caches. Failures are silently ignored.
pub fn save(ctx: &DunklContext, include_zeta: bool) {
    let Some(path) = cache_file(ctx) else { return };
    let Some(dir) = path.parent() else { return };
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let mut doc = serde_json::json!({
        "key": ctx.cache_key(),
        "v0": ctx.export_v0_cache(),
    });
    if include_zeta {
        doc["zeta"] = export_zeta_memo();
    }
    let body = format!("{}\n{}", MAGIC, doc);
    let tmp = path.with_extension("tmp");
    if std::fs::write(&tmp, body).is_ok() {
        let _ = std::fs::rename(&tmp, &path);
    }
}
