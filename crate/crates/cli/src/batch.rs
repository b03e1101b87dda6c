//! `compare --batch MANIFEST`: a JSON array of
//! `{"kind": ..., "left": ..., "right": ..., "bound": ...}` entries.
//! `kind` is one of `sixterm`, `graph`, `subst`, `scaled` or `sturmian`.
//! File names are relative to the manifest; sturmian entries hold literals.
//! Entries run in parallel and results keep manifest order. A failing entry
//! reports its error in place and does not stop the others.

use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{self, Failure, DEFAULT_DG_BOUND};

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    Sixterm,
    Graph,
    Subst,
    Scaled,
    Sturmian,
}

#[derive(Deserialize)]
struct Entry {
    kind: Kind,
    left: String,
    right: String,
    #[serde(default)]
    bound: Option<usize>,
}

fn run_entry(dir: &Path, e: &Entry) -> Result<Value, Failure> {
    let (l, r) = (dir.join(&e.left), dir.join(&e.right));
    match e.kind {
        Kind::Sixterm => commands::sixterm_compare(
            &l,
            &r,
            e.bound.unwrap_or(kclass::sixterm::DEFAULT_PAIR_BOUND),
        ),
        Kind::Graph => commands::graph_compare(&l, &r),
        Kind::Subst => commands::subst_compare(&l, &r, e.bound.unwrap_or(DEFAULT_DG_BOUND)),
        Kind::Scaled => commands::scaled_compare(&l, &r, e.bound.unwrap_or(DEFAULT_DG_BOUND)),
        Kind::Sturmian => commands::sturmian_compare(&e.left, &e.right),
    }
}

pub fn run(manifest: &Path) -> Result<Value, Failure> {
    let entries: Vec<Entry> = commands::load(manifest)?;
    let dir = manifest.parent().unwrap_or(Path::new("."));
    let results: Vec<Value> = entries
        .par_iter()
        .map(|e| run_entry(dir, e).unwrap_or_else(|f| f.to_json()))
        .collect();
    Ok(json!({ "results": results }))
}
