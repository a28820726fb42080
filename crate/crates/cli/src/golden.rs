//! Embedded reference tables and their comparison.

use std::fs;
use std::path::Path;

/// γ_{2,n,0} for n = 2..=12.
pub const GAMMA2: [&str; 11] = ["48", "45", "36", "21", "15", "231/16", "0", "-585/16", "-105", "-3465/16", "-384"];

/// Signs of (Disc, Π, Λ) of Q_{5,20,ℓ} for ℓ = 0..=30.
pub fn signs520() -> Vec<&'static str> {
    let mut rows = vec!["---", "+-+", "+++"];
    rows.extend(["++-"; 4]);
    rows.extend(["+++"; 2]);
    rows.extend(["+-+"; 20]);
    rows.extend(["+++"; 2]);
    rows
}

/// Whitespace-separated tokens of a golden file; `#` starts a comment.
pub fn load(path: &Path) -> std::io::Result<Vec<String>> {
    Ok(fs::read_to_string(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace().map(str::to_string).collect::<Vec<_>>())
        .collect())
}

/// Row labels and (computed, expected) for every disagreement.
pub fn diff(labels: &[String], computed: &[String], expected: &[String]) -> Vec<(String, String, String)> {
    let n = computed.len().max(expected.len());
    (0..n)
        .filter_map(|i| {
            let c = computed.get(i).cloned().unwrap_or_else(|| "<missing>".into());
            let e = expected.get(i).cloned().unwrap_or_else(|| "<missing>".into());
            let label = labels.get(i).cloned().unwrap_or_else(|| format!("row {i}"));
            (c != e).then_some((label, c, e))
        })
        .collect()
}
