//! Streaming helpers: graph6 line input, shard selection by canonical-form
//! hash, and the worker pool sized by `--jobs` / `SPECTER_JOBS`.

use anyhow::{anyhow, bail, Context, Result};
use specter_core::isomorph::CanonicalForm;
use specter_core::{parse_graph6, Graph};
use std::io::Read;
use std::str::FromStr;

/// `--shard i/n`: keep a work item iff `hash(canonical form) % n == i`.
#[derive(Clone, Copy, Debug)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl FromStr for Shard {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (i, n) = s
            .split_once('/')
            .ok_or_else(|| anyhow!("shard must be i/n, got {s:?}"))?;
        let index: u64 = i.parse().context("shard index")?;
        let count: u64 = n.parse().context("shard count")?;
        if count == 0 || index >= count {
            bail!("shard index must satisfy i < n, got {index}/{count}");
        }
        Ok(Shard { index, count })
    }
}

impl Shard {
    pub fn keeps(&self, form: &CanonicalForm) -> bool {
        fnv64(form.bytes()) % self.count == self.index
    }
}

/// FNV-1a, fixed here so shard assignment is stable across builds.
pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Reads all graph6 lines from a reader; blank lines are skipped; parse
/// failures name the line.
pub fn read_graph6_lines(input: &mut dyn Read) -> Result<Vec<(String, Graph)>> {
    let mut text = String::new();
    input.read_to_string(&mut text).context("reading input")?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|e| anyhow!("line {}: {e}", lineno + 1))?;
        out.push((line.to_string(), g));
    }
    Ok(out)
}

/// Worker pool honoring `--jobs`, falling back to `SPECTER_JOBS`, then to
/// the rayon default.
pub fn make_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let jobs = match jobs {
        Some(j) => Some(j),
        None => match std::env::var("SPECTER_JOBS") {
            Ok(v) => Some(v.parse().context("SPECTER_JOBS")?),
            Err(_) => None,
        },
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        builder = builder.num_threads(j);
    }
    builder.build().context("building worker pool")
}
