use fracdesign_core::{Enumerator, Fraction, SymmetryGroup};
use rayon::prelude::*;

use crate::error::{Error, Result};

const SPLIT_DEPTH: usize = 10;

/// Runs the search on `jobs` worker threads (0 picks the number of CPUs).
/// The search tree is split at a fixed depth and the merged output is sorted,
/// so the result does not depend on `jobs`. With `group`, only canonical
/// representatives are kept.
pub fn search(enumerator: &Enumerator, jobs: usize, group: Option<&SymmetryGroup>) -> Result<Vec<Fraction>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Spec(format!("cannot start worker threads: {}", e)))?;
    let prefixes = enumerator.prefixes(SPLIT_DEPTH);
    let mut out: Vec<Fraction> = pool.install(|| {
        prefixes
            .par_iter()
            .flat_map_iter(|prefix| {
                let mut found = Vec::new();
                enumerator.for_each_with_prefix(prefix, &mut |f| {
                    if group.is_none_or(|g| g.is_canonical(&f)) {
                        found.push(f);
                    }
                });
                found
            })
            .collect()
    });
    out.sort();
    Ok(out)
}
