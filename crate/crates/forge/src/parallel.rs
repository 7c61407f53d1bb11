//! Rayon drivers for the embarrassingly parallel stages.
//!
//! Each driver splits its work into fixed chunks and merges with an
//! associative, order-independent reduction, so the result does not depend
//! on the thread count.

use std::collections::BTreeSet;

use rayon::prelude::*;
use seidel_forge_core::canon::{check_enumeration_size, edge_slots, switching_keys_in_range};
use seidel_forge_core::enumeration::{
    describe_subset, exact_count, oracle_counts_from_keys, transversal, E8Frame, EnumError, OmegaTable, OracleCounts,
    Representative, SMALL_EXACT_MAX,
};
use seidel_forge_core::orbits::{
    cycle_type_histogram, merge_histograms, subset_counts_from_histogram, CycleTypeHistogram, SubsetCountTable,
};
use seidel_forge_core::perm::PermGroup;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "SEIDEL_FORGE_THREADS";

pub fn pool(threads: Option<usize>) -> anyhow::Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        anyhow::ensure!(t >= 1, "thread count must be at least 1");
        builder = builder.num_threads(t);
    }
    Ok(builder.build()?)
}

/// Orbit counts on subsets, split over the first basic orbit.
pub fn subset_counts(group: &PermGroup) -> Result<SubsetCountTable, EnumError> {
    let top = group.basic_orbit_lengths().first().copied().unwrap_or(1);
    let hist = (0..top)
        .into_par_iter()
        .map(|f| cycle_type_histogram(group, f..f + 1))
        .reduce(CycleTypeHistogram::new, merge_histograms);
    Ok(subset_counts_from_histogram(group.degree(), &group.order(), &hist)?)
}

pub fn omega_table(frame: &E8Frame) -> Result<OmegaTable, EnumError> {
    OmegaTable::from_counts(&subset_counts(&frame.class_group)?)
}

/// Transversal at size `n` mapped through `φ`, in transversal order.
pub fn representatives(frame: &E8Frame, n: usize) -> Result<Vec<Representative>, EnumError> {
    transversal(frame, n)?.par_iter().map(|s| describe_subset(frame, s)).collect()
}

pub fn small_exact_counts(frame: &E8Frame) -> Result<Vec<u64>, EnumError> {
    (0..=SMALL_EXACT_MAX).map(|n| Ok(exact_count(&representatives(frame, n)?))).collect()
}

const ORACLE_CHUNKS: u64 = 256;

/// Exhaustive graph enumeration on `n ≤ 7` vertices.
pub fn brute_force_counts(n: usize) -> Result<OracleCounts, EnumError> {
    check_enumeration_size(n, false)?;
    let total = 1u64 << edge_slots(n);
    let chunk = total.div_ceil(ORACLE_CHUNKS).max(1);
    let keys = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| switching_keys_in_range(n, c * chunk..((c + 1) * chunk).min(total)))
        .reduce(BTreeSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        });
    Ok(oracle_counts_from_keys(n, &keys))
}
