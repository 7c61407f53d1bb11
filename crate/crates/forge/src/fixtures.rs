//! Reference tables, embedded as ground truth for `--check-paper`.
//! Nothing in this module is computed.

/// `s(n)` for `n = 0..=13`.
pub const S: [u64; 14] = [1, 1, 1, 2, 3, 5, 9, 16, 25, 40, 58, 75, 96, 108];

/// `s_e(n)` for `n = 0..=13`.
pub const S_E: [u64; 14] = [0, 0, 0, 0, 1, 1, 4, 9, 23, 38, 56, 73, 94, 106];

/// `ω(n)` for `n = 0..=29`.
pub const OMEGA: [u64; 30] = [
    1, 1, 1, 2, 3, 5, 9, 16, 23, 37, 54, 70, 90, 101, 103, //
    101, 90, 70, 54, 37, 23, 16, 10, 5, 3, 2, 1, 1, 1, 0,
];

/// Largest `n` with a reference `s(n)`.
pub const S_MAX: usize = S.len() - 1;

/// Positions where `computed` differs from `reference` over their common prefix,
/// with values beyond `computed` read as zero.
pub fn mismatches(computed: &[u64], reference: &[u64]) -> Vec<(usize, u64, u64)> {
    reference
        .iter()
        .enumerate()
        .filter_map(|(n, &p)| {
            let c = computed.get(n).copied().unwrap_or(0);
            (c != p).then_some((n, c, p))
        })
        .collect()
}
