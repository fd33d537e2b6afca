//! Shared helpers for the integration suites.
//!
//! The centrepiece is a from-scratch minimal-cover oracle that walks every
//! bitmask of the ground set. It shares no code with the library's branching
//! enumerator — no pruning, no witness bookkeeping, no parallelism — so the
//! two implementations can be compared for exact set equality.

#![allow(dead_code)] // each test binary uses its own slice of these helpers

use minicover_core::{ElementSet, SetFamily};

/// Does `mask` meet every member?
fn meets_all(mask: u128, members: &[u128]) -> bool {
    members.iter().all(|&m| m & mask != 0)
}

/// Every minimal cover of size at most `cap`, by exhaustive scan over all
/// `2^ground` subsets. A cover is minimal exactly when dropping any single
/// element leaves some member unmet, so minimality is checked against the
/// members directly rather than against other covers.
pub fn oracle_minimal_covers(family: &SetFamily, cap: usize) -> Vec<ElementSet> {
    let members: Vec<u128> = family.sets().iter().map(|s| s.bits()).collect();
    if members.iter().any(|&m| m == 0) {
        return Vec::new(); // an empty member admits no cover at all
    }
    let ground = family.ground();
    assert!(ground < 26, "the subset scan is exponential in the ground size");
    let mut out = Vec::new();
    for mask in 0u128..(1u128 << ground) {
        if (mask.count_ones() as usize) > cap || !meets_all(mask, &members) {
            continue;
        }
        let minimal = (0..ground)
            .filter(|&e| mask >> e & 1 == 1)
            .all(|e| !meets_all(mask & !(1u128 << e), &members));
        if minimal {
            out.push(ElementSet::from_bits(mask));
        }
    }
    out
}

/// Covering number by the same exhaustive scan; `None` when no cover exists.
pub fn oracle_tau(family: &SetFamily) -> Option<usize> {
    let members: Vec<u128> = family.sets().iter().map(|s| s.bits()).collect();
    if members.iter().any(|&m| m == 0) {
        return None;
    }
    let ground = family.ground();
    assert!(ground < 26, "the subset scan is exponential in the ground size");
    (0u128..(1u128 << ground))
        .filter(|&mask| meets_all(mask, &members))
        .map(|mask| mask.count_ones() as usize)
        .min()
}

/// Canonical order for comparing cover lists as sets: ascending size, then
/// ascending bit pattern.
pub fn sort_covers(mut covers: Vec<ElementSet>) -> Vec<ElementSet> {
    covers.sort_by_key(|c| (c.len(), c.bits()));
    covers
}
