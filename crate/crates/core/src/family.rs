use crate::error::{Error, Result};
use crate::set::{ElementSet, GroundSet};

/// A finite family of subsets of a ground set `{0, .., ground-1}`.
///
/// Members are kept in insertion order with duplicates removed at construction
/// (a family is a set of sets; the number of dropped duplicates is recorded so
/// callers can warn). An optional uniformity `n` is validated: when present,
/// every member has exactly `n` elements.
///
/// Empty members are rejected by default because no finite cover can hit them.
/// Constructions that genuinely need an empty member must opt in via
/// [`SetFamily::new_degenerate`]; all covering operations refuse such families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: usize,
    sets: Vec<ElementSet>,
    uniformity: Option<usize>,
    duplicates_removed: usize,
    degenerate: bool,
}

impl SetFamily {
    pub fn new(
        ground: usize,
        sets: Vec<ElementSet>,
        uniformity: Option<usize>,
    ) -> Result<Self> {
        Self::build(ground, sets, uniformity, false)
    }

    /// Like [`SetFamily::new`] but tolerates empty members. Covering
    /// operations will still reject the result.
    pub fn new_degenerate(
        ground: usize,
        sets: Vec<ElementSet>,
        uniformity: Option<usize>,
    ) -> Result<Self> {
        Self::build(ground, sets, uniformity, true)
    }

    fn build(
        ground: usize,
        sets: Vec<ElementSet>,
        uniformity: Option<usize>,
        degenerate: bool,
    ) -> Result<Self> {
        let ground_set = GroundSet::new(ground)?;
        let universe = ground_set.universe();
        let mut seen: Vec<ElementSet> = Vec::with_capacity(sets.len());
        let mut duplicates_removed = 0;
        for s in sets {
            if !s.is_subset_of(universe) {
                let offending = s.difference(universe).min_element().unwrap_or(ground);
                return Err(Error::ElementOutOfRange {
                    element: offending,
                    ground,
                });
            }
            if s.is_empty() && !degenerate {
                return Err(Error::pre(
                    "empty member not allowed (use a degenerate family if intended)",
                ));
            }
            if let Some(n) = uniformity {
                if s.len() != n {
                    return Err(Error::pre(format!(
                        "member {s} has {} elements, expected uniformity {n}",
                        s.len()
                    )));
                }
            }
            if seen.contains(&s) {
                duplicates_removed += 1;
            } else {
                seen.push(s);
            }
        }
        Ok(SetFamily {
            ground,
            sets: seen,
            uniformity,
            duplicates_removed,
            degenerate,
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    pub fn duplicates_removed(&self) -> usize {
        self.duplicates_removed
    }

    pub fn has_empty_member(&self) -> bool {
        self.sets.iter().any(|s| s.is_empty())
    }

    /// Union of all members.
    pub fn support(&self) -> ElementSet {
        self.sets
            .iter()
            .fold(ElementSet::EMPTY, |acc, s| acc.union(*s))
    }

    /// Intersection of all members; the full universe for an empty family.
    pub fn common_intersection(&self) -> ElementSet {
        let universe = ElementSet::universe(self.ground);
        self.sets
            .iter()
            .fold(universe, |acc, s| acc.intersection(*s))
    }

    pub fn max_member_size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn is_uniform(&self, n: usize) -> bool {
        self.sets.iter().all(|s| s.len() == n)
    }

    /// Declared uniformity, or an error for operations that require one.
    pub fn required_uniformity(&self) -> Result<usize> {
        self.uniformity.ok_or(Error::CapRequired)
    }

    /// Every pair of members shares at least one element. Vacuously true for
    /// families with fewer than two members.
    pub fn is_intersecting(&self) -> bool {
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                if !a.intersects(*b) {
                    return false;
                }
            }
        }
        true
    }

    /// Members disjoint from `avoid`, in the original member order. Uniformity
    /// and ground are preserved: members themselves are not modified.
    pub fn restrict_avoiding(&self, avoid: ElementSet) -> SetFamily {
        let sets = self
            .sets
            .iter()
            .copied()
            .filter(|s| !s.intersects(avoid))
            .collect();
        SetFamily {
            ground: self.ground,
            sets,
            uniformity: self.uniformity,
            duplicates_removed: 0,
            degenerate: self.degenerate,
        }
    }

    /// Sorted multiset of `|A_i ∩ A_j|` over unordered member pairs.
    pub fn pairwise_intersection_profile(&self) -> Vec<usize> {
        let mut profile = Vec::new();
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                profile.push(a.intersection(*b).len());
            }
        }
        profile.sort_unstable();
        profile
    }

    /// Subfamily picked by member indices (order and multiplicity of `indices`
    /// are not preserved; each index contributes once, ascending).
    pub fn subfamily(&self, indices: &[usize]) -> Result<SetFamily> {
        let mut picked: Vec<usize> = indices.to_vec();
        picked.sort_unstable();
        picked.dedup();
        if let Some(&bad) = picked.iter().find(|&&i| i >= self.sets.len()) {
            return Err(Error::pre(format!(
                "member index {bad} out of range for family of {} members",
                self.sets.len()
            )));
        }
        let sets = picked.iter().map(|&i| self.sets[i]).collect();
        Ok(SetFamily {
            ground: self.ground,
            sets,
            uniformity: self.uniformity,
            duplicates_removed: 0,
            degenerate: self.degenerate,
        })
    }

    /// Family with member `index` removed.
    pub fn without_member(&self, index: usize) -> SetFamily {
        let mut sets = self.sets.clone();
        sets.remove(index);
        SetFamily {
            ground: self.ground,
            sets,
            uniformity: self.uniformity,
            duplicates_removed: 0,
            degenerate: self.degenerate,
        }
    }

    /// Members of `self` minus the members of `other` (set difference on
    /// member identity, order preserved).
    pub fn minus(&self, other: &SetFamily) -> SetFamily {
        let sets = self
            .sets
            .iter()
            .copied()
            .filter(|s| !other.sets.contains(s))
            .collect();
        SetFamily {
            ground: self.ground,
            sets,
            uniformity: self.uniformity,
            duplicates_removed: 0,
            degenerate: self.degenerate,
        }
    }

    pub fn contains_set(&self, s: ElementSet) -> bool {
        self.sets.contains(&s)
    }

    /// Stable 64-bit fingerprint of the family as a set of sets (member order
    /// insensitive). Used for cover provenance and ledger dedupe, so it must
    /// not depend on process-local hash state.
    pub fn fingerprint(&self) -> u64 {
        let mut masks: Vec<u128> = self.sets.iter().map(|s| s.bits()).collect();
        masks.sort_unstable();
        let mut h = Fnv1a::new();
        h.write_u64(self.ground as u64);
        match self.uniformity {
            Some(n) => {
                h.write_u64(1);
                h.write_u64(n as u64);
            }
            None => h.write_u64(0),
        }
        for m in masks {
            h.write_u128(m);
        }
        h.finish()
    }

    pub fn fingerprint_hex(&self) -> String {
        format!("{:016x}", self.fingerprint())
    }
}

/// FNV-1a, 64-bit. Deliberately hand-rolled: fingerprints end up in ledgers
/// that outlive any one process, so the hash must be stable by construction.
pub(crate) struct Fnv1a {
    state: u64,
}

impl Fnv1a {
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;

    pub fn new() -> Self {
        Fnv1a { state: Self::OFFSET }
    }

    pub fn write_bytes(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.state ^= b as u64;
            self.state = self.state.wrapping_mul(Self::PRIME);
        }
    }

    pub fn write_u64(&mut self, v: u64) {
        self.write_bytes(&v.to_le_bytes());
    }

    pub fn write_u128(&mut self, v: u128) {
        self.write_bytes(&v.to_le_bytes());
    }

    pub fn finish(&self) -> u64 {
        self.state
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(elems: &[usize]) -> ElementSet {
        ElementSet::from_elements(elems.iter().copied()).unwrap()
    }

    #[test]
    fn dedupe_counts_and_preserves_order() {
        let f = SetFamily::new(
            5,
            vec![es(&[0, 1]), es(&[2, 3]), es(&[0, 1]), es(&[1, 2])],
            Some(2),
        )
        .unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.duplicates_removed(), 1);
        assert_eq!(f.sets()[0], es(&[0, 1]));
        assert_eq!(f.sets()[2], es(&[1, 2]));
    }

    #[test]
    fn uniformity_validated() {
        let err = SetFamily::new(5, vec![es(&[0, 1]), es(&[2])], Some(2));
        assert!(matches!(err, Err(Error::Precondition(_))));
        let ok = SetFamily::new(5, vec![es(&[0, 1]), es(&[2])], None).unwrap();
        assert_eq!(ok.uniformity(), None);
        assert!(!ok.is_uniform(2));
    }

    #[test]
    fn empty_member_needs_degenerate() {
        assert!(SetFamily::new(3, vec![ElementSet::EMPTY], None).is_err());
        let f = SetFamily::new_degenerate(3, vec![ElementSet::EMPTY], None).unwrap();
        assert!(f.has_empty_member());
    }

    #[test]
    fn out_of_ground_member_rejected() {
        let err = SetFamily::new(3, vec![es(&[2, 3])], None);
        assert!(matches!(
            err,
            Err(Error::ElementOutOfRange { element: 3, ground: 3 })
        ));
    }

    #[test]
    fn intersecting_and_profile() {
        let f = SetFamily::new(6, vec![es(&[0, 1]), es(&[1, 2]), es(&[0, 2])], Some(2)).unwrap();
        assert!(f.is_intersecting());
        assert_eq!(f.pairwise_intersection_profile(), vec![1, 1, 1]);

        let g = SetFamily::new(6, vec![es(&[0, 1]), es(&[2, 3])], Some(2)).unwrap();
        assert!(!g.is_intersecting());
        assert_eq!(g.pairwise_intersection_profile(), vec![0]);
    }

    #[test]
    fn restrict_avoiding_keeps_members_intact() {
        let f = SetFamily::new(6, vec![es(&[0, 1]), es(&[1, 2]), es(&[3, 4])], Some(2)).unwrap();
        let r = f.restrict_avoiding(es(&[1]));
        assert_eq!(r.sets(), &[es(&[3, 4])]);
        assert_eq!(r.uniformity(), Some(2));
        assert_eq!(r.ground(), 6);
        // Avoiding nothing returns the family unchanged.
        assert_eq!(f.restrict_avoiding(ElementSet::EMPTY).sets(), f.sets());
    }

    #[test]
    fn fingerprint_ignores_member_order() {
        let a = SetFamily::new(4, vec![es(&[0, 1]), es(&[2, 3])], Some(2)).unwrap();
        let b = SetFamily::new(4, vec![es(&[2, 3]), es(&[0, 1])], Some(2)).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = SetFamily::new(4, vec![es(&[0, 1]), es(&[1, 3])], Some(2)).unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn support_intersection_and_minus() {
        let f = SetFamily::new(6, vec![es(&[0, 1, 2]), es(&[1, 2, 3])], Some(3)).unwrap();
        assert_eq!(f.support(), es(&[0, 1, 2, 3]));
        assert_eq!(f.common_intersection(), es(&[1, 2]));
        let g = f.subfamily(&[1]).unwrap();
        assert_eq!(f.minus(&g).sets(), &[es(&[0, 1, 2])]);
    }
}
