//! Kernel decompositions: partitioning a uniform family into classes with
//! large inner and small outer overlaps, and the size/weight bounds those
//! classes obey.
//!
//! The gap property for parameter `k` says no two members intersect in
//! strictly between `k` and `n-k` elements. Under that property "share at
//! least `n-k` elements" is an equivalence relation; its classes are the
//! kernels. The verifiers here check the property, the transitivity it
//! implies (asserted, never assumed), the large common core of each class,
//! the antichain weight bound used to control small covers, and the set-pair
//! bound on class sizes in a tau-critical family.

use num::traits::One;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::inequalities::WeightComparison;
use crate::set::ElementSet;
use crate::transversal::{
    enumerate_minimal_covers, is_cover, is_tau_critical, tau, tau_with_witness, CoverFamily,
    EnumerationLimits,
};
use crate::weight::{
    binomial_rational, ensure_positive_lambda, pow_signed, rational_usize, Rational,
};

/// Partition of a family into kernel classes (member indices), with the gap
/// parameter and each class's common intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDecomposition {
    pub classes: Vec<Vec<usize>>,
    pub k: usize,
    pub cores: Vec<ElementSet>,
}

/// Result of attempting a kernel decomposition: either the partition or the
/// first witness pair whose intersection size falls in the forbidden open
/// interval `(k, n-k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    Decomposition(KernelDecomposition),
    GapViolation { first: usize, second: usize, intersection: usize },
}

fn related(a: ElementSet, b: ElementSet, n: usize, k: usize) -> bool {
    a.intersection(b).len() + k >= n
}

/// Decompose an n-uniform family by the gap property for parameter `k < n/2`.
///
/// Intersection sizes of `k` or less count as "small" and `n-k` or more as
/// "large"; a size strictly between is a gap violation and is returned as a
/// witness instead of a partition. When no violation exists, transitivity of
/// the large-overlap relation is re-verified on every member triple and a
/// violation is a hard error carrying the triple — the gap property proves
/// this cannot happen, so the check guards the implementation, not the input.
pub fn kernel_decompose(family: &SetFamily, k: usize) -> Result<KernelOutcome> {
    let n = family
        .uniformity()
        .ok_or_else(|| Error::pre("kernel decomposition needs an n-uniform family"))?;
    if 2 * k >= n {
        return Err(Error::pre(format!(
            "gap parameter k = {k} must satisfy k < n/2 with n = {n}"
        )));
    }
    let sets = family.sets();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            let x = sets[i].intersection(sets[j]).len();
            if x > k && x + k < n {
                return Ok(KernelOutcome::GapViolation {
                    first: i,
                    second: j,
                    intersection: x,
                });
            }
        }
    }
    for b in 0..sets.len() {
        for a in 0..sets.len() {
            if a == b || !related(sets[a], sets[b], n, k) {
                continue;
            }
            for c in 0..sets.len() {
                if c == a || c == b {
                    continue;
                }
                if related(sets[b], sets[c], n, k) && !related(sets[a], sets[c], n, k) {
                    return Err(Error::TransitivityViolated {
                        a,
                        b,
                        c,
                        ab: sets[a].intersection(sets[b]).len(),
                        bc: sets[b].intersection(sets[c]).len(),
                        ac: sets[a].intersection(sets[c]).len(),
                    });
                }
            }
        }
    }
    // With transitivity verified, classes are exactly the direct-relation
    // components; sweep in index order for a canonical class order.
    let mut class_of: Vec<Option<usize>> = vec![None; sets.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..sets.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = classes.len();
        let mut members = vec![i];
        class_of[i] = Some(id);
        for j in (i + 1)..sets.len() {
            if class_of[j].is_none() && related(sets[i], sets[j], n, k) {
                class_of[j] = Some(id);
                members.push(j);
            }
        }
        classes.push(members);
    }
    let cores: Vec<ElementSet> = classes
        .iter()
        .map(|cls| {
            cls.iter()
                .map(|&i| sets[i])
                .fold(family.support(), |acc, s| acc.intersection(s))
        })
        .collect();
    Ok(KernelOutcome::Decomposition(KernelDecomposition { classes, k, cores }))
}

impl KernelDecomposition {
    /// Extract one class as a family (member order preserved).
    pub fn class_family(&self, family: &SetFamily, index: usize) -> Result<SetFamily> {
        family.subfamily(&self.classes[index])
    }
}

/// Report on a class's common core against the `n - 2k` lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReport {
    pub core: ElementSet,
    pub core_size: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Check `|common intersection| >= n - 2k` for one decomposition class.
pub fn verify_kernel_core(class: &SetFamily, k: usize) -> Result<CoreReport> {
    let n = class
        .uniformity()
        .ok_or_else(|| Error::pre("core check needs an n-uniform class"))?;
    if class.is_empty() {
        return Err(Error::pre("core check needs a non-empty class"));
    }
    let core = class.common_intersection();
    let bound = n.saturating_sub(2 * k);
    Ok(CoreReport {
        core,
        core_size: core.len(),
        bound,
        holds: core.len() >= bound,
    })
}

/// Report for the small-core dichotomy: either the `(n-k)`-base cover weight
/// is at most 1, or the class has a common core of at least `n - 2k`
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyReport {
    pub weight: Rational,
    pub weight_le_one: bool,
    pub core_size: usize,
    pub core_bound: usize,
    pub core_large: bool,
}

impl DichotomyReport {
    pub fn holds(&self) -> bool {
        self.weight_le_one || self.core_large
    }
}

/// Verify the dichotomy for a class `Kf` against an anchor set `K`.
///
/// Hypotheses (each violation is a named domain error): `Kf` n-uniform and
/// non-empty, `10k <= n`, `|K| = n-k`, and every member meets `K` in at least
/// `n-2k` elements. Both disjuncts are evaluated exactly; the cover weight
/// uses base `n-k` with the cover size cap at `n`.
pub fn verify_kernel_dichotomy(
    kf: &SetFamily,
    anchor: ElementSet,
    k: usize,
    limits: &EnumerationLimits,
) -> Result<DichotomyReport> {
    let n = kf
        .uniformity()
        .ok_or_else(|| Error::pre("dichotomy needs an n-uniform family"))?;
    if kf.is_empty() {
        return Err(Error::pre("dichotomy needs a non-empty family"));
    }
    if 10 * k > n {
        return Err(Error::pre(format!("dichotomy needs 10k <= n, got k = {k}, n = {n}")));
    }
    if anchor.len() + k != n {
        return Err(Error::pre(format!(
            "anchor set must have n-k = {} elements, got {}",
            n - k,
            anchor.len()
        )));
    }
    if let Some(bad) = kf
        .sets()
        .iter()
        .position(|f| f.intersection(anchor).len() + 2 * k < n)
    {
        return Err(Error::pre(format!(
            "member {bad} meets the anchor in {} < n-2k elements",
            kf.sets()[bad].intersection(anchor).len()
        )));
    }
    let covers = enumerate_minimal_covers(kf, n, limits)?;
    let weight = covers.weight(&rational_usize(n - k))?.into_inner();
    let core = kf.common_intersection();
    let core_bound = n - 2 * k;
    Ok(DichotomyReport {
        weight_le_one: weight <= Rational::one(),
        weight,
        core_size: core.len(),
        core_bound,
        core_large: core.len() >= core_bound,
    })
}

/// The antichain weight bound: for an antichain of subsets of `R`, all of
/// size at least `t`, and any base `lambda >= |R|`,
/// `sum lambda^{-|C|} <= lambda^{-t} * (|R| choose t)`.
pub fn verify_antichain_weight(
    covers: &CoverFamily,
    r: ElementSet,
    t: usize,
    lambda: &Rational,
) -> Result<WeightComparison> {
    ensure_positive_lambda(lambda)?;
    if *lambda < rational_usize(r.len()) {
        return Err(Error::pre(format!(
            "antichain weight bound needs lambda >= |R| = {}",
            r.len()
        )));
    }
    if let Some(bad) = covers.covers().iter().find(|c| !c.is_subset_of(r)) {
        return Err(Error::pre(format!("member {bad} is not a subset of R")));
    }
    if let Some(bad) = covers.covers().iter().find(|c| c.len() < t) {
        return Err(Error::pre(format!("member {bad} has size below t = {t}")));
    }
    let lhs = covers.weight(lambda)?.into_inner();
    let rhs = pow_signed(lambda, -(t as i64)) * binomial_rational(r.len(), t);
    Ok(WeightComparison { lhs, rhs })
}

/// Report for the set-pair class bound: class size against
/// `(tau + k) choose k`, plus the per-member witness covers whose existence
/// tau-criticality guarantees.
#[derive(Debug, Clone)]
pub struct ClassBoundReport {
    pub class_size: usize,
    pub tau: usize,
    pub bound: Rational,
    pub holds: bool,
    /// `(member index, cover of everything else, avoiding that member)`.
    pub witnesses: Vec<(usize, ElementSet)>,
}

/// Verify `|class| <= (tau(A) + k choose k)` for a class of a tau-critical
/// family whose common core has at least `n-k` elements.
///
/// For each class member `A`, a minimum cover of `A \ {A}` is produced and
/// validated: it has size below `tau(A)`, covers every other member, and is
/// disjoint from `A` (were it not, it would be a short cover of the whole
/// family). These pairs `(A minus the core, witness)` form the cross
///  system behind the bound.
pub fn verify_class_bound(
    family: &SetFamily,
    class_indices: &[usize],
    k: usize,
    limits: &EnumerationLimits,
) -> Result<ClassBoundReport> {
    if !is_tau_critical(family, limits)? {
        return Err(Error::pre("class bound needs a tau-critical family"));
    }
    let n = family
        .uniformity()
        .ok_or_else(|| Error::pre("class bound needs an n-uniform family"))?;
    let class = family.subfamily(class_indices)?;
    if class.is_empty() {
        return Err(Error::pre("class bound needs a non-empty class"));
    }
    let core = class.common_intersection();
    if core.len() + k < n {
        return Err(Error::pre(format!(
            "class core has {} elements, below n-k = {}",
            core.len(),
            n - k
        )));
    }
    let t = tau(family, limits)?;
    let mut witnesses = Vec::with_capacity(class_indices.len());
    for &idx in class_indices {
        let member = family.sets()[idx];
        let rest = family.without_member(idx);
        let (rest_tau, witness) = tau_with_witness(&rest, limits)?;
        if rest_tau >= t {
            return Err(Error::internal(format!(
                "deleting member {idx} left tau at {rest_tau}, family cannot be tau-critical"
            )));
        }
        if witness.intersects(member) {
            return Err(Error::internal(format!(
                "minimum cover {witness} of the deleted family meets member {idx}"
            )));
        }
        if !rest.is_empty() && !is_cover(witness, &rest) {
            return Err(Error::internal(format!(
                "witness {witness} fails to cover the deleted family"
            )));
        }
        witnesses.push((idx, witness));
    }
    let bound = binomial_rational(t + k, k);
    Ok(ClassBoundReport {
        class_size: class.len(),
        tau: t,
        holds: rational_usize(class.len()) <= bound,
        bound,
        witnesses,
    })
}
