//! Chain encodings of minimal covers, and the weight bounds they certify.
//!
//! Fix an ordered family `B` and a minimal cover `C`. Grow a chain
//! `{} = S_0 < S_1 < ... < S_|C| = C` by always looking at the lowest-index
//! member disjoint from the current `S_i` and adjoining one element of its
//! intersection with `C` (non-empty, because `C` covers it). Minimality
//! guarantees every maximal chain ends exactly at `C`: each element of `C`
//! keeps a private member, so no proper subset of `C` covers everything.
//!
//! Reading each chosen element as its position inside the member it was
//! drawn from turns a chain into a word over an `n`-letter alphabet, and no
//! word can be a proper prefix of another (a finished chain leaves nothing
//! uncovered to branch on). Kraft's inequality then caps the total weight
//! `w(J) = sum_C chains(C) n^{-|C|}` at 1. Splitting covers by whether the
//! chain is unique gives `c_n(B) <= w(J_1) + w(J_2)/2 <= (w(J_1) + 1) / 2`,
//! since every multi-chain cover contributes at least twice to `w(J_2)`.

use num::traits::One;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::moments::degree_profile;
use crate::set::ElementSet;
use crate::transversal::{enumerate_minimal_covers, EnumerationLimits};
use crate::weight::{
    lambda_pow_neg, pow_signed, rational, rational_usize, ApproxWeight, Rational,
};

/// All maximal chains of one minimal cover, as element sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverChains {
    pub cover: ElementSet,
    pub chains: Vec<Vec<usize>>,
    pub unique: bool,
}

/// The full encoding of a family's minimal covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingRun {
    /// Weight base and alphabet size `n`.
    pub base: usize,
    pub entries: Vec<CoverChains>,
    /// `w(J) = sum chains(C) n^{-|C|}`.
    pub total_weight: Rational,
    /// `w(J_1)`: weight of the uniquely-chained covers.
    pub single_weight: Rational,
    /// `w(J_2)`: chain-counted weight of the rest.
    pub multi_weight: Rational,
    /// `c_n(B)` over the same covers.
    pub cover_weight: Rational,
    pub kraft_holds: bool,
    /// `c_n <= w(J_1) + w(J_2)/2`.
    pub refined_bound_holds: bool,
    /// `c_n <= (w(J_1) + 1)/2`.
    pub averaged_bound_holds: bool,
    /// Every non-unique cover really has at least two chains.
    pub multi_counts_ok: bool,
    /// Uniqueness matched both restatements on every cover: forced
    /// single-element branching, and no chain element lying in an earlier
    /// step's member.
    pub unique_cross_check_ok: bool,
}

fn lowest_uncovered(b: &SetFamily, s: ElementSet) -> Option<usize> {
    b.sets().iter().position(|m| !m.intersects(s))
}

fn enumerate_chains(b: &SetFamily, cover: ElementSet) -> Result<Vec<Vec<usize>>> {
    let mut chains = Vec::new();
    let mut prefix: Vec<usize> = Vec::new();
    fn descend(
        b: &SetFamily,
        cover: ElementSet,
        s: ElementSet,
        prefix: &mut Vec<usize>,
        chains: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        let Some(i) = lowest_uncovered(b, s) else {
            if s != cover {
                return Err(Error::internal(format!(
                    "chain stalled at {s}, a proper covering subset of minimal cover {cover}"
                )));
            }
            chains.push(prefix.clone());
            return Ok(());
        };
        let branch = b.sets()[i].intersection(cover);
        if branch.is_empty() {
            return Err(Error::internal(format!(
                "cover {cover} misses member {i} entirely"
            )));
        }
        for x in branch.iter() {
            prefix.push(x);
            descend(b, cover, s.with(x), prefix, chains)?;
            prefix.pop();
        }
        Ok(())
    }
    descend(b, cover, ElementSet::EMPTY, &mut prefix, &mut chains)?;
    if chains.is_empty() {
        return Err(Error::internal(format!("no chain reached cover {cover}")));
    }
    Ok(chains)
}

/// Walk the canonical (first) chain again and report whether every step
/// branched on a single element, plus the member index used at each step.
fn canonical_walk(
    b: &SetFamily,
    cover: ElementSet,
    chain: &[usize],
) -> Result<(bool, Vec<usize>)> {
    let mut s = ElementSet::EMPTY;
    let mut forced = true;
    let mut members = Vec::with_capacity(chain.len());
    for &x in chain {
        let i = lowest_uncovered(b, s)
            .ok_or_else(|| Error::internal("canonical walk ran past the cover"))?;
        let branch = b.sets()[i].intersection(cover);
        if !branch.contains(x) {
            return Err(Error::internal(format!(
                "canonical chain element {x} is outside its branch set"
            )));
        }
        forced &= branch.len() == 1;
        members.push(i);
        s = s.with(x);
    }
    Ok((forced, members))
}

/// Enumerate every chain of every minimal cover (cap `n`) and evaluate the
/// Kraft and class-split weight bounds. The bounds are reported, not
/// assumed: a false flag is a finding, not a panic.
pub fn run_encoding(b: &SetFamily, n: usize, limits: &EnumerationLimits) -> Result<EncodingRun> {
    if b.is_empty() {
        return Err(Error::pre("encoding needs a non-empty family"));
    }
    if n == 0 {
        return Err(Error::pre("encoding needs a positive weight base"));
    }
    let covers = enumerate_minimal_covers(b, n, limits)?;
    let n_rat = rational_usize(n);
    let mut entries = Vec::with_capacity(covers.len());
    let mut total_weight = Rational::from_integer(0.into());
    let mut single_weight = total_weight.clone();
    let mut multi_weight = total_weight.clone();
    let mut multi_counts_ok = true;
    let mut unique_cross_check_ok = true;
    for &cover in covers.covers() {
        let chains = enumerate_chains(b, cover)?;
        let unique = chains.len() == 1;
        let (forced, members) = canonical_walk(b, cover, &chains[0])?;
        let no_lookback = chains[0].iter().enumerate().all(|(i, &x)| {
            members[..i].iter().all(|&j| !b.sets()[j].contains(x))
        });
        if (unique != forced) || (unique != no_lookback) {
            unique_cross_check_ok = false;
        }
        if !unique && chains.len() < 2 {
            multi_counts_ok = false;
        }
        let piece = lambda_pow_neg(&n_rat, cover.len());
        let counted = rational_usize(chains.len()) * &piece;
        total_weight += &counted;
        if unique {
            single_weight += &piece;
        } else {
            multi_weight += &counted;
        }
        entries.push(CoverChains { cover, chains, unique });
    }
    let cover_weight = covers.weight(&n_rat)?.into_inner();
    let half = rational(1, 2);
    let refined = &single_weight + &half * &multi_weight;
    let averaged = (&single_weight + Rational::one()) * &half;
    Ok(EncodingRun {
        base: n,
        entries,
        kraft_holds: total_weight <= Rational::one(),
        refined_bound_holds: cover_weight <= refined,
        averaged_bound_holds: cover_weight <= averaged,
        total_weight,
        single_weight,
        multi_weight,
        cover_weight,
        multi_counts_ok,
        unique_cross_check_ok,
    })
}

/// Verdict for the exponential-decay weight bound of a bounded-degree
/// intersecting family.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedDegreeReport {
    pub members: usize,
    pub degree_cap: usize,
    pub base: usize,
    pub cover_weight: Rational,
    /// `exp(-r^2 / (10 l^3 n))`, evaluated in floating point with the
    /// standard slack.
    pub decay_bound: f64,
    pub decay_holds: bool,
    pub single_weight: Rational,
    /// `prod_{i=1}^{floor(r/l)-1} (1 - (i-1)/(n l))`, exactly.
    pub product_bound: Rational,
    pub product_holds: bool,
}

impl BoundedDegreeReport {
    pub fn holds(&self) -> bool {
        self.decay_holds && self.product_holds
    }
}

/// Check `c_n(B) <= exp(-r^2/(10 l^3 n))` and the chain-count product bound
/// `w(J_1) <= prod (1 - (i-1)/(nl))` for an intersecting n-uniform family
/// with `r >= 2l` members, `r^2 <= l^3 n`, and every element in fewer than
/// `l` members. Each hypothesis failure is a named domain error.
pub fn verify_bounded_degree_bound(
    b: &SetFamily,
    l: usize,
    n: usize,
    limits: &EnumerationLimits,
) -> Result<BoundedDegreeReport> {
    if b.is_empty() {
        return Err(Error::pre("bounded-degree bound needs a non-empty family"));
    }
    if b.uniformity() != Some(n) {
        return Err(Error::pre(format!("family is not {n}-uniform")));
    }
    if !b.is_intersecting() {
        return Err(Error::pre("bounded-degree bound needs an intersecting family"));
    }
    if l == 0 {
        return Err(Error::pre("degree cap l must be positive"));
    }
    let r = b.len();
    if r < 2 * l {
        return Err(Error::pre(format!("need r >= 2l, got r = {r}, l = {l}")));
    }
    if r * r > l * l * l * n {
        return Err(Error::pre(format!(
            "need r^2 <= l^3 n, got {} > {}",
            r * r,
            l * l * l * n
        )));
    }
    let max_degree = degree_profile(b, 1).max_degree();
    if max_degree >= l {
        return Err(Error::pre(format!(
            "element degree reaches {max_degree}, not below l = {l}"
        )));
    }
    let run = run_encoding(b, n, limits)?;
    let exponent = (r * r) as f64 / (10 * l * l * l * n) as f64;
    let decay_bound = (-exponent).exp();
    let decay_holds = ApproxWeight::new(decay_bound).admits_le(&run.cover_weight);
    let steps = r / l;
    let product_bound = (1..steps)
        .map(|i| Rational::one() - rational((i - 1) as i64, (n * l) as i64))
        .fold(Rational::one(), |acc, f| acc * f);
    Ok(BoundedDegreeReport {
        members: r,
        degree_cap: l,
        base: n,
        cover_weight: run.cover_weight,
        decay_bound,
        decay_holds,
        product_holds: run.single_weight <= product_bound,
        single_weight: run.single_weight,
        product_bound,
    })
}

/// Report for rescaling the weight base from `n` down to `n - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapScalingReport {
    /// `(n-k)/n`.
    pub lambda: Rational,
    /// `c_n(B)`.
    pub base_weight: Rational,
    /// `c_{n-k}(B)`, over the same covers.
    pub scaled_weight: Rational,
    /// `lambda^{-r} c_n(B)`.
    pub scale_bound: Rational,
    pub scaling_holds: bool,
    pub unit: Option<UnitBranchReport>,
}

/// The stronger conclusion `c_{n-k} <= 1`, available when the
/// bounded-degree hypotheses hold and `k <= r / (20 l^3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitBranchReport {
    pub degree_cap: usize,
    pub applicable: bool,
    /// Why the branch does not apply, when it does not.
    pub skip_reason: Option<String>,
    /// `c_{n-k} <= 1`; meaningful only when applicable.
    pub holds: bool,
}

/// Verify `c_{(n-k)} <= ((n-k)/n)^{-r} c_n` exactly (every minimal cover
/// has at most `r` elements), and optionally the unit conclusion
/// `c_{n-k} <= 1` under the bounded-degree hypotheses with
/// `k <= r/(20 l^3)`.
pub fn verify_cap_scaling(
    b: &SetFamily,
    k: usize,
    l: Option<usize>,
    limits: &EnumerationLimits,
) -> Result<CapScalingReport> {
    let n = b
        .uniformity()
        .ok_or_else(|| Error::pre("cap scaling needs an n-uniform family"))?;
    if b.is_empty() {
        return Err(Error::pre("cap scaling needs a non-empty family"));
    }
    if k >= n {
        return Err(Error::pre(format!("need k < n, got k = {k}, n = {n}")));
    }
    let covers = enumerate_minimal_covers(b, n, limits)?;
    let base_weight = covers.weight(&rational_usize(n))?.into_inner();
    let scaled_weight = covers.weight(&rational_usize(n - k))?.into_inner();
    let lambda = rational((n - k) as i64, n as i64);
    let r = b.len();
    let scale_bound = pow_signed(&lambda, -(r as i64)) * &base_weight;
    let unit = match l {
        None => None,
        Some(l) => {
            let mut skip_reason = None;
            if !b.is_intersecting() {
                skip_reason = Some("family is not intersecting".to_string());
            } else if l == 0 || r < 2 * l {
                skip_reason = Some(format!("need r >= 2l, got r = {r}, l = {l}"));
            } else if r * r > l * l * l * n {
                skip_reason = Some(format!("need r^2 <= l^3 n at l = {l}"));
            } else if degree_profile(b, 1).max_degree() >= l {
                skip_reason = Some(format!("an element reaches degree l = {l}"));
            } else if 20 * l * l * l * k > r {
                skip_reason = Some(format!("need k <= r/(20 l^3), got k = {k}"));
            }
            let applicable = skip_reason.is_none();
            Some(UnitBranchReport {
                degree_cap: l,
                applicable,
                skip_reason,
                holds: applicable && scaled_weight <= Rational::one(),
            })
        }
    };
    Ok(CapScalingReport {
        scaling_holds: scaled_weight <= scale_bound,
        lambda,
        base_weight,
        scaled_weight,
        scale_bound,
        unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::pair_design;
    use crate::weight::rational as rat;

    fn es(elems: &[usize]) -> ElementSet {
        ElementSet::from_elements(elems.iter().copied()).unwrap()
    }

    fn limits() -> EnumerationLimits {
        EnumerationLimits::default()
    }

    #[test]
    fn single_set_saturates_kraft() {
        let b = SetFamily::new(4, vec![es(&[0, 1, 2, 3])], Some(4)).unwrap();
        let run = run_encoding(&b, 4, &limits()).unwrap();
        assert_eq!(run.entries.len(), 4);
        assert!(run.entries.iter().all(|e| e.unique && e.chains[0].len() == 1));
        assert_eq!(run.total_weight, rat(1, 1));
        assert_eq!(run.single_weight, rat(1, 1));
        assert_eq!(run.multi_weight, rat(0, 1));
        assert_eq!(run.cover_weight, rat(1, 1));
        assert!(run.kraft_holds);
        assert!(run.refined_bound_holds);
        assert!(run.averaged_bound_holds); // 1 <= (1+1)/2, tight
        assert!(run.unique_cross_check_ok);
    }

    #[test]
    fn path_chains_are_forced() {
        let b = SetFamily::new(3, vec![es(&[0, 1]), es(&[1, 2])], Some(2)).unwrap();
        let run = run_encoding(&b, 2, &limits()).unwrap();
        assert_eq!(run.entries.len(), 2);
        // Cover {0,2}: 0 from the first member, then 2. Cover {1}: one step.
        assert_eq!(run.entries[0].cover, es(&[0, 2]));
        assert_eq!(run.entries[0].chains, vec![vec![0, 2]]);
        assert_eq!(run.entries[1].cover, es(&[1]));
        assert_eq!(run.entries[1].chains, vec![vec![1]]);
        assert_eq!(run.total_weight, rat(3, 4));
        assert_eq!(run.single_weight, rat(3, 4));
        assert_eq!(run.multi_weight, rat(0, 1));
        assert!(run.kraft_holds && run.refined_bound_holds && run.averaged_bound_holds);
        assert!(run.unique_cross_check_ok);
    }

    #[test]
    fn triangle_splits_into_both_classes() {
        let b =
            SetFamily::new(3, vec![es(&[0, 1]), es(&[0, 2]), es(&[1, 2])], Some(2)).unwrap();
        let run = run_encoding(&b, 2, &limits()).unwrap();
        // {0,1} is ambiguous at the first step (both elements sit in the
        // first member); {0,2} and {1,2} are forced throughout.
        assert_eq!(run.entries[0].cover, es(&[0, 1]));
        assert_eq!(run.entries[0].chains, vec![vec![0, 1], vec![1, 0]]);
        assert!(!run.entries[0].unique);
        assert!(run.entries[1].unique && run.entries[2].unique);
        assert_eq!(run.single_weight, rat(1, 2));
        assert_eq!(run.multi_weight, rat(1, 2));
        assert_eq!(run.total_weight, rat(1, 1)); // Kraft is tight here
        assert_eq!(run.cover_weight, rat(3, 4));
        assert!(run.kraft_holds);
        assert!(run.refined_bound_holds); // 3/4 <= 1/2 + 1/4, tight
        assert!(run.averaged_bound_holds); // 3/4 <= (1/2 + 1)/2, tight
        assert!(run.multi_counts_ok);
        assert!(run.unique_cross_check_ok);
    }

    #[test]
    fn encoding_gates() {
        let b = SetFamily::new(3, vec![es(&[0, 1])], Some(2)).unwrap();
        assert!(run_encoding(&b, 0, &limits()).is_err());
        let empty = SetFamily::new(3, vec![], None).unwrap();
        assert!(run_encoding(&empty, 2, &limits()).is_err());
    }

    #[test]
    fn star_design_meets_the_decay_bound() {
        // Six 5-sets on 15 elements, every element in exactly two: the
        // pairwise design meets all hypotheses at l = 3 and its exact
        // weight 1131/3125 sits far below exp(-36/1350).
        let b = pair_design(6).unwrap();
        let rep = verify_bounded_degree_bound(&b, 3, 5, &limits()).unwrap();
        assert_eq!(rep.members, 6);
        assert_eq!(rep.cover_weight, rat(1131, 3125));
        assert!((rep.decay_bound - (-36.0f64 / 1350.0).exp()).abs() < 1e-15);
        assert!(rep.decay_holds);
        // floor(6/3) = 2: one factor, and it is 1 - 0.
        assert_eq!(rep.product_bound, rat(1, 1));
        assert!(rep.product_holds);
        assert!(rep.holds());
    }

    #[test]
    fn degree_bound_hypothesis_gates() {
        let b = pair_design(6).unwrap();
        // Degrees are exactly 2, so l = 2 trips the strict degree gate.
        assert!(verify_bounded_degree_bound(&b, 2, 5, &limits()).is_err());
        // r = 6 < 2l = 8.
        assert!(verify_bounded_degree_bound(&b, 4, 5, &limits()).is_err());
        // Wrong uniformity.
        assert!(verify_bounded_degree_bound(&b, 3, 4, &limits()).is_err());
        // Non-intersecting family.
        let nf = SetFamily::new(8, vec![es(&[0, 1, 2, 3]), es(&[4, 5, 6, 7])], Some(4)).unwrap();
        assert!(verify_bounded_degree_bound(&nf, 1, 4, &limits()).is_err());
    }

    #[test]
    fn cap_scaling_on_the_path() {
        let b = SetFamily::new(3, vec![es(&[0, 1]), es(&[1, 2])], Some(2)).unwrap();
        let rep = verify_cap_scaling(&b, 1, None, &limits()).unwrap();
        assert_eq!(rep.lambda, rat(1, 2));
        assert_eq!(rep.base_weight, rat(3, 4));
        assert_eq!(rep.scaled_weight, rat(2, 1)); // 1 + 1 at base 1
        assert_eq!(rep.scale_bound, rat(3, 1));
        assert!(rep.scaling_holds);
        assert!(rep.unit.is_none());
    }

    #[test]
    fn cap_scaling_identity_at_zero() {
        let b = SetFamily::new(3, vec![es(&[0, 1]), es(&[1, 2])], Some(2)).unwrap();
        let rep = verify_cap_scaling(&b, 0, None, &limits()).unwrap();
        assert_eq!(rep.lambda, rat(1, 1));
        assert_eq!(rep.scaled_weight, rep.base_weight);
        assert_eq!(rep.scale_bound, rep.base_weight);
        assert!(rep.scaling_holds);
        assert!(verify_cap_scaling(&b, 2, None, &limits()).is_err());
    }

    #[test]
    fn unit_branch_on_the_design() {
        let b = pair_design(6).unwrap();
        // k = 0 <= 6/540: applicable, and c_5 <= 1 is the plain unit bound.
        let rep = verify_cap_scaling(&b, 0, Some(3), &limits()).unwrap();
        let unit = rep.unit.unwrap();
        assert!(unit.applicable);
        assert!(unit.holds);
        // k = 1 > 6/540: branch reports itself inapplicable.
        let rep = verify_cap_scaling(&b, 1, Some(3), &limits()).unwrap();
        let unit = rep.unit.unwrap();
        assert!(!unit.applicable);
        assert!(unit.skip_reason.unwrap().contains("k <= r/(20 l^3)"));
        assert!(rep.scaling_holds);
    }
}
