//! Degree moments and the greedy extraction of a subfamily whose degree
//! moments stay controlled.
//!
//! For a family `F` over a ground set, `d(x)` counts the members containing
//! `x` and the i-th moment is `d^i = sum_x d(x)^i`. Moments tie directly to
//! random members: drawing `l` members independently and uniformly, the
//! expected size of their common intersection is exactly `d^l / |F|^l`.
//!
//! The extraction machinery repeatedly picks a member that keeps every
//! moment's growth small, using two sampling facts about an arbitrary
//! non-negative weighting `f` of the members (with total `f(X)`):
//!
//!  * `tau - 1` independent f-proportional draws touch at most `tau - 1`
//!    members, and a family always has at least `tau` members, so the
//!    expected number of untouched members, `sum_A (1 - f(A)/f(X))^{tau-1}`,
//!    is at least 1. In particular the lightest member satisfies
//!    `f(A) <= f(X) (1 - |F|^{-1/(tau-1)})`.
//!  * Averaging that over several weightings: some single member satisfies
//!    the same bound for all of them simultaneously, at the cost of a factor
//!    `l` (the number of weightings).
//!
//! Root comparisons like `|F|^{-1/(tau-1)}` are decided exactly by raising
//! both sides to the `tau - 1` power; only `ln |A|` needs an interval
//! enclosure, and every enclosure-based verdict is three-valued.

use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::transversal::{tau, EnumerationLimits};
use crate::weight::{
    binomial_rational, ge_inverse_root, ln_enclosure, pow_signed, rational, rational_usize,
    Rational,
};

/// Per-element degrees and the moment sequence `d^1 .. d^L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub moments: Vec<Rational>,
}

impl DegreeProfile {
    /// `d^i`, for `1 <= i <= L`.
    pub fn moment(&self, i: usize) -> &Rational {
        &self.moments[i - 1]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

fn power_sum(degrees: &[usize], i: usize) -> Rational {
    degrees
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| pow_signed(&rational_usize(d), i as i64))
        .fold(Rational::zero(), |acc, p| acc + p)
}

/// Degrees of every ground element and moments up to order `max_order`.
pub fn degree_profile(family: &SetFamily, max_order: usize) -> DegreeProfile {
    let mut degrees = vec![0usize; family.ground()];
    for s in family.sets() {
        for x in s.iter() {
            degrees[x] += 1;
        }
    }
    let moments = (1..=max_order).map(|i| power_sum(&degrees, i)).collect();
    DegreeProfile { degrees, moments }
}

/// The moment identity `E |F_1 cap ... cap F_l| = d^l / |F|^l`, with the
/// expectation recomputed by brute force over all member tuples whenever
/// that is affordable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentIdentity {
    pub order: usize,
    pub moment: Rational,
    pub expectation: Rational,
    /// True when the tuple-by-tuple average was actually recomputed (only
    /// skipped when `|F|^l` exceeds a million tuples).
    pub brute_checked: bool,
}

/// Expected intersection size of `l` independent uniform members, via the
/// moment formula; cross-checked against direct enumeration when `|F|^l`
/// stays within a million tuples. Disagreement is an internal error.
pub fn expected_l_intersection(family: &SetFamily, l: usize) -> Result<MomentIdentity> {
    if family.is_empty() {
        return Err(Error::pre("expectation over an empty family"));
    }
    if l == 0 {
        return Err(Error::pre("need at least one random member"));
    }
    let profile = degree_profile(family, l);
    let moment = profile.moment(l).clone();
    let count = rational_usize(family.len());
    let expectation = &moment / pow_signed(&count, l as i64);

    let tuples = (family.len() as u128).checked_pow(l as u32);
    let brute_checked = matches!(tuples, Some(t) if t <= 1_000_000);
    if brute_checked {
        let sets = family.sets();
        let mut idx = vec![0usize; l];
        let mut total = 0u128;
        loop {
            let inter = idx
                .iter()
                .skip(1)
                .fold(sets[idx[0]], |acc, &j| acc.intersection(sets[j]));
            total += inter.len() as u128;
            let mut pos = l;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < sets.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&v| v == 0) {
                break;
            }
        }
        let brute = Rational::new(total.into(), tuples.unwrap().into());
        if brute != expectation {
            return Err(Error::internal(format!(
                "moment formula gives {expectation} but direct averaging gives {brute}"
            )));
        }
    }
    Ok(MomentIdentity { order: l, moment, expectation, brute_checked })
}

/// Report for the untouched-member inequality under one weighting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoveredWeightReport {
    pub tau: usize,
    /// `sum_A (1 - f(A)/f(X))^{tau-1}`.
    pub sum: Rational,
    pub holds: bool,
    /// Index of the lightest member (lowest index among minima).
    pub witness: usize,
    /// Whether the lightest member satisfies
    /// `f(A) <= f(X) (1 - |F|^{-1/(tau-1)})`.
    pub witness_holds: bool,
    /// `tau <= 1`: every exponent is zero and both claims are immediate.
    pub trivial: bool,
}

fn check_weights(family: &SetFamily, f: &[Rational]) -> Result<Rational> {
    if family.is_empty() {
        return Err(Error::pre("weighting over an empty family"));
    }
    if f.len() != family.len() {
        return Err(Error::pre(format!(
            "weighting has {} entries for {} members",
            f.len(),
            family.len()
        )));
    }
    if let Some(bad) = f.iter().position(|v| v.is_negative()) {
        return Err(Error::pre(format!("weight of member {bad} is negative")));
    }
    let total: Rational = f.iter().fold(Rational::zero(), |acc, v| acc + v);
    if total.is_zero() {
        return Err(Error::pre("weighting is identically zero"));
    }
    Ok(total)
}

/// Verify `sum_A (1 - f(A)/f(X))^{tau-1} >= 1` and the lightest-member
/// consequence for a non-negative, not identically zero weighting `f`.
pub fn verify_weighted_uncovered(
    family: &SetFamily,
    f: &[Rational],
    limits: &EnumerationLimits,
) -> Result<UncoveredWeightReport> {
    let total = check_weights(family, f)?;
    let t = tau(family, limits)?;
    let witness = f
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.cmp(b))
        .map(|(i, _)| i)
        .unwrap();
    if t <= 1 {
        return Ok(UncoveredWeightReport {
            tau: t,
            sum: rational_usize(family.len()),
            holds: true,
            witness,
            witness_holds: true,
            trivial: true,
        });
    }
    let sum = f
        .iter()
        .map(|v| pow_signed(&(Rational::one() - v / &total), (t - 1) as i64))
        .fold(Rational::zero(), |acc, term| acc + term);
    let ratio = Rational::one() - &f[witness] / &total;
    Ok(UncoveredWeightReport {
        tau: t,
        holds: sum >= Rational::one(),
        sum,
        witness,
        witness_holds: ge_inverse_root(&ratio, t - 1, family.len()),
        trivial: false,
    })
}

/// Report for the simultaneous light member across several weightings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedMemberReport {
    /// Lowest-index minimizer of `sum_i f_i(A)/f_i(X)`.
    pub member: usize,
    pub tau: usize,
    pub objective: Rational,
    /// Per weighting: does the selected member satisfy
    /// `f_i(A) <= l f_i(X) (1 - |F|^{-1/(tau-1)})`?
    pub per_weighting: Vec<bool>,
    /// The selected member satisfies every per-weighting bound.
    pub selected_holds: bool,
    /// Some member satisfies every per-weighting bound (full scan).
    pub holds: bool,
    /// `l (1 - |F|^{-1/(tau-1)}) >= 1`: the bounds exceed the totals and
    /// hold for any member whatsoever.
    pub vacuous: bool,
    pub trivial: bool,
}

/// Select the member minimizing `sum_i f_i(A)/f_i(X)` over several
/// non-negative weightings and verify the simultaneous bound
/// `f_i(A) <= l f_i(X) (1 - |F|^{-1/(tau-1)})` for every `i`.
pub fn select_balanced_member(
    family: &SetFamily,
    weightings: &[Vec<Rational>],
    limits: &EnumerationLimits,
) -> Result<BalancedMemberReport> {
    if weightings.is_empty() {
        return Err(Error::pre("need at least one weighting"));
    }
    let totals: Vec<Rational> = weightings
        .iter()
        .map(|f| check_weights(family, f))
        .collect::<Result<_>>()?;
    let l = weightings.len();
    let objective = |a: usize| -> Rational {
        weightings
            .iter()
            .zip(&totals)
            .map(|(f, tot)| &f[a] / tot)
            .fold(Rational::zero(), |acc, v| acc + v)
    };
    let member = (0..family.len())
        .min_by(|&a, &b| objective(a).cmp(&objective(b)))
        .unwrap();
    let t = tau(family, limits)?;
    if t <= 1 {
        return Ok(BalancedMemberReport {
            member,
            tau: t,
            objective: objective(member),
            per_weighting: vec![true; l],
            selected_holds: true,
            holds: true,
            vacuous: false,
            trivial: true,
        });
    }
    let bound_ok = |a: usize, i: usize| -> bool {
        let scaled = rational_usize(l) * &totals[i];
        let ratio = Rational::one() - &weightings[i][a] / scaled;
        ge_inverse_root(&ratio, t - 1, family.len())
    };
    let per_weighting: Vec<bool> = (0..l).map(|i| bound_ok(member, i)).collect();
    let selected_holds = per_weighting.iter().all(|&b| b);
    let holds = selected_holds
        || (0..family.len()).any(|a| (0..l).all(|i| bound_ok(a, i)));
    let vacuous = l >= 2
        && ge_inverse_root(&rational((l - 1) as i64, l as i64), t - 1, family.len());
    Ok(BalancedMemberReport {
        member,
        tau: t,
        objective: objective(member),
        per_weighting,
        selected_holds,
        holds,
        vacuous,
        trivial: false,
    })
}

/// Three-valued outcome of an enclosure-based comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStatus {
    Holds,
    Fails,
    /// The two sides differ by less than the `ln` enclosure width.
    Indeterminate,
}

/// How the member added in one greedy step was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Minimizer of the combined moment-increment weightings.
    Balanced,
    /// All weightings vanished (no element had positive degree yet), so the
    /// lowest-index remaining member was taken.
    LowestIndex,
}

/// Growth check for one moment order in one greedy step: is
/// `d^i after <= d^i before + (2 l ln|A| / t) 2^i d^{i-1} before + n`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentGrowthCheck {
    pub order: usize,
    pub before: Rational,
    pub after: Rational,
    /// Certain lower / upper evaluations of the allowance, from the `ln`
    /// enclosure.
    pub allowance_low: Rational,
    pub allowance_high: Rational,
    pub status: StepStatus,
}

/// One greedy step: which member was added and how each moment grew.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStep {
    /// Index of the added member in the original family.
    pub chosen: usize,
    /// Covering number of the remaining family before this step.
    pub tau_before: usize,
    /// Whether `2 tau_before >= t + 2`; only then does the sampling argument
    /// promise the growth bound, so only in-regime failures count against
    /// the construction.
    pub in_regime: bool,
    pub selection: SelectionMode,
    pub growth: Vec<MomentGrowthCheck>,
}

/// Final bound check for one moment order:
/// `d^i <= 2^{i^2} gamma^{i-1} n |F|^i + 2^{i^2} n |F|` with `gamma = 2lm/t`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentBoundCheck {
    pub order: usize,
    pub moment: Rational,
    pub bound: Rational,
    pub holds: bool,
    /// `moment / bound` as a float, for at-a-glance slack.
    pub ratio: f64,
}

/// Outcome of the greedy extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct LowMomentReport {
    /// Indices (into the original family) of the extracted subfamily, in
    /// the order they were added.
    pub member_indices: Vec<usize>,
    pub steps: Vec<GreedyStep>,
    /// Covering number of what remains outside the subfamily.
    pub final_tau: usize,
    /// The loop exit was `2 final_tau <= t` (always true when the whole
    /// family was consumed).
    pub halved: bool,
    /// Every member ended up in the subfamily.
    pub exhausted: bool,
    /// `2lm/t`, the rational growth-rate cap used in the final bounds.
    pub gamma: Rational,
    pub moment_bounds: Vec<MomentBoundCheck>,
}

impl LowMomentReport {
    /// No in-regime step shows a definite growth violation.
    pub fn growth_holds(&self) -> bool {
        !self.steps.iter().any(|s| {
            s.in_regime && s.growth.iter().any(|g| g.status == StepStatus::Fails)
        })
    }

    pub fn any_indeterminate(&self) -> bool {
        self.steps
            .iter()
            .any(|s| s.growth.iter().any(|g| g.status == StepStatus::Indeterminate))
    }

    /// Every final moment bound holds.
    pub fn bounds_hold(&self) -> bool {
        self.moment_bounds.iter().all(|b| b.holds)
    }

    pub fn subfamily(&self, family: &SetFamily) -> Result<SetFamily> {
        family.subfamily(&self.member_indices)
    }
}

/// Increment weightings for the current degrees: adding a member `A` changes
/// `d^i` by exactly `sum_{x in A} ((d(x)+1)^i - d(x)^i) = f_i(A) + |A|`
/// where `f_i(x) = sum_{j=1}^{i-1} (i choose j) d(x)^j`. The `f_i` for
/// `i = 2..l` are the weightings handed to the balanced selection; `f_1` is
/// identically zero and `d^1` just grows by `|A|`.
fn increment_weightings(
    family: &SetFamily,
    rest: &[usize],
    degrees: &[usize],
    l: usize,
) -> Vec<Vec<Rational>> {
    let mut element_values: Vec<Vec<Rational>> = Vec::with_capacity(l - 1);
    for i in 2..=l {
        element_values.push(
            (0..family.ground())
                .map(|x| {
                    (1..i)
                        .map(|j| {
                            binomial_rational(i, j)
                                * pow_signed(&rational_usize(degrees[x]), j as i64)
                        })
                        .fold(Rational::zero(), |acc, v| acc + v)
                })
                .collect(),
        );
    }
    element_values
        .into_iter()
        .map(|vals| {
            rest.iter()
                .map(|&a| {
                    family.sets()[a]
                        .iter()
                        .map(|x| vals[x].clone())
                        .fold(Rational::zero(), |acc, v| acc + v)
                })
                .collect()
        })
        .collect()
}

/// Greedily extract a subfamily `F` of `a` until the rest has covering
/// number at most `t/2`, keeping every moment `d^i (i <= l)` of `F` small.
///
/// Preconditions: `a` is n-uniform with `tau(a) >= t >= 1`, `l >= 2`, and
/// `m >= ln|a|` (decided through the enclosure; a value inside the enclosure
/// is refused as undecidable). Each step verifies the per-step growth bound
/// and the final report verifies the closed-form moment bounds with
/// `gamma = 2lm/t`; `d^1` growth is checked exactly and is not allowed to
/// deviate from `n`.
pub fn build_low_moment_subfamily(
    a: &SetFamily,
    t: usize,
    l: usize,
    m: &Rational,
    limits: &EnumerationLimits,
) -> Result<LowMomentReport> {
    let n = a
        .uniformity()
        .ok_or_else(|| Error::pre("moment extraction needs an n-uniform family"))?;
    if a.is_empty() {
        return Err(Error::pre("moment extraction needs a non-empty family"));
    }
    if l < 2 {
        return Err(Error::pre("need moment order l >= 2"));
    }
    if t == 0 {
        return Err(Error::pre("need a positive covering-number target t"));
    }
    let start_tau = tau(a, limits)?;
    if start_tau < t {
        return Err(Error::pre(format!(
            "family has covering number {start_tau}, below the target t = {t}"
        )));
    }
    let (ln_low, ln_high) = ln_enclosure(a.len())?;
    if *m < ln_low {
        return Err(Error::pre(format!(
            "m = {m} is certainly below ln of the family size"
        )));
    }
    if *m < ln_high {
        return Err(Error::Inconclusive(format!(
            "m = {m} falls inside the ln enclosure ({ln_low}, {ln_high})"
        )));
    }

    let t_rat = rational_usize(t);
    let step_rate_low = rational(2 * l as i64, 1) * &ln_low / &t_rat;
    let step_rate_high = rational(2 * l as i64, 1) * &ln_high / &t_rat;

    let mut degrees = vec![0usize; a.ground()];
    let mut in_subfamily = vec![false; a.len()];
    let mut member_indices = Vec::new();
    let mut steps = Vec::new();
    let (final_tau, exhausted) = loop {
        let rest: Vec<usize> = (0..a.len()).filter(|&i| !in_subfamily[i]).collect();
        if rest.is_empty() {
            break (0, true);
        }
        let rest_family = a.subfamily(&rest)?;
        let tau_rest = tau(&rest_family, limits)?;
        if 2 * tau_rest <= t {
            break (tau_rest, false);
        }
        let weightings = increment_weightings(a, &rest, &degrees, l);
        let degenerate = weightings.iter().all(|f| f.iter().all(|v| v.is_zero()));
        let (chosen_local, selection) = if degenerate {
            (0, SelectionMode::LowestIndex)
        } else {
            let report = select_balanced_member(&rest_family, &weightings, limits)?;
            (report.member, SelectionMode::Balanced)
        };
        let chosen = rest[chosen_local];

        let before: Vec<Rational> = (1..=l).map(|i| power_sum(&degrees, i)).collect();
        for x in a.sets()[chosen].iter() {
            degrees[x] += 1;
        }
        let after: Vec<Rational> = (1..=l).map(|i| power_sum(&degrees, i)).collect();
        if &after[0] - &before[0] != rational_usize(n) {
            return Err(Error::internal(format!(
                "d^1 grew by {} instead of n = {n}",
                &after[0] - &before[0]
            )));
        }
        let mut growth = Vec::with_capacity(l - 1);
        for i in 2..=l {
            let two_i = pow_signed(&rational(2, 1), i as i64);
            let slack = &two_i * &before[i - 2];
            let base = &before[i - 1] + rational_usize(n);
            let low = &base + &step_rate_low * &slack;
            let high = base + &step_rate_high * &slack;
            let status = if after[i - 1] <= low {
                StepStatus::Holds
            } else if after[i - 1] > high {
                StepStatus::Fails
            } else {
                StepStatus::Indeterminate
            };
            growth.push(MomentGrowthCheck {
                order: i,
                before: before[i - 1].clone(),
                after: after[i - 1].clone(),
                allowance_low: low,
                allowance_high: high,
                status,
            });
        }
        in_subfamily[chosen] = true;
        member_indices.push(chosen);
        steps.push(GreedyStep {
            chosen,
            tau_before: tau_rest,
            in_regime: 2 * tau_rest >= t + 2,
            selection,
            growth,
        });
    };

    let size = member_indices.len();
    let gamma = rational(2 * l as i64, 1) * m / &t_rat;
    let size_rat = rational_usize(size);
    let n_rat = rational_usize(n);
    let moment_bounds = (1..=l)
        .map(|i| {
            let moment = power_sum(&degrees, i);
            let two_sq = pow_signed(&rational(2, 1), (i * i) as i64);
            let bound = &two_sq
                * pow_signed(&gamma, (i - 1) as i64)
                * &n_rat
                * pow_signed(&size_rat, i as i64)
                + &two_sq * &n_rat * &size_rat;
            MomentBoundCheck {
                holds: moment <= bound,
                ratio: (&moment / &bound).to_f64().unwrap_or(f64::NAN),
                order: i,
                moment,
                bound,
            }
        })
        .collect();
    Ok(LowMomentReport {
        member_indices,
        steps,
        final_tau,
        halved: 2 * final_tau <= t,
        exhausted,
        gamma,
        moment_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::ElementSet;

    fn es(elems: &[usize]) -> ElementSet {
        ElementSet::from_elements(elems.iter().copied()).unwrap()
    }

    fn triangle() -> SetFamily {
        SetFamily::new(3, vec![es(&[0, 1]), es(&[0, 2]), es(&[1, 2])], Some(2)).unwrap()
    }

    fn limits() -> EnumerationLimits {
        EnumerationLimits::default()
    }

    #[test]
    fn triangle_profile() {
        let p = degree_profile(&triangle(), 3);
        assert_eq!(p.degrees, vec![2, 2, 2]);
        assert_eq!(p.moments, vec![rational(6, 1), rational(12, 1), rational(24, 1)]);
        assert_eq!(p.max_degree(), 2);
    }

    #[test]
    fn pair_expectation_matches_brute_force() {
        let id = expected_l_intersection(&triangle(), 2).unwrap();
        assert_eq!(id.expectation, rational(4, 3));
        assert!(id.brute_checked);

        let star = SetFamily::new(4, vec![es(&[0, 1]), es(&[0, 2]), es(&[0, 3])], Some(2)).unwrap();
        let id = expected_l_intersection(&star, 2).unwrap();
        assert_eq!(id.expectation, rational(4, 3));
        assert!(id.brute_checked);
        // Triple draws concentrate on the shared element: d^3 = 27 + 3.
        let id = expected_l_intersection(&star, 3).unwrap();
        assert_eq!(id.expectation, rational(30, 27));
        assert!(id.brute_checked);
    }

    #[test]
    fn expectation_order_one_is_average_size() {
        let f = SetFamily::new_degenerate(5, vec![es(&[0, 1, 2]), es(&[3])], None).unwrap();
        let id = expected_l_intersection(&f, 1).unwrap();
        assert_eq!(id.expectation, rational(2, 1));
    }

    #[test]
    fn uniform_weighting_leaves_members_untouched() {
        let f = vec![rational(1, 1), rational(1, 1), rational(1, 1)];
        let r = verify_weighted_uncovered(&triangle(), &f, &limits()).unwrap();
        assert_eq!(r.tau, 2);
        assert_eq!(r.sum, rational(2, 1));
        assert!(r.holds);
        assert_eq!(r.witness, 0);
        assert!(r.witness_holds); // (2/3) * 3 >= 1
        assert!(!r.trivial);
    }

    #[test]
    fn skewed_weighting_still_leaves_one() {
        let f = vec![rational(1, 1), rational(0, 1), rational(0, 1)];
        let r = verify_weighted_uncovered(&triangle(), &f, &limits()).unwrap();
        assert_eq!(r.sum, rational(2, 1));
        assert!(r.holds);
        assert_eq!(r.witness, 1); // lowest index among the zero weights
        assert!(r.witness_holds);
    }

    #[test]
    fn covering_number_one_is_trivial() {
        let star = SetFamily::new(4, vec![es(&[0, 1]), es(&[0, 2]), es(&[0, 3])], Some(2)).unwrap();
        let f = vec![rational(5, 1), rational(1, 1), rational(2, 1)];
        let r = verify_weighted_uncovered(&star, &f, &limits()).unwrap();
        assert!(r.trivial);
        assert!(r.holds);
        assert_eq!(r.witness, 1);
    }

    #[test]
    fn weighting_preconditions() {
        let f = triangle();
        assert!(verify_weighted_uncovered(&f, &[rational(1, 1)], &limits()).is_err());
        assert!(verify_weighted_uncovered(
            &f,
            &[rational(1, 1), rational(-1, 1), rational(1, 1)],
            &limits()
        )
        .is_err());
        assert!(verify_weighted_uncovered(
            &f,
            &[rational(0, 1), rational(0, 1), rational(0, 1)],
            &limits()
        )
        .is_err());
    }

    #[test]
    fn balanced_member_on_triangle() {
        let weightings = vec![
            vec![rational(1, 1), rational(1, 1), rational(1, 1)],
            vec![rational(1, 1), rational(2, 1), rational(3, 1)],
        ];
        let r = select_balanced_member(&triangle(), &weightings, &limits()).unwrap();
        assert_eq!(r.member, 0);
        assert_eq!(r.objective, rational(1, 2));
        assert!(r.selected_holds);
        assert!(r.holds);
        // 2 (1 - 3^{-1}) = 4/3 >= 1: nothing is constrained here.
        assert!(r.vacuous);
    }

    #[test]
    fn balanced_member_non_vacuous() {
        // Three pairwise disjoint pairs: tau = 3, so the root is squared and
        // 2 (1 - 3^{-1/2}) < 1.
        let f = SetFamily::new(6, vec![es(&[0, 1]), es(&[2, 3]), es(&[4, 5])], Some(2)).unwrap();
        let weightings = vec![
            vec![rational(1, 1), rational(1, 1), rational(1, 1)],
            vec![rational(1, 1), rational(1, 1), rational(2, 1)],
        ];
        let r = select_balanced_member(&f, &weightings, &limits()).unwrap();
        assert_eq!(r.member, 0);
        assert!(!r.vacuous);
        assert!(r.selected_holds);
        assert!(r.holds);
    }

    #[test]
    fn greedy_consumes_triangle() {
        let r =
            build_low_moment_subfamily(&triangle(), 1, 2, &rational(2, 1), &limits()).unwrap();
        assert_eq!(r.member_indices, vec![0, 1, 2]);
        assert!(r.exhausted);
        assert!(r.halved);
        assert_eq!(r.final_tau, 0);
        assert_eq!(r.steps[0].selection, SelectionMode::LowestIndex);
        assert_eq!(r.steps[1].selection, SelectionMode::Balanced);
        assert!(r.growth_holds());
        assert!(!r.any_indeterminate());
        assert!(r.bounds_hold());
        assert_eq!(r.gamma, rational(8, 1));
        // d^2 of the whole triangle against 2^4 (8 n 3^2 + n 3).
        assert_eq!(r.moment_bounds[1].moment, rational(12, 1));
        assert_eq!(r.moment_bounds[1].bound, rational(2400, 1));
    }

    #[test]
    fn greedy_stops_at_half() {
        let r =
            build_low_moment_subfamily(&triangle(), 2, 2, &rational(2, 1), &limits()).unwrap();
        assert_eq!(r.member_indices, vec![0]);
        assert!(!r.exhausted);
        assert!(r.halved);
        assert_eq!(r.final_tau, 1);
        assert_eq!(r.steps.len(), 1);
        assert!(r.steps[0].in_regime); // 2*2 >= 2+2
        assert!(r.growth_holds());
        assert!(r.bounds_hold());
    }

    #[test]
    fn greedy_preconditions() {
        let tri = triangle();
        // Target above the covering number.
        assert!(build_low_moment_subfamily(&tri, 3, 2, &rational(2, 1), &limits()).is_err());
        // l too small.
        assert!(build_low_moment_subfamily(&tri, 1, 1, &rational(2, 1), &limits()).is_err());
        // m certainly below ln 3.
        assert!(build_low_moment_subfamily(&tri, 1, 2, &rational(1, 1), &limits()).is_err());
        // Non-uniform family.
        let mixed =
            SetFamily::new_degenerate(4, vec![es(&[0, 1]), es(&[2])], None).unwrap();
        assert!(build_low_moment_subfamily(&mixed, 1, 2, &rational(2, 1), &limits()).is_err());
    }
}
