//! Spread probes for the random-cover distribution, and the sampling process
//! that captures a cover with a few rounds of element thinning.
//!
//! Draw a minimal cover `C` of an n-uniform family with probability
//! proportional to `n^{-|C|}`. The distribution is `R`-spread when
//! `P(S subseteq C) <= R^{-|S|}` for every non-empty element set `S`. A
//! violating `S` is a witness, and it forces the members avoiding `S` to
//! carry a large cover weight of their own: deleting `S` from each cover
//! containing it maps those covers injectively onto minimal covers of the
//! avoiding subfamily (each element of a minimal cover keeps a private
//! member, and that member avoids `S`), which yields
//! `c_n(F avoiding S) > (n/R)^{|S|} c_n(F)` exactly.
//!
//! The sampling side: build a random element set by `m` rounds, each keeping
//! every element independently with probability `delta`, and take the union.
//! Escape counts (members disjoint from the sample) have exact first and
//! second moments; containment of a whole cover is estimated by Monte Carlo
//! against the standard spread-implies-capture bound.

use itertools::Itertools;
use num::traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::ElementSet;
use crate::transversal::{
    enumerate_minimal_covers, CoverDistribution, EnumerationLimits,
};
use crate::weight::{pow_signed, rational_usize, Rational};

/// The canonical random-cover distribution of an n-uniform family: minimal
/// covers of size at most `n`, drawn with probability proportional to
/// `n^{-|C|}`. Fails when no cover fits the cap (possible only for
/// non-intersecting families, whose covering number may exceed `n`).
pub fn cover_distribution(
    family: &SetFamily,
    limits: &EnumerationLimits,
) -> Result<CoverDistribution> {
    let n = family
        .uniformity()
        .ok_or_else(|| Error::pre("cover distribution needs an n-uniform family"))?;
    let covers = enumerate_minimal_covers(family, n, limits)?;
    CoverDistribution::new(covers, rational_usize(n))
}

/// A subset at which the spread inequality fails, with the forced growth of
/// the avoiding subfamily's cover weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadWitness {
    pub subset: ElementSet,
    /// `P(subset subseteq C)`.
    pub probability: Rational,
    /// `R^{-|subset|}`.
    pub threshold: Rational,
    /// `c_n` of the whole family.
    pub base_weight: Rational,
    /// `c_n` of the members avoiding the subset.
    pub restricted_weight: Rational,
    /// `(n/R)^{|subset|} * base_weight`; always strictly below
    /// `restricted_weight`.
    pub forced_growth: Rational,
}

/// Result of scanning all small subsets for a spread violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadReport {
    pub r: Rational,
    pub max_subset_size: usize,
    pub subsets_checked: u64,
    pub witness: Option<SpreadWitness>,
}

impl SpreadReport {
    /// No violation among subsets of the sizes scanned.
    pub fn is_spread_up_to_max(&self) -> bool {
        self.witness.is_none()
    }
}

/// Scan subsets of the covers' support, by increasing size then
/// lexicographically, for the first `S` with `P(S subseteq C) > R^{-|S|}`.
/// On a hit, the forced-growth consequence is recomputed exactly and any
/// discrepancy is an internal error.
pub fn spread_witness(
    family: &SetFamily,
    r: &Rational,
    max_subset_size: usize,
    limits: &EnumerationLimits,
) -> Result<SpreadReport> {
    if !r.is_positive() {
        return Err(Error::pre("spread parameter R must be positive"));
    }
    let n = family
        .uniformity()
        .ok_or_else(|| Error::pre("spread scan needs an n-uniform family"))?;
    let dist = cover_distribution(family, limits)?;
    let base_weight = dist.normalizer().clone();
    let support = dist.covers().support().to_vec();
    let n_rat = rational_usize(n);
    let mut checked = 0u64;
    for size in 1..=max_subset_size.min(support.len()) {
        for combo in support.iter().copied().combinations(size) {
            let subset = ElementSet::from_elements(combo)?;
            checked += 1;
            let probability = dist.containment_probability(subset);
            let threshold = pow_signed(r, -(size as i64));
            if probability <= threshold {
                continue;
            }
            let restricted = family.restrict_avoiding(subset);
            let restricted_weight = enumerate_minimal_covers(&restricted, n, limits)?
                .weight(&n_rat)?
                .into_inner();
            let mass = &probability * &base_weight;
            if mass > pow_signed(&n_rat, -(size as i64)) * &restricted_weight {
                return Err(Error::internal(format!(
                    "covers through {subset} outweigh the avoiding subfamily's budget"
                )));
            }
            let forced_growth =
                pow_signed(&(&n_rat / r), size as i64) * &base_weight;
            if restricted_weight <= forced_growth {
                return Err(Error::internal(format!(
                    "forced growth at {subset} did not materialize: {restricted_weight} vs {forced_growth}"
                )));
            }
            return Ok(SpreadReport {
                r: r.clone(),
                max_subset_size,
                subsets_checked: checked,
                witness: Some(SpreadWitness {
                    subset,
                    probability,
                    threshold,
                    base_weight,
                    restricted_weight,
                    forced_growth,
                }),
            });
        }
    }
    Ok(SpreadReport {
        r: r.clone(),
        max_subset_size,
        subsets_checked: checked,
        witness: None,
    })
}

/// Exact moments of the escape count: the number of members disjoint from
/// the union of `m` independent `delta`-thinned copies of the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptureMoments {
    /// `P(one fixed member escapes) = (1-delta)^{mn}`.
    pub escape_probability: Rational,
    pub mean: Rational,
    pub variance: Rational,
}

fn thinning_gates(delta: &Rational, m: usize) -> Result<()> {
    if !(delta > &Rational::zero() && delta < &Rational::one()) {
        return Err(Error::pre("thinning rate delta must lie strictly between 0 and 1"));
    }
    if m == 0 {
        return Err(Error::pre("need at least one thinning round"));
    }
    Ok(())
}

/// First and second escape-count moments, exactly. `q = (1-delta)^m` is the
/// chance one element stays out of the sample; a pair of members escapes
/// together with probability `q^{|A union A'|}`.
pub fn capture_moments(b: &SetFamily, delta: &Rational, m: usize) -> Result<CaptureMoments> {
    let n = b
        .uniformity()
        .ok_or_else(|| Error::pre("escape moments need an n-uniform family"))?;
    if b.is_empty() {
        return Err(Error::pre("escape moments need a non-empty family"));
    }
    thinning_gates(delta, m)?;
    let q = pow_signed(&(Rational::one() - delta), m as i64);
    let rho = pow_signed(&q, n as i64);
    let mean = rational_usize(b.len()) * &rho;
    let sets = b.sets();
    let mut pair_sum = Rational::zero();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            let joint = pow_signed(&q, sets[i].union(sets[j]).len() as i64);
            pair_sum += joint - &rho * &rho;
        }
    }
    let variance =
        rational(2) * pair_sum + &mean * (Rational::one() - &rho);
    Ok(CaptureMoments { escape_probability: rho, mean, variance })
}

fn rational(n: i64) -> Rational {
    crate::weight::rational(n, 1)
}

/// Monte-Carlo check of the escape moments: empirical mean of the escape
/// count over seeded trials against the exact mean, with a three-sigma band.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeSample {
    pub trials: u64,
    pub total_escapes: u64,
    pub empirical_mean: f64,
    pub exact_mean: f64,
    /// Standard deviation of the empirical mean, from the exact variance.
    pub sigma: f64,
    pub within_three_sigma: bool,
}

fn sample_mask(rng: &mut ChaCha8Rng, ground: usize, density: f64) -> u128 {
    let mut bits = 0u128;
    for x in 0..ground {
        if rng.random_bool(density) {
            bits |= 1u128 << x;
        }
    }
    bits
}

/// Draw the thinned-union sample `trials` times (one ChaCha stream per
/// trial, so the result is independent of thread count) and compare the
/// average escape count to the exact mean.
pub fn sample_escape_counts(
    b: &SetFamily,
    delta: &Rational,
    m: usize,
    trials: u64,
    seed: u64,
) -> Result<EscapeSample> {
    if trials == 0 {
        return Err(Error::pre("need at least one trial"));
    }
    let moments = capture_moments(b, delta, m)?;
    let q = pow_signed(&(Rational::one() - delta), m as i64);
    let density = 1.0 - q.to_f64().unwrap_or(f64::NAN);
    let masks: Vec<u128> = b.sets().iter().map(|s| s.bits()).collect();
    let ground = b.ground();
    let total_escapes: u64 = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial + 1);
            let sample = sample_mask(&mut rng, ground, density);
            masks.iter().filter(|&&a| a & sample == 0).count() as u64
        })
        .sum();
    let empirical_mean = total_escapes as f64 / trials as f64;
    let exact_mean = moments.mean.to_f64().unwrap_or(f64::NAN);
    let sigma =
        (moments.variance.to_f64().unwrap_or(f64::NAN) / trials as f64).sqrt();
    let within_three_sigma = if sigma == 0.0 {
        empirical_mean == exact_mean
    } else {
        (empirical_mean - exact_mean).abs() <= 3.0 * sigma
    };
    Ok(EscapeSample {
        trials,
        total_escapes,
        empirical_mean,
        exact_mean,
        sigma,
        within_three_sigma,
    })
}

/// Monte-Carlo estimate of the chance that the thinned-union sample contains
/// an entire minimal cover, against the capture bound
/// `1 - (5 / log2(R delta))^m * E|C|`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverCaptureReport {
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    /// The claimed lower bound on the success probability (may be negative,
    /// in which case it claims nothing).
    pub bound: f64,
    /// `R delta <= 2` (log base is not above 1) or the bound is not
    /// positive: the inequality constrains nothing.
    pub vacuous: bool,
    /// Conservative standard deviation of the success rate
    /// (`0.5 / sqrt(trials)`).
    pub sigma: f64,
    /// `success_rate >= bound - 3 sigma`, or the bound is vacuous.
    pub holds_within_noise: bool,
    /// Subset size up to which the spread hypothesis was actually verified.
    pub spread_checked_to: usize,
    pub spread_ok: bool,
    pub expected_cover_size: f64,
}

/// Sample cover capture under the thinning process and compare with the
/// spread-based bound. The spread hypothesis is only scanned up to
/// `spread_scan` subset size — the report says so — and a found violation
/// makes the bound inapplicable rather than an error.
pub fn monte_carlo_capture(
    family: &SetFamily,
    r: &Rational,
    delta: &Rational,
    m: usize,
    trials: u64,
    seed: u64,
    spread_scan: usize,
    limits: &EnumerationLimits,
) -> Result<CoverCaptureReport> {
    if trials == 0 {
        return Err(Error::pre("need at least one trial"));
    }
    thinning_gates(delta, m)?;
    let spread = spread_witness(family, r, spread_scan, limits)?;
    let dist = cover_distribution(family, limits)?;
    let cover_masks: Vec<u128> = dist.covers().covers().iter().map(|c| c.bits()).collect();
    let q = pow_signed(&(Rational::one() - delta), m as i64);
    let density = 1.0 - q.to_f64().unwrap_or(f64::NAN);
    let ground = family.ground();
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial + 1);
            let sample = sample_mask(&mut rng, ground, density);
            u64::from(cover_masks.iter().any(|&c| c & !sample == 0))
        })
        .sum();
    let success_rate = successes as f64 / trials as f64;
    let expected_cover_size = dist.expected_cover_size().to_f64().unwrap_or(f64::NAN);
    let rdelta = (r * delta).to_f64().unwrap_or(f64::NAN);
    let (bound, log_ok) = if rdelta > 2.0 {
        let ratio = 5.0 / rdelta.log2();
        (1.0 - ratio.powi(m as i32) * expected_cover_size, true)
    } else {
        (f64::NEG_INFINITY, false)
    };
    let vacuous = !log_ok || bound <= 0.0;
    let sigma = 0.5 / (trials as f64).sqrt();
    let holds_within_noise = vacuous || success_rate >= bound - 3.0 * sigma;
    Ok(CoverCaptureReport {
        trials,
        successes,
        success_rate,
        bound,
        vacuous,
        sigma,
        holds_within_noise,
        spread_checked_to: spread.max_subset_size,
        spread_ok: spread.is_spread_up_to_max(),
        expected_cover_size,
    })
}
