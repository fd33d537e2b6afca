//! Exact verifiers for the foundational cover-weight inequalities.
//!
//! These are the relations everything else leans on: the covering-number
//! monotonicity of `c_lambda` in `lambda`, the subfamily decomposition bound,
//! its fixed-base chain form, and the unit bound `c_n <= 1` for n-uniform
//! families. Each verifier evaluates both sides in exact rational arithmetic
//! and returns the values alongside the outcome, so callers can report or
//! assert as appropriate.

use num::traits::One;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::transversal::{enumerate_minimal_covers, tau, EnumerationLimits};
use crate::weight::{
    ensure_positive_lambda, format_rational, lambda_pow_neg, pow_signed, rational_usize, Rational,
};

/// An evaluated `lhs <= rhs` comparison with both exact sides kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightComparison {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl WeightComparison {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn lhs_string(&self) -> String {
        format_rational(&self.lhs)
    }

    pub fn rhs_string(&self) -> String {
        format_rational(&self.rhs)
    }
}

/// `c_mu(F) <= (lambda/mu)^tau(F) * c_lambda(F)` for `0 < lambda <= mu`.
///
/// Every minimal cover has size at least `tau(F)`, so increasing the base
/// from `lambda` to `mu` shrinks each term by at least `(lambda/mu)^tau`.
pub fn verify_mon(
    family: &SetFamily,
    lambda: &Rational,
    mu: &Rational,
    cap: usize,
    limits: &EnumerationLimits,
) -> Result<WeightComparison> {
    ensure_positive_lambda(lambda)?;
    ensure_positive_lambda(mu)?;
    if lambda > mu {
        return Err(Error::pre(format!(
            "monotonicity needs lambda <= mu, got {} > {}",
            format_rational(lambda),
            format_rational(mu)
        )));
    }
    let covers = enumerate_minimal_covers(family, cap, limits)?;
    let t = tau(family, limits)?;
    let lhs = covers.weight(mu)?.into_inner();
    let ratio = lambda / mu;
    let rhs = pow_signed(&ratio, t as i64) * covers.weight(lambda)?.into_inner();
    Ok(WeightComparison { lhs, rhs })
}

/// Per-cover term of the subfamily decomposition: the restricted family, its
/// exact cover weight, and the `lambda^-|C|}` factor it enters with.
#[derive(Debug, Clone)]
pub struct DecompositionTerm {
    pub cover: crate::set::ElementSet,
    pub restricted_size: usize,
    pub restricted_weight: Rational,
}

/// Result of the subfamily decomposition check
/// `c_lambda(F) <= sum over C in C(F') of lambda^{-|C|} * c_lambda(F(C-bar))`.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub comparison: WeightComparison,
    pub sub_cover_count: usize,
    pub terms: Vec<DecompositionTerm>,
}

/// Verify the decomposition bound for a subfamily given by indices into
/// `family`. `F(C-bar)` is the subfamily of members disjoint from `C`; its
/// cover weight uses the same size cap. The subfamily may equal the whole
/// family (the bound is then an equality-or-better tautology worth testing).
pub fn verify_decomposition(
    family: &SetFamily,
    sub_indices: &[usize],
    lambda: &Rational,
    cap: usize,
    limits: &EnumerationLimits,
) -> Result<DecompositionReport> {
    ensure_positive_lambda(lambda)?;
    if *lambda <= Rational::one() {
        return Err(Error::pre(format!(
            "decomposition bound needs lambda > 1, got {}",
            format_rational(lambda)
        )));
    }
    if sub_indices.is_empty() {
        return Err(Error::pre("decomposition needs a non-empty subfamily"));
    }
    let sub = family.subfamily(sub_indices)?;
    let whole = enumerate_minimal_covers(family, cap, limits)?;
    let lhs = whole.weight(lambda)?.into_inner();

    let sub_covers = enumerate_minimal_covers(&sub, cap, limits)?;
    let mut rhs = Rational::from_integer(0.into());
    let mut terms = Vec::with_capacity(sub_covers.len());
    for &c in sub_covers.covers() {
        let restricted = family.restrict_avoiding(c);
        let weight = enumerate_minimal_covers(&restricted, cap, limits)?
            .weight(lambda)?
            .into_inner();
        rhs += lambda_pow_neg(lambda, c.len()) * &weight;
        terms.push(DecompositionTerm {
            cover: c,
            restricted_size: restricted.len(),
            restricted_weight: weight,
        });
    }
    Ok(DecompositionReport {
        comparison: WeightComparison { lhs, rhs },
        sub_cover_count: sub_covers.len(),
        terms,
    })
}

/// The fixed-base chain form of the decomposition bound: same statement at
/// `lambda = n`, the family's uniformity. This is the induction step used by
/// all the `c_n` bounds downstream.
pub fn verify_chain(
    family: &SetFamily,
    sub_indices: &[usize],
    limits: &EnumerationLimits,
) -> Result<DecompositionReport> {
    let n = family.required_uniformity()?;
    if n < 2 {
        return Err(Error::pre("chain bound needs uniformity at least 2"));
    }
    verify_decomposition(family, sub_indices, &rational_usize(n), n, limits)
}

/// The unit bound: `c_n(F) <= 1` for every n-uniform family, with covers
/// capped at `n`.
pub fn verify_unit_bound(
    family: &SetFamily,
    limits: &EnumerationLimits,
) -> Result<WeightComparison> {
    let n = family.required_uniformity()?;
    let covers = enumerate_minimal_covers(family, n, limits)?;
    let lhs = covers.weight(&rational_usize(n))?.into_inner();
    Ok(WeightComparison { lhs, rhs: Rational::one() })
}
