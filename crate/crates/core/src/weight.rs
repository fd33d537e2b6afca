use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::family::SetFamily;

/// Exact arbitrary-precision rational. All weight functionals, probabilities
/// and inequality checks run on this type; floating point appears only where a
/// bound is genuinely transcendental, and then always with an explicit slack.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `lambda^{-k}` for a positive rational base.
pub fn lambda_pow_neg(lambda: &Rational, k: usize) -> Rational {
    pow_signed(lambda, -(k as i64))
}

/// `base^exp` with integer exponent of either sign (base nonzero for negative
/// exponents).
pub fn pow_signed(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mag = exp.unsigned_abs() as u32;
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = mag;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        let next = &sq * &sq;
        sq = next;
        e >>= 1;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// `(m choose k)` as an exact rational (zero when `k > m`).
pub fn binomial_rational(m: usize, k: usize) -> Rational {
    Rational::from_integer(num::integer::binomial(BigInt::from(m), BigInt::from(k)))
}

pub fn ensure_positive_lambda(lambda: &Rational) -> Result<()> {
    if lambda.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveLambda(format_rational(lambda)))
    }
}

/// Non-negative exact weight. The newtype guards the sign invariant at the API
/// boundary; internal arithmetic stays on plain [`Rational`]s.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactWeight(Rational);

impl ExactWeight {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::internal(format!(
                "weight must be non-negative, got {}",
                format_rational(&value)
            )));
        }
        Ok(ExactWeight(value))
    }

    pub fn zero() -> Self {
        ExactWeight(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }
}

impl fmt::Display for ExactWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// `w_lambda(F) = sum over members A of lambda^{-|A|}`. Duplicates were
/// already removed at family construction, so each set contributes once.
/// An empty member contributes `lambda^0 = 1`.
pub fn family_weight(family: &SetFamily, lambda: &Rational) -> Result<ExactWeight> {
    ensure_positive_lambda(lambda)?;
    let mut total = Rational::zero();
    for s in family.sets() {
        total += lambda_pow_neg(lambda, s.len());
    }
    ExactWeight::new(total)
}

/// Floating value carrying an explicit absolute error bound. Used only for
/// genuinely irrational bounds (exponential decay targets, log2 factors);
/// comparisons against exact rationals convert the f64 exactly (every finite
/// f64 is a dyadic rational) and apply the slack in exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxWeight {
    pub value: f64,
    pub error_bound: f64,
}

pub const DEFAULT_APPROX_ERROR: f64 = 1e-12;

impl ApproxWeight {
    pub fn new(value: f64) -> Self {
        ApproxWeight { value, error_bound: DEFAULT_APPROX_ERROR }
    }

    /// Does `exact <= value` hold up to the stored slack? Exact rational
    /// comparison against `value + error_bound`.
    pub fn admits_le(&self, exact: &Rational) -> bool {
        let hi = rational_from_f64(self.value).expect("finite bound")
            + rational_from_f64(self.error_bound).expect("finite slack");
        *exact <= hi
    }
}

/// Exact conversion; every finite f64 is a dyadic rational.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A certified enclosure `[lo, hi]` of `ln(n)` as exact rationals. The f64
/// evaluation is correct to ~1e-15 relative; the 1e-9 widening leaves orders
/// of magnitude to spare while keeping comparisons exact on either endpoint.
pub fn ln_enclosure(n: usize) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::pre("ln(0) requested"));
    }
    let v = (n as f64).ln();
    let margin = rational(1, 1_000_000_000);
    let center = rational_from_f64(v).ok_or_else(|| Error::internal("ln produced non-finite"))?;
    Ok((&center - &margin, center + margin))
}

/// Decide `ratio >= count^{-1/power}` for `ratio in [0, 1]`, `power >= 1`,
/// without floating roots: both sides are non-negative, so raising to `power`
/// preserves order and the check becomes `ratio^power * count >= 1`.
pub fn ge_inverse_root(ratio: &Rational, power: usize, count: usize) -> bool {
    debug_assert!(!ratio.is_negative());
    debug_assert!(power >= 1 && count >= 1);
    pow_signed(ratio, power as i64) * rational_usize(count) >= Rational::one()
}

/// Render `p/q` in lowest terms (integers without the `/1`).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `p/q`, or a plain decimal like `0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = |msg: &str| Error::Parse { line: 0, message: format!("{msg}: {t:?}") };
    if t.is_empty() {
        return Err(bad("empty rational"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = q.trim().parse().map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad("bad decimal"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad decimal fraction"));
        }
        let digits: BigInt = frac.parse().map_err(|_| bad("bad decimal fraction"))?;
        let scale = num::pow::pow(BigInt::from(10), frac.len());
        let frac_part = Rational::new(digits, scale);
        let whole_part = Rational::from_integer(w);
        return Ok(if sign < 0 {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        });
    }
    let n: BigInt = t.parse().map_err(|_| bad("bad integer"))?;
    Ok(Rational::from_integer(n))
}
