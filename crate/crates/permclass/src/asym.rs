//! Coefficient asymptotics from dominant-singularity data.
//!
//! The workhorse is the transfer map sending one expansion term
//! `lambda (1 - z/rho)^alpha` to
//! `lambda / Gamma(-alpha) * rho^-n * n^(-alpha-1) * (1 + sum_k e_k / n^k)`,
//! with the correction coefficients `e_k` computed exactly from the bivariate
//! kernel table. Exact rationals and surds are converted to `f64` only at the
//! final evaluation step.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use permclass_core::catalog::{self, EntryId, PuiseuxTerm, SingularityLocation, SurdValue};
use permclass_core::series::correction_kernel;

#[derive(Debug, Error)]
pub enum AsymError {
    #[error("exponent {0} is not supported (need a half-integer or negative integer)")]
    UnsupportedExponent(BigRational),
    #[error("need at least {needed} trailing nonzero coefficients, found {got}")]
    TooFewTerms { needed: usize, got: usize },
    #[error("no sign change on (0, 1)")]
    NoSignChange,
    #[error("correction order {0} above the supported maximum 3")]
    CorrectionOrderTooHigh(usize),
    #[error("zero coefficient in ratio at n = {0}")]
    ZeroCoefficient(usize),
    #[error("entries have different dominant singularities")]
    SingularityMismatch,
    #[error("entry {0} carries no usable expansion data")]
    MissingExpansion(&'static str),
    #[error("series evaluation failed: {0}")]
    Series(permclass_core::series::SeriesError),
}

/// `f64` value of an exact ratio of big integers, robust to operands far
/// outside the `f64` range (only the ratio has to fit).
pub fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if num.is_negative() != den.is_negative() {
        -1.0
    } else {
        1.0
    };
    let num = num.magnitude();
    let den = den.magnitude();
    let shift = 128i64 - (num.bits() as i64 - den.bits() as i64);
    let (n, d) = if shift >= 0 {
        (num << shift as u64, den.clone())
    } else {
        (num.clone(), den << (-shift) as u64)
    };
    let q = n / d;
    sign * q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    big_ratio_to_f64(q.numer(), q.denom())
}

pub fn surd_to_f64(s: &SurdValue) -> f64 {
    rational_to_f64(&s.rational) + rational_to_f64(&s.surd_coeff) * (s.radicand as f64).sqrt()
}

/// Natural log of a positive big integer, via its top mantissa bits.
pub fn ln_big(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    let shift = bits.saturating_sub(53);
    let top = (x >> shift).to_f64().expect("53-bit value fits");
    top.ln() + shift as f64 * core::f64::consts::LN_2
}

/// Binomial coefficient, exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// `Gamma(-alpha)` for the exponents that occur here: half-integers and
/// negative integers. The result is exact up to one factor of `sqrt(pi)`.
fn gamma_neg(alpha: &BigRational) -> Result<f64, AsymError> {
    let two = BigInt::from(2);
    let x = -alpha; // argument of Gamma
    if x.is_integer() {
        // Gamma(m) = (m-1)! for m >= 1; alpha was a negative integer
        let m = x.to_integer();
        if m < BigInt::one() {
            return Err(AsymError::UnsupportedExponent(alpha.clone()));
        }
        let mut acc = BigRational::one();
        let mut i = BigInt::one();
        while i < &m - 1 {
            i += 1;
            acc *= BigRational::from_integer(i.clone());
        }
        return Ok(rational_to_f64(&acc));
    }
    if x.denom() != &two {
        return Err(AsymError::UnsupportedExponent(alpha.clone()));
    }
    // walk the recurrence Gamma(y+1) = y Gamma(y) between x and 1/2
    let half = BigRational::new(BigInt::one(), two);
    let mut factor = BigRational::one();
    let mut y = half.clone();
    if x > half {
        while y < x {
            factor *= y.clone();
            y += BigRational::one();
        }
    } else {
        while y > x {
            y -= BigRational::one();
            factor /= y.clone();
        }
    }
    Ok(rational_to_f64(&factor) * core::f64::consts::PI.sqrt())
}

/// Correction coefficient `e_k(alpha)`, exact:
/// `sum_{l=k}^{2k} lambda[k][l] * prod_{j=1}^{l} (alpha + j)`.
pub fn correction_e_k(alpha: &BigRational, k: usize) -> BigRational {
    assert!(k >= 1);
    let kernel = correction_kernel(k, 2 * k);
    let mut acc = BigRational::zero();
    for l in k..=2 * k {
        let lam = kernel.coeff(k, l);
        if lam.is_zero() {
            continue;
        }
        let mut prod = BigRational::one();
        for j in 1..=l {
            prod *= alpha + BigRational::from_integer(BigInt::from(j as i64));
        }
        acc += lam * prod;
    }
    acc
}

/// A finite-`n` coefficient prediction. The value is carried as sign and
/// log-magnitude so comparisons survive past the `f64` range; `predicted`
/// is the plain product (possibly infinite).
#[derive(Clone, Debug)]
pub struct AsymptoticEstimate {
    pub n: u64,
    pub predicted: f64,
    pub sign: f64,
    /// `ln |predicted|`; `-inf` when the prediction is zero.
    pub ln_magnitude: f64,
    pub correction_order: usize,
    pub terms_included: usize,
    /// Terms with nonnegative integer exponents contribute nothing and are
    /// skipped.
    pub terms_skipped: usize,
}

/// Largest supported correction order; the kernel table is cheap to this
/// depth and nothing downstream asks for more.
pub const MAX_CORRECTION_ORDER: usize = 3;

/// Predicts `[z^n]` of a function expanded as `sum of terms` around its
/// dominant singularity at `z = rho`, with corrections up to `1/n^order`.
pub fn fo_predict(
    terms: &[PuiseuxTerm],
    rho: &BigRational,
    n: u64,
    order: usize,
) -> Result<AsymptoticEstimate, AsymError> {
    assert!(n >= 1);
    if order > MAX_CORRECTION_ORDER {
        return Err(AsymError::CorrectionOrderTooHigh(order));
    }
    let mut parts: Vec<(f64, f64)> = Vec::new(); // (sign, ln magnitude)
    let mut skipped = 0;
    let ln_inv_rho = -rational_to_f64(rho).ln();
    for term in terms {
        let alpha = &term.exponent;
        if alpha.is_integer() && !alpha.is_negative() {
            skipped += 1;
            continue;
        }
        let lambda = surd_to_f64(&term.amplitude);
        if lambda == 0.0 {
            continue;
        }
        let gamma = gamma_neg(alpha)?;
        // bracket 1 + sum e_k / n^k, exactly then to f64
        let mut bracket = BigRational::one();
        let nq = BigRational::from_integer(BigInt::from(n));
        let mut npow = BigRational::one();
        for k in 1..=order {
            npow *= &nq;
            bracket += correction_e_k(alpha, k) / &npow;
        }
        let front = lambda / gamma * rational_to_f64(&bracket);
        if front == 0.0 {
            continue;
        }
        let alpha_f = rational_to_f64(alpha);
        let ln_mag = front.abs().ln() + n as f64 * ln_inv_rho + (-alpha_f - 1.0) * (n as f64).ln();
        parts.push((front.signum(), ln_mag));
    }
    let (sign, ln_magnitude) = if parts.is_empty() {
        (0.0, f64::NEG_INFINITY)
    } else {
        let m = parts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let scaled: f64 = parts.iter().map(|(s, l)| s * (l - m).exp()).sum();
        (scaled.signum(), m + scaled.abs().ln())
    };
    Ok(AsymptoticEstimate {
        n,
        predicted: sign * ln_magnitude.exp(),
        sign,
        ln_magnitude,
        correction_order: order,
        terms_included: parts.len(),
        terms_skipped: skipped,
    })
}

/// Signed relative error of an estimate against an exact nonzero value,
/// computed in log space so it stays finite when the magnitudes do not fit
/// in `f64`.
pub fn relative_error(estimate: &AsymptoticEstimate, exact: &BigInt) -> f64 {
    if exact.is_zero() {
        return f64::INFINITY;
    }
    let exact_sign = if exact.is_negative() { -1.0 } else { 1.0 };
    let ratio =
        estimate.sign / exact_sign * (estimate.ln_magnitude - ln_big(exact.magnitude())).exp();
    ratio - 1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMethod {
    /// The last coefficient ratio, as is.
    Ratio,
    /// One Aitken step over geometrically spaced ratios, cancelling the
    /// leading `c/n` drift of the ratio sequence.
    Extrapolated,
}

impl GrowthMethod {
    pub fn parse(s: &str) -> Option<GrowthMethod> {
        match s.to_ascii_lowercase().as_str() {
            "ratio" | "raw" => Some(GrowthMethod::Ratio),
            "extrapolated" | "aitken" => Some(GrowthMethod::Extrapolated),
            _ => None,
        }
    }
}

/// Estimates `lim a_{n+1}/a_n` from exact coefficients.
pub fn growth_rate(coeffs: &[BigInt], method: GrowthMethod) -> Result<f64, AsymError> {
    const NEEDED: usize = 20;
    let last = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or(AsymError::TooFewTerms {
            needed: NEEDED,
            got: 0,
        })?;
    // length of the trailing run of nonzero coefficients
    let start = (0..=last)
        .rev()
        .take_while(|&i| !coeffs[i].is_zero())
        .last()
        .unwrap();
    let run = last - start + 1;
    if run < NEEDED {
        return Err(AsymError::TooFewTerms {
            needed: NEEDED,
            got: run,
        });
    }
    let ratio = |i: usize| big_ratio_to_f64(&coeffs[i + 1], &coeffs[i]);
    let m = last - 1; // largest index with a ratio
    match method {
        GrowthMethod::Ratio => Ok(ratio(m)),
        GrowthMethod::Extrapolated => {
            let i1 = (m / 4).max(start);
            let i2 = (m / 2).max(i1 + 1);
            let (x1, x2, x3) = (ratio(i1), ratio(i2), ratio(m));
            let denom = x3 - 2.0 * x2 + x1;
            if denom.abs() < 1e-12 * x3.abs().max(1.0) {
                return Ok(x3);
            }
            Ok(x3 - (x3 - x2) * (x3 - x2) / denom)
        }
    }
}

/// Smallest positive real root of a polynomial (constant term first), by
/// exact-sign bisection to well past 12 significant digits. The root is
/// assumed to lie in (0, 1).
pub fn dominant_root(poly: &[BigRational]) -> Result<f64, AsymError> {
    let eval = |z: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in poly.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    const GRID: i64 = 1024;
    let mut prev = BigRational::zero();
    let mut prev_sign = eval(&prev).signum();
    if prev_sign.is_zero() {
        // constant term zero: z = 0 is a root but not a positive one
        return Err(AsymError::NoSignChange);
    }
    let mut bracket = None;
    for k in 1..=GRID {
        let z = BigRational::new(BigInt::from(k), BigInt::from(GRID));
        let s = eval(&z).signum();
        if s.is_zero() {
            return Ok(rational_to_f64(&z));
        }
        if s != prev_sign {
            bracket = Some((prev, z));
            break;
        }
        prev = z;
        prev_sign = s;
    }
    let (mut lo, mut hi) = bracket.ok_or(AsymError::NoSignChange)?;
    let lo_sign = eval(&lo).signum();
    for _ in 0..50 {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let s = eval(&mid).signum();
        if s.is_zero() {
            return Ok(rational_to_f64(&mid));
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(rational_to_f64(
        &((&lo + &hi) / BigRational::from_integer(BigInt::from(2))),
    ))
}

/// Exact coefficient ratio `[z^n] num / [z^n] den` of two catalog entries,
/// evaluated in high precision. The entries must share their dominant
/// singularity when both record one.
pub fn ratio_limit(num: EntryId, den: EntryId, n: usize) -> Result<f64, AsymError> {
    let loc = |id: EntryId| catalog::entry(id).puiseux.map(|p| p.singularity);
    if let (Some(a), Some(b)) = (loc(num), loc(den)) {
        if a != b {
            return Err(AsymError::SingularityMismatch);
        }
    }
    let a = catalog::evaluate(num, n)
        .map_err(AsymError::Series)?
        .integer_coefficients()
        .map_err(AsymError::Series)?;
    let b = catalog::evaluate(den, n)
        .map_err(AsymError::Series)?
        .integer_coefficients()
        .map_err(AsymError::Series)?;
    if b[n].is_zero() {
        return Err(AsymError::ZeroCoefficient(n));
    }
    Ok(big_ratio_to_f64(&a[n], &b[n]))
}

/// Prediction-vs-exact report for one entry, as JSON.
pub fn asym_report(id: EntryId, n: usize, order: usize) -> Result<serde_json::Value, AsymError> {
    let entry = catalog::entry(id);
    let data = entry
        .puiseux
        .ok_or(AsymError::MissingExpansion(id.name()))?;
    if data.terms.is_empty() {
        return Err(AsymError::MissingExpansion(id.name()));
    }
    let SingularityLocation::Point(rho) = &data.singularity else {
        return Err(AsymError::MissingExpansion(id.name()));
    };
    let exact = catalog::evaluate(id, n)
        .map_err(AsymError::Series)?
        .integer_coefficients()
        .map_err(AsymError::Series)?
        .pop()
        .expect("coefficient 0..=n nonempty");
    let est = fo_predict(&data.terms, rho, n as u64, order)?;
    let rel = relative_error(&est, &exact);
    Ok(serde_json::json!({
        "entry": id.name(),
        "n": n,
        "exact": exact.to_string(),
        "predicted": est.predicted,
        "relative_error": rel,
        "K": order,
    }))
}
