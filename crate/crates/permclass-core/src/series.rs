//! Truncated formal power series with exact rational coefficients, plus the
//! bivariate kernel behind the transfer-theorem correction terms.
//!
//! A series of order `N` carries coefficients `c_0..=c_N`. Binary operations
//! insist on equal orders; callers shrink with [`PowerSeries::truncated`]
//! first when mixing precisions. Nothing here ever rounds: coefficients are
//! arbitrary-precision rationals throughout.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// Operands have different truncation orders.
    OrderMismatch { left: usize, right: usize },
    /// Divisor is zero up to the truncation order.
    ZeroDivisor,
    /// Divisor has a higher valuation than the dividend, so the quotient is
    /// not a power series.
    DivisionValuation { dividend: usize, divisor: usize },
    /// Square root needs a constant term that is the square of a rational.
    SqrtConstantTerm,
    /// A coefficient expected to be an integer is not.
    NonIntegerCoefficient { index: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::OrderMismatch { left, right } => {
                write!(f, "series order mismatch: {left} vs {right}")
            }
            SeriesError::ZeroDivisor => write!(f, "division by the zero series"),
            SeriesError::DivisionValuation { dividend, divisor } => write!(
                f,
                "divisor valuation {divisor} exceeds dividend valuation {dividend}"
            ),
            SeriesError::SqrtConstantTerm => {
                write!(f, "sqrt needs a constant term that is a rational square")
            }
            SeriesError::NonIntegerCoefficient { index } => {
                write!(f, "coefficient of z^{index} is not an integer")
            }
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A formal power series truncated at a fixed order.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries{:?}", self.coeffs)
    }
}

impl PowerSeries {
    pub fn zeros(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = PowerSeries::zeros(order);
        s.coeffs[0] = c;
        s
    }

    /// Polynomial with integer coefficients `p[0] + p[1] z + ...`, truncated
    /// or zero-padded to the requested order.
    pub fn from_integers(p: &[i64], order: usize) -> Self {
        let mut s = PowerSeries::zeros(order);
        for (i, &c) in p.iter().take(order + 1).enumerate() {
            s.coeffs[i] = rat(c);
        }
        s
    }

    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order());
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Zero-pads the high end. The added coefficients are *not* knowledge of
    /// the underlying function; this exists for iteration schemes that refine
    /// them afterwards.
    pub fn extended_to(&self, order: usize) -> Self {
        assert!(order >= self.order());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    fn check_order(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.order() != rhs.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order. Schoolbook; the orders
    /// used here never justify anything fancier.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (b, o) in rhs.coeffs[..=n - i].iter().zip(out[i..].iter_mut()) {
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self).expect("equal orders");
        }
        acc
    }

    /// Long division. When the divisor has valuation `v > 0` the dividend
    /// must be divisible by `z^v` and the quotient loses `v` orders of
    /// precision.
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        let vb = rhs.valuation().ok_or(SeriesError::ZeroDivisor)?;
        let n = self.order();
        if self.is_zero() {
            return Ok(PowerSeries::zeros(n - vb));
        }
        let va = self.valuation().unwrap();
        if va < vb {
            return Err(SeriesError::DivisionValuation {
                dividend: va,
                divisor: vb,
            });
        }
        let a = &self.coeffs[vb..];
        let b = &rhs.coeffs[vb..];
        let m = n - vb;
        let mut q = vec![BigRational::zero(); m + 1];
        for k in 0..=m {
            let mut acc = a[k].clone();
            for j in 1..=k {
                if !b[j].is_zero() && !q[k - j].is_zero() {
                    acc -= &b[j] * &q[k - j];
                }
            }
            q[k] = acc / &b[0];
        }
        Ok(PowerSeries { coeffs: q })
    }

    /// Multiplies by `z^k`, truncating at the existing order. Shifting past
    /// the order leaves the zero series.
    pub fn mul_zpow(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        if k <= n {
            coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        PowerSeries { coeffs }
    }

    /// Exact division by `z^k`; the low `k` coefficients must vanish and the
    /// order drops by `k`.
    pub fn div_zpow(&self, k: usize) -> Result<Self, SeriesError> {
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::DivisionValuation {
                dividend: self.valuation().unwrap_or(0),
                divisor: k,
            });
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Square root by Newton iteration `y <- (y + a/y)/2`, doubling the
    /// correct order each step. The branch with positive constant term is
    /// returned; the constant term must be the square of a rational.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || c0.is_negative() {
            return Err(SeriesError::SqrtConstantTerm);
        }
        let y0 = sqrt_rational(c0).ok_or(SeriesError::SqrtConstantTerm)?;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let n = self.order();
        let mut y = PowerSeries::constant(y0, 0);
        while y.order() < n {
            let next = (2 * y.order() + 1).min(n);
            let y_ext = y.extended_to(next);
            let q = self.truncated(next).div(&y_ext)?;
            y = y_ext.add(&q)?.scale(&half);
        }
        Ok(y)
    }

    /// The Catalan generating function `t = (1 - sqrt(1-4z))/(2z)`, the root
    /// of `1 - t + z t^2 = 0` with `t(0) = 1`.
    pub fn catalan(order: usize) -> Self {
        let s = PowerSeries::from_integers(&[1, -4], order + 1)
            .sqrt()
            .expect("1-4z has a square root");
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        PowerSeries::one(order + 1)
            .sub(&s)
            .expect("equal orders")
            .div_zpow(1)
            .expect("numerator is divisible by z")
            .scale(&half)
    }

    /// All coefficients as integers, or the index of the first offender.
    pub fn integer_coefficients(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegerCoefficient { index: i })
                }
            })
            .collect()
    }
}

/// Exact square root of a nonnegative rational, when it is one.
fn sqrt_rational(c: &BigRational) -> Option<BigRational> {
    let num = c.numer().magnitude().sqrt();
    let den = c.denom().magnitude().sqrt();
    if &(&num * &num) == c.numer().magnitude() && &(&den * &den) == c.denom().magnitude() {
        Some(BigRational::new(num.into(), den.into()))
    } else {
        None
    }
}

/// A bivariate series over `(nu, t)` with rectangular truncation, used only
/// for the coefficient table `lambda[k][l]` of the singularity-analysis
/// correction kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    nu_order: usize,
    t_order: usize,
    coeffs: Vec<Vec<BigRational>>,
}

impl BivariateSeries {
    pub fn zeros(nu_order: usize, t_order: usize) -> Self {
        BivariateSeries {
            nu_order,
            t_order,
            coeffs: vec![vec![BigRational::zero(); t_order + 1]; nu_order + 1],
        }
    }

    pub fn nu_order(&self) -> usize {
        self.nu_order
    }

    pub fn t_order(&self) -> usize {
        self.t_order
    }

    /// The coefficient of `nu^k t^l`.
    pub fn coeff(&self, k: usize, l: usize) -> &BigRational {
        &self.coeffs[k][l]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!((self.nu_order, self.t_order), (rhs.nu_order, rhs.t_order));
        let mut out = BivariateSeries::zeros(self.nu_order, self.t_order);
        for k1 in 0..=self.nu_order {
            for l1 in 0..=self.t_order {
                let a = &self.coeffs[k1][l1];
                if a.is_zero() {
                    continue;
                }
                for k2 in 0..=self.nu_order - k1 {
                    for l2 in 0..=self.t_order - l1 {
                        let b = &rhs.coeffs[k2][l2];
                        if !b.is_zero() {
                            out.coeffs[k1 + k2][l1 + l2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.nu_order, self.t_order), (rhs.nu_order, rhs.t_order));
        let mut out = self.clone();
        for k in 0..=self.nu_order {
            for l in 0..=self.t_order {
                out.coeffs[k][l] += &rhs.coeffs[k][l];
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for v in row {
                *v *= c;
            }
        }
        out
    }
}

/// The correction kernel `e^t (1 + nu t)^(-1-1/nu)` as an exact bivariate
/// table `lambda[k][l] = [nu^k t^l]`.
///
/// Writing the exponent as `E = t - (1 + 1/nu) log(1 + nu t)` and expanding
/// the logarithm, every monomial of `E` carries at least one `nu` and at
/// least as many `t` as `nu` (the pure-`t` parts cancel). The kernel is then
/// `exp(E) = sum_{j<=K} E^j/j!` exactly within the truncation rectangle, and
/// `lambda[k][l] = 0` whenever `l < k`.
pub fn correction_kernel(nu_order: usize, t_order: usize) -> BivariateSeries {
    let mut exponent = BivariateSeries::zeros(nu_order, t_order);
    for k in 1..=nu_order {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if k <= t_order {
            // from -log(1+nu t): (-1)^k / k * nu^k t^k
            exponent.coeffs[k][k] = BigRational::new(BigInt::from(sign), BigInt::from(k as i64));
        }
        if k < t_order {
            // from -(1/nu) log(1+nu t): (-1)^k / (k+1) * nu^k t^(k+1)
            exponent.coeffs[k][k + 1] =
                BigRational::new(BigInt::from(-sign), BigInt::from(k as i64 + 1));
        }
    }
    let mut kernel = BivariateSeries::zeros(nu_order, t_order);
    kernel.coeffs[0][0] = BigRational::one();
    let mut term = BivariateSeries::zeros(nu_order, t_order);
    term.coeffs[0][0] = BigRational::one();
    for j in 1..=nu_order {
        term = term.mul(&exponent);
        kernel =
            kernel.add(&term.scale(&BigRational::new(BigInt::one(), factorial(j as u64).into())));
    }
    kernel
}

fn factorial(n: u64) -> num_bigint::BigUint {
    let mut acc = num_bigint::BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                let v: BigInt = c.to_integer();
                i64::try_from(v).unwrap()
            })
            .collect()
    }

    #[test]
    fn ring_basics() {
        let a = PowerSeries::from_integers(&[1, 1], 4);
        let b = PowerSeries::from_integers(&[1, -1], 4);
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 0, -1, 0, 0]);
        let zero = PowerSeries::zeros(4);
        assert_eq!(a.add(&zero).unwrap(), a);
        assert!(matches!(
            a.add(&PowerSeries::zeros(3)),
            Err(SeriesError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn geometric_division() {
        let one = PowerSeries::one(6);
        let den = PowerSeries::from_integers(&[1, -1], 6);
        assert_eq!(ints(&one.div(&den).unwrap()), vec![1; 7]);
    }

    #[test]
    fn division_with_valuation() {
        // (z - 2z^2 + 2z^3)/(1 - 4z + 5z^2 - 3z^3): nonempty Av(4123,231)
        let num = PowerSeries::from_integers(&[0, 1, -2, 2], 5);
        let den = PowerSeries::from_integers(&[1, -4, 5, -3], 5);
        assert_eq!(ints(&num.div(&den).unwrap()), vec![0, 1, 2, 5, 13, 33]);

        let one = PowerSeries::one(5);
        let z = PowerSeries::from_integers(&[0, 1], 5);
        assert!(matches!(
            one.div(&z),
            Err(SeriesError::DivisionValuation { .. })
        ));
        assert!(matches!(
            one.div(&PowerSeries::zeros(5)),
            Err(SeriesError::ZeroDivisor)
        ));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(ints(&PowerSeries::one(3).sqrt().unwrap()), vec![1, 0, 0, 0]);
        let s = PowerSeries::from_integers(&[1, -4], 5).sqrt().unwrap();
        assert_eq!(ints(&s), vec![1, -2, -2, -4, -10, -28]);
        assert_eq!(s.mul(&s).unwrap(), PowerSeries::from_integers(&[1, -4], 5));

        let s = PowerSeries::from_integers(&[1, -6, 5], 6).sqrt().unwrap();
        assert_eq!(*s.coeff(0), q(1, 1));
        assert_eq!(*s.coeff(1), q(-3, 1));
        assert_eq!(
            s.mul(&s).unwrap(),
            PowerSeries::from_integers(&[1, -6, 5], 6)
        );

        assert!(PowerSeries::zeros(3).sqrt().is_err());
        assert!(PowerSeries::from_integers(&[2], 3).sqrt().is_err());
    }

    #[test]
    fn catalan_identities() {
        let n = 30;
        let t = PowerSeries::catalan(n);
        assert_eq!(
            ints(&t.truncated(5)),
            vec![1, 1, 2, 5, 14, 42][..6].to_vec()
        );
        // defining identity 1 - t + z t^2 = 0, exactly
        let residual = PowerSeries::one(n)
            .sub(&t)
            .unwrap()
            .add(&t.mul(&t).unwrap().mul_zpow(1))
            .unwrap();
        assert!(residual.is_zero());
        // 1/(1-tz) = t
        let inv = PowerSeries::one(n)
            .div(&PowerSeries::one(n).sub(&t.mul_zpow(1)).unwrap())
            .unwrap();
        assert_eq!(inv, t);
        // t^2 = shifted Catalan numbers
        assert_eq!(
            ints(&t.mul(&t).unwrap().truncated(4)),
            vec![1, 2, 5, 14, 42]
        );
    }

    #[test]
    fn zpow_shifts() {
        let t = PowerSeries::from_integers(&[3, 1, 4], 4);
        assert_eq!(ints(&t.mul_zpow(2)), vec![0, 0, 3, 1, 4]);
        let back = t.mul_zpow(2).div_zpow(2).unwrap();
        assert_eq!(ints(&back), vec![3, 1, 4]);
        assert!(t.div_zpow(1).is_err());
        assert!(t.mul_zpow(5).is_zero());
        assert!(PowerSeries::one(0).mul_zpow(1).is_zero());
    }

    #[test]
    fn kernel_table() {
        let k = correction_kernel(3, 7);
        assert_eq!(*k.coeff(0, 0), q(1, 1));
        // every nu carries at least one t
        for kk in 0..=3 {
            for ll in 0..kk {
                assert!(k.coeff(kk, ll).is_zero(), "lambda[{kk}][{ll}] nonzero");
            }
        }
        assert_eq!(*k.coeff(1, 1), q(-1, 1));
        assert_eq!(*k.coeff(1, 2), q(1, 2));
        assert_eq!(*k.coeff(2, 2), q(1, 1));
        assert_eq!(*k.coeff(2, 3), q(-5, 6));
        assert_eq!(*k.coeff(2, 4), q(1, 8));
    }
}
