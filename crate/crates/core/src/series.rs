//! Truncated exponential generating functions over exact rationals.
//!
//! A [`TruncatedEgf`] of order `N` stores the ordinary coefficients
//! `[x^n] F` for `n = 0..=N`. The counting sequence it encodes is
//! `a_n = n! * [x^n] F`, recovered by [`TruncatedEgf::extract_counts`].
//! Storing `[x^n]` rather than `a_n` keeps products as plain Cauchy
//! convolutions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coefficient, always held in lowest terms with a positive
/// denominator.
pub type Coefficient = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedEgf {
    coeffs: Vec<Coefficient>,
}

/// Wire form of an integral series: `{"order": N, "a": ["1", "1", "5", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgfJson {
    pub order: usize,
    pub a: Vec<String>,
}

pub(crate) fn factorials(max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for k in 1..=max {
        acc *= k;
        out.push(acc.clone());
    }
    out
}

impl TruncatedEgf {
    /// Builds a series from its `[x^n]` coefficients. At least one
    /// coefficient is required (order 0).
    pub fn from_coeffs(coeffs: Vec<Coefficient>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("a series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// Builds the EGF `sum a_n x^n / n!` of an integer sequence; the order is
    /// `counts.len() - 1`.
    pub fn from_counts<T: Into<BigInt> + Clone>(counts: &[T]) -> Result<Self> {
        let fact = factorials(counts.len().saturating_sub(1));
        let coeffs = counts
            .iter()
            .zip(&fact)
            .map(|(a, f)| BigRational::new(a.clone().into(), f.clone()))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Coefficient::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigInt::one())
    }

    pub fn constant(order: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Coefficient::from_integer(c.into());
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&Coefficient> {
        self.coeffs.get(n)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = Coefficient::from_integer(c.into());
        Self { coeffs: self.coeffs.iter().map(|a| a * &c).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut coeffs = vec![Coefficient::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// Multiplicative inverse up to the working order.
    pub fn reciprocal(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = f0.recip();
        let mut g: Vec<Coefficient> = Vec::with_capacity(self.coeffs.len());
        g.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = Coefficient::zero();
            for i in 1..=n {
                let fi = &self.coeffs[i];
                if !fi.is_zero() {
                    acc += fi * &g[n - i];
                }
            }
            g.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: g })
    }

    /// Returns `a_n = n! * [x^n]` for every `n`, failing on the first
    /// non-integral value.
    pub fn extract_counts(&self) -> Result<Vec<BigInt>> {
        let fact = factorials(self.order());
        self.coeffs
            .iter()
            .zip(fact)
            .enumerate()
            .map(|(index, (c, f))| {
                let scaled = c * Coefficient::from_integer(f);
                if scaled.is_integer() {
                    Ok(scaled.to_integer())
                } else {
                    Err(Error::NonIntegral { index, value: scaled.to_string() })
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<EgfJson> {
        let a = self.extract_counts()?.iter().map(BigInt::to_string).collect();
        Ok(EgfJson { order: self.order(), a })
    }

    pub fn from_json(json: &EgfJson) -> Result<Self> {
        if json.a.len() != json.order + 1 {
            return Err(Error::Usage(format!(
                "series JSON has order {} but {} coefficients",
                json.order,
                json.a.len()
            )));
        }
        let counts = json
            .a
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::Usage(format!("bad coefficient '{s}': {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_counts(&counts)
    }
}

/// Maclaurin series of `cos x`.
pub fn cos_egf(order: usize) -> TruncatedEgf {
    trig_egf(order, 0)
}

/// Maclaurin series of `sin x`.
pub fn sin_egf(order: usize) -> TruncatedEgf {
    trig_egf(order, 1)
}

// a_n cycles through (1, 0, -1, 0) for cos and (0, 1, 0, -1) for sin.
fn trig_egf(order: usize, phase: usize) -> TruncatedEgf {
    let fact = factorials(order);
    let coeffs = fact
        .into_iter()
        .enumerate()
        .map(|(n, f)| {
            let a: i32 = match (n + 4 - phase) % 4 {
                0 => 1,
                2 => -1,
                _ => 0,
            };
            BigRational::new(a.into(), f)
        })
        .collect();
    TruncatedEgf { coeffs }
}

/// `sec x = 1 / cos x`.
pub fn sec_egf(order: usize) -> TruncatedEgf {
    cos_egf(order).reciprocal().expect("cos has constant term 1")
}

/// `tan x = sin x * sec x`.
pub fn tan_egf(order: usize) -> TruncatedEgf {
    sin_egf(order).mul(&sec_egf(order)).expect("same order")
}

/// `sec x + tan x`, whose coefficients are the Euler numbers.
pub fn sec_plus_tan(order: usize) -> TruncatedEgf {
    sec_egf(order).add(&tan_egf(order)).expect("same order")
}

/// Closed forms of the four shifted refinement EGFs,
/// `sum_n R_{n+2} x^n / n!` for each refinement `R`.
#[derive(Debug, Clone)]
pub struct RefinementEgfs {
    /// `sec^2 x (sec x + tan x)`
    pub min_max: TruncatedEgf,
    /// `sec x tan x (sec x + tan x)`
    pub max_min: TruncatedEgf,
    /// `2 tan^2 x (sec x + tan x)`
    pub second_max_upper: TruncatedEgf,
    /// `sec x + 2 tan x`
    pub second_max_lower: TruncatedEgf,
}

impl RefinementEgfs {
    pub fn new(order: usize) -> Self {
        let sec = sec_egf(order);
        let tan = tan_egf(order);
        let both = sec.add(&tan).expect("same order");
        let mul = |a: &TruncatedEgf, b: &TruncatedEgf| a.mul(b).expect("same order");
        Self {
            min_max: mul(&mul(&sec, &sec), &both),
            max_min: mul(&mul(&sec, &tan), &both),
            second_max_upper: mul(&mul(&tan, &tan), &both).scale(2),
            second_max_lower: sec.add(&tan.scale(2)).expect("same order"),
        }
    }
}

/// Returns true when every coefficient is an integer multiple of `1/n!`.
pub fn is_integral(f: &TruncatedEgf) -> bool {
    f.extract_counts().is_ok()
}

/// Sign-aware gcd check used by tests to confirm canonical form.
pub fn is_canonical(c: &Coefficient) -> bool {
    c.denom().is_positive() && c.numer().gcd(c.denom()).is_one()
}
