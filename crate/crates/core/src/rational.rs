//! Exact rationals with the p-adic valuation and absolute value.
//!
//! Absolute values are never materialised as floats: [`UltraNorm`] keeps the
//! exponent of `p` symbolically so comparisons stay exact at any valuation.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::Error;

/// Scalar field element. `BigRational` keeps itself in lowest terms with a
/// positive denominator after every operation.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A prime number, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prime {
    value: u64,
    big: BigInt,
}

impl Prime {
    pub fn new(value: u64) -> Result<Self, Error> {
        if !is_prime(value) {
            return Err(Error::NotPrime(value));
        }
        Ok(Prime {
            value,
            big: BigInt::from(value),
        })
    }

    pub fn get(&self) -> u64 {
        self.value
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.big
    }

    /// The exact rational `p^e`.
    pub fn pow(&self, e: i64) -> Rational {
        let magnitude = num_traits::pow(self.big.clone(), e.unsigned_abs() as usize);
        if e >= 0 {
            Rational::from_integer(magnitude)
        } else {
            Rational::new(BigInt::one(), magnitude)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of u64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation; `Infinite` sorts above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// Number of times `p` divides the nonzero integer `n`.
fn multiplicity(n: &BigInt, p: &BigInt) -> i64 {
    let mut count = 0;
    let mut current = n.clone();
    loop {
        let (q, r) = current.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        current = q;
        count += 1;
    }
}

pub fn valuation(x: &Rational, p: &Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(
        multiplicity(x.numer(), p.as_bigint()) - multiplicity(x.denom(), p.as_bigint()),
    )
}

/// Symbolic p-adic absolute value: `Zero`, or `Power(e)` standing for `p^e`.
///
/// The derived ordering is the ordering of the real numbers represented:
/// `Zero` is below every power and powers compare by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UltraNorm {
    Zero,
    Power(i64),
}

impl UltraNorm {
    pub const ONE: UltraNorm = UltraNorm::Power(0);

    pub fn is_zero(self) -> bool {
        self == UltraNorm::Zero
    }

    pub fn exponent(self) -> Option<i64> {
        match self {
            UltraNorm::Zero => None,
            UltraNorm::Power(e) => Some(e),
        }
    }

    pub fn to_rational(self, p: &Prime) -> Rational {
        ultranorm_to_rational(self, p)
    }

    /// Renders as `p^e` with the concrete prime, or `0`.
    pub fn render(self, p: &Prime) -> String {
        match self {
            UltraNorm::Zero => "0".to_string(),
            UltraNorm::Power(e) => format!("{}^{}", p.get(), e),
        }
    }
}

impl Mul for UltraNorm {
    type Output = UltraNorm;

    // p^a · p^b = p^(a+b).
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: UltraNorm) -> UltraNorm {
        match (self, rhs) {
            (UltraNorm::Power(a), UltraNorm::Power(b)) => UltraNorm::Power(a + b),
            _ => UltraNorm::Zero,
        }
    }
}

/// Maximum of a (possibly empty) family of norms; the empty max is `Zero`.
pub fn max_norm<I: IntoIterator<Item = UltraNorm>>(norms: I) -> UltraNorm {
    norms.into_iter().max().unwrap_or(UltraNorm::Zero)
}

pub fn padic_abs(x: &Rational, p: &Prime) -> UltraNorm {
    match valuation(x, p) {
        Valuation::Infinite => UltraNorm::Zero,
        Valuation::Finite(v) => UltraNorm::Power(-v),
    }
}

pub fn ultranorm_to_rational(n: UltraNorm, p: &Prime) -> Rational {
    match n {
        UltraNorm::Zero => Rational::zero(),
        UltraNorm::Power(e) => p.pow(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty fraction")]
    Empty,
    #[error("invalid fraction {0:?}: expected [-]digits or [-]digits/digits")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `"num/den"` or `"num"`; a single leading minus is allowed on the
/// numerator only.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_str.strip_prefix('-').unwrap_or(num_str);
    if !all_digits(digits) {
        return Err(malformed());
    }
    let num = BigInt::from_str(num_str).map_err(|_| malformed())?;
    let den = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if !all_digits(d) {
                return Err(malformed());
            }
            BigInt::from_str(d).map_err(|_| malformed())?
        }
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"num/den"`, or `"num"` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `x` scaled by a power of `p` so that its absolute value is exactly 1.
/// Zero is returned unchanged.
pub fn unit_part(x: &Rational, p: &Prime) -> Rational {
    match valuation(x, p) {
        Valuation::Infinite => x.clone(),
        Valuation::Finite(v) => x * p.pow(-v),
    }
}
