//! Exact arithmetic in the golden-ratio field Q(√5).
//!
//! Every scalar in this crate is a [`GoldenRational`]: a value (p + q·τ)/d
//! with τ = (1+√5)/2 the golden mean and p, q, d exact big integers. The
//! subring with d = 1 is the Dirichlet ring Z[τ] = Z + τZ, the coordinate
//! ring of the Fibonacci chains. Comparison and floor are computed by sign
//! analysis and integer square roots, never through floating point.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Errors produced when parsing a golden-rational literal.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseGoldenError {
    #[error("empty golden-rational literal")]
    Empty,
    #[error("invalid golden-rational literal `{0}`")]
    Invalid(String),
    #[error("float literals are rejected, use exact rationals: `{0}`")]
    Float(String),
    #[error("denominator must be a positive integer in `{0}`")]
    BadDenominator(String),
}

/// An element (p + q·τ)/d of Q(√5), kept in canonical form:
/// d > 0, gcd(|p|, |q|, d) = 1, and zero is (0, 0, 1).
///
/// Equality is structural; because canonical forms are unique this agrees
/// with equality of the real values. The `Ord` impl is the total order of
/// the real embedding τ ≈ 1.618.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenRational {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl GoldenRational {
    /// Builds (p + q·τ)/d and reduces it to canonical form.
    ///
    /// Panics if `d` is zero.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        let mut value = GoldenRational {
            p: p.into(),
            q: q.into(),
            d: d.into(),
        };
        value.canonicalize();
        value
    }

    /// The Dirichlet integer a + b·τ.
    pub fn dirichlet(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self::new(a, b, 1)
    }

    pub fn zero() -> Self {
        Self::dirichlet(0, 0)
    }

    pub fn one() -> Self {
        Self::dirichlet(1, 0)
    }

    /// τ itself.
    pub fn tau() -> Self {
        Self::dirichlet(0, 1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::dirichlet(n, 0)
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Self::new(r.numer().clone(), BigInt::zero(), r.denom().clone())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// True when the value lies in the Dirichlet ring Z[τ] (d = 1).
    pub fn is_dirichlet_integer(&self) -> bool {
        self.d.is_one()
    }

    /// True when the value is rational (no τ component).
    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// True when the value is an ordinary integer.
    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.d.is_one()
    }

    fn canonicalize(&mut self) {
        if self.d.is_zero() {
            panic!("GoldenRational denominator must be nonzero");
        }
        if self.d.is_negative() {
            self.p = -std::mem::take(&mut self.p);
            self.q = -std::mem::take(&mut self.q);
            self.d = -std::mem::take(&mut self.d);
        }
        if self.p.is_zero() && self.q.is_zero() {
            self.d = BigInt::one();
            return;
        }
        let g = self.p.gcd(&self.q).gcd(&self.d);
        if !g.is_one() {
            self.p = &self.p / &g;
            self.q = &self.q / &g;
            self.d = &self.d / &g;
        }
    }

    /// The Galois star map τ ↦ 1 − τ: ((p + q) − q·τ)/d.
    ///
    /// It is an involutive ring homomorphism; on chain coordinates it maps
    /// parallel-space positions to perpendicular-space (window) positions.
    pub fn star(&self) -> Self {
        Self::new(&self.p + &self.q, -self.q.clone(), self.d.clone())
    }

    /// Sign of the real value, computed exactly.
    ///
    /// Writing x = ((2p + q) + q√5) / (2d) with d > 0, the sign is that of
    /// n + m√5 with n = 2p + q, m = q; mixed-sign cases reduce to comparing
    /// n² with 5m².
    pub fn sign(&self) -> Ordering {
        let n = 2 * &self.p + &self.q;
        let m = &self.q;
        match (n.sign(), m.sign()) {
            (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => Ordering::Equal,
            (num_bigint::Sign::Minus, num_bigint::Sign::Minus)
            | (num_bigint::Sign::Minus, num_bigint::Sign::NoSign)
            | (num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => Ordering::Less,
            (num_bigint::Sign::Plus, num_bigint::Sign::Plus)
            | (num_bigint::Sign::Plus, num_bigint::Sign::NoSign)
            | (num_bigint::Sign::NoSign, num_bigint::Sign::Plus) => Ordering::Greater,
            // n > 0, m < 0: positive iff n² > 5m²; 5m² = n² is impossible for m ≠ 0.
            (num_bigint::Sign::Plus, num_bigint::Sign::Minus) => {
                (&n * &n).cmp(&(5 * m * m))
            }
            // n < 0, m > 0: positive iff 5m² > n².
            (num_bigint::Sign::Minus, num_bigint::Sign::Plus) => {
                (5 * m * m).cmp(&(&n * &n))
            }
        }
    }

    /// Greatest integer k with k ≤ self, exact.
    ///
    /// Uses ⌊q√5⌋ = isqrt(5q²) with a −1 correction for q < 0 (5q² is never
    /// a perfect square for q ≠ 0), then brackets the candidate against the
    /// value by exact comparison.
    pub fn floor(&self) -> BigInt {
        let n = 2 * &self.p + &self.q;
        let m = &self.q;
        let den = 2 * &self.d;
        let root = (5 * m * m).sqrt();
        let m_sqrt5_floor = if m.is_negative() { -root - 1 } else { root };
        let mut k = (&n + m_sqrt5_floor).div_floor(&den);
        // Candidate can be off by one; fix up with exact comparisons.
        while *self < GoldenRational::from_int(k.clone()) {
            k -= 1;
        }
        while *self >= GoldenRational::from_int(&k + 1) {
            k += 1;
        }
        k
    }

    /// Least integer k with k ≥ self, exact.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Multiplicative inverse, or `None` for zero.
    ///
    /// (p + qτ)⁻¹ uses the rational norm (p + qτ)(p + q − qτ) = p² + pq − q².
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.p * &self.p + &self.p * &self.q - &self.q * &self.q;
        Some(Self::new(
            &self.d * (&self.p + &self.q),
            &self.d * -&self.q,
            norm,
        ))
    }

    /// Renders with the given symbol for τ: "a", "bτ", "a+bτ", "a-bτ",
    /// with a "/d" suffix when d > 1.
    pub fn format_tau(&self, tau: &str) -> String {
        let mut out = String::new();
        if self.q.is_zero() {
            out.push_str(&self.p.to_string());
        } else {
            if !self.p.is_zero() {
                out.push_str(&self.p.to_string());
                if self.q.is_positive() {
                    out.push('+');
                }
            }
            if self.q.is_one() {
                // coefficient 1 is omitted
            } else if (-&self.q).is_one() {
                out.push('-');
            } else {
                out.push_str(&self.q.to_string());
            }
            out.push_str(tau);
        }
        if !self.d.is_one() {
            out.push('/');
            out.push_str(&self.d.to_string());
        }
        out
    }

    /// Canonical ASCII rendering, with "t" for τ.
    pub fn to_ascii_string(&self) -> String {
        self.format_tau("t")
    }
}

impl fmt::Display for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_tau("τ"))
    }
}

impl fmt::Debug for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoldenRational({})", self)
    }
}

impl PartialOrd for GoldenRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self - other).sign()
    }
}

impl Neg for &GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational::new(-&self.p, -&self.q, self.d.clone())
    }
}

impl Neg for GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        -&self
    }
}

impl Add for &GoldenRational {
    type Output = GoldenRational;
    fn add(self, rhs: &GoldenRational) -> GoldenRational {
        GoldenRational::new(
            &self.p * &rhs.d + &rhs.p * &self.d,
            &self.q * &rhs.d + &rhs.q * &self.d,
            &self.d * &rhs.d,
        )
    }
}

impl Sub for &GoldenRational {
    type Output = GoldenRational;
    fn sub(self, rhs: &GoldenRational) -> GoldenRational {
        GoldenRational::new(
            &self.p * &rhs.d - &rhs.p * &self.d,
            &self.q * &rhs.d - &rhs.q * &self.d,
            &self.d * &rhs.d,
        )
    }
}

impl Mul for &GoldenRational {
    type Output = GoldenRational;
    fn mul(self, rhs: &GoldenRational) -> GoldenRational {
        // (a + bτ)(c + eτ) = ac + be + (ae + bc + be)τ, by τ² = 1 + τ.
        let be = &self.q * &rhs.q;
        GoldenRational::new(
            &self.p * &rhs.p + &be,
            &self.p * &rhs.q + &self.q * &rhs.p + &be,
            &self.d * &rhs.d,
        )
    }
}

impl Div for &GoldenRational {
    type Output = GoldenRational;
    fn div(self, rhs: &GoldenRational) -> GoldenRational {
        let inv = rhs.inv().expect("division by zero GoldenRational");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($($op:ident :: $method:ident),*) => {$(
        impl $op for GoldenRational {
            type Output = GoldenRational;
            fn $method(self, rhs: GoldenRational) -> GoldenRational {
                (&self).$method(&rhs)
            }
        }
        impl $op<&GoldenRational> for GoldenRational {
            type Output = GoldenRational;
            fn $method(self, rhs: &GoldenRational) -> GoldenRational {
                (&self).$method(rhs)
            }
        }
        impl $op<GoldenRational> for &GoldenRational {
            type Output = GoldenRational;
            fn $method(self, rhs: GoldenRational) -> GoldenRational {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl FromStr for GoldenRational {
    type Err = ParseGoldenError;

    /// Parses the canonical grammar: optional sign, integer part, optional
    /// "±kτ" (τ may be written "t"), optional "/d". A surrounding pair of
    /// parentheses around the numerator is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let raw = s.trim();
        if raw.is_empty() {
            return Err(ParseGoldenError::Empty);
        }
        if raw.contains('.') {
            return Err(ParseGoldenError::Float(raw.to_string()));
        }
        let (numer, denom) = match raw.split_once('/') {
            None => (raw, None),
            Some((n, d)) => (n, Some(d)),
        };
        let d = match denom {
            None => BigInt::one(),
            Some(d) => {
                let d = d.trim();
                let value: BigInt = d
                    .parse()
                    .map_err(|_| ParseGoldenError::BadDenominator(raw.to_string()))?;
                if !value.is_positive() {
                    return Err(ParseGoldenError::BadDenominator(raw.to_string()));
                }
                value
            }
        };
        let mut numer = numer.trim();
        if let Some(stripped) = numer.strip_prefix('(') {
            numer = stripped
                .strip_suffix(')')
                .ok_or_else(|| ParseGoldenError::Invalid(raw.to_string()))?
                .trim();
        }
        let invalid = || ParseGoldenError::Invalid(raw.to_string());

        let mut p: Option<BigInt> = None;
        let mut q: Option<BigInt> = None;
        let chars: Vec<char> = numer.chars().collect();
        let mut i = 0;
        let mut first = true;
        while i < chars.len() {
            let mut sign = BigInt::one();
            match chars[i] {
                '+' => i += 1,
                '-' => {
                    sign = -sign;
                    i += 1;
                }
                _ if first => {}
                _ => return Err(invalid()),
            }
            first = false;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let is_tau = i < chars.len() && (chars[i] == 'τ' || chars[i] == 't');
            if is_tau {
                i += 1;
                let coeff = if digits.is_empty() {
                    BigInt::one()
                } else {
                    digits.parse().map_err(|_| invalid())?
                };
                if q.replace(sign * coeff).is_some() {
                    return Err(invalid());
                }
            } else {
                if digits.is_empty() {
                    return Err(invalid());
                }
                let value: BigInt = digits.parse().map_err(|_| invalid())?;
                if p.replace(sign * value).is_some() {
                    return Err(invalid());
                }
            }
        }
        if p.is_none() && q.is_none() {
            return Err(invalid());
        }
        Ok(GoldenRational::new(
            p.unwrap_or_else(BigInt::zero),
            q.unwrap_or_else(BigInt::zero),
            d,
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct GoldenRepr {
    p: String,
    q: String,
    d: String,
}

impl Serialize for GoldenRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GoldenRepr {
            p: self.p.to_string(),
            q: self.q.to_string(),
            d: self.d.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GoldenRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GoldenRepr::deserialize(deserializer)?;
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| D::Error::custom(format!("invalid integer `{s}`")))
        };
        let d = parse(&repr.d)?;
        if !d.is_positive() {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(GoldenRational::new(parse(&repr.p)?, parse(&repr.q)?, d))
    }
}

/// Parses an exact rational "a" or "a/b"; float literals are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseGoldenError> {
    let raw = s.trim();
    if raw.is_empty() {
        return Err(ParseGoldenError::Empty);
    }
    if raw.contains('.') {
        return Err(ParseGoldenError::Float(raw.to_string()));
    }
    let (numer, denom) = match raw.split_once('/') {
        None => (raw, None),
        Some((n, d)) => (n, Some(d)),
    };
    let n: BigInt = numer
        .trim()
        .parse()
        .map_err(|_| ParseGoldenError::Invalid(raw.to_string()))?;
    let d: BigInt = match denom {
        None => BigInt::one(),
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| ParseGoldenError::Invalid(raw.to_string()))?,
    };
    if d.is_zero() {
        return Err(ParseGoldenError::BadDenominator(raw.to_string()));
    }
    Ok(BigRational::new(n, d))
}

/// Renders a rational as "a" or "a/b".
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GoldenRational {
        s.parse().unwrap()
    }

    #[test]
    fn addition_is_componentwise() {
        assert_eq!(g("1+τ") + g("1+2τ"), g("2+3τ"));
        let x = g("-3+5τ/7");
        assert_eq!(&x + &GoldenRational::zero(), x);
        assert_eq!(g("1/2") + g("τ/2"), g("1+τ/2"));
    }

    #[test]
    fn multiplication_reduces_tau_squared() {
        assert_eq!(&GoldenRational::tau() * &GoldenRational::tau(), g("1+τ"));
        // τ²·1 − τ·(1+τ) = −τ, the quasiaddition 1 ⊢ (1+τ).
        let tau_sq = g("1+τ");
        assert_eq!(tau_sq.clone() * g("1") - GoldenRational::tau() * g("1+τ"), g("-τ"));
        assert_eq!(g("1-τ") * g("1-τ"), g("2-τ"));
    }

    #[test]
    fn star_substitutes_one_minus_tau() {
        assert_eq!(g("3+4τ").star(), g("7-4τ"));
        assert_eq!(g("-1-3τ").star(), g("-4+3τ"));
        let x = g("5-7τ/3");
        assert_eq!(x.star().star(), x);
    }

    #[test]
    fn compare_agrees_with_real_embedding() {
        assert!(GoldenRational::tau() > GoldenRational::one());
        assert!(g("1-τ") < GoldenRational::zero());
        assert!(g("2-τ") < g("1/2"));
    }

    #[test]
    fn floor_handles_negative_irrational_parts() {
        assert_eq!(g("5-4τ").floor(), BigInt::from(-2));
        assert_eq!(g("-1+τ").floor(), BigInt::from(0));
        assert_eq!(g("1-τ").floor(), BigInt::from(-1));
        assert_eq!(g("-3").floor(), BigInt::from(-3));
        assert_eq!(g("7/2").floor(), BigInt::from(3));
        assert_eq!(g("-7/2").floor(), BigInt::from(-4));
    }

    #[test]
    fn ceil_complements_floor() {
        assert_eq!(g("1-τ").ceil(), BigInt::from(0));
        assert_eq!(g("5-4τ").ceil(), BigInt::from(-1));
        assert_eq!(g("4").ceil(), BigInt::from(4));
    }

    #[test]
    fn canonical_form_is_reduced() {
        assert_eq!(GoldenRational::new(2, 4, 6), GoldenRational::new(1, 2, 3));
        assert_eq!(GoldenRational::new(1, 0, -2), GoldenRational::new(-1, 0, 2));
        assert_eq!(GoldenRational::new(0, 0, 17), GoldenRational::zero());
    }

    #[test]
    fn rendering_round_trips() {
        for s in [
            "0", "1", "-2", "τ", "-τ", "2τ", "-3τ", "1+τ", "1-2τ", "-1-3τ", "1/2", "τ/2",
            "1+τ/2", "5-4τ/3",
        ] {
            let x = g(s);
            assert_eq!(x.to_string(), s);
            assert_eq!(x.to_ascii_string().parse::<GoldenRational>().unwrap(), x);
        }
        assert_eq!(g("t"), GoldenRational::tau());
        assert_eq!(g("(1+2t)/3"), GoldenRational::new(1, 2, 3));
    }

    #[test]
    fn parse_rejects_floats_and_garbage() {
        assert!(matches!(
            "0.5".parse::<GoldenRational>(),
            Err(ParseGoldenError::Float(_))
        ));
        assert!("".parse::<GoldenRational>().is_err());
        assert!("1+".parse::<GoldenRational>().is_err());
        assert!("1+2τ+3".parse::<GoldenRational>().is_err());
        assert!("x".parse::<GoldenRational>().is_err());
        assert!("1/0".parse::<GoldenRational>().is_err());
        assert!(parse_rational("0.25").is_err());
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
    }

    #[test]
    fn inverse_multiplies_to_one() {
        for s in ["1", "-2", "τ", "1-τ", "3+5τ/7"] {
            let x = g(s);
            let inv = x.inv().unwrap();
            assert_eq!(x * inv, GoldenRational::one());
        }
        assert!(GoldenRational::zero().inv().is_none());
    }
}
