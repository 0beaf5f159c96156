//! Exact numbers of the form `r · √t · π^(a/2)`.
//!
//! Every closed-form spreading quantity of the Hermite family factors into a
//! rational `r`, a single squarefree radicand `t` and a half-integer power of
//! π. [`ExactReal`] keeps that shape canonical, so structural equality is value
//! equality.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::mp::{Mp, Real};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot add values of different kinds: sqrt({lhs_radicand})*pi^({lhs_pi}/2) vs sqrt({rhs_radicand})*pi^({rhs_pi}/2)")]
    KindMismatch {
        lhs_radicand: BigUint,
        lhs_pi: i32,
        rhs_radicand: BigUint,
        rhs_pi: i32,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative rational")]
    NegativeRadicand,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed exact value `{0}`")]
pub struct ParseExactError(pub String);

/// Canonical `rational · √radicand · π^(pi_half_exp/2)`.
///
/// Invariants: `radicand` is squarefree and at least 1; zero is stored as
/// `0 · √1 · π^0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactReal {
    rational: BigRational,
    radicand: BigUint,
    pi_half_exp: i32,
}

impl ExactReal {
    /// Builds the canonical form of `rational · √radicand · π^(pi_half_exp/2)`.
    ///
    /// # Panics
    /// If `radicand` is zero.
    pub fn normalize(rational: BigRational, radicand: BigUint, pi_half_exp: i32) -> Self {
        assert!(!radicand.is_zero(), "radicand must be positive");
        if rational.is_zero() {
            return ExactReal::zero();
        }
        let (square_root, free) = split_square(&radicand);
        ExactReal {
            rational: rational * BigRational::from_integer(BigInt::from(square_root)),
            radicand: free,
            pi_half_exp,
        }
    }

    pub fn zero() -> Self {
        ExactReal {
            rational: BigRational::zero(),
            radicand: BigUint::one(),
            pi_half_exp: 0,
        }
    }

    pub fn one() -> Self {
        ExactReal::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactReal::normalize(r, BigUint::one(), 0)
    }

    pub fn from_integer(i: i64) -> Self {
        ExactReal::from_rational(BigRational::from_integer(BigInt::from(i)))
    }

    /// `π^(a/2)`.
    pub fn pi_pow_half(a: i32) -> Self {
        ExactReal::normalize(BigRational::one(), BigUint::one(), a)
    }

    /// `√r` for a nonnegative rational `r = p/q`, stored as `(1/q)·√(pq)`.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self, ExactError> {
        if r.is_negative() {
            return Err(ExactError::NegativeRadicand);
        }
        if r.is_zero() {
            return Ok(ExactReal::zero());
        }
        let p = r.numer().magnitude();
        let q = r.denom().magnitude();
        Ok(ExactReal::normalize(
            BigRational::new(BigInt::one(), BigInt::from(q.clone())),
            p * q,
            0,
        ))
    }

    pub fn rational(&self) -> &BigRational {
        &self.rational
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn pi_half_exp(&self) -> i32 {
        self.pi_half_exp
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.rational.is_positive()
    }

    /// Returns the value as a rational when it has no surd or π part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.radicand.is_one() && self.pi_half_exp == 0).then_some(&self.rational)
    }

    /// Same radicand and π power, so the two values can be added.
    pub fn same_kind(&self, other: &ExactReal) -> bool {
        self.radicand == other.radicand && self.pi_half_exp == other.pi_half_exp
    }

    pub fn mul(&self, other: &ExactReal) -> ExactReal {
        if self.is_zero() || other.is_zero() {
            return ExactReal::zero();
        }
        // Both radicands are squarefree, so after dividing out the gcd the
        // cofactors are coprime and their product is squarefree again.
        let g = self.radicand.gcd(&other.radicand);
        let a = &self.radicand / &g;
        let b = &other.radicand / &g;
        ExactReal {
            rational: &self.rational
                * &other.rational
                * BigRational::from_integer(BigInt::from(g)),
            radicand: a * b,
            pi_half_exp: self.pi_half_exp + other.pi_half_exp,
        }
    }

    pub fn add(&self, other: &ExactReal) -> Result<ExactReal, ExactError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !self.same_kind(other) {
            return Err(ExactError::KindMismatch {
                lhs_radicand: self.radicand.clone(),
                lhs_pi: self.pi_half_exp,
                rhs_radicand: other.radicand.clone(),
                rhs_pi: other.pi_half_exp,
            });
        }
        let sum = &self.rational + &other.rational;
        if sum.is_zero() {
            return Ok(ExactReal::zero());
        }
        Ok(ExactReal {
            rational: sum,
            radicand: self.radicand.clone(),
            pi_half_exp: self.pi_half_exp,
        })
    }

    pub fn neg(&self) -> ExactReal {
        ExactReal {
            rational: -self.rational.clone(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &ExactReal) -> Result<ExactReal, ExactError> {
        self.add(&other.neg())
    }

    /// `1/(r√t π^(a/2)) = (1/(rt)) √t π^(-a/2)`.
    pub fn recip(&self) -> Result<ExactReal, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let t = BigRational::from_integer(BigInt::from(self.radicand.clone()));
        Ok(ExactReal {
            rational: (&self.rational * t).recip(),
            radicand: self.radicand.clone(),
            pi_half_exp: -self.pi_half_exp,
        })
    }

    pub fn div(&self, other: &ExactReal) -> Result<ExactReal, ExactError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, r: &BigRational) -> ExactReal {
        self.mul(&ExactReal::from_rational(r.clone()))
    }

    pub fn pow(&self, k: i32) -> Result<ExactReal, ExactError> {
        if k < 0 {
            return self.recip()?.pow(-k);
        }
        let mut acc = ExactReal::one();
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Square of the value, `r² t π^a`, as `(rational part, π exponent)`.
    fn square_parts(&self) -> (BigRational, i32) {
        let t = BigRational::from_integer(BigInt::from(self.radicand.clone()));
        (&self.rational * &self.rational * t, 2 * self.pi_half_exp)
    }

    /// Evaluates to `precision_bits` bits with relative error below
    /// `2^(1 - precision_bits)`.
    pub fn to_float(&self, precision_bits: usize) -> Real {
        let guard = precision_bits + 64;
        if self.is_zero() {
            return Real::zero(precision_bits);
        }
        let mut mp = Mp::new(guard);
        let mut v = mp.ratio(&self.rational);
        if !self.radicand.is_one() {
            let t = Real::from_bigint(&BigInt::from(self.radicand.clone()), guard);
            v = v * t.sqrt();
        }
        if self.pi_half_exp != 0 {
            let root_pi = mp.pi().sqrt();
            let p = root_pi.powi(self.pi_half_exp.unsigned_abs() as usize);
            v = if self.pi_half_exp > 0 { v * p } else { v / p };
        }
        v.with_prec(precision_bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(64).to_f64()
    }
}

impl Default for ExactReal {
    fn default() -> Self {
        ExactReal::zero()
    }
}

impl PartialOrd for ExactReal {
    /// Values are comparable when they share the π power or either is zero.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        let (ls, rs) = (self.rational.signum(), other.rational.signum());
        if self.is_zero() || other.is_zero() || ls != rs {
            return Some(ls.cmp(&rs));
        }
        if self.pi_half_exp != other.pi_half_exp {
            return None;
        }
        let (lsq, _) = self.square_parts();
        let (rsq, _) = other.square_parts();
        let mag = lsq.cmp(&rsq);
        Some(if ls.is_positive() { mag } else { mag.reverse() })
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `p/q * sqrt(t) * pi^(a/2)`; every factor is always written.
impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} * sqrt({}) * pi^({}/2)",
            self.rational.numer(),
            self.rational.denom(),
            self.radicand,
            self.pi_half_exp
        )
    }
}

impl FromStr for ExactReal {
    type Err = ParseExactError;

    /// Accepts the serialized form and any subset of its factors, in any
    /// order; the result is normalized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseExactError(String::from(s));
        let mut rational = BigRational::one();
        let mut radicand = BigUint::one();
        let mut pi_half_exp = 0i32;
        for factor in s.split('*') {
            let factor = factor.trim();
            if let Some(inner) = factor.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
                let t: BigUint = inner.trim().parse().map_err(|_| bad())?;
                if t.is_zero() {
                    rational = BigRational::zero();
                } else {
                    radicand *= t;
                }
            } else if let Some(inner) = factor
                .strip_prefix("pi^(")
                .and_then(|r| r.strip_suffix("/2)"))
            {
                let a: i32 = inner.trim().parse().map_err(|_| bad())?;
                pi_half_exp += a;
            } else {
                rational *= parse_rational(factor).ok_or_else(bad)?;
            }
        }
        Ok(ExactReal::normalize(rational, radicand, pi_half_exp))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Splits `t = s² · f` with `f` squarefree, returning `(s, f)`.
pub fn split_square(t: &BigUint) -> (BigUint, BigUint) {
    if let Some(small) = t.to_u128() {
        let (s, f) = split_square_u128(small);
        return (BigUint::from(s), BigUint::from(f));
    }
    let mut rest = t.clone();
    let mut s = BigUint::one();
    let mut f = BigUint::one();
    let mut d = BigUint::from(2u32);
    // Once d³ exceeds the cofactor it has at most two prime factors, all ≥ d.
    while &d * &d * &d <= rest {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            s *= num_traits::pow(d.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                f *= &d;
            }
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
    } else {
        f *= rest;
    }
    (s, f)
}

fn split_square_u128(mut rest: u128) -> (u128, u128) {
    let mut s: u128 = 1;
    let mut f: u128 = 1;
    let mut d: u128 = 2;
    while d.saturating_mul(d).saturating_mul(d) <= rest {
        let mut e = 0u32;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            s *= d.pow(e / 2);
            if e % 2 == 1 {
                f *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if r * r == rest {
        s *= r;
    } else {
        f *= rest;
    }
    (s, f)
}
