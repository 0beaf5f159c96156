//! Multi-precision binary floating point.
//!
//! [`Real`] is a thin value type over [`astro_float::BigFloat`] with the usual
//! arithmetic operators. Binary operations round to the larger precision of
//! their two operands. Transcendental functions need the cached constants held
//! by an [`Mp`] context, which also fixes the working precision.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = Word::BITS as usize;

/// A multi-precision real number.
#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real(BigFloat::from_word(0, prec))
    }

    pub fn one(prec: usize) -> Self {
        Real(BigFloat::from_word(1, prec))
    }

    pub fn from_f64(f: f64, prec: usize) -> Self {
        Real(BigFloat::from_f64(f, prec))
    }

    pub fn from_i64(i: i64, prec: usize) -> Self {
        Real(BigFloat::from_i64(i, prec))
    }

    pub fn from_u64(u: u64, prec: usize) -> Self {
        Real(BigFloat::from_u64(u, prec))
    }

    /// Correctly rounded conversion of an arbitrary-size integer.
    pub fn from_bigint(x: &BigInt, prec: usize) -> Self {
        if x.is_zero() {
            return Real::zero(prec);
        }
        let words = words_of(x.magnitude());
        let sign = if x.is_negative() { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * WORD_BITS) as Exponent;
        let mut f = BigFloat::from_words(&words, sign, e);
        f.set_precision(prec, RM).expect("precision change");
        Real(f)
    }

    /// Converts a rational; the result carries at most three roundings.
    pub fn from_ratio(x: &BigRational, prec: usize) -> Self {
        let guard = prec + 2 * WORD_BITS;
        let num = Real::from_bigint(x.numer(), guard);
        let den = Real::from_bigint(x.denom(), guard);
        (num / den).with_prec(prec)
    }

    /// Mantissa precision in bits (rounded up to the word size).
    pub fn prec(&self) -> usize {
        self.0.precision().unwrap_or(WORD_BITS)
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        let mut f = self.0.clone();
        f.set_precision(prec, RM).expect("precision change");
        Real(f)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(self.prec(), RM))
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, self.prec(), RM))
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(self.prec(), RM))
    }

    /// Multiplies by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut f = self.0.clone();
        let e = f.exponent().unwrap_or(0) as i64 + k;
        f.set_exponent(e as Exponent);
        Real(f)
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.is_zero() {
            return 0.0;
        }
        let (m, _, sign, e, _) = self.0.as_raw_parts().expect("finite value");
        // Top two words give more than 53 significant bits.
        let top = m[m.len() - 1] as f64;
        let next = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
        let mant = top + libm::ldexp(next, -(WORD_BITS as i32));
        let v = libm::ldexp(mant, e - WORD_BITS as i32);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_bigint(&self) -> BigInt {
        if self.is_zero() || !self.is_finite() {
            return BigInt::zero();
        }
        let half = Real::from_f64(0.5, self.prec());
        let shifted = self.abs() + half;
        let (m, _, _, e, _) = shifted.0.as_raw_parts().expect("finite value");
        let mant = biguint_of(m);
        let total = (m.len() * WORD_BITS) as i64;
        let e = e as i64;
        let mag = if e >= total {
            mant << (e - total) as usize
        } else if e <= 0 {
            BigUint::zero()
        } else {
            mant >> (total - e) as usize
        };
        let sign = if self.is_negative() { IntSign::Minus } else { IntSign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    /// Scientific notation with `digits` significant decimal digits,
    /// e.g. `2.50662827463e0`. Deterministic for a given value.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.0.is_nan() {
            return String::from("NaN");
        }
        if !self.is_finite() {
            return String::from(if self.is_negative() { "-inf" } else { "inf" });
        }
        if self.is_zero() {
            let mut s = String::from("0");
            if digits > 1 {
                s.push('.');
                s.extend(core::iter::repeat('0').take(digits - 1));
            }
            s.push_str("e0");
            return s;
        }
        let prec = self.prec() + 4 * digits + 64;
        let x = self.abs().with_prec(prec);
        // Exponent estimate from the binary exponent; corrected below.
        let e2 = x.0.exponent().unwrap_or(0) as f64;
        let mut e10 = libm::floor((e2 - 1.0) * core::f64::consts::LOG10_2) as i64;
        let mut mant;
        loop {
            let shift = digits as i64 - 1 - e10;
            let scaled = if shift >= 0 {
                &x * &Real::from_bigint(&pow10(shift as u32), prec)
            } else {
                &x / &Real::from_bigint(&pow10((-shift) as u32), prec)
            };
            mant = scaled.round_to_bigint();
            let len = mant.to_str_radix(10).len();
            if len > digits {
                e10 += 1;
            } else if len < digits {
                e10 -= 1;
            } else {
                break;
            }
        }
        let ds = mant.to_str_radix(10);
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        out.push_str(&ds[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&ds[1..]);
        }
        out.push('e');
        out.push_str(&alloc::format!("{}", e10));
        out
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

#[cfg(not(target_pointer_width = "32"))]
fn words_of(m: &BigUint) -> Vec<Word> {
    m.to_u64_digits()
}

#[cfg(target_pointer_width = "32")]
fn words_of(m: &BigUint) -> Vec<Word> {
    m.to_u32_digits()
}

#[cfg(not(target_pointer_width = "32"))]
fn biguint_of(words: &[Word]) -> BigUint {
    let mut digits = Vec::with_capacity(words.len() * 2);
    for w in words {
        digits.push(*w as u32);
        digits.push((*w >> 32) as u32);
    }
    BigUint::new(digits)
}

#[cfg(target_pointer_width = "32")]
fn biguint_of(words: &[Word]) -> BigUint {
    BigUint::new(words.to_vec())
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sci_string(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_sci_string(digits))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|s| s.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                let p = self.prec().max(rhs.prec());
                Real(self.0.$inner(&rhs.0, p, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}

/// Working-precision context: precision in bits plus the constant cache used
/// by `exp`, `ln` and `pi`.
pub struct Mp {
    prec: usize,
    cc: Consts,
}

impl Mp {
    pub fn new(prec: usize) -> Self {
        Mp {
            prec,
            cc: Consts::new().expect("constant cache allocation"),
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn real(&self, f: f64) -> Real {
        Real::from_f64(f, self.prec)
    }

    pub fn int(&self, i: i64) -> Real {
        Real::from_i64(i, self.prec)
    }

    pub fn ratio(&self, r: &BigRational) -> Real {
        Real::from_ratio(r, self.prec)
    }

    pub fn pi(&mut self) -> Real {
        Real(self.cc.pi(self.prec, RM))
    }

    pub fn exp(&mut self, x: &Real) -> Real {
        Real(x.0.exp(self.prec, RM, &mut self.cc))
    }

    pub fn ln(&mut self, x: &Real) -> Real {
        Real(x.0.ln(self.prec, RM, &mut self.cc))
    }

    pub fn sqrt(&self, x: &Real) -> Real {
        Real(x.0.sqrt(self.prec, RM))
    }

    /// `x^y` for `x > 0`.
    pub fn powf(&mut self, x: &Real, y: &Real) -> Real {
        Real(x.0.pow(&y.0, self.prec, RM, &mut self.cc))
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Mp").field("prec", &self.prec).finish()
    }
}
