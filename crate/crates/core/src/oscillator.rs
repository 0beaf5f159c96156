//! The one-dimensional harmonic oscillator with potential `V(x) = λ²x²/2`:
//! its eigenstate densities are `ρ_n` rescaled by `λ^{-1/2}`, so every length
//! picks up a factor `λ^{-1/2}`, the Fisher information a factor `λ`, entropic
//! moments a factor `λ^{(q-1)/2}` and the Shannon entropy a shift `-ln √λ`.
//!
//! `λ` is held as an exact rational, which keeps every exactly known quantity
//! exact after scaling.

use alloc::format;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::entropic::{entropic_moment, renyi_length_of};
use crate::error::{Error, Result};
use crate::exactreal::ExactReal;
use crate::hermite::{fisher_information, fisher_length, moment, standard_deviation};
use crate::mp::{Mp, Real};
use crate::quadrature::QuadratureConfig;
use crate::shannon::{shannon_entropy, ShannonResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscillatorParams {
    lambda: BigRational,
}

impl OscillatorParams {
    pub fn new(lambda: BigRational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        Ok(OscillatorParams { lambda })
    }

    /// Exact conversion of a finite positive double.
    pub fn from_f64(lambda: f64) -> Result<Self> {
        let r = BigRational::from_float(lambda)
            .ok_or_else(|| Error::Domain(format!("lambda must be finite, got {lambda}")))?;
        Self::new(r)
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    /// `λ^{-1/2}` exactly.
    pub fn length_scale(&self) -> ExactReal {
        ExactReal::sqrt_rational(&self.lambda.recip()).expect("positive lambda")
    }
}

impl FromStr for OscillatorParams {
    type Err = Error;

    /// Accepts `p`, `p/q` and decimal forms such as `2.25` or `1e-3`, all
    /// parsed exactly.
    fn from_str(s: &str) -> Result<Self> {
        parse_exact_decimal(s.trim())
            .ok_or_else(|| Error::Domain(format!("cannot parse lambda from {s:?}")))
            .and_then(Self::new)
    }
}

fn parse_exact_decimal(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i64::from_str(&s[i + 1..]).ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: alloc::string::String = int_part.chars().chain(frac_part.chars()).collect();
    let mut value = BigRational::from_integer(BigInt::from_str(&all).ok()?);
    let shift = exp - frac_part.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10u32));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if neg { -value } else { value })
}

/// `λ^{e/2}` exactly for any integer `e`.
fn lambda_half_power(params: &OscillatorParams, e: i64) -> ExactReal {
    let whole = num_traits::pow(params.lambda.clone(), e.unsigned_abs() as usize / 2);
    let whole = if e < 0 { whole.recip() } else { whole };
    let base = ExactReal::from_rational(whole);
    if e % 2 == 0 {
        return base;
    }
    let root = if e < 0 {
        params.length_scale()
    } else {
        ExactReal::sqrt_rational(&params.lambda).expect("positive lambda")
    };
    base.mul(&root)
}

/// `⟨x^k⟩^{HO}_n = λ^{-k/2} ⟨x^k⟩_n`; odd moments vanish, even ones are
/// rational.
pub fn ho_moment(n: usize, k: usize, params: &OscillatorParams) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    moment(n, k) / num_traits::pow(params.lambda.clone(), k / 2)
}

/// `(Δx)^{HO}_n = λ^{-1/2} √(n + 1/2)`.
pub fn ho_standard_deviation(n: usize, params: &OscillatorParams) -> ExactReal {
    standard_deviation(n).mul(&params.length_scale())
}

/// `F^{HO} = λ (4n + 2)`.
pub fn ho_fisher_information(n: usize, params: &OscillatorParams) -> BigRational {
    fisher_information(n) * &params.lambda
}

/// `(δx)^{HO}_n = λ^{-1/2} / √(4n + 2)`.
pub fn ho_fisher_length(n: usize, params: &OscillatorParams) -> ExactReal {
    fisher_length(n).mul(&params.length_scale())
}

/// `W_q^{HO} = λ^{(q-1)/2} W_q`.
pub fn ho_entropic_moment(n: usize, q: u32, params: &OscillatorParams) -> Result<ExactReal> {
    let w = entropic_moment(n, q)?;
    Ok(w.value.mul(&lambda_half_power(params, q as i64 - 1)))
}

/// `L^{HO} = λ^{-1/2} / W_2`.
pub fn ho_onicescu_heller_length(n: usize, params: &OscillatorParams) -> ExactReal {
    let w = ho_entropic_moment(n, 2, params).expect("order 2");
    w.recip().expect("positive moment")
}

/// `(L_q^R)^{HO} = λ^{-1/2} L_q^R`.
pub fn ho_renyi_length(n: usize, q: u32, params: &OscillatorParams, precision_bits: usize) -> Result<Real> {
    if q < 2 {
        return Err(Error::Domain(format!("order must be >= 2, got {q}")));
    }
    let w = ho_entropic_moment(n, q, params)?;
    Ok(renyi_length_of(&w, q, precision_bits))
}

/// `S^{HO} = S - ln √λ` and `N^{HO} = λ^{-1/2} N`.
pub fn ho_shannon(n: usize, params: &OscillatorParams, cfg: &QuadratureConfig) -> Result<ShannonResult> {
    let base = shannon_entropy(n, cfg)?;
    let mut mp = Mp::new(cfg.precision_bits);
    let ln_lambda = mp.ln(&mp.ratio(&params.lambda));
    let entropy = &base.entropy - &ln_lambda.ldexp(-1);
    let length = &base.length * &params.length_scale().to_float(cfg.precision_bits);
    Ok(ShannonResult {
        n,
        entropy,
        length,
        error_estimate: base.error_estimate,
    })
}

/// All oscillator lengths for one eigenstate.
#[derive(Clone, Debug)]
pub struct HoLengths {
    pub n: usize,
    pub std_dev: ExactReal,
    pub fisher_length: ExactReal,
    pub onicescu_heller: ExactReal,
    /// `(q, L_q^R)` for `q = 2..=5`.
    pub renyi: Vec<(u32, Real)>,
    pub shannon: ShannonResult,
}

pub fn ho_lengths(n: usize, params: &OscillatorParams, cfg: &QuadratureConfig) -> Result<HoLengths> {
    let renyi = (2..=5)
        .map(|q| ho_renyi_length(n, q, params, cfg.precision_bits).map(|l| (q, l)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HoLengths {
        n,
        std_dev: ho_standard_deviation(n, params),
        fisher_length: ho_fisher_length(n, params),
        onicescu_heller: ho_onicescu_heller_length(n, params),
        renyi,
        shannon: ho_shannon(n, params, cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn lam(p: i64, d: i64) -> OscillatorParams {
        OscillatorParams::new(q(p, d)).unwrap()
    }

    #[test]
    fn parameter_parsing() {
        assert_eq!("4".parse::<OscillatorParams>().unwrap(), lam(4, 1));
        assert_eq!("2.25".parse::<OscillatorParams>().unwrap(), lam(9, 4));
        assert_eq!("1/9".parse::<OscillatorParams>().unwrap(), lam(1, 9));
        assert_eq!("2.5e-1".parse::<OscillatorParams>().unwrap(), lam(1, 4));
        assert!("0".parse::<OscillatorParams>().is_err());
        assert!("-1".parse::<OscillatorParams>().is_err());
        assert!("abc".parse::<OscillatorParams>().is_err());
        assert_eq!(OscillatorParams::from_f64(0.25).unwrap(), lam(1, 4));
        assert!(OscillatorParams::from_f64(f64::NAN).is_err());
    }

    #[test]
    fn moments_scale() {
        let one = lam(1, 1);
        for n in 0..5 {
            assert_eq!(ho_moment(n, 2, &one), q(2 * n as i64 + 1, 2));
            assert!(ho_moment(n, 3, &lam(4, 1)).is_zero());
        }
        assert_eq!(ho_moment(0, 2, &lam(4, 1)), q(1, 8));
    }

    #[test]
    fn lengths_at_lambda_four() {
        let p = lam(4, 1);
        let sd = ho_standard_deviation(0, &p);
        assert_eq!(sd, standard_deviation(0).scale(&q(1, 2)));
        let product = ho_fisher_length(3, &p).mul(&ho_standard_deviation(3, &p));
        assert_eq!(product, ExactReal::from_rational(q(1, 8)));
        assert_eq!(ho_fisher_information(2, &p), q(40, 1));
    }

    #[test]
    fn moments_scale_with_half_powers() {
        let p = lam(2, 1);
        // W_2^{HO}[ρ_0] = √2 / √(2π) = π^{-1/2}
        assert_eq!(ho_entropic_moment(0, 2, &p).unwrap(), ExactReal::pi_pow_half(-1));
        let p = lam(9, 1);
        for n in 0..4 {
            for qq in 1..=4u32 {
                let base = entropic_moment(n, qq).unwrap().value;
                let expect = base.scale(&num_traits::pow(q(3, 1), qq as usize - 1));
                assert_eq!(ho_entropic_moment(n, qq, &p).unwrap(), expect);
            }
        }
    }

    #[test]
    fn identity_scaling() {
        let one = lam(1, 1);
        let cfg = QuadratureConfig::default();
        let h = ho_lengths(2, &one, &cfg).unwrap();
        assert_eq!(h.std_dev, standard_deviation(2));
        assert_eq!(h.fisher_length, fisher_length(2));
        let base = shannon_entropy(2, &cfg).unwrap();
        assert_eq!(h.shannon.entropy, base.entropy);
        let l2 = crate::entropic::renyi_length(2, 2, 128).unwrap().length;
        let rel = ((&h.renyi[0].1 - &l2) / &l2).abs().to_f64();
        assert!(rel < 1e-35);
    }

    #[test]
    fn shannon_shift() {
        let cfg = QuadratureConfig::default();
        let base = shannon_entropy(1, &cfg).unwrap();
        let ho = ho_shannon(1, &lam(9, 1), &cfg).unwrap();
        let shift = (base.entropy.to_f64() - ho.entropy.to_f64()) - libm::log(3.0);
        assert!(shift.abs() < 1e-15);
        assert!((ho.length.to_f64() * 3.0 / base.length.to_f64() - 1.0).abs() < 1e-15);
    }
}
