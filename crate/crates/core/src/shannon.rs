//! Shannon entropy and Shannon length of `ρ_n`, their large-`n` form, and the
//! family of upper bounds `c_{k,n}` on the Shannon length obtained from the
//! relative entropy against the prior `e^{-|x|^k}`.

use alloc::format;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hermite::moment;
use crate::mp::{Mp, Real};
use crate::quadrature::{Panels, QuadratureConfig};

pub use crate::quadrature::hermite_zeros;

/// `S[ρ_n]` in nats and `N[ρ_n] = e^S`.
///
/// `error_estimate` bounds the absolute error of `entropy`; the length carries
/// the relative error `error_estimate` to first order.
#[derive(Clone, Debug)]
pub struct ShannonResult {
    pub n: usize,
    pub entropy: Real,
    pub length: Real,
    pub error_estimate: f64,
}

impl ShannonResult {
    /// Absolute error estimate of `length`.
    pub fn length_error(&self) -> f64 {
        self.length.to_f64() * self.error_estimate
    }
}

/// `S[ρ_n] = n + 1/2 - ∫ ρ_n ln H̃_n² dx`.
pub fn shannon_entropy(n: usize, cfg: &QuadratureConfig) -> Result<ShannonResult> {
    let mut panels = Panels::new(n, cfg)?;
    let e_n = panels.integrate(cfg, |x, h, mp| {
        if h.is_zero() {
            return mp.int(0);
        }
        let h2 = h * h;
        let rho = &h2 * &mp.exp(&-(x * x));
        let ln_h2 = mp.ln(&h2);
        rho * ln_h2
    })?;
    let mp = &mut panels.mp;
    let second = mp.ratio(&BigRational::new((2 * n + 1).into(), 2.into()));
    let entropy = second - e_n.value;
    let length = mp.exp(&entropy);
    Ok(ShannonResult {
        n,
        entropy,
        length,
        error_estimate: e_n.error_estimate,
    })
}

/// `N[ρ_n] = exp S[ρ_n]`; same computation as [`shannon_entropy`].
pub fn shannon_length(n: usize, cfg: &QuadratureConfig) -> Result<ShannonResult> {
    shannon_entropy(n, cfg)
}

/// `π√(2n)/e`, the leading large-`n` behaviour of `N[ρ_n]`.
pub fn shannon_asymptotic(n: usize) -> f64 {
    core::f64::consts::PI * libm::sqrt(2.0 * n as f64) / core::f64::consts::E
}

/// `c_{k,n} = (ek)^{1/k}/k · Γ(1/k) · (2^k ⟨x^k⟩_n)^{1/k}`, an upper bound on
/// `N[ρ_n]` for every even `k ≥ 2`.
pub fn kl_upper_bound(n: usize, k: u32) -> Result<f64> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Domain(format!("k must be even and >= 2, got {k}")));
    }
    let mut mp = Mp::new(128);
    let ln_moment = mp.ln(&mp.ratio(&moment(n, k as usize))).to_f64();
    let kf = k as f64;
    let ln_c = (1.0 + libm::log(kf)) / kf - libm::log(kf)
        + libm::lgamma(1.0 / kf)
        + core::f64::consts::LN_2
        + ln_moment / kf;
    Ok(libm::exp(ln_c))
}

/// The smallest bound `c_{k,n}` over even `k ≤ k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalBound {
    pub k_opt: u32,
    pub c: f64,
    /// Set when `k_max < k_opt + 4`: the true minimizer may lie beyond the
    /// search range.
    pub warning: bool,
}

/// Minimizes `c_{k,n}` over `k ∈ {2, 4, …, k_max}`; ties go to the smaller `k`.
pub fn optimal_bound(n: usize, k_max: u32) -> Result<OptimalBound> {
    if k_max < 2 {
        return Err(Error::Domain(format!("k_max must be >= 2, got {k_max}")));
    }
    let mut best = OptimalBound {
        k_opt: 2,
        c: kl_upper_bound(n, 2)?,
        warning: false,
    };
    let mut k = 4;
    while k <= k_max {
        let c = kl_upper_bound(n, k)?;
        if c < best.c {
            best.k_opt = k;
            best.c = c;
        }
        k += 2;
    }
    best.warning = k_max < best.k_opt + 4;
    Ok(best)
}

/// Default search cap for [`optimal_bound`].
pub const DEFAULT_K_MAX: u32 = 40;
