//! Entropic moments `W_q[ρ_n] = ∫ ρ_n^q dx`, the Rényi, Tsallis and
//! Onicescu–Heller quantities derived from them, and the Gaussian-weighted
//! power functionals `Z_k`, `D_k` together with their asymptotic formulas.
//!
//! All integer-order moments are exact. `H̃_n^k` is expanded through integer
//! arithmetic on the unnormalized parts `d_l`, and each even monomial is
//! integrated against `e^{-g x²}` in closed form:
//! `∫ x^{2j} e^{-g x²} dx = (2j)!/(4^j j!) · √π · g^{-j-1/2}`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactreal::ExactReal;
use crate::hermite::{coefficients, factorial, gaussian_even_moment};
use crate::mp::{Mp, Real};
use crate::polypow::{poly_power_bell, DensePolynomial};

/// `W_q[ρ_n]` for integer `q ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropicMoment {
    pub n: usize,
    pub q: u32,
    pub value: ExactReal,
}

/// A Rényi length with the exact moment it was derived from.
#[derive(Clone, Debug)]
pub struct RenyiLength {
    pub moment: EntropicMoment,
    pub length: Real,
}

/// An exact value together with its evaluation at a working precision.
#[derive(Clone, Debug)]
pub struct ExactValue {
    pub exact: ExactReal,
    pub value: Real,
}

fn rat(p: BigInt, q: BigInt) -> BigRational {
    BigRational::new(p, q)
}

/// `R` such that `∫ (Σ d_l x^l)^k e^{-g x²} dx = R · √π · g^{-1/2}`.
fn gaussian_power_integral(d: &[BigInt], k: u32, g: u32) -> BigRational {
    let n = d.len() - 1;
    let parity = n % 2;
    if k == 0 {
        return BigRational::one();
    }
    if parity == 1 && k % 2 == 1 {
        return BigRational::zero();
    }
    // Σ d_l x^l = x^parity · e(x²)
    let e: Vec<BigInt> = d.iter().skip(parity).step_by(2).cloned().collect();
    let power = DensePolynomial::new(e).pow(k);
    let shift = (k as usize * parity) / 2;
    let coeffs = power.coeffs();
    if coeffs.is_empty() {
        return BigRational::zero();
    }
    let j_max = shift + coeffs.len() - 1;
    let base = BigInt::from(4u32 * g);
    // f_j = (2j)!/j!, advanced by f_{j+1} = 2(2j+1) f_j.
    let mut f = BigInt::one();
    for j in 0..shift {
        f *= 2 * (2 * j + 1);
    }
    let mut sum = BigInt::zero();
    let mut weight = base.pow((j_max - shift) as u32);
    for (i, p) in coeffs.iter().enumerate() {
        let j = shift + i;
        if !p.is_zero() {
            sum += p * &f * &weight;
        }
        f *= 2 * (2 * j + 1);
        if j < j_max {
            weight /= &base;
        }
    }
    rat(sum, base.pow(j_max as u32))
}

/// `W_q[ρ_n]` exactly, for `q ≥ 1`.
///
/// The result always has the shape `r · √q' · π^{(1-q)/2}` with `q'` the
/// squarefree part of `q`.
pub fn entropic_moment(n: usize, q: u32) -> Result<EntropicMoment> {
    if q == 0 {
        return Err(Error::Domain(format!("entropic moment order must be >= 1, got {q}")));
    }
    let c = coefficients(n);
    let r = gaussian_power_integral(c.integer_parts(), 2 * q, q);
    let scale = c.norm_denominator().pow(q);
    Ok(assemble_moment(n, q, r / BigRational::from_integer(scale)))
}

fn assemble_moment(n: usize, q: u32, rational: BigRational) -> EntropicMoment {
    // q^{-1/2} = (1/q) √q
    let value = ExactReal::normalize(
        rational / BigRational::from_integer(BigInt::from(q)),
        BigUint::from(q),
        1 - q as i32,
    );
    EntropicMoment { n, q, value }
}

/// `W_q[ρ_n]` through the Bell-polynomial expansion of `H̃_n^{2q}`:
/// `Σ_j Γ(j+1/2) q^{-(j+1/2)} (2q)!/(2j+2q)! B_{2j+2q,2q}(c_0, 2!c_1, …)`.
///
/// Independent of [`entropic_moment`] and much slower; meant for small `n`.
pub fn entropic_moment_bell(n: usize, q: u32) -> Result<EntropicMoment> {
    if q == 0 {
        return Err(Error::Domain(format!("entropic moment order must be >= 1, got {q}")));
    }
    let c = coefficients(n);
    let y = DensePolynomial::new(
        c.integer_parts()
            .iter()
            .map(|d| BigRational::from_integer(d.clone()))
            .collect(),
    );
    // Homogeneity: the Bell arguments are N·d_l, so N^{2q} factors out.
    let power = poly_power_bell(&y, 2 * q);
    let qq = BigRational::from_integer(BigInt::from(q));
    let mut sum = BigRational::zero();
    let mut q_pow = BigRational::one();
    for (m, a) in power.coeffs().iter().enumerate() {
        if m % 2 == 1 {
            continue;
        }
        let j = m / 2;
        if !a.is_zero() {
            sum += a * gaussian_even_moment(j) / &q_pow;
        }
        q_pow *= &qq;
    }
    let scale = BigRational::from_integer(c.norm_denominator().pow(q));
    Ok(assemble_moment(n, q, sum / scale))
}

fn require_order(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::Domain(format!("order must be >= 2, got {q}")));
    }
    Ok(())
}

/// `R_q = ln W_q / (1 - q)`.
pub fn renyi_entropy(n: usize, q: u32, precision_bits: usize) -> Result<Real> {
    require_order(q)?;
    let w = entropic_moment(n, q)?;
    let mut mp = Mp::new(precision_bits);
    let ln_w = mp.ln(&w.value.to_float(precision_bits));
    Ok(ln_w / mp.int(1 - q as i64))
}

/// `T_q = (1 - W_q) / (q - 1)`.
pub fn tsallis_entropy(n: usize, q: u32, precision_bits: usize) -> Result<Real> {
    require_order(q)?;
    let w = entropic_moment(n, q)?;
    let mp = Mp::new(precision_bits);
    Ok((mp.int(1) - w.value.to_float(precision_bits)) / mp.int(q as i64 - 1))
}

/// `L_q^R = W_q^{-1/(q-1)}`.
pub fn renyi_length(n: usize, q: u32, precision_bits: usize) -> Result<RenyiLength> {
    require_order(q)?;
    let moment = entropic_moment(n, q)?;
    let length = renyi_length_of(&moment.value, q, precision_bits);
    Ok(RenyiLength { moment, length })
}

pub(crate) fn renyi_length_of(w: &ExactReal, q: u32, precision_bits: usize) -> Real {
    if q == 2 {
        return w.recip().expect("positive moment").to_float(precision_bits);
    }
    let mut mp = Mp::new(precision_bits);
    let ln_w = mp.ln(&w.to_float(precision_bits));
    mp.exp(&(-ln_w / mp.int(q as i64 - 1)))
}

/// `L[ρ_n] = 1/W_2[ρ_n]`, exact.
pub fn onicescu_heller_length(n: usize, precision_bits: usize) -> ExactValue {
    let w = entropic_moment(n, 2).expect("order 2");
    let exact = w.value.recip().expect("positive moment");
    let value = exact.to_float(precision_bits);
    ExactValue { exact, value }
}

/// `C(a, k) = a(a-1)⋯(a-k+1)/k!` for rational `a`.
fn generalized_binomial(a: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= a - BigRational::from_integer(BigInt::from(i));
        acc /= BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Generalized Laguerre polynomial
/// `L_m^{(α)}(x) = Σ_{i=0}^m (-1)^i C(m+α, m-i) x^i / i!` at rational `α`, `x`.
pub fn laguerre(m: usize, alpha: &BigRational, x: &BigRational) -> BigRational {
    let top = alpha + BigRational::from_integer(BigInt::from(m));
    let mut sum = BigRational::zero();
    let mut x_pow = BigRational::one();
    let mut i_fact = BigInt::one();
    for i in 0..=m {
        if i > 0 {
            x_pow *= x;
            i_fact *= i;
        }
        let term = generalized_binomial(&top, m - i) * &x_pow / BigRational::from_integer(i_fact.clone());
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Closed forms of `W_q[ρ_n]` for `n ∈ {0, 1, 2}`:
///
/// * `W_q[ρ_0] = √(π^{1-q}/q)`
/// * `W_q[ρ_1] = 2^q Γ(q+1/2) / (π^{q/2} q^{q+1/2})`
/// * `W_q[ρ_2] = π^{(1-q)/2} 2^q (2q)! q^{-2q-1/2} L_{2q}^{(-2q-1/2)}(-q/2)`
pub fn closed_form_wq(n: usize, q: u32) -> Result<ExactReal> {
    if q == 0 {
        return Err(Error::Domain(format!("entropic moment order must be >= 1, got {q}")));
    }
    let qi = BigInt::from(q);
    let qs = q as usize;
    let two_q = BigInt::one() << qs;
    let rational = match n {
        0 => BigRational::one(),
        1 => {
            // Γ(q+1/2) = (2q)!/(4^q q!) √π
            rat(two_q * factorial(2 * qs), (BigInt::one() << (2 * qs)) * factorial(qs) * qi.pow(q))
        }
        2 => {
            let alpha = rat(BigInt::from(-(4 * q as i64 + 1)), BigInt::from(2));
            let x = rat(-qi.clone(), BigInt::from(2));
            let lag = laguerre(2 * qs, &alpha, &x);
            BigRational::from_integer(two_q * factorial(2 * qs)) * lag
                / BigRational::from_integer(qi.pow(2 * q))
        }
        _ => {
            return Err(Error::Domain(format!(
                "closed forms exist only for n in {{0, 1, 2}}, got {n}"
            )))
        }
    };
    Ok(assemble_moment(n, q, rational).value)
}

/// `Z_k[H_n] = ∫ e^{-x²} H_n(x)^k dx` for the orthogonal (not normalized)
/// `H_n = (2^n n! √π)^{1/2} H̃_n`.
pub fn z_functional(n: usize, k: u32) -> ExactReal {
    let c = coefficients(n);
    let r = gaussian_power_integral(c.integer_parts(), k, 1);
    // d_l carries a (-1)^n phase relative to H_n; it only matters when n·k is
    // odd, where the integral vanishes.
    ExactReal::normalize(r, BigUint::one(), 1)
}

/// `D_k[H_n] = √(2/π) ∫ e^{-2x²} H̃_n(x)^k dx`, exact for even `k` (and for odd
/// `k` when `n` is odd, where it vanishes).
///
/// For odd `k` and even `n` the value carries `π^{-k/4}`, which has no exact
/// representation; use [`d_functional_float`].
pub fn d_functional(n: usize, k: u32) -> Result<ExactReal> {
    let c = coefficients(n);
    let r = gaussian_power_integral(c.integer_parts(), k, 2);
    if r.is_zero() {
        return Ok(ExactReal::zero());
    }
    if k % 2 == 1 {
        return Err(Error::NotRepresentable("D_k with odd k carries pi^(-k/4)"));
    }
    // √(2/π) · √π/√2 · N^k with N^k = (2^n n!)^{-k/2} π^{-k/4}
    let scale = BigRational::from_integer(c.norm_denominator().pow(k / 2));
    Ok(ExactReal::normalize(r / scale, BigUint::one(), -(k as i32) / 2))
}

/// `D_k[H_n]` at the given precision, for any `k`.
pub fn d_functional_float(n: usize, k: u32, precision_bits: usize) -> Real {
    let c = coefficients(n);
    let r = gaussian_power_integral(c.integer_parts(), k, 2);
    let mut mp = Mp::new(precision_bits);
    if r.is_zero() {
        return mp.int(0);
    }
    // N^k = (N²)^{k/2}
    let n2 = c.normalization_squared().to_float(precision_bits);
    let ln_n2 = mp.ln(&n2);
    let nk = mp.exp(&(ln_n2 * mp.int(k as i64)).ldexp(-1));
    mp.ratio(&r) * nk
}

/// `(2/π)^q Γ(q+1/2) Γ(1-q/2) / (Γ(q+1) Γ(3/2-q/2)) · (2n+1)^{(1-q)/2}`, the
/// large-`n` behaviour of `W_q[ρ_n]` for `q ∈ [0, 4/3]`, in double precision.
pub fn aptekarev_asymptotic(n: usize, q: f64) -> Result<f64> {
    if !(0.0..=4.0 / 3.0).contains(&q) {
        return Err(Error::Domain(format!("q must lie in [0, 4/3], got {q}")));
    }
    let lg = libm::lgamma;
    let ln = q * libm::log(2.0 / core::f64::consts::PI) + lg(q + 0.5) + lg(1.0 - q / 2.0)
        - lg(q + 1.0)
        - lg(1.5 - q / 2.0)
        + (1.0 - q) / 2.0 * libm::log(2.0 * n as f64 + 1.0);
    Ok(libm::exp(ln))
}

/// `(3/(4n)) √(3/π) 6^{2n}/(n!)² (1 - 1/(4n) + 3/(16n²))`, the large-`n` form of
/// `Z_4` for Hermite polynomials normalized as `H_n/n!`.
pub fn azor_z4_asymptotic(n: usize, precision_bits: usize) -> Result<Real> {
    if n == 0 {
        return Err(Error::Domain(format!("asymptotic form needs n >= 1, got {n}")));
    }
    let ni = BigInt::from(n);
    let n_fact = factorial(n);
    let head = rat(BigInt::from(3u32) * BigInt::from(6u32).pow(2 * n as u32), BigInt::from(4u32) * &ni * &n_fact * &n_fact);
    let n2 = &ni * &ni;
    let series = BigRational::one() - rat(BigInt::one(), BigInt::from(4u32) * &ni)
        + rat(BigInt::from(3u32), BigInt::from(16u32) * n2);
    let root = ExactReal::sqrt_rational(&BigRational::from_integer(BigInt::from(3u32)))?
        .mul(&ExactReal::pi_pow_half(-1));
    Ok(root.scale(&(head * series)).to_float(precision_bits))
}

/// `Z_4[H_n] / (n!)^4`, the quartic functional in the `H_n/n!` normalization
/// used by [`azor_z4_asymptotic`].
pub fn z4_factorial_normalized(n: usize) -> ExactReal {
    let f = factorial(n);
    let f2 = &f * &f;
    z_functional(n, 4).scale(&rat(BigInt::one(), &f2 * &f2))
}

/// Odd part of `q` squared out: the radicand every `W_q` carries.
pub fn moment_radicand(q: u32) -> BigUint {
    crate::exactreal::split_square(&BigUint::from(q)).1
}
