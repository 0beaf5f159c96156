//! Orthonormal Hermite polynomials: expansion coefficients, ordinary moments,
//! standard deviation, Fisher information and pointwise evaluation of the
//! Rakhmanov density `ρ_n(x) = e^{-x²} H̃_n(x)²`.
//!
//! Coefficients follow the phase `(-1)^{(3n-l)/2}`, which makes `H̃_n` equal to
//! `(-1)^n` times the conventional orthonormal polynomial. Every quantity in
//! this crate depends on even powers only, so the phase never shows up in
//! results.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactreal::ExactReal;
use crate::mp::{Mp, Real};
use crate::polypow::DensePolynomial;

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `∫ x^{2j} e^{-x²} dx / √π = (2j)! / (4^j j!)`.
pub(crate) fn gaussian_even_moment(j: usize) -> BigRational {
    BigRational::new(factorial(2 * j), (BigInt::one() << (2 * j)) * factorial(j))
}

/// Expansion `H̃_n(x) = Σ c_l x^l` with `c_l = N · d_l`, integer `d_l` and the
/// shared factor `N = (2^n n! √π)^{-1/2}`.
///
/// `N` itself carries `π^{-1/4}`, which has no [`ExactReal`] representation, so
/// the exact normalization is kept as `N²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteCoefficients {
    n: usize,
    integer_parts: Vec<BigInt>,
    normalization_squared: ExactReal,
}

impl HermiteCoefficients {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// `d_0, …, d_n`; zero where `l` and `n` have opposite parity.
    pub fn integer_parts(&self) -> &[BigInt] {
        &self.integer_parts
    }

    /// `N² = 1/(2^n n! √π)`.
    pub fn normalization_squared(&self) -> &ExactReal {
        &self.normalization_squared
    }

    /// `2^n n!`, the rational part of `1/N²` without `√π`.
    pub fn norm_denominator(&self) -> BigInt {
        (BigInt::one() << self.n) * factorial(self.n)
    }

    /// The unnormalized polynomial `Σ d_l x^l`, i.e. `H̃_n / N`.
    pub fn integer_polynomial(&self) -> DensePolynomial<BigInt> {
        DensePolynomial::new(self.integer_parts.clone())
    }

    /// `c_l²` exactly.
    pub fn coefficient_squared(&self, l: usize) -> ExactReal {
        match self.integer_parts.get(l) {
            Some(d) => {
                let d2 = BigRational::from_integer(d * d);
                self.normalization_squared.scale(&d2)
            }
            None => ExactReal::zero(),
        }
    }

    /// `c_l` at the context precision.
    pub fn coefficient(&self, l: usize, mp: &mut Mp) -> Real {
        let Some(d) = self.integer_parts.get(l) else {
            return mp.int(0);
        };
        let n2 = self.normalization_squared.to_float(mp.prec());
        Real::from_bigint(d, mp.prec()) * n2.sqrt()
    }
}

pub fn coefficients(n: usize) -> HermiteCoefficients {
    let n_fact = factorial(n);
    let integer_parts = (0..=n)
        .map(|l| {
            if (n - l) % 2 != 0 {
                return BigInt::zero();
            }
            let half = (n - l) / 2;
            let mag = &n_fact * (BigInt::one() << l) / (factorial(half) * factorial(l));
            // (3n - l)/2 = n + (n - l)/2
            if (n + half) % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    let denom = (BigInt::one() << n) * n_fact;
    HermiteCoefficients {
        n,
        integer_parts,
        normalization_squared: ExactReal::normalize(
            BigRational::new(BigInt::one(), denom),
            BigUint::one(),
            -1,
        ),
    }
}

/// `⟨x^k⟩_n`: zero for odd `k`, otherwise
/// `k!/(2^k Γ(k/2+1)) · ₂F₁(-n, -k/2; 1; 2)` as a terminating sum.
pub fn moment(n: usize, k: usize) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let m = k / 2;
    let mut f = BigInt::zero();
    for j in 0..=n.min(m) {
        f += (binomial(n, j) * binomial(m, j)) << j;
    }
    gaussian_even_moment(m) * BigRational::from_integer(f)
}

/// `(Δx)_n = √(n + 1/2)`.
pub fn standard_deviation(n: usize) -> ExactReal {
    let second = BigRational::new(BigInt::from(2 * n + 1), BigInt::from(2));
    ExactReal::sqrt_rational(&second).expect("positive second moment")
}

/// `F[ρ_n] = 4n + 2`.
pub fn fisher_information(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(4 * n + 2))
}

/// `(δx)_n = 1/√(4n+2)`, which lies in `(0, 1/√2]`.
pub fn fisher_length(n: usize) -> ExactReal {
    let inv = fisher_information(n).recip();
    ExactReal::sqrt_rational(&inv).expect("positive Fisher information")
}

/// Pointwise evaluator for `H̃_n`, the Hermite function `e^{-x²/2} H̃_n` and the
/// Rakhmanov density, by the orthonormal three-term recurrence
/// `H̃_{k+1} = √(2/(k+1)) x H̃_k - √(k/(k+1)) H̃_{k-1}`.
#[derive(Clone, Debug)]
pub struct RakhmanovDensity {
    n: usize,
    coefficients: HermiteCoefficients,
    forward: Vec<Real>,
    backward: Vec<Real>,
    start: Real,
}

impl RakhmanovDensity {
    pub fn new(n: usize, mp: &mut Mp) -> Self {
        let p = mp.prec();
        let mut forward = Vec::with_capacity(n);
        let mut backward = Vec::with_capacity(n);
        for k in 0..n {
            let k1 = Real::from_u64(k as u64 + 1, p);
            forward.push((Real::from_u64(2, p) / &k1).sqrt());
            backward.push((Real::from_u64(k as u64, p) / &k1).sqrt());
        }
        let mut start = mp.pi().sqrt().sqrt().recip();
        if n % 2 == 1 {
            start = -start;
        }
        RakhmanovDensity {
            n,
            coefficients: coefficients(n),
            forward,
            backward,
            start,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &HermiteCoefficients {
        &self.coefficients
    }

    /// `(g_n(x), g_{n-1}(x))` for the recurrence started at `g_0 = s`.
    fn recur(&self, x: &Real, s: Real) -> (Real, Real) {
        let mut prev = Real::zero(s.prec());
        let mut cur = s;
        for k in 0..self.n {
            let next = &self.forward[k] * x * &cur - &self.backward[k] * &prev;
            prev = cur;
            cur = next;
        }
        (cur, prev)
    }

    /// `(H̃_n(x), H̃_n'(x)/√(2n))`; the second entry is zero for `n = 0`.
    pub fn polynomial_pair(&self, x: &Real) -> (Real, Real) {
        self.recur(x, self.start.clone())
    }

    /// `e^{-x²/2} H̃_n(x)`.
    pub fn hermite_function(&self, x: &Real, mp: &mut Mp) -> Real {
        let half_sq = (x * x).ldexp(-1);
        let g0 = &self.start * &mp.exp(&-half_sq);
        self.recur(x, g0).0
    }

    /// `ρ_n(x) = e^{-x²} H̃_n(x)²`.
    pub fn eval(&self, x: &Real, mp: &mut Mp) -> Real {
        let psi = self.hermite_function(x, mp);
        &psi * &psi
    }
}

/// `ρ_n(x)` at `precision_bits` bits.
pub fn density_eval(n: usize, x: &Real, precision_bits: usize) -> Real {
    let mut mp = Mp::new(precision_bits);
    RakhmanovDensity::new(n, &mut mp).eval(&x.with_prec(precision_bits), &mut mp)
}
