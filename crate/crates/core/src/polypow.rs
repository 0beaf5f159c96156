//! Dense polynomials, multivariable Bell polynomials and polynomial powers.
//!
//! The coefficient of `x^k` in `(c_0 + c_1 x + … + c_n x^n)^p` equals
//! `p!/(k+p)! · B_{k+p,p}(c_0, 2!c_1, …, (k+1)!c_k)`. Both that Bell route and
//! plain repeated convolution are provided; they agree exactly, and the
//! convolution route is the one used by the entropic-moment pipeline.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{AddAssign, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Polynomial in one variable with coefficients indexed by power.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients and `degree()` is the index of the last stored one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensePolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Zero> DensePolynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        DensePolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }
}

impl<T> DensePolynomial<T>
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// Schoolbook convolution.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    /// `self^p` by binary exponentiation; `self^0 = 1`.
    pub fn pow(&self, p: u32) -> Self {
        let mut acc = Self::new(vec![T::one()]);
        let mut base = self.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Multiplicity vectors `(j_1, …, j_{m-l+1})` with `Σ j_i = l` and
/// `Σ i·j_i = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionConstraint {
    pub m: usize,
    pub l: usize,
}

impl PartitionConstraint {
    pub fn new(m: usize, l: usize) -> Self {
        PartitionConstraint { m, l }
    }

    /// Largest admissible part size, `m - l + 1` (zero when infeasible).
    pub fn max_index(&self) -> usize {
        if self.m < self.l {
            0
        } else {
            self.m - self.l + 1
        }
    }
}

/// All multiplicity vectors satisfying `c`, in ascending lexicographic order.
/// Infeasible constraints (`m < l`) give an empty stream.
pub fn enumerate_partitions(c: PartitionConstraint) -> impl Iterator<Item = Vec<u32>> {
    let mut out = Vec::new();
    let k = c.max_index();
    if k > 0 {
        let mut current = vec![0u32; k];
        fill_partitions(1, c.l, c.m, &mut current, &mut out);
    }
    out.into_iter()
}

fn fill_partitions(
    index: usize,
    parts_left: usize,
    weight_left: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let k = current.len();
    if index > k {
        if parts_left == 0 && weight_left == 0 {
            out.push(current.clone());
        }
        return;
    }
    // Remaining parts all have size in [index, k].
    if parts_left * index > weight_left || parts_left * k < weight_left {
        return;
    }
    let max_j = parts_left.min(weight_left / index);
    for j in 0..=max_j {
        current[index - 1] = j as u32;
        fill_partitions(index + 1, parts_left - j, weight_left - j * index, current, out);
    }
    current[index - 1] = 0;
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `B_{m,l}(x_1, …)` summed directly over the partitions of `m` into `l`
/// parts. Exponential in `m`; intended for small instances and as an oracle.
///
/// # Panics
/// If fewer than `m - l + 1` arguments are supplied.
pub fn bell_enumerated(m: usize, l: usize, args: &[BigRational]) -> BigRational {
    let c = PartitionConstraint::new(m, l);
    assert!(args.len() >= c.max_index(), "Bell polynomial needs m-l+1 arguments");
    let m_fact = BigRational::from_integer(factorial(m));
    let scaled: Vec<BigRational> = args
        .iter()
        .take(c.max_index())
        .enumerate()
        .map(|(i, x)| x / BigRational::from_integer(factorial(i + 1)))
        .collect();
    let mut total = BigRational::zero();
    for js in enumerate_partitions(c) {
        let mut term = m_fact.clone();
        for (i, &j) in js.iter().enumerate() {
            if j == 0 {
                continue;
            }
            term /= BigRational::from_integer(factorial(j as usize));
            term *= num_traits::pow(scaled[i].clone(), j as usize);
        }
        total += term;
    }
    total
}

/// Table `t[ll][d] = B_{ll+d, ll}(x)` for `ll ≤ l_max`, `d ≤ d_max`, from
/// `B_{m,l} = Σ_i C(m-1, i-1) x_i B_{m-i, l-1}`.
fn bell_table(l_max: usize, d_max: usize, args: &[BigRational]) -> Vec<Vec<BigRational>> {
    let m_max = l_max + d_max;
    let mut binom = vec![vec![BigInt::zero(); m_max + 1]; m_max + 1];
    for n in 0..=m_max {
        binom[n][0] = BigInt::one();
        for k in 1..=n {
            binom[n][k] = &binom[n - 1][k - 1] + &binom[n - 1][k];
        }
    }
    let mut t = vec![vec![BigRational::zero(); d_max + 1]; l_max + 1];
    t[0][0] = BigRational::one();
    for ll in 1..=l_max {
        for d in 0..=d_max {
            let m = ll + d;
            let mut acc = BigRational::zero();
            for i in 1..=d + 1 {
                let prev = &t[ll - 1][d + 1 - i];
                let x = &args[i - 1];
                if prev.is_zero() || x.is_zero() {
                    continue;
                }
                let c = BigRational::from_integer(binom[m - 1][i - 1].clone());
                acc += c * x * prev;
            }
            t[ll][d] = acc;
        }
    }
    t
}

/// `B_{m,l}(x_1, …)` by the convolution recurrence, `O((m-l)²·l)` operations.
///
/// # Panics
/// If fewer than `m - l + 1` arguments are supplied.
pub fn bell_recurrence(m: usize, l: usize, args: &[BigRational]) -> BigRational {
    if m < l {
        return BigRational::zero();
    }
    if l == 0 {
        return if m == 0 { BigRational::one() } else { BigRational::zero() };
    }
    let d = m - l;
    assert!(args.len() > d, "Bell polynomial needs m-l+1 arguments");
    bell_table(l, d, args).swap_remove(l).swap_remove(d)
}

/// `y^p` with the coefficient of `x^k` computed as
/// `p!/(k+p)! · B_{k+p,p}(c_0, 2!c_1, …, (k+1)!c_k)`, `c_i = 0` for `i > n`.
pub fn poly_power_bell(y: &DensePolynomial<BigRational>, p: u32) -> DensePolynomial<BigRational> {
    assert!(p >= 1, "power must be positive");
    let Some(n) = y.degree() else {
        return DensePolynomial::zero();
    };
    let p = p as usize;
    let top = n * p;
    // x_i = i!·c_{i-1}
    let args: Vec<BigRational> = (1..=top + 1)
        .map(|i| {
            y.coeff(i - 1)
                .map(|c| c * BigRational::from_integer(factorial(i)))
                .unwrap_or_else(BigRational::zero)
        })
        .collect();
    let table = bell_table(p, top, &args);
    let p_fact = factorial(p);
    let coeffs = (0..=top)
        .map(|k| {
            let w = BigRational::new(p_fact.clone(), factorial(k + p));
            w * &table[p][k]
        })
        .collect();
    DensePolynomial::new(coeffs)
}

/// `y^p` as `p - 1` successive multiplications.
pub fn poly_power_direct<T>(y: &DensePolynomial<T>, p: u32) -> DensePolynomial<T>
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    assert!(p >= 1, "power must be positive");
    let mut acc = y.clone();
    for _ in 1..p {
        acc = acc.mul(y);
    }
    acc
}
