//! Panel quadrature for integrals of functions of `ρ_n` over the real line.
//!
//! `ρ_n` is even, so only `[0, X]` is integrated. The half-line is split at the
//! positive zeros of `H̃_n`, where `ln ρ_n` is singular, and past the largest
//! zero by unit-width panels out to the cutoff `X`. Every panel is
//! integrated by the tanh-sinh rule, whose nodes cluster toward both panel
//! ends and never touch them. Halving the step reuses every other node, and the
//! difference between the two levels drives the error estimate.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hermite::RakhmanovDensity;
use crate::mp::{Mp, Real};

/// Parameters of the panel quadrature.
///
/// * `nodes_per_panel`: tanh-sinh steps on each side of a panel midpoint, so a
///   panel uses `2·nodes_per_panel + 1` nodes.
/// * `tail_halfwidth_sigma`: the cutoff is
///   `tail_halfwidth_sigma·√(n+1/2) + √(precision_bits·ln 2) + 2`, moved further
///   out if the integrand there is not yet negligible.
/// * `zero_refine_tol`: absolute accuracy of the Hermite zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub nodes_per_panel: usize,
    pub tail_halfwidth_sigma: f64,
    pub precision_bits: usize,
    pub zero_refine_tol: f64,
}

impl Default for QuadratureConfig {
    /// 64 nodes per panel side at 128 bits.
    fn default() -> Self {
        QuadratureConfig::with_precision(128)
    }
}

impl QuadratureConfig {
    pub fn with_precision(precision_bits: usize) -> Self {
        // Scale the node count with the target precision: tanh-sinh error
        // decays like exp(-c/h).
        let exponent = (precision_bits * 25 / 32).min(1000) as i32;
        QuadratureConfig {
            nodes_per_panel: (precision_bits * 64).div_ceil(128).max(8),
            tail_halfwidth_sigma: 2.0,
            precision_bits,
            zero_refine_tol: libm::ldexp(1.0, -exponent),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_panel < 8 {
            return Err(Error::InvalidConfig("nodes_per_panel must be at least 8"));
        }
        if !(self.tail_halfwidth_sigma > 0.0 && self.tail_halfwidth_sigma.is_finite()) {
            return Err(Error::InvalidConfig("tail_halfwidth_sigma must be positive"));
        }
        if self.precision_bits < 53 {
            return Err(Error::InvalidConfig("precision_bits must be at least 53"));
        }
        if !(self.zero_refine_tol > 0.0 && self.zero_refine_tol.is_finite()) {
            return Err(Error::InvalidConfig("zero_refine_tol must be positive"));
        }
        Ok(())
    }

    /// Tolerance on the error estimate: `2^{-precision_bits/2}`.
    pub fn tolerance(&self) -> f64 {
        libm::ldexp(1.0, -(self.precision_bits as i32) / 2)
    }
}

/// An integral with its estimated absolute error.
#[derive(Clone, Debug)]
pub struct QuadratureValue {
    pub value: Real,
    pub error_estimate: f64,
}

/// Tanh-sinh nodes on `[0, 1]`: offset `u_k` from the nearer end and weight
/// `w_k` at `t = k·h`, `k = 0..=m`.
struct TanhSinh {
    h: Real,
    offsets: Vec<Real>,
    weights: Vec<Real>,
}

impl TanhSinh {
    fn new(m: usize, mp: &mut Mp) -> Self {
        let p = mp.prec();
        let pi = mp.pi();
        // u(t_max) ≈ 2^{-p}: π sinh t_max = p ln 2
        let t_max = libm::asinh(p as f64 * core::f64::consts::LN_2 / core::f64::consts::PI);
        let h = mp.real(t_max) / mp.int(m as i64);
        let mut offsets = Vec::with_capacity(m + 1);
        let mut weights = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let t = &h * &mp.int(k as i64);
            let et = mp.exp(&t);
            let eti = et.recip();
            let sinh = (&et - &eti).ldexp(-1);
            let cosh = (&et + &eti).ldexp(-1);
            // s = (π/2) sinh t; e^{-2s}
            let s = (&pi * &sinh).ldexp(-1);
            let e = mp.exp(&-(s.ldexp(1)));
            let one = Real::one(p);
            let denom = &one + &e;
            offsets.push(&e / &denom);
            weights.push(&pi * &cosh * &e / (&denom * &denom));
        }
        TanhSinh { h, offsets, weights }
    }
}

const TAIL_PANEL_WIDTH: f64 = 1.0;

/// Positive breakpoints `0 = b_0 < b_1 < … < b_r = X` from the positive zeros
/// in decreasing order.
fn breakpoints(positive_zeros: &[Real], cutoff: &Real, mp: &Mp) -> Vec<Real> {
    let mut pts = Vec::with_capacity(positive_zeros.len() + 16);
    pts.push(mp.int(0));
    for z in positive_zeros.iter().rev() {
        if !z.is_zero() {
            pts.push(z.clone());
        }
    }
    let mut x = pts.last().cloned().expect("nonempty");
    let width = mp.real(TAIL_PANEL_WIDTH);
    loop {
        let next = &x + &width;
        if next >= *cutoff {
            pts.push(cutoff.clone());
            break;
        }
        pts.push(next.clone());
        x = next;
    }
    pts
}

/// `2 ∫_0^X f` over panels, returning the fine-level sum, the difference to the
/// coarse level, and the integrand magnitude at the cutoff.
fn integrate_even<F>(
    pts: &[Real],
    rule: &TanhSinh,
    mp: &mut Mp,
    mut f: F,
) -> (Real, Real)
where
    F: FnMut(&Real, &mut Mp) -> Real,
{
    let m = rule.offsets.len() - 1;
    let mut fine = mp.int(0);
    let mut coarse = mp.int(0);
    for pair in pts.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let len = b - a;
        let mid = (a + b).ldexp(-1);
        let mut s_fine = &rule.weights[0] * &f(&mid, mp);
        let mut s_coarse = s_fine.clone();
        for k in 1..=m {
            let d = &len * &rule.offsets[k];
            let left = f(&(a + &d), mp);
            let right = f(&(b - &d), mp);
            let contrib = &rule.weights[k] * &(left + right);
            if k % 2 == 0 {
                s_coarse = s_coarse + &contrib;
            }
            s_fine = s_fine + contrib;
        }
        fine = fine + s_fine * &len;
        coarse = coarse + s_coarse * &len;
    }
    // Both halves of the line, times the step of each level.
    let fine = (fine * &rule.h).ldexp(1);
    let coarse = (coarse * &rule.h).ldexp(2);
    (fine, coarse)
}

/// Number of zeros of `H_n` below `x`, by Sturm counting on the Jacobi matrix
/// with zero diagonal and off-diagonal `√(k/2)`.
fn zeros_below(n: usize, x: f64) -> usize {
    let mut count = 0;
    let mut d = -x;
    for k in 0..n {
        if k > 0 {
            let denom = if d == 0.0 { f64::EPSILON } else { d };
            d = -x - (k as f64 / 2.0) / denom;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `j`-th zero (from the bottom) of `H_n` in double precision, by
/// bisection.
fn zero_by_bisection(n: usize, j: usize) -> f64 {
    let mut lo = -libm::sqrt(2.0 * n as f64 + 1.0) - 1.0;
    let mut hi = -lo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if zeros_below(n, mid) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Zeros of `H̃_n` on `[0, ∞)` in decreasing order, refined by Newton's method
/// from bisection starting points.
fn positive_zeros(dens: &RakhmanovDensity, tol: f64, mp: &mut Mp) -> Result<Vec<Real>> {
    let n = dens.degree();
    let count = n.div_ceil(2);
    let mut out: Vec<Real> = Vec::with_capacity(count);
    let scale = libm::sqrt(2.0 * n as f64);
    let tol_r = mp.real(tol);
    for i in 0..count {
        if n % 2 == 1 && i == count - 1 {
            out.push(mp.int(0));
            continue;
        }
        let g = zero_by_bisection(n, n - 1 - i);
        let mut x = mp.real(g);
        let mut converged = false;
        for _ in 0..200 {
            let (p, pm) = dens.polynomial_pair(&x);
            let dp = &pm * &mp.real(scale);
            if dp.is_zero() {
                break;
            }
            let dx = &p / &dp;
            x = &x - &dx;
            if dx.abs() <= tol_r {
                converged = true;
                break;
            }
        }
        if !converged || x.is_negative() {
            return Err(Error::ConvergenceFailure { n });
        }
        out.push(x);
    }
    for w in out.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::ConvergenceFailure { n });
        }
    }
    Ok(out)
}

/// All `n` zeros of `H̃_n`, increasing, to absolute accuracy `tol`.
///
/// The working precision is chosen from `tol`; the zeros are symmetric about 0
/// by construction.
pub fn hermite_zeros(n: usize, tol: f64) -> Result<Vec<Real>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig("zero tolerance must be positive"));
    }
    let bits = (-libm::log2(tol)).max(0.0) as usize + 64;
    let mut mp = Mp::new(bits.max(64));
    let dens = RakhmanovDensity::new(n, &mut mp);
    let pos = positive_zeros(&dens, tol, &mut mp)?;
    Ok(mirror(&pos))
}

pub(crate) fn mirror(decreasing_positive: &[Real]) -> Vec<Real> {
    let mut all: Vec<Real> = decreasing_positive
        .iter()
        .filter(|z| !z.is_zero())
        .map(|z| -z)
        .collect();
    all.extend(decreasing_positive.iter().rev().cloned());
    all
}

/// Shared setup for integrals over `ρ_n`: density evaluator, breakpoints and
/// tanh-sinh rule at the configured precision.
pub(crate) struct Panels {
    pub mp: Mp,
    pub dens: RakhmanovDensity,
    pub zeros: Vec<Real>,
    rule: TanhSinh,
    cutoff_base: Real,
}

impl Panels {
    pub fn new(n: usize, cfg: &QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        let mut mp = Mp::new(cfg.precision_bits);
        let dens = RakhmanovDensity::new(n, &mut mp);
        let zeros = positive_zeros(&dens, cfg.zero_refine_tol, &mut mp)?;
        let rule = TanhSinh::new(cfg.nodes_per_panel, &mut mp);
        let margin = libm::sqrt(cfg.precision_bits as f64 * core::f64::consts::LN_2) + 2.0;
        let mut cutoff = cfg.tail_halfwidth_sigma * libm::sqrt(n as f64 + 0.5) + margin;
        if let Some(z) = zeros.first() {
            cutoff = cutoff.max(z.to_f64() + margin);
        }
        Ok(Panels {
            cutoff_base: mp.real(cutoff),
            mp,
            dens,
            zeros,
            rule,
        })
    }

    /// `∫ f(x) dx` over the real line for an even integrand given pointwise by
    /// `f(x, H̃_n(x), mp)`.
    ///
    /// The cutoff is pushed outward until `|f|` there is below `2^{-p}`. The
    /// error estimate combines the tail and the squared level difference
    /// (tanh-sinh roughly doubles the correct digits per halving of `h`).
    pub fn integrate<F>(&mut self, cfg: &QuadratureConfig, mut f: F) -> Result<QuadratureValue>
    where
        F: FnMut(&Real, &Real, &mut Mp) -> Real,
    {
        let p = cfg.precision_bits as i32;
        let tiny = libm::ldexp(1.0, -p);
        let mut cutoff = self.cutoff_base.clone();
        let mut tail = f64::INFINITY;
        for _ in 0..32 {
            let (h, _) = self.dens.polynomial_pair(&cutoff);
            let v = f(&cutoff, &h, &mut self.mp).abs().to_f64();
            // Gaussian tail beyond X: ∫_X^∞ e^{-(x²-X²)} dx ≤ 1/(2X)
            tail = 2.0 * v / (2.0 * cutoff.to_f64());
            if v < tiny {
                break;
            }
            cutoff = &cutoff + &self.mp.int(2);
        }
        let pts = breakpoints(&self.zeros, &cutoff, &self.mp);
        let dens = &self.dens;
        let (fine, coarse) = integrate_even(&pts, &self.rule, &mut self.mp, |x, mp| {
            let (h, _) = dens.polynomial_pair(x);
            f(x, &h, mp)
        });
        let diff = (&fine - &coarse).abs().to_f64();
        let mag = fine.abs().to_f64().max(f64::MIN_POSITIVE);
        let rounding = tiny * mag * pts.len() as f64;
        let error_estimate = (diff * diff / mag).min(diff) + rounding + tail;
        let tolerance = cfg.tolerance() * mag.max(1.0);
        if !(error_estimate <= tolerance) {
            return Err(Error::PrecisionNotMet {
                estimate: error_estimate,
                tolerance,
            });
        }
        Ok(QuadratureValue {
            value: fine,
            error_estimate,
        })
    }
}

/// `∫ f dx` over the real line for an even integrand built from `H̃_n`: the
/// closure receives `x`, `H̃_n(x)` and the working context.
pub fn integrate_over_density<F>(n: usize, cfg: &QuadratureConfig, f: F) -> Result<QuadratureValue>
where
    F: FnMut(&Real, &Real, &mut Mp) -> Real,
{
    Panels::new(n, cfg)?.integrate(cfg, f)
}

/// `W_q[ρ_n] = ∫ ρ_n^q dx` for real `q > 0` by panel quadrature.
pub fn entropic_moment_quadrature(n: usize, q: &Real, cfg: &QuadratureConfig) -> Result<QuadratureValue> {
    if q.is_negative() || q.is_zero() {
        return Err(Error::Domain(alloc::format!("order must be positive, got {q}")));
    }
    let mut panels = Panels::new(n, cfg)?;
    let q = q.with_prec(cfg.precision_bits);
    panels.integrate(cfg, |x, h, mp| {
        if h.is_zero() {
            return mp.int(0);
        }
        // ρ^q = exp(q (ln H̃² - x²))
        let ln_h2 = mp.ln(&(h * h));
        mp.exp(&(&q * &(ln_h2 - x * x)))
    })
}
