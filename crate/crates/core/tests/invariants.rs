use hermite_spread_core::analysis::linear_fit;
use hermite_spread_core::entropic::{entropic_moment, laguerre, moment_radicand, renyi_length};
use hermite_spread_core::exactreal::ExactReal;
use hermite_spread_core::hermite::{fisher_length, moment, standard_deviation};
use hermite_spread_core::mp::{Mp, Real};
use hermite_spread_core::oscillator::{
    ho_entropic_moment, ho_fisher_information, ho_fisher_length, ho_moment,
    ho_onicescu_heller_length, ho_renyi_length, ho_standard_deviation, OscillatorParams,
};
use hermite_spread_core::polypow::{
    bell_enumerated, bell_recurrence, poly_power_bell, poly_power_direct, DensePolynomial,
};
use hermite_spread_core::entropic::onicescu_heller_length;
use hermite_spread_core::hermite::fisher_information;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, d)| q(p, d))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=40, 1i64..=12, any::<bool>()).prop_map(|(p, d, neg)| q(if neg { -p } else { p }, d))
}

fn exact() -> impl Strategy<Value = ExactReal> {
    (rational(), 1u32..=60, -5i32..=5)
        .prop_map(|(r, t, a)| ExactReal::normalize(r, BigUint::from(t), a))
}

fn polynomial() -> impl Strategy<Value = DensePolynomial<BigRational>> {
    prop::collection::vec(rational(), 1..=7).prop_map(DensePolynomial::new)
}

fn factorial(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, i| acc * q(i as i64, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(x in exact()) {
        let again = ExactReal::normalize(x.rational().clone(), x.radicand().clone(), x.pi_half_exp());
        prop_assert_eq!(&again, &x);
        let (_, f) = hermite_spread_core::exactreal::split_square(x.radicand());
        prop_assert_eq!(&f, x.radicand());
    }

    #[test]
    fn products_commute_and_associate(x in exact(), y in exact(), z in exact()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        let p = x.mul(&y);
        prop_assert_eq!(ExactReal::normalize(p.rational().clone(), p.radicand().clone(), p.pi_half_exp()), p);
    }

    #[test]
    fn sums_on_a_shared_kind(a in rational(), b in rational(), c in rational(), t in 1u32..=60, e in -4i32..=4) {
        let mk = |r: &BigRational| ExactReal::normalize(r.clone(), BigUint::from(t), e);
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert_eq!(x.add(&ExactReal::zero()).unwrap(), x.clone());
        prop_assert_eq!(mk(&(a.clone() + &b)), x.add(&y).unwrap());
    }

    #[test]
    fn float_error_shrinks_with_precision(x in exact()) {
        let reference = x.to_float(256);
        let mut last = f64::INFINITY;
        for bits in [64usize, 96, 128, 192] {
            let err = (x.to_float(bits).with_prec(256) - &reference).abs().to_f64();
            prop_assert!(err <= last);
            last = err;
        }
    }

    #[test]
    fn text_form_round_trips(x in exact()) {
        let s = x.to_string();
        prop_assert_eq!(s.parse::<ExactReal>().unwrap(), x);
    }

    #[test]
    fn bell_power_matches_repeated_product(y in polynomial(), p in 1u32..=6) {
        prop_assert_eq!(poly_power_bell(&y, p), poly_power_direct(&y, p));
        prop_assert_eq!(y.pow(p), poly_power_direct(&y, p));
    }

    #[test]
    fn bell_homogeneity(args in prop::collection::vec(rational(), 9), lam in nonzero_rational(), m in 0usize..=8, l in 0usize..=8) {
        prop_assume!(l <= m);
        let scaled: Vec<_> = args.iter().map(|a| a * &lam).collect();
        let lhs = bell_recurrence(m, l, &scaled);
        let rhs = bell_recurrence(m, l, &args) * num_traits::pow(lam, l);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ols_scale_equivariance(s in 1i32..=50, noise in prop::collection::vec(-1.0f64..1.0, 12)) {
        let pts: Vec<_> = noise.iter().enumerate().map(|(i, e)| (i as f64, 0.7 * i as f64 + e)).collect();
        let s = s as f64 / 8.0;
        let scaled: Vec<_> = pts.iter().map(|(x, y)| (*x, y * s)).collect();
        let a = linear_fit(&pts).unwrap();
        let b = linear_fit(&scaled).unwrap();
        prop_assert!((b.slope - s * a.slope).abs() <= 1e-12 * (1.0 + b.slope.abs()));
        prop_assert!((b.intercept - s * a.intercept).abs() <= 1e-12 * (1.0 + b.intercept.abs()));
        prop_assert!((b.correlation - a.correlation).abs() <= 1e-14);
        prop_assert_eq!(linear_fit(&pts).unwrap(), a);
    }

    #[test]
    fn fisher_heisenberg_product(n in 0usize..=400) {
        let product = fisher_length(n).mul(&standard_deviation(n));
        prop_assert_eq!(product, ExactReal::from_rational(q(1, 2)));
        prop_assert!(fisher_length(n) <= standard_deviation(n));
        prop_assert!(fisher_length(n) <= fisher_length(0));
        prop_assert_eq!(moment(n, 0), BigRational::one());
    }
}

#[test]
fn bell_enumeration_matches_recurrence_on_random_arguments() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = (prop::collection::vec(rational(), 13), 0usize..=12, 0usize..=12);
    for _ in 0..200 {
        let (args, m, l) = strategy.new_tree(&mut runner).unwrap().current();
        if l > m {
            continue;
        }
        assert_eq!(bell_enumerated(m, l, &args), bell_recurrence(m, l, &args), "m={m} l={l}");
    }
}

#[test]
fn comtet_identity() {
    // (1/k!) Σ_{j=0}^p c_0^j/j! B_{k,p-j}(c_1, 2!c_2, …) = B_{k+p,p}(c_0, 2!c_1, …)/(k+p)!
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for k in 0..=8usize {
        for p in 0..=8usize {
            let c = prop::collection::vec(rational(), k + 2)
                .new_tree(&mut runner)
                .unwrap()
                .current();
            let lhs_args: Vec<_> = (1..=k + 1).map(|i| &c[i] * factorial(i)).collect();
            let rhs_args: Vec<_> = (0..=k).map(|i| &c[i] * factorial(i + 1)).collect();
            let mut lhs = BigRational::zero();
            let mut c0_pow = BigRational::one();
            for j in 0..=p {
                lhs += &c0_pow / factorial(j) * bell_recurrence(k, p - j, &lhs_args);
                c0_pow *= &c[0];
            }
            lhs /= factorial(k);
            let rhs = bell_recurrence(k + p, p, &rhs_args) / factorial(k + p);
            assert_eq!(lhs, rhs, "k={k} p={p}");
        }
    }
}

#[test]
fn hermite_square_via_bell_and_convolution() {
    let d = hermite_spread_core::hermite::coefficients(2);
    let y = DensePolynomial::new(d.integer_parts().iter().map(|v| BigRational::from_integer(v.clone())).collect());
    assert_eq!(poly_power_bell(&y, 2), poly_power_direct(&y, 2));
}

#[test]
fn normalization_up_to_fifty() {
    for n in 0..=50 {
        assert_eq!(entropic_moment(n, 1).unwrap().value, ExactReal::one(), "n={n}");
    }
}

#[test]
fn moment_shape_up_to_order_eight() {
    for n in [0usize, 1, 2, 7, 15, 30] {
        for order in 1..=8u32 {
            let w = entropic_moment(n, order).unwrap().value;
            assert!(w.is_positive());
            assert_eq!(w.pi_half_exp(), 1 - order as i32);
            assert_eq!(w.radicand(), &moment_radicand(order));
        }
    }
}

fn closed_form_renyi_lengths(n: usize, order: u32, mp: &mut Mp) -> Real {
    let qf = mp.int(order as i64);
    let inv = mp.int(1) / (&qf - mp.int(1));
    let pi = mp.pi();
    let root_pi = pi.sqrt();
    match n {
        // π^{1/2} q^{1/(2(q-1))}
        0 => {
            let e = inv.ldexp(-1);
            &root_pi * &mp.powf(&qf, &e)
        }
        // (π^{1/2} q / 2)^{q/(q-1)} q^{1/(2(q-1))} Γ(q+1/2)^{-1/(q-1)}
        1 => {
            let os = order as usize;
            let gamma = mp.ratio(&(factorial(2 * os) / (num_traits::pow(q(4, 1), os) * factorial(os)))) * &root_pi;
            let base = (&root_pi * &qf).ldexp(-1);
            let a = mp.powf(&base, &(&qf * &inv));
            let b = mp.powf(&qf, &inv.ldexp(-1));
            let c = mp.powf(&gamma, &-inv.clone());
            a * b * c
        }
        // π^{1/2} 2^{q/(1-q)} q^{(4q+1)/(2q-2)} ((2q)! L_{2q}^{(-2q-1/2)}(-q/2))^{-1/(q-1)}
        2 => {
            let os = order as usize;
            let lag = laguerre(2 * os, &q(-(4 * order as i64 + 1), 2), &q(-(order as i64), 2));
            let inner = mp.ratio(&(factorial(2 * os) * lag));
            let two = mp.int(2);
            let a = mp.powf(&two, &-(&qf * &inv));
            let b = mp.powf(&qf, &((mp.int(4) * &qf + mp.int(1)) * &inv).ldexp(-1));
            let c = mp.powf(&inner, &-inv.clone());
            root_pi * a * b * c
        }
        _ => unreachable!(),
    }
}

#[test]
fn renyi_lengths_match_low_degree_closed_forms() {
    let mut mp = Mp::new(128);
    for n in 0..=2 {
        for order in 2..=5 {
            let expect = closed_form_renyi_lengths(n, order, &mut mp);
            let got = renyi_length(n, order, 128).unwrap().length;
            let rel = ((got - &expect) / &expect).abs().to_f64();
            assert!(rel < 1e-30, "n={n} q={order} rel={rel}");
        }
    }
}

#[test]
fn renyi_lengths_decrease_in_order() {
    for n in 0..=40 {
        let ls: Vec<f64> = (2..=5).map(|o| renyi_length(n, o, 128).unwrap().length.to_f64()).collect();
        for w in ls.windows(2) {
            assert!(w[0] >= w[1], "n={n} {ls:?}");
        }
    }
}

#[test]
fn oscillator_scaling_coherence() {
    for lam in [q(1, 4), q(1, 1), q(9, 1)] {
        let p = OscillatorParams::new(lam.clone()).unwrap();
        let root = ExactReal::sqrt_rational(&lam.recip()).unwrap();
        for n in 0..=10 {
            assert_eq!(ho_standard_deviation(n, &p), standard_deviation(n).mul(&root));
            assert_eq!(ho_fisher_length(n, &p), fisher_length(n).mul(&root));
            assert_eq!(ho_fisher_information(n, &p), fisher_information(n) * &lam);
            assert_eq!(
                ho_onicescu_heller_length(n, &p),
                onicescu_heller_length(n, 64).exact.mul(&root)
            );
            for k in 0..=8 {
                let scale = num_traits::pow(lam.clone(), k / 2);
                let expect = if k % 2 == 1 { BigRational::zero() } else { moment(n, k) / scale };
                assert_eq!(ho_moment(n, k, &p), expect);
            }
            for order in 2..=4u32 {
                let w = entropic_moment(n, order).unwrap().value;
                let expect = w.to_f64() * lam_f64(&lam).powf((order as f64 - 1.0) / 2.0);
                let got = ho_entropic_moment(n, order, &p).unwrap().to_f64();
                assert!((got / expect - 1.0).abs() < 1e-14);
                let l = renyi_length(n, order, 128).unwrap().length.to_f64();
                let lh = ho_renyi_length(n, order, &p, 128).unwrap().to_f64();
                assert!((lh / (l / lam_f64(&lam).sqrt()) - 1.0).abs() < 1e-14);
            }
        }
    }
}

fn lam_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

#[test]
fn lengths_scale_linearly() {
    // λ → λ/s² multiplies every length by s.
    let base = OscillatorParams::new(q(3, 1)).unwrap();
    for s in [2i64, 5] {
        let scaled = OscillatorParams::new(q(3, s * s)).unwrap();
        let factor = q(s, 1);
        for n in 0..=6 {
            assert_eq!(ho_standard_deviation(n, &scaled), ho_standard_deviation(n, &base).scale(&factor));
            assert_eq!(ho_fisher_length(n, &scaled), ho_fisher_length(n, &base).scale(&factor));
            assert_eq!(
                ho_onicescu_heller_length(n, &scaled),
                ho_onicescu_heller_length(n, &base).scale(&factor)
            );
        }
    }
}
