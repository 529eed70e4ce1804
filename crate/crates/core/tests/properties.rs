use approx::assert_relative_eq;
use harmonic_atlas::harmonic::{conjectured_bounds_exact, harmonic_koebe_exact, shear_construct, HarmonicMap};
use harmonic_atlas::metrics::{spherical_area, Normalization};
use harmonic_atlas::modular_q::q_coefficients;
use harmonic_atlas::quadrature::DiskQuadrature;
use harmonic_atlas::subordination::{
    beta_relations, e_alpha_coefficients, missed_disk_a2_bound, rogosinski_check, sample_candidates, subordinate_to_q,
    MissedDiskDatum, SchwarzCandidate,
};
use harmonic_atlas::{Complex64, TruncatedSeries, VerificationReport};
use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn c64() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn series(len: usize) -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(c64(), len).prop_map(|v| TruncatedSeries::new(v).unwrap())
}

fn disk_point(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Plain O(N²) truncated product.
fn naive_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    let mut out = vec![Complex64::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a)
}

fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

/// `16 z ∏ ((1 + z^{2n}) / (1 - z^{2n-1}))⁸` in double precision.
fn q_float(order: usize) -> Vec<f64> {
    let mut p = vec![0.0; order];
    p[0] = 1.0;
    let mul_by = |p: &mut Vec<f64>, k: usize, sign: f64| {
        for i in (k..p.len()).rev() {
            p[i] += sign * p[i - k];
        }
    };
    let div_by_one_minus = |p: &mut Vec<f64>, k: usize| {
        for i in k..p.len() {
            p[i] += p[i - k];
        }
    };
    for _ in 0..8 {
        for n in 1..=order {
            if 2 * n < order {
                mul_by(&mut p, 2 * n, 1.0);
            }
            if 2 * n - 1 < order {
                div_by_one_minus(&mut p, 2 * n - 1);
            }
        }
    }
    p.iter().map(|x| 16.0 * x).collect()
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_commutes_and_associates(a in series(9), b in series(9), c in series(9)) {
        prop_assert!(close(&a.mul(&b), &b.mul(&a), 1e-13));
        prop_assert!(close(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)), 1e-12));
        let naive = TruncatedSeries::new(naive_mul(a.coeffs(), b.coeffs())).unwrap();
        prop_assert!(close(&a.mul(&b), &naive, 1e-13));
    }

    #[test]
    fn reciprocal_inverts(mut v in proptest::collection::vec(c64(), 10), c0 in disk_point(0.4)) {
        v[0] = Complex64::new(1.0, 0.0) + c0;
        let s = TruncatedSeries::new(v).unwrap();
        let prod = s.mul(&s.reciprocal().unwrap());
        let expected = TruncatedSeries::one(s.order());
        prop_assert!(prod.max_abs_diff(&expected) < 1e-9);
    }

    #[test]
    fn derivative_matches_finite_difference(s in series(8), z in disk_point(0.6)) {
        let h = 1e-5;
        let fd = (s.evaluate(z + h) - s.evaluate(z - h)) / (2.0 * h);
        prop_assert!((s.derivative().evaluate(z) - fd).norm() < 1e-6);
    }

    #[test]
    fn composition_matches_evaluation(f in series(4), g in series(4), z in disk_point(0.9)) {
        // exact when the order covers deg f · deg g
        let mut gc = g.coeffs().to_vec();
        gc[0] = Complex64::zero();
        let g = TruncatedSeries::new(gc).unwrap().truncate(9);
        let f = f.truncate(9);
        let fg = f.compose(&g).unwrap();
        let direct = horner(f.coeffs(), horner(g.coeffs(), z));
        prop_assert!((fg.evaluate(z) - direct).norm() < 1e-10 * (1.0 + direct.norm()));
    }

    #[test]
    fn q_truncation_is_stable(n in 1usize..60, m in 1usize..60) {
        let (lo, hi) = (n.min(m), n.max(m));
        let a = q_coefficients(lo);
        let b = q_coefficients(hi);
        prop_assert_eq!(a.coeffs(), &b.coeffs()[..lo]);
        prop_assert!(b.coeffs().iter().all(|c| (c % BigInt::from(16)).is_zero()));
    }

    #[test]
    fn shear_satisfies_its_equations(
        phi in proptest::collection::vec(disk_point(0.15), 4),
        f in proptest::collection::vec(c64(), 5),
    ) {
        let order = 24;
        let phi_s = TruncatedSeries::new(phi).unwrap().truncate(order);
        let mut fc = vec![Complex64::zero(), Complex64::new(1.0, 0.0)];
        fc.extend(f.iter().map(|c| c * 0.2));
        let big_f = TruncatedSeries::new(fc).unwrap().truncate(order);
        let map = shear_construct(&phi_s, &big_f).unwrap();
        // h - g = F
        prop_assert!(map.h().sub(map.g()).max_abs_diff(&big_f) < 1e-12);
        // g' = φ h' up to the truncation order
        let dh = map.h().derivative();
        let rhs = naive_mul(phi_s.coeffs(), dh.coeffs());
        let dg = map.g().derivative();
        for k in 0..dg.coeffs().len() {
            prop_assert!((dg.coeffs()[k] - rhs[k]).norm() < 1e-11, "k = {}", k);
        }
    }

    #[test]
    fn linear_shear_jacobian_positive(c in disk_point(0.95), z in disk_point(0.99)) {
        let phi = TruncatedSeries::monomial(c, 1, 32);
        let f = shear_construct(&phi, &TruncatedSeries::identity(32)).unwrap();
        prop_assert!(f.jacobian(z) > 0.0);
    }

    #[test]
    fn missed_disk_bound_decreases_in_r(c in disk_point(3.0), t1 in 0.0625..1.0f64, t2 in 0.0625..1.0f64) {
        prop_assume!(c.norm() > 1e-3);
        let (lo, hi) = (t1.min(t2), t1.max(t2));
        let b = |t: f64| missed_disk_a2_bound(&MissedDiskDatum::new(c, t * c.norm(), None).unwrap());
        prop_assert!(b(hi) <= b(lo) + 1e-12);
        prop_assert!(b(lo) <= c.norm() * 20.9197 + 1e-9);
    }

    #[test]
    fn e_alpha_matches_laguerre_sum(alpha in 0.01..6.0f64) {
        let s = e_alpha_coefficients(alpha, 12).unwrap();
        prop_assert!((s.coeff(0).re - 1.0).abs() < 1e-14);
        let mut fact = 1.0;
        let powers: Vec<f64> = (0..=12).map(|k| { if k > 0 { fact *= k as f64; } alpha.powi(k) / fact }).collect();
        for n in 1..=12u64 {
            let closed: f64 = (1..=n).map(|k| binomial(n - 1, k - 1) * powers[k as usize]).sum();
            prop_assert!((s.coeff(n as usize).re - closed).abs() <= 1e-12 * closed.max(1.0));
            prop_assert!(s.coeff(n as usize).im.abs() < 1e-12);
        }
    }

    #[test]
    fn beta_relations_match_composition(seed in any::<u64>(), a in disk_point(3.0)) {
        let phi = &sample_candidates(seed, 1, 8)[0];
        let direct = subordinate_to_q(a, phi, &q_coefficients(8)).unwrap();
        let rel = beta_relations(a, phi);
        for n in 1..=3 {
            prop_assert!((direct.coeff(n) - rel[n - 1]).norm() < 1e-10);
        }
    }

    #[test]
    fn report_passes_iff_margin_within_tolerance(m in -1.0..1.0f64, tol in 0.0..0.5f64) {
        let r = VerificationReport::from_margin("p", 0.0, 0.0, m, tol, "p");
        prop_assert_eq!(r.passed, m >= -tol);
    }

    #[test]
    fn disk_rule_integrates_even_powers(k in 0i32..12, rho in 0.1..1.0f64) {
        let q = DiskQuadrature::with_radius(rho, 16, 4).unwrap();
        let got = q.integrate(|z| Ok::<_, ()>(z.norm_sqr().powi(k))).unwrap();
        let exact = std::f64::consts::PI * rho.powi(2 * k + 2) / (k + 1) as f64;
        prop_assert!((got - exact).abs() < 1e-12 * exact.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn rogosinski_holds_on_a_thousand_candidates(seed in any::<u64>()) {
        let q = q_coefficients(30);
        for phi in sample_candidates(seed, 1000, 30) {
            for scale in [1.0 / 16.0, 0.25, 1.0] {
                let f = subordinate_to_q(Complex64::new(-scale, 0.0), &phi, &q).unwrap();
                let r = rogosinski_check(&f, &q, scale);
                prop_assert!(r.passed, "{:?}", r);
            }
        }
    }

    #[test]
    fn spherical_area_below_sphere(c in disk_point(0.9), s in 0.5..20.0f64) {
        let phi = TruncatedSeries::monomial(c, 1, 64);
        let f = shear_construct(&phi, &TruncatedSeries::identity(64)).unwrap();
        let f = HarmonicMap::new(f.h().scale(Complex64::new(s, 0.0)), f.g().scale(Complex64::new(s, 0.0)));
        let q = DiskQuadrature::new(0.98, 96, 96).unwrap();
        let a = spherical_area(&f, &q, Normalization::PaperLiteral).unwrap();
        prop_assert!(a.value > 0.0 && a.value <= std::f64::consts::PI + 1e-9);
    }
}

#[test]
fn q_float_oracle_agrees_at_order_40() {
    let exact = q_coefficients(40).to_f64();
    let float = q_float(40);
    for (n, (e, f)) in exact.iter().zip(&float).enumerate() {
        assert_relative_eq!(*e, *f, max_relative = 1e-12);
        assert!(*e > 0.0, "A_{} not positive", n + 1);
    }
}

#[test]
fn koebe_coefficients_attain_conjectured_bounds() {
    let k = harmonic_koebe_exact(50);
    for n in 2..=50i64 {
        let a = Rational64::new((n + 1) * (2 * n + 1), 6);
        let b = Rational64::new((n - 1) * (2 * n - 1), 6);
        assert_eq!(k.a[n as usize], a);
        assert_eq!(k.b[n as usize], b);
        assert_eq!((a - b).abs(), Rational64::from_integer(n));
        assert_eq!(conjectured_bounds_exact(n as u32), (a, b, Rational64::from_integer(n)));
    }
}

#[test]
fn identity_witness_of_schwarz_candidates() {
    let phi = SchwarzCandidate::blaschke(0.0, &[], 4);
    assert_eq!(phi.beta(1), Complex64::new(1.0, 0.0));
    assert_eq!(phi.beta(2), Complex64::zero());
}
