mod common;

use common::{agree, int, qq};
use mform::{Coeff, Cyclotomic, Error, FactorProduct, QYSeries, Span, Q};
use proptest::prelude::*;

fn eta_pow(k: i64) -> FactorProduct<Q> {
    FactorProduct::monomial(int(1), 0, k).with(int(1), 0, Span::Family { slope: 24, offset: 0 }, k)
}

fn theta1_sq() -> FactorProduct<Q> {
    FactorProduct::monomial(int(-1), 1, 6)
        .with(int(1), -1, Span::Family { slope: 24, offset: -24 }, 2)
        .with(int(1), 1, Span::Family { slope: 24, offset: 0 }, 2)
        .with(int(1), 0, Span::Family { slope: 24, offset: 0 }, 2)
}

#[test]
fn eta_cubed_to_q2() {
    let s = eta_pow(3).expand(51, 0).unwrap();
    assert_eq!(s.coeff(3, 0).unwrap(), int(1));
    assert_eq!(s.coeff(27, 0).unwrap(), int(-3));
    assert_eq!(s.coeff(51, 0).unwrap(), int(0));
    assert_eq!(s.len(), 2);
    assert!(matches!(s.coeff(75, 0), Err(Error::Window(_))));
}

#[test]
fn empty_product_is_one() {
    let s = FactorProduct::<Q>::one().expand(240, -40).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s.coeff(0, 0).unwrap(), int(1));
}

#[test]
fn inverse_square_geometric_tail() {
    let fp = FactorProduct::<Q>::one().with(int(1), -1, Span::Single(0), -2);
    let s = fp.expand(0, -3).unwrap();
    for k in 0..=3 {
        assert_eq!(s.coeff(0, -k).unwrap(), int(k + 1));
    }
    assert_eq!(s.len(), 4);
    assert!(matches!(s.coeff(0, -4), Err(Error::Window(_))));
}

#[test]
fn divergent_factor_is_a_domain_error() {
    let fp = FactorProduct::<Q>::one().with(int(1), 1, Span::Single(0), -1);
    assert!(matches!(fp.expand(24, -5), Err(Error::Domain(_))));
    let fp = FactorProduct::<Q>::one().with(int(1), 0, Span::Single(0), -1);
    assert!(matches!(fp.expand(24, -5), Err(Error::Pole(_))));
}

#[test]
fn huge_window_is_a_capacity_error() {
    let fp = theta1_sq();
    assert!(matches!(fp.expand(1 << 41, -5), Err(Error::Capacity(_))));
    assert!(matches!(fp.expand(2_000_000, -2_000_000), Err(Error::Capacity(_))));
}

#[test]
fn eta_cubed_matches_jacobi_identity() {
    // eta^3 = sum (-1)^n (2n+1) q^((2n+1)^2/8)
    let s = eta_pow(3).expand(24 * 30, 0).unwrap();
    let mut want = common::Poly::new();
    for n in 0..20i64 {
        let e = 3 * (2 * n + 1) * (2 * n + 1);
        if e <= 24 * 30 {
            want.insert((e, 0), int(if n % 2 == 0 { 2 * n + 1 } else { -(2 * n + 1) }));
        }
    }
    agree(&s, &want, 24 * 30, 0, 0).unwrap();
}

#[test]
fn eta_cubed_times_eta_is_eta_fourth() {
    let a = eta_pow(3).expand(240, 0).unwrap();
    let b = eta_pow(1).expand(240, 0).unwrap();
    let c = a.mul(&b);
    let d = eta_pow(4).expand(c.qmax24(), 0).unwrap();
    assert!(c.qmax24() >= 240);
    assert_eq!(c.first_difference(&d, c.qmax24(), 0, 0).unwrap(), None);
}

#[test]
fn times_one_is_identity() {
    let s = theta1_sq().expand(120, -10).unwrap();
    let t = s.mul(&QYSeries::one());
    assert_eq!(t.qmax24(), s.qmax24());
    assert_eq!(t.ylow(), s.ylow());
    assert_eq!(t, s);
}

#[test]
fn plus_zero_and_negation() {
    let s = eta_pow(4).expand(120, 0).unwrap();
    assert_eq!(s.add(&QYSeries::zero(120, 0)), s);
    let n = s.negate();
    for (k, v) in s.iter() {
        assert_eq!(n.coeff(k.0, k.1).unwrap(), -v.clone());
    }
}

#[test]
fn theta1_squared_times_its_inverse_is_one() {
    let th = theta1_sq();
    let inv = th.inverse().unwrap();
    let a = th.expand(240, -30).unwrap();
    let b = inv.expand(240, -30).unwrap();
    let p = a.mul(&b);
    assert!(p.qmax24() >= 200, "window {}", p.qmax24());
    assert!(p.ylow() <= -10, "ylow {}", p.ylow());
    agree(&p, &common::one(), p.qmax24(), p.ylow(), 100).unwrap();
}

#[test]
fn theta1_squared_is_not_y_free() {
    let s = theta1_sq().expand(48, 0).unwrap();
    assert_eq!(s.assert_y_free().unwrap_err(), Error::NotYFree { n24: 6, r: 1 });
    assert!(eta_pow(3).expand(48, 0).unwrap().assert_y_free().is_ok());
}

#[test]
fn theta1_squared_leading_polynomial_sums_to_zero() {
    let s = theta1_sq().expand(6, -1).unwrap();
    assert_eq!(s.coeff(6, 1).unwrap(), int(-1));
    assert_eq!(s.coeff(6, 0).unwrap(), int(2));
    assert_eq!(s.coeff(6, -1).unwrap(), int(-1));
    let v = s.specialize_y_one().unwrap();
    assert_eq!(v.coeff(6).unwrap(), int(0));
    let one = QYSeries::<Q>::one().specialize_y_one().unwrap();
    assert_eq!(one.coeff(0).unwrap(), int(1));
}

#[test]
fn specialize_rejects_unbounded_tails() {
    let fp = FactorProduct::<Q>::one().with(int(1), -1, Span::Single(0), -1);
    let s = fp.expand(0, -5).unwrap();
    assert!(matches!(s.specialize_y_one(), Err(Error::Window(_))));
}

#[test]
fn rationality_examples() {
    let i = Cyclotomic::root(4, 1);
    let x = &i.pow(12) - &Cyclotomic::from_integer(1);
    assert_eq!(x.rationality_check().unwrap(), int(0));
    let s = &Cyclotomic::root(3, 1) + &Cyclotomic::root(3, 2);
    assert_eq!(s.rationality_check().unwrap(), int(-1));
    assert!(matches!(Cyclotomic::root(5, 1).rationality_check(), Err(Error::Rationality(_))));
}

#[test]
fn cyclotomic_series_scale_and_rationalize() {
    let s = eta_pow(3).expand(72, 0).unwrap().map(|c| Cyclotomic::from_rational(c.clone()));
    let z = Cyclotomic::root(3, 1);
    let t = s.scale(&z).add(&s.scale(&z.conj()));
    // zeta + zeta^-1 = -1
    let r = t.to_rational().unwrap();
    assert_eq!(r, eta_pow(3).expand(72, 0).unwrap().negate());
    assert!(s.scale(&z).to_rational().is_err());
}

#[test]
fn window_error_instead_of_silent_zero() {
    let s = eta_pow(1).expand(48, 0).unwrap();
    assert!(s.coeff(49, 0).is_err());
    assert!(s.coeff(0, -1).is_err());
    assert!(s.truncate(72, 0).is_err());
    assert_eq!(s.truncate(24, 0).unwrap().coeff(24, 0).unwrap(), int(0));
}

#[test]
fn apply_requires_a_wide_enough_input() {
    let s = eta_pow(1).expand(48, 0).unwrap();
    assert!(theta1_sq().apply(&s, 54, -3).is_err());
    let s = s.assert_y_free().unwrap().to_qy();
    assert!(theta1_sq().apply(&s, 96, -3).is_err());
    let ok = theta1_sq().apply(&s, 54, -3).unwrap();
    let want = theta1_sq().mul(&eta_pow(1)).expand(54, -3).unwrap();
    assert_eq!(ok.first_difference(&want, 54, -3, 10).unwrap(), None);
}

fn arb_factor() -> impl Strategy<Value = (Q, i64, Span, i64)> {
    let c = prop_oneof![Just(int(1)), Just(int(-1)), Just(int(2)), Just(qq(1, 2)), Just(qq(-1, 3))];
    let span = prop_oneof![
        (0i64..4).prop_map(|k| Span::Single(12 * k)),
        (1i64..3, 0i64..3).prop_map(|(s, o)| Span::Family { slope: 12 * s, offset: -(6 * s * o) }),
    ];
    (c, -1i64..=1, span, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)])
}

fn arb_fp() -> impl Strategy<Value = FactorProduct<Q>> {
    (proptest::collection::vec(arb_factor(), 0..4), -1i64..=1, 0i64..12).prop_map(|(fs, a0, b0)| {
        let mut fp = FactorProduct::monomial(int(1), a0, b0);
        for (c, a, s, e) in fs {
            fp = fp.with(c, a, s, e);
        }
        fp
    })
}

fn arb_poly_series() -> impl Strategy<Value = QYSeries<Q>> {
    proptest::collection::vec(((0i64..60), (-3i64..=2), (-5i64..=5)), 0..8).prop_map(|ts| {
        let entries: Vec<_> = ts.into_iter().map(|(n, r, c)| ((n, r), int(c))).collect();
        let b = entries.iter().map(|((n, r), _)| 24 * r - n).max().unwrap_or(0);
        QYSeries::from_entries(entries, 120, -6, 0, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expand_matches_brute_force(fp in arb_fp()) {
        let s = match fp.expand(96, -4) {
            Ok(s) => s,
            Err(Error::Domain(_)) | Err(Error::Pole(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let p = common::product(&fp, 96, -80);
        agree(&s, &p, 96, -4, 40).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn expand_of_product_is_product_of_expansions(f1 in arb_fp(), f2 in arb_fp()) {
        let (Ok(a), Ok(b)) = (f1.expand(96, -6), f2.expand(72, -5)) else { return Ok(()) };
        let p = a.mul(&b);
        if p.qmax24() < 0 || p.ylow() > 0 {
            return Ok(());
        }
        let direct = f1.mul(&f2).expand(p.qmax24(), p.ylow()).unwrap();
        prop_assert_eq!(p.first_difference(&direct, p.qmax24(), p.ylow(), 50).unwrap(), None);
    }

    #[test]
    fn windows_from_different_truncations_agree(fp in arb_fp(), q1 in 24i64..120, y1 in -8i64..0) {
        let (Ok(a), Ok(b)) = (fp.expand(q1, y1), fp.expand(120, -8)) else { return Ok(()) };
        prop_assert_eq!(a.first_difference(&b, q1, y1, 50).unwrap(), None);
        let t = b.truncate(q1, y1).unwrap();
        prop_assert_eq!(t, a);
    }

    #[test]
    fn ring_laws(a in arb_poly_series(), b in arb_poly_series(), c in arb_poly_series()) {
        let ab_c = a.mul(&b).mul(&c);
        let a_bc = a.mul(&b.mul(&c));
        let (q, y) = (ab_c.qmax24().min(a_bc.qmax24()), ab_c.ylow().max(a_bc.ylow()));
        prop_assert_eq!(ab_c.first_difference(&a_bc, q, y, 50).unwrap(), None);
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        prop_assert_eq!(ab.first_difference(&ba, ab.qmax24(), ab.ylow(), 50).unwrap(), None);
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        let (q, y) = (l.qmax24().min(r.qmax24()), l.ylow().max(r.ylow()));
        prop_assert_eq!(l.first_difference(&r, q, y, 50).unwrap(), None);
    }

    #[test]
    fn product_window_is_sound(a in arb_poly_series(), b in arb_poly_series()) {
        // the polynomials are exact everywhere; truncate them and check the claim
        let ta = a.truncate(90, -4).unwrap();
        let tb = b.truncate(100, -3).unwrap();
        let p = ta.mul(&tb);
        let full = common::mul(&common::to_poly(&a), &common::to_poly(&b), 1000, -1000);
        agree(&p, &full, p.qmax24(), p.ylow(), 50).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn conj_is_an_involution(k in 0i64..60, n in prop::sample::select(vec![3u32, 4, 5, 7, 8, 12, 15, 20])) {
        let x = &Cyclotomic::root(n, k) + &Cyclotomic::from_rational(qq(k, 7));
        prop_assert_eq!(x.conj().conj(), x.clone());
        let one = Cyclotomic::from_integer(1);
        let z = &one - &Cyclotomic::root(n, k);
        let norm = &z * &z.conj();
        prop_assert_eq!(norm.conj(), norm.clone());
        // the real subfield is Q exactly for orders 3, 4 and 6
        if [3, 4, 6].contains(&n) {
            prop_assert!(norm.rationality_check().is_ok());
        }
    }
}

#[test]
fn coefficient_type_roundtrip() {
    assert_eq!(<Q as Coeff>::from_int(-3).pow(3), int(-27));
}
