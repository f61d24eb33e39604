//! Derived coefficient families against the published closed forms. Every
//! comparison is exact rational equality.

use kiv_zeros::coeffs::{derive_saddle_coeffs, tables};
use kiv_zeros::series::rat;

mod common;
use common::{poly, published_a, published_c};

#[test]
fn saddle_coefficients_equal_published_table() {
    let derived = derive_saddle_coeffs(5).unwrap();
    for (k, (d, p)) in derived.iter().zip(published_c()).enumerate() {
        assert_eq!(*d, p, "C_{k}: derived {}", d.display_with("s"));
    }
}

#[test]
fn c4_constant_term() {
    assert_eq!(derive_saddle_coeffs(4).unwrap()[4].constant_term(), rat(35, 32768));
}

#[test]
fn a_expansions_leading_terms() {
    let t = tables();
    let a = &t.a_expansions;
    assert_eq!(a[0].coeff(0), poly(&[(1, 12)]));
    assert_eq!(a[0].coeff(1), poly(&[(1, 4)]));
    assert_eq!(a[0].coeff(2), poly(&[(11, 32)]));
    assert_eq!(a[1].coeff(0), poly(&[(1, 360)]));
    assert_eq!(a[1].coeff(1), poly(&[(-1, 4)]));
    assert_eq!(a[2].coeff(0), poly(&[(1, 1260)]));
}

#[test]
fn epsilon_series_through_nu_minus_five() {
    let eps = &tables().eps_series;
    assert_eq!(eps.var(), "1/nu");
    assert!(eps.coeff(0).is_zero());
    assert_eq!(eps.coeff(1), poly(&[(1, 12)]));
    assert!(eps.coeff(2).is_zero());
    assert_eq!(eps.coeff(3), poly(&[(1, 360), (1, 4)]));
    assert!(eps.coeff(4).is_zero());
    assert_eq!(eps.coeff(5), poly(&[(1, 1260), (-1, 4), (11, 32)]));
}

#[test]
fn phase_eps_in_v_starts_with_c1() {
    let t = tables();
    assert!(t.phase_eps.is_odd());
    assert_eq!(t.phase_eps.coeff(1), t.c[1]);
    // v^3: 3 (C_1 C_2 - 5 C_3) - C_1^3 / 3
    let c = &t.c;
    let third = rat(1, 3);
    let expect = &(&(&c[1] * &c[2]) - &c[3].scale(&rat(5, 1))).scale(&rat(3, 1))
        - &(&(&c[1] * &c[1]) * &c[1]).scale(&third);
    assert_eq!(t.phase_eps.coeff(3), expect);
}

#[test]
fn mu_minus_tanh_expansion() {
    let mu = &tables().mu_minus_tanh;
    assert!(mu.coeff(0).is_zero());
    assert_eq!(mu.coeff(1), poly(&[(1, 4)]));
    assert_eq!(mu.coeff(2), poly(&[(1, 32)]));
    assert_eq!(mu.coeff(3), poly(&[(1, 96)]));
}

#[test]
fn zero_equation_coefficients() {
    let a = &tables().a;
    for (k, p) in published_a().into_iter().enumerate() {
        assert_eq!(a[k], p, "A_{k}");
    }
    assert_eq!(a[0].eval_rational(&rat(0, 1)), rat(1, 12));
}

#[test]
fn derivation_is_deterministic() {
    let a = derive_saddle_coeffs(5).unwrap();
    let b = derive_saddle_coeffs(5).unwrap();
    assert_eq!(a, b);
}
