use proptest::prelude::*;
use riordan::families::{catalan, general_involution, main_theorem_involution};
use riordan::transforms::{hankel, matrix_sums, SumMode};
use riordan::{rat, series_to_jfraction, Rational, RiordanPair, Series};

fn pascal(order: usize) -> RiordanPair<Rational> {
    let one_minus_x = Series::from_ints(&[1, -1], order);
    let g = one_minus_x.inverse().unwrap();
    let f = &Series::x(order) * &g;
    RiordanPair::new(g, f).unwrap()
}

#[test]
fn catalan_hankel_is_all_ones() {
    let c: Series<Rational> = catalan(12).unwrap();
    let terms = &c.coeffs()[..];
    assert_eq!(&terms[..6], &[rat(1), rat(1), rat(2), rat(5), rat(14), rat(42)]);
    assert_eq!(hankel(terms, 5).unwrap(), vec![rat(1); 6]);
}

#[test]
fn pascal_inverse_alternates() {
    let inv = pascal(8).inverse().unwrap().to_matrix(5).unwrap();
    assert_eq!(inv.rows()[3], vec![rat(-1), rat(3), rat(-3), rat(1)]);
    let sums = matrix_sums(&pascal(8).to_matrix(6).unwrap(), SumMode::Row).unwrap();
    assert_eq!(sums, [1, 2, 4, 8, 16, 32].map(rat).to_vec());
}

#[test]
fn pascal_is_not_an_involution_but_families_are() {
    let r = pascal(16).involution_check(6).unwrap();
    assert!(!r.holds);
    assert!(r.witness.is_some());
    assert!(main_theorem_involution(2, 20).unwrap().involution_check(16).unwrap().holds);
    assert!(general_involution(&rat(3), &rat(2), 20).unwrap().involution_check(16).unwrap().holds);
}

#[test]
fn catalan_squared_has_constant_fraction() {
    let c: Series<Rational> = catalan(20).unwrap();
    let c2 = &c * &c;
    let jf = series_to_jfraction(&c2, 5).unwrap().detect_tail().unwrap();
    assert_eq!(jf.tail(), Some(&(rat(2), rat(1))));
    assert_eq!(jf.to_series(12).unwrap().coeffs(), &c2.coeffs()[..13]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, rng_seed: proptest::test_runner::RngSeed::Fixed(23), ..ProptestConfig::default() })]

    #[test]
    fn product_with_inverse_is_identity(g in prop::collection::vec(-4i64..5, 1..6), f in prop::collection::vec(-4i64..5, 0..5)) {
        let order = 10;
        let mut gs = g.clone();
        gs[0] = 1;
        let mut fs = vec![0, 1];
        fs.extend(f);
        let p: RiordanPair<Rational> = RiordanPair::new(Series::from_ints(&gs, order), Series::from_ints(&fs, order)).unwrap();
        let prod = p.rmul(&p.inverse().unwrap()).unwrap();
        prop_assert!(prod.is_identity());
        let m = p.to_matrix(8).unwrap().mul(&p.inverse().unwrap().to_matrix(8).unwrap()).unwrap();
        prop_assert!(m.is_identity());
    }
}
