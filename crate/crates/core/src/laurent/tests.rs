use super::*;
use crate::num::rat;
use alloc::string::ToString;
use alloc::vec;
use proptest::prelude::*;

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

#[test]
fn parse_and_print() {
    assert_eq!(lp("3 + 2x"), LaurentPoly::from_dense(0, &[3, 2]));
    assert_eq!(lp("1 + x^3 + x^5"), LaurentPoly::from_dense(0, &[1, 0, 0, 1, 0, 1]));
    assert_eq!(lp("x^-1 + 1"), LaurentPoly::from_dense(-1, &[1, 1]));
    assert_eq!(lp("2*x^2 - x"), LaurentPoly::from_dense(1, &[-1, 2]));
    assert_eq!(lp("-x^(-2)"), LaurentPoly::monomial(-1, -2));
    assert_eq!(lp("x + x"), LaurentPoly::monomial(2, 1));
    assert!(lp("x - x").is_zero());
    for bad in ["", "2y", "x^", "3 +", "x^a", "++x"] {
        assert!(bad.parse::<LaurentPoly>().is_err(), "{bad}");
    }
    for s in ["3 + 2x", "-1 + x^-3 - 7x^4", "0", "x"] {
        assert_eq!(lp(&lp(s).to_string()), lp(s));
    }
}

#[test]
fn log_sets() {
    assert_eq!(lp("2x+3").log_set(), [0, 1].into());
    assert_eq!(lp("1 + x^3 + x^5").log_set(), [0, 3, 5].into());
    assert!(LaurentPoly::zero().log_set().is_empty());
}

#[test]
fn contents() {
    assert_eq!(lp("2x+3").content().unwrap(), BigInt::from(1));
    assert_eq!(lp("6x^2 + 9x^3").content().unwrap(), BigInt::from(3));
    let prod = lp("2x+2") * lp("3+3x");
    assert_eq!(prod, lp("6x^2+12x+6"));
    assert_eq!(prod.content().unwrap(), BigInt::from(6));
    assert_eq!(lp("-4x").content().unwrap(), BigInt::from(4));
    assert_eq!(LaurentPoly::zero().content(), Err(Error::ZeroPolynomial));
}

#[test]
fn normalization() {
    assert_eq!(lp("x^2 + x^5").normalize_min_zero().unwrap(), (lp("1 + x^3"), -2));
    assert_eq!(lp("2x+3").normalize_min_zero().unwrap(), (lp("2x+3"), 0));
    assert_eq!(lp("x^-1 + 1").normalize_min_zero().unwrap(), (lp("1 + x"), 1));
    assert!(LaurentPoly::zero().normalize_min_zero().is_err());
}

#[test]
fn isolani_detection() {
    let i = lp("1 + x^2").isolani().unwrap();
    assert_eq!(i.exponents, [0, 2].into());
    assert!(i.leading && i.terminal);
    let i = lp("3 + x + 2x^2").isolani().unwrap();
    assert!(i.exponents.is_empty() && !i.leading && !i.terminal);
    assert!(lp("1 + x").isolani().unwrap().exponents.is_empty());
    let i = lp("1 + x + x^5").isolani().unwrap();
    assert_eq!(i.exponents, [5].into());
    assert!(i.leading && !i.terminal);
    assert!(LaurentPoly::zero().isolani().is_err());
}

#[test]
fn flattening() {
    assert_eq!(lp("2x+3").flatten(), lp("x+1"));
    assert_eq!(lp("6x^2+12x+6").flatten(), lp("x^2+x+1"));
    assert!(LaurentPoly::zero().flatten().is_zero());
}

#[test]
fn evaluation() {
    assert_eq!(lp("2x+3").eval(&rat(1, 1)).unwrap(), rat(5, 1));
    assert_eq!(lp("x^-1").eval(&rat(1, 2)).unwrap(), rat(2, 1));
    assert_eq!(lp("1-2x").eval(&rat(1, 2)).unwrap(), rat(0, 1));
    assert!(lp("x^-1").eval(&rat(0, 1)).is_err());
}

#[test]
fn interval_positivity() {
    let (a, b) = (rat(1, 3), rat(2, 3));
    assert!(lp("6x-1").strictly_positive_on_interval(&a, &b).unwrap());
    assert!(!lp("1-2x").strictly_positive_on_interval(&a, &b).unwrap());
    assert!(lp("x^2+1").strictly_positive_on_interval(&a, &b).unwrap());
    assert!(lp("x^-3 - 2").strictly_positive_on_interval(&a, &b).unwrap());
    assert!(lp("1").strictly_positive_on_interval(&b, &a).is_err());
    assert!(lp("1").strictly_positive_on_interval(&rat(0, 1), &a).is_err());
}

#[test]
fn six_x_minus_one_grid_oracle() {
    // minimum 1 at the left endpoint; every grid value is at least 1
    let f = lp("6x-1");
    for k in 0..=300 {
        let t = rat(1, 3) + rat(k, 900);
        assert!(f.eval(&t).unwrap() >= rat(1, 1));
    }
}

#[test]
fn exact_division() {
    let p = lp("2x+3");
    let q = &p * &lp("x^-2 - 5x^4");
    assert_eq!(q.div_exact(&p), Some(lp("x^-2 - 5x^4")));
    assert_eq!(lp("x").div_exact(&p), None);
    assert_eq!(lp("4x+6").div_exact(&p), Some(lp("2")));
    assert_eq!(LaurentPoly::zero().div_exact(&p), Some(LaurentPoly::zero()));
}

fn arb_poly(max_deg: i64, max_coeff: i64) -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, proptest::collection::vec(-max_coeff..=max_coeff, 1..=(max_deg as usize + 1)))
        .prop_map(|(shift, c)| LaurentPoly::from_dense(shift, &c))
}

fn arb_nonzero(max_deg: i64, max_coeff: i64) -> impl Strategy<Value = LaurentPoly> {
    arb_poly(max_deg, max_coeff).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn gauss_lemma(f in arb_nonzero(8, 100), g in arb_nonzero(8, 100)) {
        let fg = &f * &g;
        prop_assert_eq!(fg.content().unwrap(), f.content().unwrap() * g.content().unwrap());
    }

    #[test]
    fn log_of_product_in_minkowski_sum(f in arb_poly(6, 20), g in arb_poly(6, 20)) {
        let fg = &f * &g;
        let sum: BTreeSet<i64> = f.log_set().iter()
            .flat_map(|a| g.log_set().into_iter().map(move |b| a + b)).collect();
        prop_assert!(fg.log_set().is_subset(&sum));
    }

    #[test]
    fn log_of_positive_product_is_minkowski_sum(f in arb_poly(6, 20), g in arb_poly(6, 20)) {
        let (f, g) = (abs_coeffs(&f), abs_coeffs(&g));
        let sum: BTreeSet<i64> = f.log_set().iter()
            .flat_map(|a| g.log_set().into_iter().map(move |b| a + b)).collect();
        prop_assert_eq!((&f * &g).log_set(), sum);
    }

    #[test]
    fn flatten_idempotent(f in arb_poly(8, 50)) {
        prop_assert_eq!(f.flatten().flatten(), f.flatten());
        prop_assert_eq!(f.flatten().log_set(), f.log_set());
    }

    #[test]
    fn ring_identities(f in arb_poly(5, 30), g in arb_poly(5, 30), h in arb_poly(5, 30)) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        if !g.is_zero() {
            prop_assert_eq!((&f * &g).div_exact(&g), Some(f.clone()));
        }
    }

    #[test]
    fn display_roundtrip(f in arb_poly(8, 1000)) {
        prop_assert_eq!(f.to_string().parse::<LaurentPoly>().unwrap(), f);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn positivity_matches_grid_oracle(c in proptest::collection::vec(-20i64..=20, 1..=7)) {
        let f = LaurentPoly::from_dense(0, &c);
        prop_assume!(!f.is_zero());
        let (a, b) = (rat(1, 3), rat(2, 3));
        let exact = f.strictly_positive_on_interval(&a, &b).unwrap();
        // grid oracle: a negative or zero grid value refutes positivity, and
        // a positive grid minimum well above the Lipschitz slack confirms it
        let n = 600i64;
        let vals: alloc::vec::Vec<BigRational> = (0..=n)
            .map(|k| f.eval(&(&a + rat(k, 3 * n))).unwrap()).collect();
        let min = vals.iter().min().unwrap().clone();
        let lip: i64 = c.iter().enumerate().map(|(i, v)| v.abs() * i as i64).sum();
        let slack = rat(lip, 6 * n);
        if min <= BigRational::zero() {
            prop_assert!(!exact);
        } else if min > slack {
            prop_assert!(exact);
        }
    }
}

fn abs_coeffs(f: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(f.terms().map(|(k, c)| (k, c.abs())))
}

#[test]
fn sum_and_pow() {
    let p = lp("1+x");
    assert_eq!(p.pow(3), lp("1 + 3x + 3x^2 + x^3"));
    let s: LaurentPoly = vec![lp("x"), lp("1"), lp("-x")].into_iter().sum();
    assert_eq!(s, lp("1"));
}
