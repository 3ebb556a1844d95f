use super::*;
use crate::num::rat;
use alloc::vec;
use proptest::prelude::*;

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn seq(period: &[&str]) -> LimitGroup {
    LimitGroup::new(PolySequence::parse(&[], period).unwrap())
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn sequence_validation() {
    assert!(PolySequence::parse(&[], &["2x+3"]).is_ok());
    assert!(PolySequence::parse(&[], &["3"]).is_err());
    assert!(PolySequence::parse(&[], &["3 - x"]).is_err());
    assert!(PolySequence::parse(&[], &[]).is_err());
    let s = PolySequence::parse(&["x + x^2"], &["2x+3"]).unwrap();
    assert_eq!(s.normalized_entry(1).unwrap(), lp("1 + x"));
    assert_eq!(s.entry(1).unwrap(), lp("x + x^2"));
    assert_eq!(s.entry(5).unwrap(), lp("2x+3"));
    assert!(s.entry(0).is_err());
    let f = PolySequence::finite(vec![lp("1+x")]).unwrap();
    assert!(matches!(f.entry(2), Err(Error::StageUnavailable { .. })));
    let l = PolySequence::lacunary(2, 3, 2).unwrap();
    assert_eq!(l.entry(3).unwrap(), lp("2 + 3x^8"));
    assert!(l.entry(70).is_err());
}

#[test]
fn q_products() {
    let g = seq(&["2x+3"]);
    assert_eq!(g.q_product(2).unwrap(), lp("4x^2 + 12x + 9"));
    assert_eq!(g.q_product(0).unwrap(), LaurentPoly::one());
    let g = LimitGroup::new(PolySequence::parse(&["1+x^2", "1+x^4"], &["1+x"]).unwrap());
    assert_eq!(g.q_product(2).unwrap(), lp("1 + x^2 + x^4 + x^6"));
    // cached values are stable
    assert_eq!(g.q_product(1).unwrap(), lp("1+x^2"));
}

#[test]
fn q_product_cache_is_shared_safely() {
    let g = std::sync::Arc::new(seq(&["2x+3", "1+x+x^2"]));
    let handles: std::vec::Vec<_> = (0..4)
        .map(|i| {
            let g = g.clone();
            std::thread::spawn(move || g.q_product(10 + i).unwrap())
        })
        .collect();
    let results: std::vec::Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (i, q) in results.iter().enumerate() {
        assert_eq!(*q, g.q_product(10 + i).unwrap());
    }
}

#[test]
fn element_construction() {
    let g = seq(&["2x+3"]);
    let e = g.make_element(lp("x"), 1).unwrap();
    assert_eq!(e, RElement { f: lp("x"), stage: 1 });
    assert_eq!(g.make_element(lp("x^2"), 1), Err(Error::Membership { stage: 1 }));
    assert_eq!(g.make_element(lp("2x+3"), 1).unwrap(), g.one());
    // divisible but the quotient would violate the support condition
    let h = LimitGroup::new(PolySequence::parse(&["1+x^2"], &["1+x"]).unwrap());
    let e = h.make_element(lp("1+x^2"), 1).unwrap();
    assert_eq!(e, h.one());
}

#[test]
fn equality() {
    let g = seq(&["2x+3"]);
    let a = g.raw_element(lp("2x+3"), 1).unwrap();
    assert!(g.elem_equal(&g.one(), &a).unwrap());
    let x1 = g.make_element(lp("x"), 1).unwrap();
    let one1 = g.raw_element(lp("1"), 1).unwrap();
    assert!(!g.elem_equal(&x1, &one1).unwrap());
    let raw = g.raw_element(lp("x") * lp("2x+3"), 2).unwrap();
    assert!(g.elem_equal(&raw, &x1).unwrap());
    assert_eq!(g.make_element(raw.f.clone(), 2).unwrap(), x1);
}

#[test]
fn positivity_examples() {
    let g = seq(&["2x+3"]);
    let x1 = g.make_element(lp("x"), 1).unwrap();
    let v = g.is_positive(&x1, 64).unwrap();
    assert_eq!(v.certificate, Certificate::Stage { stage: 1, product: lp("x") });
    assert!(g.verify_certificate(&x1, &v).unwrap());

    let e = g.make_element(lp("3 - 2x"), 1).unwrap();
    let v = g.is_positive(&e, 64).unwrap();
    assert_eq!(v.value, Truth::False);
    assert_eq!(v.certificate, Certificate::LeadingTrace { value: rat(-2, 2) });
    assert!(g.verify_certificate(&e, &v).unwrap());

    // 1 - x + x^2 is positive on (0, oo) with positive endpoint coefficients
    let f = lp("1 - x + x^2");
    let e = g.make_element(f.clone(), 2).unwrap();
    let v = g.is_positive(&e, 64).unwrap();
    let Certificate::Stage { stage, product } = &v.certificate else { panic!("{v:?}") };
    assert!(v.is_true() && *stage > 2);
    assert!(product.is_nonnegative());
    assert_eq!(*product, &f * &lp("2x+3").pow((*stage - 2) as u32));
    // independent oracle: positive point values on a grid
    for k in 1..200 {
        assert!(f.eval(&rat(k, 20)).unwrap() > BigRational::zero());
    }
    // interior negative value: refuted by a point trace
    let e = g.make_element(lp("1 - 3x + x^2"), 2).unwrap();
    let v = g.is_positive(&e, 64).unwrap();
    assert!(matches!(v.certificate, Certificate::PointTrace { .. }));
    assert!(g.verify_certificate(&e, &v).unwrap());
}

#[test]
fn positivity_unknown_at_low_cap() {
    let g = seq(&["1+x"]);
    // close to a double root at t = 1, so many stages are needed
    let e = g.make_element(lp("10 - 19x + 10x^2"), 2).unwrap();
    let low = g.is_positive(&e, 3).unwrap();
    assert!(low.is_unknown());
    let high = g.is_positive(&e, 200).unwrap();
    assert!(high.is_true());
    assert!(g.verify_certificate(&e, &high).unwrap());
}

#[test]
fn order_units() {
    let g = seq(&["2x+3"]);
    let v = g.is_order_unit(&g.one(), &big(1 << 16), 64).unwrap();
    assert_eq!(
        v.certificate,
        Certificate::Multiplier { multiplier: big(1), stage: 0, product: LaurentPoly::zero() }
    );
    // x/(2x+3) has τ₀ = 0, so it is not an order unit
    let x1 = g.make_element(lp("x"), 1).unwrap();
    let v = g.is_order_unit(&x1, &big(1 << 16), 64).unwrap();
    assert_eq!(v.certificate, Certificate::TerminalTrace { value: rat(0, 1) });
    assert!(g.verify_certificate(&x1, &v).unwrap());
    // (1 - 2x)^2 vanishes at t = 1/2
    let e = g.make_element(lp("1 - 4x + 4x^2"), 2).unwrap();
    let v = g.is_order_unit(&e, &big(1 << 16), 64).unwrap();
    assert_eq!(v.certificate, Certificate::PointTrace { t: rat(1, 2), value: rat(0, 1) });
    // 1 + x over 2x + 3: all traces in (1/3, 1/2)
    let e = g.make_element(lp("1 + x"), 1).unwrap();
    let v = g.is_order_unit(&e, &big(1 << 16), 64).unwrap();
    assert!(v.is_true());
    assert!(g.verify_certificate(&e, &v).unwrap());
    assert!(g.is_order_unit(&g.zero(), &big(4), 4).unwrap().is_false());
}

#[test]
fn traces() {
    let g = seq(&["2x+3"]);
    let x1 = g.make_element(lp("x"), 1).unwrap();
    assert_eq!(g.trace_point(&g.one(), &rat(7, 3)).unwrap(), rat(1, 1));
    assert_eq!(g.trace_point(&x1, &rat(1, 1)).unwrap(), rat(1, 5));
    assert_eq!(g.trace_zero(&g.one()).unwrap(), rat(1, 1));
    assert_eq!(g.trace_infty(&g.one()).unwrap(), rat(1, 1));
    assert_eq!(g.trace_zero(&x1).unwrap(), rat(0, 1));
    assert_eq!(g.trace_infty(&x1).unwrap(), rat(1, 2));
    let raw = g.raw_element(lp("2x+3"), 1).unwrap();
    assert_eq!(g.trace_zero(&raw).unwrap(), rat(1, 1));
    assert_eq!(g.trace_infty(&raw).unwrap(), rat(1, 1));
    assert!(g.trace_point(&x1, &rat(0, 1)).is_err());
}

#[test]
fn trace_ranges() {
    let g = seq(&["2x+3"]);
    let z = g.trace_range_zero(3).unwrap();
    assert_eq!(z.multipliers, vec![big(3); 3]);
    assert_eq!(z.dense, TailVerdict { value: true, exact: true });
    let i = g.trace_range_infty(3).unwrap();
    assert_eq!(i.multipliers, vec![big(2); 3]);
    assert!(i.dense.value);
    let g = seq(&["1+x"]);
    assert_eq!(g.trace_range_zero(4).unwrap().multipliers, vec![big(1); 4]);
    assert!(!g.trace_range_zero(4).unwrap().dense.value);
    assert!(!g.trace_range_infty(4).unwrap().dense.value);
    let g = seq(&["1+x", "2+2x"]);
    assert_eq!(g.trace_range_zero(4).unwrap().multipliers, vec![big(1), big(2), big(1), big(2)]);
    assert!(g.trace_range_zero(4).unwrap().dense.value);
}

#[test]
fn infinitesimals() {
    let g = seq(&["2x+3"]);
    let x1 = g.make_element(lp("x"), 1).unwrap();
    assert!(g.infinitesimal_test(&g.make_element(LaurentPoly::zero(), 3).unwrap()));
    assert!(!g.infinitesimal_test(&x1));
    let d = g.sub(&x1, &x1).unwrap();
    assert!(g.infinitesimal_test(&d));
    assert!(g.elem_equal(&d, &g.zero()).unwrap());
}

fn mat(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| big(v)).collect()).collect()
}

fn qv(v: &[i64]) -> vec::Vec<BigRational> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

#[test]
fn matrix_systems() {
    let s = MatrixSystem::stationary(mat(&[&[1, 1], &[1, 2]])).unwrap();
    let v = s.matrix_order_unit(&qv(&[1, 1]), 0, 8).unwrap();
    assert!(v.is_true());
    let v = s.matrix_positive(&qv(&[1, -1]), 0, 8).unwrap();
    assert_eq!(v.value, Truth::False);
    assert_eq!(v.certificate, Certificate::MatrixStage { stage: 1, vector: qv(&[0, -1]) });
    let z = qv(&[0, 0]);
    assert!(s.matrix_positive(&z, 0, 8).unwrap().is_true());
    assert!(s.matrix_order_unit(&z, 0, 8).unwrap().is_false());
    assert!(s.simplified_positive(&z, 0, 8).unwrap().is_true());
    assert!(s.simplified_positive(&qv(&[2, 1]), 0, 8).unwrap().is_true());
    // (1, 0) under the identity never becomes an order unit
    let id = MatrixSystem::stationary(mat(&[&[1, 0], &[0, 1]])).unwrap();
    assert!(id.matrix_order_unit(&qv(&[1, 0]), 0, 5).unwrap().is_unknown());
    assert!(id.simplified_positive(&qv(&[1, 0]), 0, 5).unwrap().is_unknown());
    assert!(id.matrix_positive(&qv(&[1, 0]), 0, 5).unwrap().is_true());
    // a zero row blocks order-unit transport
    let zr = MatrixSystem::stationary(mat(&[&[1, 0], &[0, 0]])).unwrap();
    assert!(zr.matrix_order_unit(&qv(&[1, 1]), 0, 3).is_err());
    assert!(MatrixSystem::stationary(mat(&[&[1, 1]])).is_err());
    assert!(s.matrix_positive(&qv(&[1]), 0, 3).is_err());
}

#[test]
fn rescaling() {
    let s = MatrixSystem::stationary(mat(&[&[1, 1], &[1, 2]])).unwrap();
    let t = s.divisible_rescale(&big(2)).unwrap();
    assert!(t.strict && t.divisor == big(2));
    let u = t.divisible_rescale(&big(3)).unwrap();
    assert_eq!(u.divisor, big(6));
    assert!(s.divisible_rescale(&big(1)).is_err());
    // halves are legal coordinates after rescaling, thirds are not for p = 2
    assert!(t.matrix_positive(&[rat(1, 2), rat(1, 4)], 0, 3).unwrap().is_true());
    assert!(t.matrix_positive(&[rat(1, 3), rat(1, 4)], 0, 3).is_err());
    assert!(s.matrix_positive(&[rat(1, 2), rat(1, 4)], 0, 3).is_err());
}

fn arb_elem() -> impl Strategy<Value = (vec::Vec<i64>, usize)> {
    (0usize..=3).prop_flat_map(|n| (proptest::collection::vec(-6i64..=6, n + 1), Just(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn traces_are_representative_independent((c, n) in arb_elem(), tn in 1i64..=9, td in 1i64..=9) {
        let g = seq(&["2x+3", "1+x+2x^2"]);
        let f = LaurentPoly::from_dense(0, &c);
        let q = g.q_product(n).unwrap();
        prop_assume!(f.terms().all(|(k, _)| !q.coeff(k).is_zero()));
        let e = g.raw_element(f.clone(), n).unwrap();
        let up = g.raw_element(&f * &g.sequence().entry(n + 1).unwrap(), n + 1).unwrap();
        let t = rat(tn, td);
        prop_assert_eq!(g.trace_point(&e, &t).unwrap(), g.trace_point(&up, &t).unwrap());
        prop_assert_eq!(g.trace_zero(&e).unwrap(), g.trace_zero(&up).unwrap());
        prop_assert_eq!(g.trace_infty(&e).unwrap(), g.trace_infty(&up).unwrap());
        prop_assert!(g.elem_equal(&e, &up).unwrap());
        prop_assert_eq!(g.infinitesimal_test(&e), g.elem_equal(&e, &g.zero()).unwrap());
    }

    #[test]
    fn positivity_certificates_verify_and_are_monotone((c, n) in arb_elem()) {
        let g = seq(&["2x+3"]);
        let e = g.make_element(LaurentPoly::from_dense(0, &c), n).unwrap();
        let low = g.is_positive(&e, 6).unwrap();
        let high = g.is_positive(&e, 30).unwrap();
        prop_assert!(g.verify_certificate(&e, &low).unwrap());
        prop_assert!(g.verify_certificate(&e, &high).unwrap());
        if !low.is_unknown() {
            prop_assert_eq!(&low, &high);
        }
        if high.is_true() {
            prop_assert!(!g.trace_zero(&e).unwrap().is_negative());
            prop_assert!(!g.trace_infty(&e).unwrap().is_negative());
        }
    }

    #[test]
    fn endpoint_traces_are_additive((c, n) in arb_elem(), (d, m) in arb_elem()) {
        let g = seq(&["2x+3"]);
        let a = g.make_element(LaurentPoly::from_dense(0, &c), n).unwrap();
        let b = g.make_element(LaurentPoly::from_dense(0, &d), m).unwrap();
        let s = g.add(&a, &b).unwrap();
        prop_assert_eq!(g.trace_zero(&s).unwrap(), g.trace_zero(&a).unwrap() + g.trace_zero(&b).unwrap());
        prop_assert_eq!(g.trace_infty(&s).unwrap(), g.trace_infty(&a).unwrap() + g.trace_infty(&b).unwrap());
    }

    #[test]
    fn positive_matrices_make_order_units(
        a in proptest::collection::vec(1i64..=5, 9),
        v in proptest::collection::vec(0i64..=4, 3),
    ) {
        prop_assume!(v.iter().any(|&x| x > 0));
        let m: Matrix = a.chunks(3).map(|r| r.iter().map(|&x| big(x)).collect()).collect();
        let s = MatrixSystem::stationary(m).unwrap();
        let verdict = s.matrix_order_unit(&qv(&v), 0, 1).unwrap();
        prop_assert!(verdict.is_true());
        let Certificate::MatrixStage { stage, .. } = verdict.certificate else { unreachable!() };
        prop_assert!(stage <= 1);
    }
}
