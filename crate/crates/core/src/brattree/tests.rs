use super::*;
use crate::initial::DyadicVectorGroup;
use crate::num::rat;
use proptest::prelude::*;

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn pushforward_examples() {
    let t = WeightedTree::binary(2, 3, 2).unwrap();
    let one = t.element(0, ints(&[1])).unwrap();
    let p = t.pushforward(&one).unwrap();
    assert_eq!(p.values, ints(&[2, 3]));
    let zero = t.element(1, ints(&[0, 0])).unwrap();
    assert!(t.pushforward(&zero).unwrap().values.iter().all(|v| v.is_zero()));
    assert_eq!(t.push_to(&one, 2).unwrap().values, ints(&[4, 6, 6, 9]));
    let top = t.element(2, ints(&[1, 1, 1, 1])).unwrap();
    assert!(matches!(t.pushforward(&top), Err(Error::NotMaterialized { .. })));
    assert!(t.element(1, ints(&[1])).is_err());
}

#[test]
fn positivity_examples() {
    let t = WeightedTree::binary(2, 3, 2).unwrap();
    assert!(tree_positive(&t.element(1, ints(&[0, 0])).unwrap()));
    let neg = t.element(1, ints(&[4, -1])).unwrap();
    assert!(!tree_positive(&neg));
    assert!(!tree_positive(&t.pushforward(&neg).unwrap()));
}

#[test]
fn trace_examples() {
    let t = WeightedTree::binary(2, 3, 2).unwrap();
    // Path 0.0 -> 1.0 (weight 2) -> 2.1 (weight 3).
    let path = t.path_to(2, 1).unwrap();
    assert_eq!(path, vec![0, 0, 1]);
    let f = t.element(2, ints(&[0, 5, 0, 0])).unwrap();
    assert_eq!(t.tree_trace(&path, &f).unwrap(), rat(5, 6));
    let one = t.element(0, ints(&[1])).unwrap();
    assert_eq!(t.tree_trace(&path, &one).unwrap(), rat(1, 1));
    let g = t.element(1, ints(&[7, -2])).unwrap();
    let pushed = t.pushforward(&g).unwrap();
    assert_eq!(t.tree_trace(&path, &g).unwrap(), t.tree_trace(&path, &pushed).unwrap());
    assert!(t.tree_trace(&[0, 1, 0], &f).is_err());
    assert_eq!(t.path_denominators(&path).unwrap(), ints(&[1, 2, 6]));
}

#[test]
fn multiplicity_vectors() {
    let t = WeightedTree::binary(2, 3, 1).unwrap();
    assert_eq!(t.multiplicity_vector(0, 0).unwrap(), ints(&[2, 3]));
    assert!(matches!(t.multiplicity_vector(1, 0), Err(Error::NotMaterialized { .. })));
    let u = WeightedTree::from_rule(TreeRule::uniform(&[7]).unwrap(), 2);
    assert_eq!(u.multiplicity_vector(1, 0).unwrap(), ints(&[7]));
}

#[test]
fn sufficient_conditions() {
    let t = WeightedTree::binary(2, 3, 3).unwrap();
    let i = t.tree_initial_check(3).unwrap();
    assert!(i.verdict.value && i.verdict.exact && i.witness.is_none());
    let a = t.tree_approx_div_check(3).unwrap();
    assert!(a.verdict.value && a.good_levels == vec![0, 1, 2]);

    let bad = WeightedTree::from_levels(&[
        vec![(0, 2.into()), (0, 3.into())],
        vec![(0, 2.into()), (0, 3.into()), (1, 2.into()), (1, 4.into())],
    ])
    .unwrap();
    let i = bad.tree_initial_check(2).unwrap();
    assert!(!i.verdict.value);
    assert_eq!(i.witness, Some((1, 1)));

    let rule = TreeRule::new(vec![ints(&[1, 2]), ints(&[1, 3])]).unwrap();
    let ones = WeightedTree::from_rule(rule, 3);
    let a = ones.tree_approx_div_check(3).unwrap();
    assert!(!a.verdict.value && a.verdict.exact);
    assert!(ones.tree_initial_check(3).unwrap().verdict.value);
}

#[test]
fn tree_initial_hom() {
    let g = DyadicVectorGroup::new(1, 2).unwrap();
    let t = WeightedTree::binary(2, 3, 3).unwrap();
    let h = build_tree_initial_hom(&t, &g, &g.unit(), 2).unwrap();
    h.verify(&g, &t).unwrap();
    assert_eq!(h.table[2].len(), 4);
    let h0 = build_tree_initial_hom(&t, &g, &g.unit(), 0).unwrap();
    assert_eq!(h0.table, vec![vec![g.unit()]]);
    let bad = WeightedTree::binary(2, 4, 2).unwrap();
    let err = build_tree_initial_hom(&bad, &g, &g.unit(), 2).unwrap_err();
    assert!(matches!(err, Error::NotCoprime(ref s) if s.contains("0.0")));
}

#[test]
fn dot_export() {
    let t = WeightedTree::binary(2, 3, 1).unwrap();
    assert_eq!(t.export_dot(0).unwrap(), "digraph tree {\n  \"0.0\";\n}\n");
    let dot = t.export_dot(1).unwrap();
    assert_eq!(dot.matches(';').count(), 5);
    assert!(dot.contains("\"0.0\" -> \"1.1\" [label=\"3\"];"));
    assert_eq!(dot, t.clone().export_dot(1).unwrap());
    assert!(t.export_dot(2).is_err());
}

#[test]
fn denominators_unbounded_past_weight_one_levels() {
    let rule = TreeRule::new(vec![ints(&[1, 1]), ints(&[2, 3])]).unwrap();
    let t = WeightedTree::from_rule(rule, 6);
    for i in 0..t.level_size(6).unwrap() {
        let d = t.path_denominators(&t.path_to(6, i).unwrap()).unwrap();
        assert!(d[6] >= BigInt::from(8));
        assert!(d.windows(3).all(|w| w[2] > w[0]));
    }
}

fn element_strategy() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0usize..3).prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..6, 1 << n)))
}

proptest! {
    #[test]
    fn order_embedding((n, vals) in element_strategy()) {
        let t = WeightedTree::binary(2, 3, 3).unwrap();
        let e = t.element(n, ints(&vals)).unwrap();
        let p = t.pushforward(&e).unwrap();
        prop_assert_eq!(tree_positive(&e), tree_positive(&p));
        for i in 0..t.level_size(3).unwrap() {
            let path = t.path_to(3, i).unwrap();
            prop_assert_eq!(t.tree_trace(&path, &e).unwrap(), t.tree_trace(&path, &p).unwrap());
        }
    }
}
