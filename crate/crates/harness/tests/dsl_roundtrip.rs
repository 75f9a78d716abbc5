use charlab_harness::dsl::{self, Action, AtomKind, Expr, Selector};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (1u64..=30).prop_map(|n| Expr::Atom(AtomKind::Cyclic, vec![n])),
        (2u64..=12).prop_map(|n| Expr::Atom(AtomKind::Dihedral, vec![2 * n])),
        (2u64..=6).prop_map(|n| Expr::Atom(AtomKind::Dicyclic, vec![4 * n])),
        (1u64..=5).prop_map(|n| Expr::Atom(AtomKind::Symmetric, vec![n])),
        (1u64..=5).prop_map(|n| Expr::Atom(AtomKind::Alternating, vec![n])),
        prop::sample::select(vec![2u64, 3, 5])
            .prop_map(|p| Expr::Atom(AtomKind::SpecialLinear, vec![2, p])),
        prop::sample::select(vec![6u64, 10, 20, 21, 39])
            .prop_map(|n| Expr::Atom(AtomKind::Frobenius, vec![n])),
    ]
}

fn selector() -> impl Strategy<Value = Selector> {
    prop_oneof![
        Just(Selector::Center),
        Just(Selector::Derived),
        Just(Selector::Socle),
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(Selector::Sylow),
        prop::collection::vec(0usize..40, 0..4).prop_map(Selector::GenList),
    ]
}

fn action() -> impl Strategy<Value = Action> {
    prop_oneof![
        Just(Action::Swap),
        Just(Action::Inv),
        Just(Action::InvLeft),
        (-5i64..=5).prop_map(Action::Pow)
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    atom().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Wreath(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone(), action()).prop_map(|(a, b, t)| Expr::Semidirect(
                Box::new(a),
                Box::new(b),
                t
            )),
            (selector(), inner).prop_map(|(s, e)| Expr::Select(s, Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_inverts_render(e in expr()) {
        let text = e.render();
        prop_assert_eq!(dsl::parse(&text).unwrap(), e.clone(), "{}", text);
        let spaced = text.replace(' ', "  ").replace('(', " ( ");
        prop_assert_eq!(dsl::parse(&spaced).unwrap(), e);
    }
}

#[test]
fn evaluated_orders() {
    for (text, order) in [
        ("C(2) x C(3)", 6),
        ("C(3) wr C(2)", 18),
        ("sd(C(7), C(3), pow(2))", 21),
        ("derived of S(4)", 12),
        ("sylow(2) of S(4)", 8),
        ("center of Q(8) x C(3)", 6),
        ("sd(C(3) x C(3), C(2), swap)", 18),
    ] {
        assert_eq!(dsl::group_from_text(text).unwrap().order(), order, "{text}");
    }
}
