use charlab::Cyclotomic;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: [u32; 9] = [1, 2, 3, 4, 5, 6, 8, 12, 15];

fn elem(e: u32) -> impl Strategy<Value = Cyclotomic> {
    (prop::collection::vec(-4i64..=4, e as usize), 1i64..=3).prop_map(move |(c, d)| {
        let z =
            Cyclotomic::from_exponent_coeffs(e, c.into_iter().map(BigInt::from).collect()).unwrap();
        z.scale(&BigRational::new(1.into(), d.into()))
    })
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|e| (elem(e), elem(e), elem(e)))
}

fn mixed_pair() -> impl Strategy<Value = (Cyclotomic, Cyclotomic)> {
    (
        prop::sample::select(CONDUCTORS.to_vec()),
        prop::sample::select(CONDUCTORS.to_vec()),
    )
        .prop_flat_map(|(e, f)| (elem(e), elem(f)))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ring_axioms((x, y, z) in triple()) {
        let xy_z = x.try_mul(&y).unwrap().try_mul(&z).unwrap();
        let x_yz = x.try_mul(&y.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        let lhs = x.try_mul(&y.try_add(&z).unwrap()).unwrap();
        let rhs = x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let s = x.try_add(&y).unwrap().try_add(&z).unwrap();
        prop_assert_eq!(&s, &x.try_add(&y.try_add(&z).unwrap()).unwrap());
        prop_assert_eq!(x.try_mul(&y).unwrap(), y.try_mul(&x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn inverses((x, _, _) in triple()) {
        if x.is_zero() {
            prop_assert!(x.inverse().is_err());
        } else {
            prop_assert_eq!(x.try_mul(&x.inverse().unwrap()).unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn agrees_with_complex_numbers((x, y) in mixed_pair()) {
        let (a, b) = (x.approx(), y.approx());
        let s = x.try_add(&y).unwrap().approx();
        prop_assert!(close(s, (a.0 + b.0, a.1 + b.1)));
        prop_assert!(close(x.try_mul(&y).unwrap().approx(), cmul(a, b)));
        prop_assert!(close(x.conj().approx(), (a.0, -a.1)));
    }

    #[test]
    fn canonical_form_is_idempotent((x, _, _) in triple()) {
        let e = x.conductor();
        prop_assert_eq!(&x.promote(e).unwrap(), &x);
        prop_assert_eq!(&Cyclotomic::parse_at(&x.to_string(), e).unwrap(), &x);
        let up = x.promote(e * 2).unwrap();
        prop_assert_eq!(&up, &x);
        prop_assert_eq!(up.promote(e * 2).unwrap(), up);
    }

    #[test]
    fn keys_order_totally((x, y, _) in triple()) {
        let (kx, ky) = (x.order_key(), y.order_key());
        prop_assert_eq!(kx == ky, x == y);
        prop_assert_eq!(kx.cmp(&ky), ky.cmp(&kx).reverse());
    }
}

#[test]
fn root_sums() {
    for e in 1..=60u32 {
        for k in 0..e as i64 {
            let mut s = Cyclotomic::zero_at(e).unwrap();
            for j in 0..e as i64 {
                s = s
                    .try_add(&Cyclotomic::root_of_unity(e, j * k).unwrap())
                    .unwrap();
            }
            let expect = if k == 0 { e as i64 } else { 0 };
            assert_eq!(s, Cyclotomic::from_integer(expect), "e = {e}, k = {k}");
        }
    }
}

#[test]
fn spec_examples() {
    let z4 = Cyclotomic::root_of_unity(4, 1).unwrap();
    assert_eq!(z4.try_mul(&z4).unwrap(), Cyclotomic::from_integer(-1));
    let z3 = |k| Cyclotomic::root_of_unity(3, k).unwrap();
    let s = Cyclotomic::one()
        .try_add(&z3(1))
        .unwrap()
        .try_add(&z3(2))
        .unwrap();
    assert!(s.is_zero());
    let z8 = Cyclotomic::root_of_unity(8, 1).unwrap();
    assert_eq!(z8.conj().try_mul(&z8).unwrap(), Cyclotomic::one());
    assert_eq!(Cyclotomic::root_of_unity(1, 0).unwrap(), Cyclotomic::one());
    let r = z3(1).try_add(&z3(2)).unwrap().as_rational();
    assert_eq!(r, Some(BigRational::from_integer((-1).into())));
    assert_eq!(Cyclotomic::root_of_unity(5, 1).unwrap().as_rational(), None);
    assert!(Cyclotomic::zero().order_key() < Cyclotomic::one().order_key());
    let one6 = Cyclotomic::rational_at(BigRational::from_integer(1.into()), 6).unwrap();
    assert_eq!(
        Cyclotomic::one().promote(6).unwrap().order_key(),
        one6.order_key()
    );
    let mut v = vec![
        z3(1),
        Cyclotomic::one(),
        Cyclotomic::zero(),
        Cyclotomic::from_integer(-1),
    ];
    v.sort_by_key(|x| x.order_key());
    let mut w = v.clone();
    w.reverse();
    w.sort_by_key(|x| x.order_key());
    assert_eq!(v, w);
}
