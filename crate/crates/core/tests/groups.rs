use std::collections::BTreeSet;

use charlab::group::{p_part, power_action, prime_divisors};
use charlab::FiniteGroup;

fn zoo() -> Vec<FiniteGroup> {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let c3 = FiniteGroup::cyclic(3).unwrap();
    let c3c3 = FiniteGroup::direct_product(&c3, &c3).unwrap();
    let swap = (0..9).map(|x| (x % 3) * 3 + x / 3).collect::<Vec<_>>();
    let wreath = FiniteGroup::semidirect_product(&c3c3, &c2, &[(0..9).collect(), swap]).unwrap();
    vec![
        FiniteGroup::cyclic(1).unwrap(),
        FiniteGroup::cyclic(12).unwrap(),
        FiniteGroup::dihedral(8).unwrap(),
        FiniteGroup::dihedral(10).unwrap(),
        FiniteGroup::dicyclic(8).unwrap(),
        FiniteGroup::dicyclic(12).unwrap(),
        FiniteGroup::symmetric(3).unwrap(),
        FiniteGroup::symmetric(4).unwrap(),
        FiniteGroup::alternating(4).unwrap(),
        FiniteGroup::special_linear_2(3).unwrap(),
        FiniteGroup::frobenius(21).unwrap(),
        FiniteGroup::direct_product(&FiniteGroup::dihedral(8).unwrap(), &c2).unwrap(),
        wreath,
    ]
}

/// Normal subgroups by brute force: unions of classes closed under products.
fn normal_oracle(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let k = g.num_classes();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << k) {
        if mask & 1 == 0 {
            continue;
        }
        let mut set: Vec<usize> = (0..k)
            .filter(|c| mask >> c & 1 == 1)
            .flat_map(|c| g.classes()[c].iter().map(|&x| x as usize))
            .collect();
        set.sort();
        let member: BTreeSet<usize> = set.iter().copied().collect();
        if set
            .iter()
            .all(|&a| set.iter().all(|&b| member.contains(&g.mul(a, b))))
        {
            out.insert(set);
        }
    }
    out
}

#[test]
fn group_axioms_exhaustive() {
    for g in zoo() {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)), "{}", g.name());
                }
            }
        }
        assert_eq!(n % g.exponent() as usize, 0);
    }
}

#[test]
fn classes_partition_the_group() {
    for g in zoo() {
        let mut seen = vec![false; g.order()];
        for (c, class) in g.classes().iter().enumerate() {
            assert_eq!(g.order() % class.len(), 0);
            let x = class[0] as usize;
            let orbit: BTreeSet<usize> = (0..g.order()).map(|h| g.conj(h, x)).collect();
            assert_eq!(orbit, class.iter().map(|&y| y as usize).collect());
            for &y in class {
                assert!(!seen[y as usize]);
                seen[y as usize] = true;
                assert_eq!(g.class_of(y as usize), c);
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }
}

#[test]
fn normal_subgroups_match_brute_force() {
    for g in zoo() {
        let found: BTreeSet<Vec<usize>> = g
            .normal_subgroups()
            .iter()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(found, normal_oracle(&g), "{}", g.name());
    }
}

#[test]
fn minimal_normals_are_minimal() {
    for g in zoo() {
        let normals = g.normal_subgroups();
        for above in &normals {
            let mins = g.minimal_normal_subgroups(above).unwrap();
            for m in &mins {
                assert!(above.is_subset_of(m) && m.order() > above.order());
                let between = normals.iter().any(|x| {
                    above.is_subset_of(x)
                        && x.is_subset_of(m)
                        && x.order() > above.order()
                        && x.order() < m.order()
                });
                assert!(!between);
            }
            let expect = normals
                .iter()
                .filter(|&m| above.is_subset_of(m) && m.order() > above.order())
                .filter(|m| {
                    !normals.iter().any(|x| {
                        above.is_subset_of(x)
                            && x.is_subset_of(m)
                            && x.order() > above.order()
                            && x.order() < m.order()
                    })
                })
                .count();
            assert_eq!(mins.len(), expect);
        }
    }
}

#[test]
fn sylow_orders_are_exact_p_parts() {
    for g in zoo() {
        let n = g.order() as u64;
        for p in prime_divisors(n) {
            let s = g.sylow_subgroup(p).unwrap();
            assert_eq!(s.order() as u64, p_part(n, p));
            let all = g.sylow_subgroups(p).unwrap();
            assert_eq!(all.len() as u64 % p, 1);
            let normalizer = g.normalizer(&s).unwrap();
            assert_eq!(all.len() * normalizer.order(), g.order());
        }
        assert!(g.sylow_subgroup(97).unwrap().is_trivial());
    }
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    for g in zoo() {
        for n in g.normal_subgroups() {
            let q = g.quotient(&n).unwrap();
            assert_eq!(q.quotient.order() * n.order(), g.order());
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let lhs = q.projection[g.mul(a, b)];
                    assert_eq!(lhs, q.quotient.mul(q.projection[a], q.projection[b]));
                }
            }
            let kernel: Vec<usize> = (0..g.order()).filter(|&x| q.projection[x] == 0).collect();
            assert_eq!(kernel, n.elements());
            for x in 0..q.quotient.order() {
                assert_eq!(q.projection[q.section[x]], x);
            }
        }
    }
}

#[test]
fn subgroups_obey_lagrange() {
    for g in zoo() {
        for x in 0..g.order() {
            for y in [0, 1 % g.order(), g.order() - 1] {
                let h = g.subgroup_generated(&[x, y]).unwrap();
                assert_eq!(g.order() % h.order(), 0);
                assert!(h.contains(0));
                for &a in h.elements() {
                    assert!(h.contains(g.inv(a)));
                    for &b in h.elements() {
                        assert!(h.contains(g.mul(a, b)));
                    }
                }
            }
        }
    }
}

#[test]
fn spec_examples() {
    let sizes = |g: &FiniteGroup| {
        let mut v: Vec<usize> = (0..g.num_classes()).map(|c| g.class_size(c)).collect();
        v.sort();
        v
    };
    assert_eq!(sizes(&FiniteGroup::cyclic(4).unwrap()), vec![1; 4]);
    assert_eq!(sizes(&FiniteGroup::symmetric(3).unwrap()), vec![1, 2, 3]);
    assert_eq!(
        sizes(&FiniteGroup::dicyclic(8).unwrap()),
        vec![1, 1, 2, 2, 2]
    );

    let s4 = FiniteGroup::symmetric(4).unwrap();
    let p = s4.sylow_subgroup(2).unwrap();
    assert_eq!(p.order(), 8);
    assert_eq!(s4.normalizer(&p).unwrap(), p);
    assert!(s4.is_p_solvable(2));
    assert!(!FiniteGroup::alternating(5).unwrap().is_p_solvable(2));
    let mins = s4.minimal_normal_subgroups(&s4.trivial_subgroup()).unwrap();
    assert_eq!(mins.iter().map(|m| m.order()).collect::<Vec<_>>(), vec![4]);

    let c6 = FiniteGroup::cyclic(6).unwrap();
    let mins = c6.minimal_normal_subgroups(&c6.trivial_subgroup()).unwrap();
    assert_eq!(
        mins.iter().map(|m| m.order()).collect::<Vec<_>>(),
        vec![2, 3]
    );
    assert_eq!(c6.sylow_subgroup(3).unwrap().order(), 3);

    let q8 = FiniteGroup::dicyclic(8).unwrap();
    let q = q8.quotient(&q8.center()).unwrap();
    assert!((1..4).all(|x| q.quotient.element_order(x) == 2));

    let c3 = FiniteGroup::cyclic(3).unwrap();
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let s3 =
        FiniteGroup::semidirect_product(&c3, &c2, &power_action(&c3, &c2, &[0, 2, 1]).unwrap())
            .unwrap();
    assert!(!s3.is_abelian());
    assert_eq!(sizes(&s3), vec![1, 2, 3]);
}
