use std::collections::HashSet;

use proptest::prelude::*;
use twistcode::permgroup::{exponent, DEFAULT_ENUMERATION_CAP};
use twistcode::{PermGroup, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

pub fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=7).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=3).prop_map(move |gens| PermGroup::new("random", n, gens).unwrap())
    })
}

// Closure under multiplication by generators, independent of the stabilizer chain.
fn closure(g: &PermGroup) -> HashSet<Permutation> {
    let id = Permutation::identity(g.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_order_matches_closure(g in small_group()) {
        let elems = g.enumerate_elements(DEFAULT_ENUMERATION_CAP).unwrap();
        let brute = closure(&g);
        prop_assert_eq!(g.order(), brute.len() as u128);
        prop_assert_eq!(elems.len(), brute.len());
        prop_assert!(elems[0].is_identity());
        prop_assert!(elems.iter().all(|e| brute.contains(e)));
        for x in g.generators() {
            prop_assert!(g.stab_chain().contains(x));
        }
    }

    #[test]
    fn class_data_invariants(g in small_group()) {
        let cd = g.conjugacy_classes().unwrap();
        let order = cd.group_order();
        prop_assert_eq!(cd.class_sizes.iter().sum::<u64>(), order);
        prop_assert_eq!(cd.class_sizes[0], 1);
        prop_assert!(cd.class_reps[0].is_identity());
        for s in &cd.class_sizes {
            prop_assert_eq!(order % s, 0);
        }
        for (i, e) in cd.elements().iter().enumerate() {
            let c = cd.class_of[i] as usize;
            prop_assert_eq!(e.cycle_type(), cd.class_reps[c].cycle_type());
        }
        for (p, map) in &cd.power_maps {
            prop_assert_eq!(exponent(&cd) % p, 0);
            for (i, rep) in cd.class_reps.iter().enumerate() {
                prop_assert_eq!(cd.class_of_element(&rep.pow(*p)).unwrap(), map[i]);
            }
        }
        for i in 0..cd.n_classes() {
            prop_assert_eq!(cd.inverse_map[cd.inverse_map[i]], i);
            prop_assert_eq!(cd.class_of_element(&cd.class_reps[i].inverse()).unwrap(), cd.inverse_map[i]);
        }
        let lcm = cd.element_orders.iter().fold(1u64, |a, &o| num_integer::lcm(a, o));
        prop_assert_eq!(exponent(&cd), lcm);
    }

    #[test]
    fn classes_are_ordered_by_element_order_then_size(g in small_group()) {
        let cd = g.conjugacy_classes().unwrap();
        for i in 1..cd.n_classes().saturating_sub(1) {
            let a = (cd.element_orders[i], cd.class_sizes[i]);
            let b = (cd.element_orders[i + 1], cd.class_sizes[i + 1]);
            prop_assert!(a <= b, "classes {} and {} out of order: {:?} {:?}", i, i + 1, a, b);
        }
    }

    #[test]
    fn classes_are_conjugation_orbits(g in small_group()) {
        let cd = g.conjugacy_classes().unwrap();
        let elems = cd.elements();
        // conjugating by any element preserves the class
        let step = (elems.len() / 7).max(1);
        for x in elems.iter().step_by(step) {
            for (i, e) in elems.iter().enumerate() {
                prop_assert_eq!(cd.class_of_element(&e.conjugate_by(x)).unwrap(), cd.class_of[i] as usize);
            }
        }
    }
}

#[test]
fn named_orders_and_classes() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/permgroup/");
    let load = |f: &str| twistcode::ctbl_io::parse_permgroup(&std::fs::read_to_string(format!("{dir}{f}")).unwrap()).unwrap();

    let two_o = load("2O.perm");
    assert_eq!(two_o.enumerate_elements(DEFAULT_ENUMERATION_CAP).unwrap().len(), 48);

    let two_i = load("2I.perm");
    assert_eq!(two_i.order(), 120);
    let cd = two_i.conjugacy_classes().unwrap();
    assert_eq!(cd.n_classes(), 9);
    assert_eq!(exponent(&cd), 60);
    let mut orders = cd.element_orders.clone();
    orders.dedup();
    assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10]);

    assert_eq!(load("Sigma360phi.perm").order(), 1080);
    let a9 = load("a9.perm");
    assert_eq!(a9.enumerate_elements(DEFAULT_ENUMERATION_CAP).unwrap().len(), 181440);
}
