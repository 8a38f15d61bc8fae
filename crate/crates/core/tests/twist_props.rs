use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use twistcode::chartab::compute_table;
use twistcode::ctbl_io::parse_permgroup;
use twistcode::twist::*;
use twistcode::{CharacterTable, PermGroup, Permutation};

fn table(name: &str) -> CharacterTable {
    let path = format!("{}/../../fixtures/permgroup/{name}.perm", env!("CARGO_MANIFEST_DIR"));
    compute_table(&parse_permgroup(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap()
}

fn rows(t: &CharacterTable, sig: &str) -> Vec<usize> {
    sig.parse::<Signature>().unwrap().resolve_all(t).unwrap()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_table() -> impl Strategy<Value = CharacterTable> {
    (3usize..=7).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=2)
            .prop_map(move |gens| compute_table(&PermGroup::new("random", n, gens).unwrap()).unwrap())
    })
}

#[test]
fn binary_icosahedral_products() {
    let t = table("2I");
    let two = rows(&t, "2:1");
    assert_eq!(two.len(), 2);
    let (a, b) = (two[0], two[1]);
    for i in 0..t.n_characters() {
        for j in 0..t.n_characters() {
            assert_eq!(inner_product(&t, i, j).unwrap(), big(u64::from(i == j)));
        }
    }
    assert_eq!(norm(&t, &product_character(&t, a, a)).unwrap(), big(2));
    let threes = rows(&t, "3");
    // each faithful 2 pairs irreducibly with exactly one of the 3s
    for &f in &two {
        let good: Vec<_> = threes.iter().filter(|&&l| norm(&t, &product_character(&t, f, l)).unwrap().is_one()).collect();
        assert_eq!(good.len(), 1);
    }
    assert_eq!(norm(&t, &product_character(&t, a, b)).unwrap(), big(1));
    let prod = product_character(&t, a, threes[0]);
    assert_eq!(prod[0], twistcode::Cyclotomic::from_integer(6));
    assert_eq!(product_character(&t, 0, a), t.characters[a]);
}

#[test]
fn kernels() {
    let t = table("2I");
    assert_eq!(kernel_classes(&t, 0).size, big(120));
    for r in rows(&t, "2") {
        assert!(kernel_classes(&t, r).is_faithful());
    }
    let t = table("2O");
    let pairs = app_pairs(&t, AppOptions::default()).unwrap();
    assert!(!pairs.is_empty());
    for p in &pairs {
        assert_eq!(p.kernel_lambda_size, big(8));
        assert_eq!(p.transversal_order, big(6));
    }
}

#[test]
fn weil_direction_on_sp43() {
    let t = table("sp-4-3");
    let even = rows(&t, "4:1");
    let odd = rows(&t, "5:2");
    assert!(!even.is_empty() && !odd.is_empty());
    for &f in &even {
        for &l in &odd {
            assert!(kernel_contained(&t, f, l));
            assert!(!kernel_contained(&t, l, f));
            assert_eq!(min_n(&t, l, f, 8).unwrap(), MinN::Never);
        }
    }
    let any_app = even.iter().any(|&f| odd.iter().any(|&l| is_twisted_1group(&t, f, l).unwrap()));
    assert!(any_app);
}

fn galois_orbit_count(pairs: &[AppPair]) -> usize {
    pairs.iter().map(|p| p.galois_orbit_id).collect::<BTreeSet<_>>().len()
}

#[test]
fn galois_orbit_counts() {
    let t = table("2I");
    let pairs = app_pairs(&t, AppOptions::default()).unwrap();
    assert_eq!(pairs.len(), 4);
    assert_eq!(galois_orbit_count(&pairs), 2);

    let t = table("2O");
    let pairs = app_pairs(&t, AppOptions::default()).unwrap();
    assert_eq!(pairs.len(), 2);
    assert_eq!(galois_orbit_count(&pairs), 1);

    let t = table("Sigma216phi");
    let pairs: Vec<_> = app_pairs(&t, AppOptions::default()).unwrap().into_iter().filter(|p| p.q == 3).collect();
    assert_eq!(galois_orbit_count(&pairs), 4);
}

#[test]
fn minimal_tensor_powers() {
    let t = table("2I");
    let f = rows(&t, "2:1")[0];
    let ns: BTreeSet<_> = (0..t.n_characters())
        .filter(|&l| t.degree_u64(l) == Some(3) && is_twisted_1group(&t, f, l).unwrap())
        .map(|l| min_n(&t, f, l, 24).unwrap().n())
        .collect();
    assert_eq!(ns, BTreeSet::from([Some(6)]));
    // the other faithful 2 as λ: N = 2^7
    let g = rows(&t, "2:1")[1];
    assert_eq!(min_n(&t, f, g, 24).unwrap().n(), Some(7));

    let t = table("Sigma360phi");
    let ns: BTreeSet<_> = app_pairs(&t, AppOptions::default())
        .unwrap()
        .iter()
        .filter(|p| p.q == 3 && p.k == 3)
        .map(|p| p.min_n.n().unwrap())
        .collect();
    assert!(ns.contains(&5));

    let t = table("Sigma216phi");
    let ns: BTreeSet<_> = app_pairs(&t, AppOptions::default())
        .unwrap()
        .iter()
        .filter(|p| p.q == 3)
        .map(|p| p.min_n.n().unwrap())
        .collect();
    assert_eq!(ns.first(), Some(&3));
}

#[test]
fn moments() {
    assert_eq!(haar_moment(3, 2), big(2));
    assert_eq!(haar_moment(2, 5), big(42));

    let t = table("2I");
    let two = rows(&t, "2:1");
    for &l in &two {
        assert!(unitary_t_check(&t, l, 5).unwrap());
        assert!(!unitary_t_check(&t, l, 6).unwrap());
    }
    let t216 = table("Sigma216phi");
    let f = (0..t216.n_characters())
        .find(|&r| t216.degree_u64(r) == Some(3) && kernel_classes(&t216, r).is_faithful())
        .unwrap();
    assert!(unitary_t_check(&t216, f, 2).unwrap());

    // twisted moments on 2I: the degree-3 partner of a faithful 2
    let f = two[0];
    let l = (0..t.n_characters()).find(|&l| t.degree_u64(l) == Some(3) && is_twisted_1group(&t, f, l).unwrap()).unwrap();
    assert_eq!(twisted_t_moment(&t, f, l, 1).unwrap(), (big(1), true));
    assert!(!twisted_t_moment(&t, f, l, 2).unwrap().1);
    // the two faithful 2s form a twisted unitary 2-group
    assert_eq!(twisted_t_moment(&t, f, two[1], 1).unwrap(), (big(1), true));
    assert!(twisted_t_moment(&t, f, two[1], 2).unwrap().1);

    let t = table("2O");
    let f = rows(&t, "2:1")[0];
    let bad = (1..t.n_characters()).find(|&l| !is_twisted_1group(&t, f, l).unwrap()).unwrap();
    let (m, ok) = twisted_t_moment(&t, f, bad, 1).unwrap();
    assert!(m >= big(2));
    assert!(!ok);
}

#[test]
fn code_reports() {
    let find = |name: &str, q: u64, k: u64| -> Vec<CodeReport> {
        let t = table(name);
        app_pairs(&t, AppOptions::default())
            .unwrap()
            .iter()
            .filter(|p| p.q == q && p.k == k)
            .map(|p| code_report(&t, p, 6).unwrap())
            .collect()
    };
    let r = find("Sigma360phi", 3, 5);
    assert!(r.iter().any(|c| c.label() == "((6,5,2))_3" && c.transversal_order == big(360)));
    // an irreducible 2-dimensional image is non-abelian, so the logical
    // group here is S3 rather than a cyclic group of order 3
    let r = find("Delta486", 3, 2);
    assert!(!r.is_empty());
    assert!(r.iter().all(|c| c.label() == "((9,2,2))_3" && c.transversal_order == big(6)));
    let r = find("2O", 2, 2);
    assert!(!r.is_empty());
    assert!(r.iter().all(|c| c.label() == "((4,2,2))_2" && c.transversal_order == big(6)), "{r:#?}");
}

#[test]
fn weil_degree_identity() {
    for b in 1..40 {
        let p = sp_weil_params(b);
        assert_eq!(&p.degrees[1], &(&p.degrees[0] + 1u32));
        assert_eq!(p.faithful.iter().filter(|&&x| x).count(), 1);
    }
    for b in 2..40 {
        assert_eq!(su_weil_params(b).applicable, b % 3 != 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_quantities_are_nonnegative_integers(t in small_table()) {
        // every call below errors unless the result is a nonnegative integer
        for a in 0..t.n_characters() {
            for b in 0..t.n_characters() {
                norm(&t, &product_character(&t, a, b)).unwrap();
                multiplicities(&t, a, b, 4).unwrap();
                twisted_t_moment(&t, a, b, 2).unwrap();
            }
            unitary_moment(&t, a, 3).unwrap();
        }
    }

    #[test]
    fn first_moment_agrees_with_norm(t in small_table()) {
        for f in 0..t.n_characters() {
            for l in 0..t.n_characters() {
                let (m, ok) = twisted_t_moment(&t, f, l, 1).unwrap();
                prop_assert_eq!(ok, is_twisted_1group(&t, f, l).unwrap());
                prop_assert_eq!(m, norm(&t, &product_character(&t, l, f)).unwrap());
            }
        }
    }

    #[test]
    fn min_n_is_the_first_nonzero_multiplicity(t in small_table()) {
        let n_max = 10;
        for f in 0..t.n_characters() {
            for l in 0..t.n_characters() {
                let m = multiplicities(&t, f, l, n_max).unwrap();
                match min_n(&t, f, l, n_max).unwrap() {
                    MinN::Found { n, multiplicity } => {
                        prop_assert!(m[..n as usize - 1].iter().all(Zero::is_zero));
                        prop_assert_eq!(&m[n as usize - 1], &multiplicity);
                        prop_assert!(!multiplicity.is_zero());
                    }
                    MinN::NotFound { .. } => prop_assert!(m.iter().all(Zero::is_zero)),
                    MinN::Never => {
                        prop_assert!(!kernel_contained(&t, f, l));
                        prop_assert!(m.iter().all(Zero::is_zero));
                    }
                }
            }
        }
    }

    #[test]
    fn unitary_designs_are_monotone(t in small_table()) {
        for l in 0..t.n_characters() {
            let mut prev = true;
            for tt in 1..6 {
                let now = unitary_t_check(&t, l, tt).unwrap();
                prop_assert!(prev || !now, "row {} passes t={} after failing earlier", l, tt);
                prev = now;
            }
            prop_assert!(unitary_t_check(&t, l, 1).unwrap());
        }
    }

    #[test]
    fn app_pairs_are_galois_closed(t in small_table()) {
        let opts = AppOptions { include_trivial: true, n_max: 8 };
        let pairs = app_pairs(&t, opts).unwrap();
        let set: BTreeMap<(usize, usize), usize> = pairs.iter().map(|p| ((p.f, p.lambda), p.galois_orbit_id)).collect();
        for (k, perm) in galois_actions(&t) {
            for p in &pairs {
                let image = (perm[p.f], perm[p.lambda]);
                prop_assert!(set.contains_key(&image), "ζ→ζ^{} maps {:?} outside", k, (p.f, p.lambda));
                prop_assert_eq!(set[&image], p.galois_orbit_id);
            }
        }
        for p in &pairs {
            prop_assert!(kernel_classes(&t, p.f).is_faithful());
            prop_assert!(is_twisted_1group(&t, p.f, p.lambda).unwrap());
        }
    }
}
