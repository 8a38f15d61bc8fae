use num_bigint::BigUint;
use proptest::prelude::*;
use twistcode::chartab::{class_matrices, compute_table};
use twistcode::ctbl_io::{parse_cyclotomic, parse_table, parse_table_with, write_table};
use twistcode::{CharacterTable, Cyclotomic, PermGroup, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=7).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=2).prop_map(move |gens| PermGroup::new("random", n, gens).unwrap())
    })
}

fn group(name: &str, n: usize, gens: &[&[&[u32]]]) -> PermGroup {
    let gens = gens
        .iter()
        .map(|cycles| {
            let cycles: Vec<Vec<u32>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
            Permutation::from_cycles(n, &cycles).unwrap()
        })
        .collect();
    PermGroup::new(name, n, gens).unwrap()
}

fn degrees(t: &CharacterTable) -> Vec<u64> {
    (0..t.n_characters()).map(|i| t.degree_u64(i).unwrap()).collect()
}

fn is_coprime(a: u64, b: u64) -> bool {
    num_integer::gcd(a, b) == 1
}

fn check_galois_closed(t: &CharacterTable) {
    let m = t.field_order();
    for k in 1..m.max(2) {
        if !is_coprime(k, m) {
            continue;
        }
        for r in 0..t.n_characters() {
            let row = t.galois_row(r, k as i64).unwrap();
            assert!(t.row_index(&row).is_some(), "row {r} under ζ→ζ^{k} is not a row");
        }
    }
}

// Column orthogonality written out independently of `validate`.
fn check_columns(t: &CharacterTable) {
    let k = t.n_classes();
    for a in 0..k {
        for b in 0..k {
            let s: Cyclotomic = t.characters.iter().map(|row| &row[a] * &row[b].conj()).sum();
            let expect = if a == b {
                Cyclotomic::from_bigint((&t.order / &t.class_sizes[a]).into())
            } else {
                Cyclotomic::zero()
            };
            assert_eq!(s, expect, "columns {a},{b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn computed_tables_satisfy_invariants(g in small_group()) {
        let t = compute_table(&g).unwrap();
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.n_characters(), t.n_classes());
        let order = t.order.clone();
        let sq: BigUint = t.degrees().iter().map(|d| d * d).sum();
        prop_assert_eq!(sq, order.clone());
        for d in t.degrees() {
            prop_assert_eq!(&order % &d, BigUint::from(0u32));
        }
        prop_assert!(t.characters[0].iter().all(|v| *v == Cyclotomic::one()));
        check_columns(&t);
        check_galois_closed(&t);
    }

    #[test]
    fn structure_constants_match_pair_counts(g in small_group()) {
        let cd = g.conjugacy_classes().unwrap();
        if cd.group_order() > 720 {
            return Ok(());
        }
        let k = cd.n_classes();
        let mats = class_matrices(&cd);
        let mut count = vec![vec![vec![0u64; k]; k]; k];
        for x in cd.elements() {
            for y in cd.elements() {
                let z = x.then(y);
                let kk = cd.class_of_element(&z).unwrap();
                if cd.class_reps[kk] == z {
                    let i = cd.class_of_element(x).unwrap();
                    let j = cd.class_of_element(y).unwrap();
                    count[i][j][kk] += 1;
                }
            }
        }
        for i in 0..k {
            prop_assert_eq!(&mats[i].entries, &count[i]);
            for kk in 0..k {
                let col: u64 = (0..k).map(|j| mats[i].entries[j][kk]).sum();
                prop_assert_eq!(col, cd.class_sizes[i]);
            }
            for j in 0..k {
                let weighted: u64 = (0..k).map(|kk| mats[i].entries[j][kk] * cd.class_sizes[kk]).sum();
                prop_assert_eq!(weighted, cd.class_sizes[i] * cd.class_sizes[j]);
            }
        }
    }

    #[test]
    fn tables_round_trip_through_text(g in small_group()) {
        let t = compute_table(&g).unwrap();
        let text = write_table(&t);
        let back = parse_table(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(write_table(&back), text);
    }

    #[test]
    fn any_single_perturbation_is_detected(g in small_group(), r in 0usize..64, c in 0usize..64, bump in 1i64..4) {
        let mut t = compute_table(&g).unwrap();
        let r = r % t.n_characters();
        let c = c % t.n_classes();
        t.characters[r][c] = &t.characters[r][c] + &Cyclotomic::from_integer(bump);
        prop_assert!(t.validate().is_err());
        prop_assert!(parse_table(&write_table(&t)).is_err());
    }

    #[test]
    fn parser_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let s = String::from_utf8_lossy(&bytes);
        let _ = parse_cyclotomic(&s);
        let _ = parse_table(&s);
    }

    #[test]
    fn grammar_breaking_mutations_are_rejected(cut in 1usize..12, junk in "[)(^*/]") {
        let text = "2*E(8)^3-E(8)+1/2";
        let mutated = format!("{}{}{}", &text[..cut], junk, &text[cut..]);
        prop_assert!(parse_cyclotomic(&mutated).is_err(), "{} parsed", mutated);
    }
}

// Matches a computed table against a textbook one up to a permutation of the
// columns that keeps class sizes and element orders, and any row order.
fn matches_textbook(t: &CharacterTable, sizes: &[u64], orders: &[u64], rows: &[&[&str]]) -> bool {
    let k = sizes.len();
    if t.n_classes() != k {
        return false;
    }
    let want: Vec<Vec<Cyclotomic>> =
        rows.iter().map(|r| r.iter().map(|v| parse_cyclotomic(v).unwrap()).collect()).collect();
    fn search(
        t: &CharacterTable,
        sizes: &[u64],
        orders: &[u64],
        want: &[Vec<Cyclotomic>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let c = map.len();
        if c == sizes.len() {
            let mut got: Vec<Vec<Cyclotomic>> =
                t.characters.iter().map(|row| map.iter().map(|&d| row[d].clone()).collect()).collect();
            let mut w = want.to_vec();
            got.sort();
            w.sort();
            return got == w;
        }
        for d in 0..sizes.len() {
            if !used[d] && t.class_sizes[d] == BigUint::from(sizes[c]) && t.element_orders[d] == orders[c] {
                used[d] = true;
                map.push(d);
                if search(t, sizes, orders, want, map, used) {
                    return true;
                }
                map.pop();
                used[d] = false;
            }
        }
        false
    }
    search(t, sizes, orders, &want, &mut Vec::new(), &mut vec![false; k])
}

#[test]
fn textbook_tables() {
    let s3 = compute_table(&group("S3", 3, &[&[&[1, 2]], &[&[1, 2, 3]]])).unwrap();
    assert!(matches_textbook(&s3, &[1, 3, 2], &[1, 2, 3], &[&["1", "1", "1"], &["1", "-1", "1"], &["2", "0", "-1"]]));

    let s4 = compute_table(&group("S4", 4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])).unwrap();
    assert!(matches_textbook(
        &s4,
        &[1, 6, 3, 8, 6],
        &[1, 2, 2, 3, 4],
        &[
            &["1", "1", "1", "1", "1"],
            &["1", "-1", "1", "1", "-1"],
            &["2", "0", "2", "-1", "0"],
            &["3", "1", "-1", "0", "-1"],
            &["3", "-1", "-1", "0", "1"],
        ],
    ));

    let a = "-E(5)-E(5)^4";
    let b = "-E(5)^2-E(5)^3";
    let a5 = compute_table(&group("A5", 5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]])).unwrap();
    assert!(matches_textbook(
        &a5,
        &[1, 15, 20, 12, 12],
        &[1, 2, 3, 5, 5],
        &[
            &["1", "1", "1", "1", "1"],
            &["3", "-1", "0", a, b],
            &["3", "-1", "0", b, a],
            &["4", "0", "1", "-1", "-1"],
            &["5", "1", "-1", "0", "0"],
        ],
    ));

    let q8 = compute_table(&group(
        "Q8",
        8,
        &[&[&[1, 2, 3, 4], &[5, 6, 7, 8]], &[&[1, 5, 3, 7], &[2, 8, 4, 6]]],
    ))
    .unwrap();
    let d4 = compute_table(&group("D4", 4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]])).unwrap();
    let quaternion_rows: &[&[&str]] = &[
        &["1", "1", "1", "1", "1"],
        &["1", "1", "1", "-1", "-1"],
        &["1", "1", "-1", "1", "-1"],
        &["1", "1", "-1", "-1", "1"],
        &["2", "-2", "0", "0", "0"],
    ];
    assert!(matches_textbook(&q8, &[1, 1, 2, 2, 2], &[1, 2, 4, 4, 4], quaternion_rows));
    let dihedral_rows: &[&[&str]] = &[
        &["1", "1", "1", "1", "1"],
        &["1", "1", "-1", "-1", "1"],
        &["1", "1", "1", "-1", "-1"],
        &["1", "1", "-1", "1", "-1"],
        &["2", "-2", "0", "0", "0"],
    ];
    assert!(matches_textbook(&d4, &[1, 1, 2, 2, 2], &[1, 2, 2, 2, 4], dihedral_rows));
    // same values, different power maps
    assert!(!matches_textbook(&d4, &[1, 1, 2, 2, 2], &[1, 2, 4, 4, 4], quaternion_rows));
    assert_ne!(q8.power_maps, d4.power_maps);
}

fn fixture(rel: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn named_group_degrees() {
    let load = |f: &str| twistcode::ctbl_io::parse_permgroup(&fixture(&format!("permgroup/{f}"))).unwrap();
    let t = compute_table(&load("2I.perm")).unwrap();
    assert_eq!(degrees(&t), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    assert_eq!(t.exponent, BigUint::from(60u32));

    let t = compute_table(&load("Sigma216phi.perm")).unwrap();
    let sq: u64 = degrees(&t).iter().map(|d| d * d).sum();
    assert_eq!(sq, 648);
    let faithful3 = (0..t.n_characters())
        .filter(|&r| t.degree_u64(r) == Some(3) && twistcode::twist::kernel_classes(&t, r).is_faithful())
        .count();
    assert!(faithful3 > 0);
}

#[test]
fn s3_golden_file() {
    let golden = fixture("ctbl/s3.ctbl");
    let computed = compute_table(&group("S3", 3, &[&[&[1, 2]], &[&[1, 2, 3]]])).unwrap();
    assert_eq!(write_table(&computed), golden);
    assert_eq!(parse_table(&golden).unwrap(), computed);
}

#[test]
fn corrupted_golden_row_names_the_pair() {
    let golden = fixture("ctbl/s3.ctbl");
    let bad = golden.replace("char 2: 1 ; -1 ; 1", "char 2: 1 ; 1 ; 1");
    assert_ne!(bad, golden);
    let err = parse_table(&bad).unwrap_err().to_string();
    assert!(err.contains("(1,2)"), "{err}");
    let loose = parse_table_with(&bad, false).unwrap();
    assert!(!loose.validated);
}

#[test]
fn power_maps_cover_primes_of_the_exponent() {
    let t = compute_table(&group("S4", 4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])).unwrap();
    let primes: Vec<u64> = t.power_maps.keys().copied().collect();
    assert_eq!(primes, vec![2, 3]);
}
