use proptest::prelude::*;
use unipotent::partitions::*;
use unipotent::rational::{frac, half, q, Q};
use unipotent::weights::*;

/// Explicit Weyl group acting on coordinates: permutations, with sign changes
/// for B and C, and an even number of sign changes for D.
fn weyl_group(t: LieType) -> Vec<(Vec<usize>, Vec<i64>)> {
    let len = t.coord_len();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        perms = perms
            .iter()
            .flat_map(|p| {
                (0..len).filter(|i| !p.contains(i)).map(move |i| {
                    let mut v = p.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    let signs: Vec<Vec<i64>> = match t.family() {
        Family::A => vec![vec![1; len]],
        fam => (0..1u32 << len)
            .map(|m| (0..len).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect::<Vec<i64>>())
            .filter(|s| fam != Family::D || s.iter().filter(|&&x| x < 0).count() % 2 == 0)
            .collect(),
    };
    perms
        .iter()
        .flat_map(|p| signs.iter().map(move |s| (p.clone(), s.clone())))
        .collect()
}

fn act(w: &(Vec<usize>, Vec<i64>), lambda: &Weight) -> Weight {
    let c = lambda.coords();
    Weight::new(w.0.iter().zip(&w.1).map(|(&i, &s)| &c[i] * q(s)).collect())
}

fn brute_equivalent(t: LieType, a: &Weight, b: &Weight) -> bool {
    weyl_group(t).iter().any(|w| act(w, a) == *b)
}

fn types_up_to(rank: usize) -> Vec<LieType> {
    let mut out = Vec::new();
    for fam in [Family::A, Family::B, Family::C, Family::D] {
        for n in 1..=rank {
            if let Ok(t) = LieType::new(fam, n) {
                out.push(t);
            }
        }
    }
    out
}

fn arb_type(max_rank: usize) -> impl Strategy<Value = LieType> {
    prop::sample::select(types_up_to(max_rank))
}

/// Coordinates in half-integers from a small range, so collisions are common.
fn arb_weight(len: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-4i64..=4, len)
        .prop_map(|xs| Weight::new(xs.into_iter().map(|x| frac(x, 2)).collect()))
}

fn arb_type_and_weights(max_rank: usize) -> impl Strategy<Value = (LieType, Weight, Weight, Weight)> {
    arb_type(max_rank).prop_flat_map(|t| {
        let n = t.coord_len();
        (Just(t), arb_weight(n), arb_weight(n), arb_weight(n))
    })
}

#[test]
fn weyl_group_orders() {
    let order = |f, n| weyl_group(LieType::new(f, n).unwrap()).len();
    assert_eq!(order(Family::C, 3), 48);
    assert_eq!(order(Family::B, 2), 8);
    assert_eq!(order(Family::D, 3), 24);
    assert_eq!(order(Family::A, 3), 24);
}

#[test]
fn weyl_orbit_exhaustive_small() {
    // every member of a W-orbit is equivalent, and dominant forms agree
    for t in types_up_to(3) {
        let lambda = Weight::new(
            (0..t.coord_len())
                .map(|i| frac(2 * i as i64 - 1, 2))
                .collect::<Vec<Q>>(),
        );
        let d = dominant(t, &lambda).unwrap();
        for w in weyl_group(t) {
            let mu = act(&w, &lambda);
            assert!(weyl_equivalent(t, &lambda, &mu).unwrap(), "{t}");
            assert_eq!(dominant(t, &mu).unwrap(), d);
        }
    }
}

#[test]
fn rho_pairs_to_one_with_simple_roots() {
    for t in types_up_to(8) {
        let r = rho(t);
        for alpha in simple_roots(t) {
            assert_eq!(coroot_pairing(&r, &alpha, t).unwrap(), q(1), "{t} {alpha}");
        }
    }
}

#[test]
fn half_h_of_principal_is_rho_of_dual() {
    for n in 1..=6 {
        let b = LieType::new(Family::B, n).unwrap();
        let h = h_weight(b, &principal_orbit(b)).unwrap();
        assert_eq!(h.scale(&half()), rho(b.dual()), "n = {n}");
    }
}

#[test]
fn collapse_is_the_maximal_valid_partition_below() {
    for size in 1..=12 {
        let all = all_partitions(size);
        for fam in [Family::B, Family::C, Family::D] {
            let valid: Vec<&Partition> = all.iter().filter(|p| satisfies_parity_rule(fam, p)).collect();
            if valid.is_empty() {
                continue;
            }
            for p in &all {
                let below: Vec<&&Partition> = valid.iter().filter(|v| dominance_leq(v, p).unwrap()).collect();
                let col = collapse_family(fam, p).unwrap();
                assert!(satisfies_parity_rule(fam, &col), "{fam} {p}");
                assert!(dominance_leq(&col, p).unwrap());
                for v in below {
                    assert!(dominance_leq(v, &col).unwrap(), "{fam} {p}: {v} not below {col}");
                }
                assert_eq!(collapse_family(fam, &col).unwrap(), col);
            }
        }
    }
}

#[test]
fn transpose_is_an_involution_up_to_twenty() {
    for size in 0..=20 {
        for p in all_partitions(size) {
            assert_eq!(p.transpose().transpose(), p);
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=10).map(|n| all_partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
}

proptest! {
    #[test]
    fn weyl_equivalence_is_an_equivalence((t, a, b, c) in arb_type_and_weights(4)) {
        prop_assert!(weyl_equivalent(t, &a, &a).unwrap());
        let ab = weyl_equivalent(t, &a, &b).unwrap();
        prop_assert_eq!(ab, weyl_equivalent(t, &b, &a).unwrap());
        if ab && weyl_equivalent(t, &b, &c).unwrap() {
            prop_assert!(weyl_equivalent(t, &a, &c).unwrap());
        }
    }

    #[test]
    fn weyl_equivalence_matches_brute_force((t, a, b, _) in arb_type_and_weights(3)) {
        prop_assert_eq!(weyl_equivalent(t, &a, &b).unwrap(), brute_equivalent(t, &a, &b));
    }

    #[test]
    fn conjugates_are_equivalent_with_equal_norm(
        (t, a, _, _) in arb_type_and_weights(3),
        pick in any::<prop::sample::Index>(),
    ) {
        let group = weyl_group(t);
        let mu = act(&group[pick.index(group.len())], &a);
        prop_assert!(weyl_equivalent(t, &a, &mu).unwrap());
        prop_assert_eq!(norm_sq(&a), norm_sq(&mu));
    }

    #[test]
    fn dominant_form_is_canonical((t, a, _, _) in arb_type_and_weights(4)) {
        let d = dominant(t, &a).unwrap();
        prop_assert_eq!(dominant(t, &d).unwrap(), d.clone());
        prop_assert!(weyl_equivalent(t, &a, &d).unwrap());
        for alpha in simple_roots(t) {
            prop_assert!(coroot_pairing(&d, &alpha, t).unwrap() >= q(0));
        }
    }

    #[test]
    fn collapse_is_idempotent_and_valid(parts in prop::collection::vec(1usize..8, 0..10)) {
        let p = Partition::from_unsorted(parts);
        for fam in [Family::B, Family::C, Family::D] {
            let Ok(col) = collapse_family(fam, &p) else {
                // only possible when no valid partition of this size exists
                prop_assert!(fam == Family::C && p.size() % 2 == 1);
                continue;
            };
            prop_assert!(satisfies_parity_rule(fam, &col));
            prop_assert_eq!(collapse_family(fam, &col).unwrap(), col.clone());
            prop_assert!(dominance_leq(&col, &p).unwrap());
        }
    }

    #[test]
    fn transpose_reverses_dominance(a in 0usize..9, pick in any::<(prop::sample::Index, prop::sample::Index)>()) {
        let all = all_partitions(a + 1);
        let p = &all[pick.0.index(all.len())];
        let r = &all[pick.1.index(all.len())];
        if dominance_leq(p, r).unwrap() {
            prop_assert!(dominance_leq(&r.transpose(), &p.transpose()).unwrap());
        }
    }
}
