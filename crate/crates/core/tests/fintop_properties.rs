use std::sync::Arc;

use proptest::prelude::*;
use regclose_core::fintop::{
    canonical_form, enumerate_spaces, factorize, hom_set, homeomorphism, parse_space, product, space_to_json,
    universe, ContMap, FinSpace, MapSearch,
};
use regclose_core::PointSet;

/// A random topology on `n` points: the smallest one containing `seeds`.
fn generated(n: usize, seeds: &[u64]) -> FinSpace {
    let full = (1u64 << n) - 1;
    let mut nbhd = vec![full; n];
    for &s in seeds {
        let s = s & full;
        for (x, u) in nbhd.iter_mut().enumerate() {
            if s >> x & 1 == 1 {
                *u &= s;
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinSpace::from_neighbourhoods(labels, nbhd.into_iter().map(PointSet::from_bits).collect()).unwrap()
}

fn space_strategy() -> impl Strategy<Value = FinSpace> {
    (1usize..=4, prop::collection::vec(any::<u64>(), 0..5)).prop_map(|(n, seeds)| generated(n, &seeds))
}

#[test]
fn composites_are_continuous() {
    let u = universe(3).unwrap();
    for x in &u {
        for y in &u {
            for f in hom_set(x, y) {
                for z in &u {
                    for g in hom_set(y, z) {
                        assert!(ContMap::new(x.clone(), z.clone(), f.then(&g).unwrap().graph().to_vec()).is_ok());
                    }
                }
            }
        }
    }
}

#[test]
fn factorization_has_unique_diagonal_fill_ins() {
    // squares v ∘ e = m ∘ u with e surjective and m an embedding
    let u = universe(2).unwrap();
    for a in &u {
        for b in &u {
            for e in hom_set(a, b).into_iter().filter(ContMap::is_surjective) {
                for c in &u {
                    for d in &u {
                        for m in hom_set(c, d).into_iter().filter(ContMap::is_embedding) {
                            for uu in hom_set(a, c) {
                                for v in hom_set(b, d) {
                                    if e.then(&v).unwrap() != uu.then(&m).unwrap() {
                                        continue;
                                    }
                                    let fills: Vec<ContMap> = hom_set(b, c)
                                        .into_iter()
                                        .filter(|t| e.then(t).unwrap() == uu && t.then(&m).unwrap() == v)
                                        .collect();
                                    assert_eq!(fills.len(), 1);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn indiscrete_codomains_and_domains() {
    for n in 0..=4 {
        for x in enumerate_spaces(n).unwrap() {
            let x = Arc::new(x);
            let i2 = Arc::new(FinSpace::indiscrete(2));
            assert_eq!(hom_set(&x, &i2).len(), 1 << n);
            if x.is_t0() {
                for k in 1..=3 {
                    let ik = Arc::new(FinSpace::indiscrete(k));
                    assert!(hom_set(&ik, &x).iter().all(|f| f.full_image().len() <= 1));
                }
            }
        }
    }
}

#[test]
fn product_topology_matches_rectangle_generation() {
    let u = universe(2).unwrap();
    for x in &u {
        for y in &u {
            let p = &product(x, y).unwrap();
            let mut rects = std::collections::BTreeSet::new();
            for a in x.opens() {
                for b in y.opens() {
                    let r: PointSet = a.iter().flat_map(|i| b.iter().map(move |j| p.pair(i, j))).collect();
                    rects.insert(r.bits());
                }
            }
            // close under union
            loop {
                let now: Vec<u64> = rects.iter().copied().collect();
                let before = rects.len();
                for &a in &now {
                    for &b in &now {
                        rects.insert(a | b);
                    }
                }
                if rects.len() == before {
                    break;
                }
            }
            let opens: std::collections::BTreeSet<u64> = p.space.opens().iter().map(|o| o.bits()).collect();
            assert_eq!(opens, rects);
        }
    }
}

proptest! {
    #[test]
    fn canonical_form_is_a_complete_invariant(x in space_strategy(), perm_seed in any::<u64>()) {
        let n = x.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            order.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let mut inverse = vec![0; n];
        for (i, &o) in order.iter().enumerate() {
            inverse[o] = i;
        }
        let nbhd = order
            .iter()
            .map(|&o| x.nbhd(o).iter().map(|y| inverse[y]).collect())
            .collect();
        let y = FinSpace::from_neighbourhoods(x.labels().iter().map(|l| format!("q{l}")).collect(), nbhd).unwrap();
        prop_assert_eq!(canonical_form(&x), canonical_form(&y));
        prop_assert!(homeomorphism(&Arc::new(x.clone()), &Arc::new(y)).is_some());
        let reps = enumerate_spaces(n).unwrap();
        prop_assert_eq!(reps.iter().filter(|r| canonical_form(r) == canonical_form(&x)).count(), 1);
    }

    #[test]
    fn space_files_round_trip(x in space_strategy()) {
        let text = space_to_json(&x);
        let back = parse_space(&text).unwrap();
        prop_assert_eq!(space_to_json(&back), text);
        prop_assert_eq!(canonical_form(&back), canonical_form(&x));
    }

    #[test]
    fn factorize_splits_every_map(x in space_strategy(), y in space_strategy(), pick in any::<usize>()) {
        let (x, y) = (Arc::new(x), Arc::new(y));
        let maps = MapSearch::new(&x, &y).graphs();
        let f = ContMap::new(x.clone(), y.clone(), maps[pick % maps.len()].clone()).unwrap();
        let fact = factorize(&f);
        prop_assert!(fact.surjection.is_surjective());
        prop_assert!(fact.image.inclusion().is_embedding());
        prop_assert_eq!(fact.surjection.then(&fact.image.inclusion()).unwrap(), f);
    }
}
