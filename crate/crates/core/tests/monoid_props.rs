mod common;

use std::collections::BTreeSet;

use katoskel::lattice::{self, IVec};
use katoskel::monoid::{faces, quotient_by_face, saturate, AffineMonoid};
use proptest::prelude::*;

fn generator_set(rank: usize, max: i64) -> impl Strategy<Value = Vec<IVec>> {
    prop::collection::vec(prop::collection::vec(-max..=max, rank), 1..=rank + 2)
}

fn sharp(rank: usize) -> impl Strategy<Value = AffineMonoid> {
    generator_set(rank, 4).prop_filter_map("not sharp", move |g| AffineMonoid::new(rank, &g).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_basis_matches_brute_force(rank in 1usize..=3, seed in generator_set(3, 4)) {
        let gens: Vec<IVec> = seed.into_iter().map(|g| g[..rank].to_vec()).collect();
        let oracle = common::brute_force_hilbert_basis(&gens, rank);
        match AffineMonoid::new(rank, &gens) {
            Ok(m) => {
                let cached: BTreeSet<IVec> = m.hilbert_basis().iter().cloned().collect();
                prop_assert_eq!(Some(cached), oracle);
            }
            Err(_) => prop_assert!(oracle.is_none()),
        }
    }

    #[test]
    fn saturation_is_idempotent(m in sharp(3)) {
        let s = saturate(&m);
        prop_assert!(s.is_saturated());
        prop_assert_eq!(saturate(&s), s.clone());
        prop_assert_eq!(s == m, m.is_saturated());
    }

    #[test]
    fn faces_reverse_prime_inclusion(m in sharp(3)) {
        let fs = faces(&m);
        for f in &fs {
            // The complement is an ideal: adding a generator never lands on the face.
            for p in &f.complement {
                for g in m.generators() {
                    let s = lattice::vadd(p, g);
                    let h = m.face_containing(&s).unwrap();
                    prop_assert!(!h.members.iter().all(|x| f.members.contains(x)));
                }
            }
            for g in &fs {
                let sub = f.members.iter().all(|x| g.members.contains(x));
                let sup = g.complement.iter().all(|x| f.complement.contains(x));
                prop_assert_eq!(sub, sup);
            }
        }
    }

    #[test]
    fn quotients_compose(m in sharp(3)) {
        let fs = faces(&m);
        for f in &fs {
            let (q1, p1) = quotient_by_face(&m, f).unwrap();
            for g in fs.iter().filter(|g| f.members.iter().all(|x| g.members.contains(x))) {
                let direct = quotient_by_face(&m, g).unwrap().0;
                let sum = g.members.iter().fold(vec![0; m.ambient_rank()], |a, x| lattice::vadd(&a, x));
                let image = q1.face_containing(&p1.apply(&sum)).unwrap();
                let twice = quotient_by_face(&q1, &image).unwrap().0;
                prop_assert!(twice.is_isomorphic(&direct), "{:?} then {:?}", f, g);
            }
        }
    }
}

#[test]
fn free_monoid_face_count() {
    for r in 0..=4 {
        assert_eq!(faces(&AffineMonoid::free(r)).len(), 1 << r);
    }
}
