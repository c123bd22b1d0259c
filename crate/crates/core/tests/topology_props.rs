mod common;

use katoskel::corpus;
use katoskel::io::{skeleton_action, Document};
use katoskel::skeleton::product_skeleton;
use katoskel::topology::{
    circle_kernel, classify_closed_surface, group_quotient, homology, orbit_complex, symmetric_product,
    torus_kernel, CellComplex, DeltaComplex, GroupAction, QuotientOptions, SimplicialComplex, SurfaceClass,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn octahedron() -> SimplicialComplex {
    let mut f = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                f.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_facets(6, f).unwrap()
}

/// The vertex permutation of the octahedron (vertex `2i + s` is `±e_i`)
/// induced by a signed permutation of the coordinates.
fn signed_permutation(perm: &[usize], flips: &[bool]) -> Vec<usize> {
    (0..6).map(|v| 2 * perm[v / 2] + ((v % 2 == 1) ^ flips[v / 2]) as usize).collect()
}

fn signed_perm_strategy() -> impl Strategy<Value = Vec<usize>> {
    (Just(vec![0usize, 1, 2]).prop_shuffle(), prop::collection::vec(any::<bool>(), 3))
        .prop_map(|(p, f)| signed_permutation(&p, &f))
}

fn engine_vs_oracle(k: &SimplicialComplex) -> (Vec<(usize, Vec<BigInt>)>, Vec<(usize, Vec<BigInt>)>) {
    let h = homology(&DeltaComplex::from_simplicial(k));
    let all: Vec<Vec<usize>> = (0..=k.dim()).flat_map(|d| k.simplices(d).to_vec()).collect();
    let oracle = common::homology_oracle(&all);
    let got = (0..oracle.len())
        .map(|d| (h.betti()[d], h.torsion(d).iter().map(|&t| BigInt::from(t)).collect()))
        .collect();
    (got, oracle)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_matches_oracle_on_random_complexes(
        facets in prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=3), 1..10)
    ) {
        let facets: Vec<Vec<usize>> = facets.into_iter().map(|s| s.into_iter().collect()).collect();
        let k = SimplicialComplex::from_facets(7, facets).unwrap();
        let d = DeltaComplex::from_simplicial(&k);
        prop_assert!(d.boundary_squares_to_zero());
        prop_assert_eq!(homology(&d).euler_characteristic(), d.euler_characteristic());
        let (got, oracle) = engine_vs_oracle(&k);
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn quotients_are_stable_under_subdivision(gens in prop::collection::vec(signed_perm_strategy(), 1..=2)) {
        let k = octahedron();
        let a = GroupAction::generate(6, &gens).unwrap();
        a.validate(&k).unwrap();
        let opts = QuotientOptions::default();
        let q = group_quotient(&k, &a, &opts).unwrap();
        let (sd, old) = k.barycentric_subdivision();
        let lifted = a.lift_to_subdivision(&k, &old);
        let q2 = group_quotient(&sd, &lifted, &opts).unwrap();
        let h = homology(&DeltaComplex::from_simplicial(&q));
        prop_assert_eq!(&h, &homology(&DeltaComplex::from_simplicial(&q2)));
        prop_assert_eq!(&h, &homology(&orbit_complex(&k, &a, &opts).unwrap()));
    }
}

#[test]
fn sym1_is_the_identity() {
    let opts = QuotientOptions::default();
    for c in [corpus::polygon(4), corpus::tetrahedron_boundary()] {
        let s = symmetric_product(&c, 1, &opts).unwrap();
        let k = c.order_complex();
        assert_eq!(s.complex.counts(), k.counts());
        assert_eq!(homology(&s.complex), homology(&DeltaComplex::from_simplicial(&k)));
    }
}

#[test]
fn symmetric_powers_of_the_sphere() {
    let s2 = corpus::tetrahedron_boundary();
    for n in 1..=2 {
        let s = symmetric_product(&s2, n, &QuotientOptions::default()).unwrap();
        assert_eq!(s.complex.euler_characteristic(), n as i64 + 1);
    }
}

#[test]
fn cellular_automorphisms_act_simplicially() {
    let Document::Product(doc) = corpus::document("quartic_YxY").unwrap() else { unreachable!() };
    let built = doc.build().unwrap();
    let ps = product_skeleton(&built.left, &built.right, &built.product).unwrap();
    let (cells, k, a) = skeleton_action(&ps.complex, &doc.actions["z2_swap"]).unwrap();
    a.validate(&k).unwrap();
    for g in &a.elements {
        assert!(cells.is_automorphism(g));
        assert!(k.is_simplicial_automorphism(g));
    }
    // Every symmetry of the square torus, too.
    let c = corpus::polygon(3);
    let (t, tuples) = katoskel::topology::product_complex(&[&c, &c]);
    let swap: Vec<usize> = tuples
        .iter()
        .map(|tu| tuples.iter().position(|x| x[0] == tu[1] && x[1] == tu[0]).unwrap())
        .collect();
    assert!(t.is_automorphism(&swap));
    assert!(t.order_complex().is_simplicial_automorphism(&swap));
}

#[test]
fn kummer_coordinatizations_agree() {
    let opts = QuotientOptions::default();
    for n in [1, 2] {
        let results: Vec<_> = (0..=n)
            .map(|drop| {
                let c = circle_kernel(n, drop).unwrap();
                let d = orbit_complex(&c.order_complex(), &c.action, &opts).unwrap();
                (c.complex.counts(), homology(&d))
            })
            .collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]), "n = {n}");
    }
    let quotients: Vec<SurfaceClass> = [0, 1]
        .into_iter()
        .map(|drop| {
            let t = torus_kernel(1, drop, 10_000).unwrap();
            assert_eq!(classify_closed_surface(&t.order_complex()), SurfaceClass::Torus);
            classify_closed_surface(&group_quotient(&t.order_complex(), &t.action, &opts).unwrap())
        })
        .collect();
    assert_eq!(quotients, vec![SurfaceClass::Sphere, SurfaceClass::Sphere]);
}

#[test]
fn surfaces_are_classified() {
    let rp2 = SimplicialComplex::from_facets(6, common::rp2_six()).unwrap();
    assert_eq!(classify_closed_surface(&rp2), SurfaceClass::ProjectivePlane);
    let torus: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    let t = SimplicialComplex::from_facets(7, torus).unwrap();
    assert_eq!(classify_closed_surface(&t), SurfaceClass::Torus);
    assert_eq!(classify_closed_surface(&octahedron()), SurfaceClass::Sphere);
    let disk = CellComplex::from_simplicial(&SimplicialComplex::from_facets(3, vec![vec![0, 1, 2]]).unwrap());
    assert!(matches!(classify_closed_surface(&disk.order_complex()), SurfaceClass::NotASurface(_)));
}
